"""Gaussian elimination over F_q on uint8 matrices using the field tables."""

from __future__ import annotations

import numpy as np

from .galois import FieldTable


def rref(M, F: FieldTable) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` over ``F``; returns (R, pivot_columns).

    Zero rows are dropped, so ``len(pivots) == R.shape[0]`` is the rank.
    """
    A = np.array(M, dtype=np.uint8, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    rows, cols = A.shape
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = mul[F.inv_table[A[r, c]], A[r]]
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            # row_i -= f_i * pivot_row
            scaled = mul[neg[factors[hit]][:, None], A[r][None, :]]
            A[hit] = add[A[hit], scaled]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, F: FieldTable) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, F)[1])


def null_space(M, F: FieldTable) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0}."""
    M = np.asarray(M, dtype=np.uint8)
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    R, pivots = rref(M, F)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = F.neg_table[R[row, f]]
    return basis


def in_row_space(G, v, F: FieldTable) -> bool:
    G = np.asarray(G, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8)[None, :]
    return rank(np.vstack([G, v]), F) == rank(G, F)


def combine(coeffs, G, F: FieldTable) -> np.ndarray:
    """Linear combination sum_i coeffs[i] * G[i] over F."""
    G = np.asarray(G, dtype=np.uint8)
    out = np.zeros(G.shape[1], dtype=np.uint8)
    for c, row in zip(coeffs, G):
        if c:
            out = F.add_table[out, F.mul_table[c, row]]
    return out


def span_words(G, F: FieldTable) -> np.ndarray:
    """All q**k codewords of the row space of G, as an array (q**k, n).

    Row ``j`` of the result uses coefficient vector given by the base-q digits
    of ``j`` with the first generator as the most significant digit.
    """
    G = np.asarray(G, dtype=np.uint8)
    k, n = G.shape
    words = np.zeros((1, n), dtype=np.uint8)
    for row in G:
        multiples = F.mul_table[np.arange(F.q)[:, None], row[None, :]]  # (q, n)
        words = F.add_table[words[:, None, :], multiples[None, :, :]].reshape(-1, n)
    return words
