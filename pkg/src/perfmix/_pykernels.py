"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``.

Same signatures and results; slower, but no build step.  Labels returned by
:func:`bfs_nearest` may name a different nearest codeword than the compiled
version when there are ties; distances are identical.
"""

from __future__ import annotations

import numpy as np

from .linalg import span_words

_BLOCK_CELLS = 1 << 23


def _strides(orders):
    orders = np.asarray(orders, dtype=np.int64)
    strides = np.ones(len(orders), dtype=np.int64)
    for i in range(len(orders) - 2, -1, -1):
        strides[i] = strides[i + 1] * orders[i + 1]
    return strides


def bfs_nearest(sources, orders):
    sources = np.asarray(sources, dtype=np.int64)
    orders = np.asarray(orders, dtype=np.int64)
    total = int(np.prod(orders))
    strides = _strides(orders)
    dist = np.full(total, -1, dtype=np.int8)
    label = np.full(total, -1, dtype=np.int32)
    uniq, first = np.unique(sources, return_index=True)
    dist[uniq] = 0
    label[uniq] = first.astype(np.int32)
    frontier = uniq
    level = 0
    while frontier.size:
        level += 1
        cand_idx = []
        cand_lab = []
        flab = label[frontier]
        for i, (stride, q) in enumerate(zip(strides, orders)):
            digit = (frontier // stride) % q
            base = frontier - digit * stride
            for a in range(q):
                keep = digit != a
                cand_idx.append(base[keep] + a * stride)
                cand_lab.append(flab[keep])
        if not cand_idx:
            break
        ys = np.concatenate(cand_idx)
        ls = np.concatenate(cand_lab)
        fresh = dist[ys] < 0
        ys, ls = ys[fresh], ls[fresh]
        ys, pick = np.unique(ys, return_index=True)
        dist[ys] = level
        label[ys] = ls[pick]
        frontier = ys
    return dist, label


def min_label_edge(dist, label, orders):
    orders = np.asarray(orders, dtype=np.int64)
    dist = np.asarray(dist)
    label = np.asarray(label)
    total = dist.shape[0]
    strides = _strides(orders)
    x = np.arange(total, dtype=np.int64)
    best = None
    d32 = dist.astype(np.int32)
    for stride, q in zip(strides, orders):
        digit = (x // stride) % q
        for s in range(1, q):
            src = x[digit + s < q]
            dst = src + s * stride
            diff = label[src] != label[dst]
            if diff.any():
                cand = int((d32[src[diff]] + d32[dst[diff]]).min()) + 1
                best = cand if best is None else min(best, cand)
    return -1 if best is None else best


def pair_distance_histogram(words):
    words = np.ascontiguousarray(words, dtype=np.uint8)
    M, n = words.shape
    hist = np.zeros(n + 1, dtype=np.int64)
    if M < 2:
        return hist
    block = max(1, _BLOCK_CELLS // max(1, M * n))
    for i0 in range(0, M, block):
        i1 = min(M, i0 + block)
        d = (words[i0:i1, None, :] != words[None, :, :]).sum(axis=2)
        rows = np.arange(i0, i1)[:, None]
        cols = np.arange(M)[None, :]
        hist += np.bincount(d[cols > rows], minlength=n + 1)
    return hist


def cross_min_distance(A, B):
    A = np.ascontiguousarray(A, dtype=np.uint8)
    B = np.ascontiguousarray(B, dtype=np.uint8)
    n = A.shape[1]
    best = n + 1
    block = max(1, _BLOCK_CELLS // max(1, B.shape[0] * n))
    for i0 in range(0, A.shape[0], block):
        d = (A[i0:i0 + block, None, :] != B[None, :, :]).sum(axis=2)
        best = min(best, int(d.min()))
    return best


def span_weight_histogram(G, add, mul):
    G = np.ascontiguousarray(G, dtype=np.uint8)
    add = np.asarray(add, dtype=np.uint8)
    mul = np.asarray(mul, dtype=np.uint8)
    k, n = G.shape
    q = add.shape[0]
    hist = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        hist[0] = 1
        return hist

    class _F:  # minimal table holder for span_words
        pass

    F = _F()
    F.q, F.add_table, F.mul_table = q, add, mul
    inner_rows = 0
    while inner_rows < k and q ** (inner_rows + 1) <= 1 << 16:
        inner_rows += 1
    inner = span_words(G[k - inner_rows:], F)
    outer = span_words(G[: k - inner_rows], F)
    for b in outer:
        w = (add[inner, b[None, :]] != 0).sum(axis=1)
        hist += np.bincount(w, minlength=n + 1)
    return hist
