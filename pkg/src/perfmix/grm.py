"""Generalized Reed-Muller codes RM_q(r, m) and Reed-Muller-like certificates.

Points of AG(m, q) are listed lexicographically over coordinate tuples of
field indices (first coordinate most significant), so position ``j`` of a
codeword is the point whose base-q digits spell ``j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

import numpy as np

from . import kernels
from .galois import FieldTable, make_field
from .linalg import in_row_space, null_space, rank, rref, span_words
from .space import Code, MixedSpace, minimum_distance

MAX_LENGTH = 64
EXPAND_LIMIT = 1 << 22
ENUM_LIMIT = 1 << 22
PATTERN_BUDGET = 3_000_000


class GrmError(ValueError):
    pass


class OrderOutOfRange(GrmError):
    pass


class TooLarge(GrmError):
    pass


class CodimensionTooLarge(GrmError):
    pass


def _binom(x: int, y: int) -> int:
    # zero whenever y < 0 or x < y, negative x included
    if y < 0 or x < y:
        return 0
    return math.comb(x, y)


def _check_order(q: int, m: int, r: int) -> None:
    if m < 1 or not 0 <= r <= (q - 1) * m:
        raise OrderOutOfRange(f"order r={r} outside [0, {(q - 1) * m}] for q={q}, m={m}")


def grm_dimension(q: int, m: int, r: int) -> int:
    """Dimension of RM_q(r, m) by the alternating double-sum formula."""
    _check_order(q, m, r)
    return sum(
        (-1) ** k * math.comb(m, k) * _binom(i - k * q + m - 1, i - k * q)
        for i in range(r + 1)
        for k in range(m + 1)
    )


def order_split(q: int, r: int) -> tuple[int, int]:
    """(a, b) with r = (q-1) a + b and 0 <= b < q-1."""
    return divmod(r, q - 1)


def grm_min_distance(q: int, m: int, r: int) -> int:
    """(q - b) q^(m-a-1) with r = (q-1) a + b."""
    _check_order(q, m, r)
    a, b = order_split(q, r)
    if a == m:  # r = (q-1)m: the whole space
        return 1
    return (q - b) * q ** (m - a - 1)


@dataclass(frozen=True)
class GrmParams:
    n: int
    k: int
    d: int
    a: int
    b: int


def grm_params(q: int, m: int, r: int) -> GrmParams:
    a, b = order_split(q, r)
    return GrmParams(q**m, grm_dimension(q, m, r), grm_min_distance(q, m, r), a, b)


@dataclass(frozen=True)
class GrmSpec:
    q: int
    m: int
    r: int

    def __post_init__(self):
        make_field(self.q)
        _check_order(self.q, self.m, self.r)

    @property
    def n(self) -> int:
        return self.q**self.m

    @property
    def field(self) -> FieldTable:
        return make_field(self.q)

    def points(self) -> np.ndarray:
        return np.array(list(product(range(self.q), repeat=self.m)), dtype=np.uint8).reshape(
            -1, self.m
        )

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent vectors with entries <= q-1 and total degree <= r,
        by total degree then lexicographically."""
        exps = [
            e for e in product(range(self.q), repeat=self.m) if sum(e) <= self.r
        ]
        return sorted(exps, key=lambda e: (sum(e), e))


@dataclass
class GeneratorMatrix:
    spec: GrmSpec
    rows: np.ndarray = field(repr=False)
    monomials: list = field(repr=False)

    @cached_property
    def k(self) -> int:
        return rank(self.rows, self.spec.field)

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def parity_check(self) -> np.ndarray:
        return null_space(self.rows, self.spec.field)


def evaluate_monomials(spec: GrmSpec, monomials) -> np.ndarray:
    F = spec.field
    pts = spec.points()
    # power[x, e] = x**e
    power = np.ones((F.q, F.q), dtype=np.uint8)
    for e in range(1, F.q):
        power[:, e] = F.mul_table[power[:, e - 1], np.arange(F.q)]
    rows = np.ones((len(monomials), spec.n), dtype=np.uint8)
    for j, exps in enumerate(monomials):
        for i, e in enumerate(exps):
            if e:
                rows[j] = F.mul_table[rows[j], power[pts[:, i], e]]
    return rows


def grm_generate(spec: GrmSpec, expand_limit: int = EXPAND_LIMIT):
    """Evaluation matrix of the monomial basis, plus the code itself when
    q**k <= ``expand_limit``.  Returns ``(GeneratorMatrix, Code | None)``."""
    if spec.n > MAX_LENGTH:
        raise TooLarge(f"q^m = {spec.n} exceeds {MAX_LENGTH}")
    mons = spec.monomials()
    G = GeneratorMatrix(spec, evaluate_monomials(spec, mons), mons)
    code = None
    if spec.q ** len(mons) <= expand_limit:
        code = Code(MixedSpace.qary(spec.q, spec.n), span_words(G.rows, spec.field))
    return G, code


def grm_code(q: int, m: int, r: int) -> Code:
    G, code = grm_generate(GrmSpec(q, m, r))
    if code is None:
        raise TooLarge(f"RM_{q}({r},{m}) has too many codewords to expand")
    return code


def min_weight_witness(spec: GrmSpec) -> np.ndarray:
    """Evaluation of prod_{i<a} (1 - X_i^(q-1)) * prod_{j<b} (X_{a+1} - w_j),
    a codeword of RM_q(r, m) of weight (q-b) q^(m-a-1)."""
    F = spec.field
    a, b = order_split(spec.q, spec.r)
    pts = spec.points()
    val = np.ones(spec.n, dtype=np.uint8)
    for i in range(min(a, spec.m)):
        val = np.where(pts[:, i] == 0, val, 0).astype(np.uint8)
    if a < spec.m:
        for w in range(b):
            factor = F.add_table[pts[:, a], F.neg_table[w]]
            val = F.mul_table[val, factor]
    return val


def enumerate_min_weight(rows, F: FieldTable) -> int:
    hist = kernels.span_weight_histogram(np.ascontiguousarray(rows), F.add_table, F.mul_table)
    nz = np.flatnonzero(hist[1:])
    return int(nz[0]) + 1 if nz.size else 0


def _pattern_count(n: int, q: int, w: int) -> int:
    return sum(math.comb(n, t) * (q - 1) ** t for t in range(w + 1))


def _pattern_syndromes(H: np.ndarray, F: FieldTable, w: int) -> np.ndarray:
    c, n = H.shape
    pos = np.array(list(combinations(range(n), w)), dtype=np.int64).reshape(-1, w)
    vals = np.array(list(product(range(1, F.q), repeat=w)), dtype=np.uint8).reshape(-1, w)
    out = np.zeros((pos.shape[0], vals.shape[0], c), dtype=np.uint8)
    for t in range(w):
        cols = H[:, pos[:, t]].T  # (P, c)
        contrib = F.mul_table[vals[None, :, t, None], cols[:, None, :]]
        out = F.add_table[out, contrib]
    return out.reshape(-1, c)


def no_short_codewords(H: np.ndarray, F: FieldTable, D: int, budget: int = PATTERN_BUDGET) -> bool:
    """True iff the code with parity-check matrix H has no nonzero codeword of
    weight <= D - 1, i.e. every D - 1 columns of H are linearly independent.

    Meet in the middle: with a + b = D - 1 and a <= b, a short codeword exists
    iff two distinct error patterns of weights <= a and <= b share a syndrome.
    """
    n = H.shape[1]
    a = (D - 1) // 2
    b = D - 1 - a
    if _pattern_count(n, F.q, b) > budget:
        raise CodimensionTooLarge(
            f"{_pattern_count(n, F.q, b)} error patterns exceed the budget {budget}"
        )
    if H.shape[0] == 0:
        return D <= 1
    syn, wts = [], []
    for w in range(b + 1):
        s = _pattern_syndromes(H, F, w) if w else np.zeros((1, H.shape[0]), dtype=np.uint8)
        syn.append(s)
        wts.append(np.full(s.shape[0], w, dtype=np.int16))
    syn = np.ascontiguousarray(np.concatenate(syn))
    wts = np.concatenate(wts)
    keys = syn.view(np.dtype((np.void, syn.shape[1]))).ravel()
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    same = ks[1:] == ks[:-1]
    if not same.any():
        return True
    # group ids over the sorted run; a group with >1 member and a light member is fatal
    gid = np.concatenate([[0], np.cumsum(~same)])
    light = np.zeros(gid[-1] + 1, dtype=bool)
    np.logical_or.at(light, gid, wts[order] <= a)
    size = np.bincount(gid)
    return not (light & (size > 1)).any()


def low_weight_check(matrix: GeneratorMatrix, d: int, budget: int = PATTERN_BUDGET) -> bool:
    """Parity-check route: no d-1 columns of H dependent, and a weight-d
    codeword exists.  Raises :class:`CodimensionTooLarge` when the pattern
    enumeration would exceed ``budget``."""
    F = matrix.spec.field
    H = matrix.parity_check()
    if not no_short_codewords(H, F, d, budget):
        return False
    w = min_weight_witness(matrix.spec)
    return int(np.count_nonzero(w)) == d and in_row_space(matrix.rows, w, F)


def _block_subcode(G: np.ndarray, F: FieldTable, cols: np.ndarray) -> np.ndarray:
    """Generator rows of {x in rowspace(G) : x[cols] = 0}."""
    if cols.size == 0:
        return G
    N = null_space(G[:, cols].T, F)  # coefficient vectors c with c G[:, cols] = 0
    if N.shape[0] == 0:
        return np.zeros((0, G.shape[1]), dtype=np.uint8)
    out = np.zeros((N.shape[0], G.shape[1]), dtype=np.uint8)
    for j in range(G.shape[0]):
        out = F.add_table[out, F.mul_table[N[:, j, None], G[j][None, :]]]
    R, _ = rref(out, F)
    return R


def slice_lower_bound(G, F: FieldTable, block: int, cache: dict | None = None) -> int:
    """Lower bound on the minimum weight of rowspace(G) from a block split.

    Positions are cut into consecutive blocks of length ``block``.  A nonzero
    codeword whose zero blocks are exactly S lies in the subcode C_S vanishing
    on S, and its restriction to every other block is a nonzero word of the
    projection of C_S there; summing lower bounds for those projections
    (recursively, with blocks ``block // q``) and minimising over S bounds the
    weight.  Small codes are enumerated exactly.
    """
    if cache is None:
        cache = {}
    R, _ = rref(G, F)
    k, n = R.shape
    if k == 0:
        return math.inf
    key = (n, block, R.tobytes())
    if key in cache:
        return cache[key]
    if F.q**k <= ENUM_LIMIT or block == 0:
        val = enumerate_min_weight(R, F)
        cache[key] = val
        return val
    nb = n // block
    blocks = [np.arange(i * block, (i + 1) * block) for i in range(nb)]
    best = math.inf
    for size in range(nb):
        for S in combinations(range(nb), size):
            cols = np.concatenate([blocks[i] for i in S]) if S else np.zeros(0, dtype=np.int64)
            sub = _block_subcode(R, F, cols)
            if sub.shape[0] == 0:
                continue
            total = 0
            for c in range(nb):
                if c in S:
                    continue
                proj = sub[:, blocks[c]]
                if not proj.any():
                    total = math.inf
                    break
                total += slice_lower_bound(proj, F, block // F.q, cache)
                if total >= best:
                    break
            best = min(best, total)
    cache[key] = best
    return best


def measured_min_distance(matrix: GeneratorMatrix) -> tuple[int | None, str]:
    """Minimum distance of RM_q(r, m) measured without the closed formula.

    Routes: full enumeration when q**k <= 2**22; otherwise the parity-check
    test, or the block-split lower bound, applied to the weight of an explicit
    low-weight codeword.  Returns ``(d, route)``; ``d`` is None when the lower
    bound falls short of the witness (measurement inconclusive).
    """
    spec, F = matrix.spec, matrix.spec.field
    if F.q**matrix.k <= ENUM_LIMIT:
        return enumerate_min_weight(matrix.rows, F), "enumeration"
    witness = min_weight_witness(spec)
    if not in_row_space(matrix.rows, witness, F):
        raise AssertionError("weight witness is not a codeword")
    w = int(np.count_nonzero(witness))
    b = (w - 1) - (w - 1) // 2
    if _pattern_count(spec.n, F.q, b) <= PATTERN_BUDGET:
        ok = no_short_codewords(matrix.parity_check(), F, w)
        return (w if ok else None), "parity-check"
    lb = slice_lower_bound(matrix.rows, F, spec.n // spec.q)
    return (w if lb >= w else None), "slice-bound"


def grm_table(qs=(2, 3, 4, 5, 7, 8, 9), max_length: int = MAX_LENGTH):
    """Yield one dict per (q, m, r): formula vs. measured dimension and distance."""
    for q in qs:
        m = 1
        while q**m <= max_length:
            for r in range((q - 1) * m + 1):
                spec = GrmSpec(q, m, r)
                G, _ = grm_generate(spec, expand_limit=0)
                p = grm_params(q, m, r)
                d, route = measured_min_distance(G)
                yield {
                    "q": q,
                    "m": m,
                    "r": r,
                    "n": p.n,
                    "k_formula": p.k,
                    "k_rank": G.k,
                    "d_formula": p.d,
                    "d_measured": d,
                    "route": route,
                    "ok": p.k == G.k and p.d == d,
                }
            m += 1


@dataclass
class RmLikeCertificate:
    q: int
    m: int
    r: int
    size: int
    expected_size: int
    d: int | None
    expected_d: int
    violations: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "kind": "rm_like",
            "q": self.q,
            "m": self.m,
            "r": self.r,
            "size": self.size,
            "expected_size": self.expected_size,
            "d": self.d,
            "expected_d": self.expected_d,
            "violations": self.violations,
            "verdict": self.verdict,
        }


def is_rm_like(C: Code, q: int, m: int, r: int) -> RmLikeCertificate:
    """Same length, size and minimum distance as RM_q(r, m); linearity is not required."""
    p = grm_params(q, m, r)
    expected_size = q**p.k
    violations = []
    if C.space.orders != (q,) * p.n:
        violations.append(f"space {C.space.orders} is not F_{q}^{p.n}")
    if C.size != expected_size:
        violations.append(f"size {C.size} != {expected_size}")
    d = minimum_distance(C) if C.size > 1 else None
    if C.size > 1 and d != p.d:
        violations.append(f"minimum distance {d} != {p.d}")
    return RmLikeCertificate(q, m, r, C.size, expected_size, d, p.d, violations)
