"""Constructions of 1-perfect mixed codes and their ingredients.

Conventions shared by every construction here:

* class ``i`` of an ingredient partition is paired with the field element of
  index ``i`` (0-based), matching the class order of :mod:`perfmix.partition`;
* a subgroup of order q^d in a subgroup partition is labelled by F_{q^d}
  through its reduced echelon basis: base-p digit ``j`` of an element index
  (least significant first) multiplies the j-th F_p-basis vector;
* quasigroups take and return 1-based class numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .galois import make_field
from .linalg import null_space, rref, span_words
from .mdsq import Quasigroup, affine_quasigroups
from .partition import (
    Partition,
    check_cover,
    coset_partition_rm,
    split_by_syndrome,
    validate_partition,
)
from .space import Code, MixedSpace, is_perfect


class ConstructionError(ValueError):
    pass


class NotAPartition(ConstructionError):
    pass


class BadParameters(ConstructionError):
    pass


class SphereMismatch(ConstructionError):
    pass


class PartitionShapeMismatch(ConstructionError):
    pass


class InvalidPartition(ConstructionError):
    pass


class ExcludedParameters(ConstructionError):
    pass


class NotPerfect(ConstructionError):
    pass


class ShapeMismatch(ConstructionError):
    pass


class ClassCountMismatch(ConstructionError):
    pass


class NotAPartitionOfSpace(ConstructionError):
    pass


class DegenerateOrder(ConstructionError):
    pass


class BadQuasigroupShape(ConstructionError):
    pass


def _classes(p) -> list[Code]:
    return list(p.classes) if isinstance(p, Partition) else list(p)


def concat_product(parts) -> np.ndarray:
    """All concatenations (u_1 | ... | u_k) with u_i a row of ``parts[i]``;
    the first part varies slowest."""
    out = np.zeros((1, 0), dtype=np.uint8)
    for P in parts:
        P = np.asarray(P, dtype=np.uint8)
        out = np.concatenate(
            [np.repeat(out, P.shape[0], axis=0), np.tile(P, (out.shape[0], 1))], axis=1
        )
    return out


# ---------------------------------------------------------------- subgroups


class SubgroupPartition:
    """Subspaces G_1..G_n of F_q^m (given by basis rows over F_q) that cover
    the space and meet pairwise in zero."""

    def __init__(self, q: int, m: int, bases, check: bool = True):
        self.q, self.m = q, m
        F = make_field(q)
        self.bases = [rref(np.asarray(b, dtype=np.uint8).reshape(-1, m), F)[0] for b in bases]
        if check:
            why = self.violation()
            if why:
                raise NotAPartition(why)

    @property
    def n(self) -> int:
        return len(self.bases)

    @property
    def dims(self) -> list[int]:
        return [b.shape[0] for b in self.bases]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.q**d for d in self.dims)

    def elements(self, i: int) -> np.ndarray:
        """Elements of G_i as vectors, row e is the element labelled e."""
        F = make_field(self.q)
        fb = self.fp_basis(i)
        p = F.p
        d = fb.shape[0]
        digits = np.array(list(product(range(p), repeat=d)), dtype=np.uint8)[:, ::-1]
        # digits[:, j] is base-p digit j of the label (least significant first)
        out = np.zeros((digits.shape[0], self.m), dtype=np.uint8)
        for j in range(d):
            out = F.add_table[out, F.mul_table[digits[:, j, None], fb[j][None, :]]]
        return out

    def fp_basis(self, i: int) -> np.ndarray:
        """F_p-basis of G_i: for each echelon row b and t < s, (x^t) b, with
        x^t the field element of index p^t."""
        F = make_field(self.q)
        rows = []
        for b in self.bases[i]:
            for t in range(F.t):
                rows.append(F.mul_table[F.p**t, b])
        return np.array(rows, dtype=np.uint8).reshape(-1, self.m)

    def violation(self) -> str | None:
        space = MixedSpace.qary(self.q, self.m)
        total = 0
        seen = np.zeros(space.size, dtype=np.int64)
        for i in range(self.n):
            if self.bases[i].shape[0] == 0:
                return f"G_{i + 1} is trivial"
            idx = space.encode(self.elements(i))
            seen[idx] += 1
            total += idx.size - 1
        if seen[0] != self.n or (seen[1:] != 1).any() or total != space.size - 1:
            return "subgroups do not partition the space"
        if self.n < 2:
            return "need at least two subgroups"
        return None


def hs_subgroup_partition(q: int, m: int, alpha: int) -> SubgroupPartition:
    """W = span(e_1..e_alpha) plus every line of F_q^m outside W.

    Lines have generators whose last nonzero coordinate is 1; they are grouped
    by that position, and inside a group ordered by the head (coordinates
    before it) read as a base-q number, first coordinate least significant,
    with the zero head last."""
    if not m > alpha >= 2:
        raise BadParameters(f"need m > alpha >= 2, got m={m}, alpha={alpha}")
    if q**m > 1 << 14:
        raise BadParameters(f"q^m = {q**m} exceeds 2^14")
    make_field(q)
    W = np.eye(alpha, m, dtype=np.uint8)
    bases = [W]
    for piv in range(alpha, m):
        heads = list(product(range(q), repeat=piv))
        keyed = []
        for h in heads:
            idx = sum(x * q**j for j, x in enumerate(h))
            keyed.append((idx == 0, idx, h))
        for _, _, h in sorted(keyed):
            g = np.zeros(m, dtype=np.uint8)
            g[:piv] = h
            g[piv] = 1
            bases.append(g[None, :])
    sp = SubgroupPartition(q, m, bases)
    assert sp.n == 1 + (q**m - q**alpha) // (q - 1)
    return sp


def herzog_schonheim(sp: SubgroupPartition) -> Code:
    """{(g_1, ..., g_n) in G_1 x ... x G_n : g_1 + ... + g_n = 0}."""
    why = sp.violation()
    if why:
        raise NotAPartition(why)
    F = make_field(sp.q)
    Fp = make_field(F.p)
    # columns: F_p-basis vectors of every G_i, expanded to F_p digits
    cols, owner = [], []
    for i in range(sp.n):
        for v in sp.fp_basis(i):
            digits = [(int(x) // F.p**t) % F.p for x in v for t in range(F.t)]
            cols.append(digits)
            owner.append(i)
    M = np.array(cols, dtype=np.uint8).T
    K = null_space(M, Fp)
    space = MixedSpace(sp.orders)
    space.check_gate("Herzog-Schonheim code")
    coeffs = span_words(K, Fp) if K.shape[0] else np.zeros((1, M.shape[1]), dtype=np.uint8)
    owner = np.array(owner)
    words = np.zeros((coeffs.shape[0], sp.n), dtype=np.int64)
    for i in range(sp.n):
        c = coeffs[:, owner == i].astype(np.int64)
        words[:, i] = (c * (F.p ** np.arange(c.shape[1]))).sum(axis=1)
    return Code(space, words.astype(np.uint8))


# ----------------------------------------------------------------- Hamming


def hamming_parity_check(q: int, m: int) -> np.ndarray:
    """Columns: every nonzero vector of F_q^m whose first nonzero entry is 1, lexicographically."""
    make_field(q)
    cols = [
        v
        for v in product(range(q), repeat=m)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]
    return np.array(cols, dtype=np.uint8).T


def hamming_code(q: int, m: int) -> Code:
    F = make_field(q)
    H = hamming_parity_check(q, m)
    n = H.shape[1]
    space = MixedSpace.qary(q, n)
    space.check_gate("Hamming code")
    return Code(space, span_words(null_space(H, F), F))


def hamming_coset_partition(q: int, m: int) -> Partition:
    """F_q^N, N = (q^m - 1)/(q - 1), split into the q^m cosets of the Hamming code."""
    F = make_field(q)
    H = hamming_parity_check(q, m)
    space = MixedSpace.qary(q, H.shape[1])
    space.check_gate("Hamming coset partition")
    full = Code(space, space.all_words(), _trusted=True)
    return Partition(full, split_by_syndrome(full, H, F))


def full_space_partition_check(classes, space: MixedSpace) -> str | None:
    full = Code(space, space.all_words(), _trusted=True)
    errs = check_cover(Partition(full, classes, canonical=False))
    return "; ".join(errs) or None


# ------------------------------------------------------------------ Heden


def heden_substitute(Cp: Code, partition, position: int | None = None) -> Code:
    """Replace the symbol w_i at ``position`` by every word of class i.

    Output coordinates are (Cp's coordinates minus ``position`` | class coordinates).
    """
    classes = _classes(partition)
    if position is None:
        position = Cp.n - 1
    qm = Cp.space.orders[position]
    if not classes:
        raise NotAPartition("empty partition")
    V = classes[0].space
    if V.sphere_size(1) != qm:
        raise SphereMismatch(f"radius-1 sphere in {V} has {V.sphere_size(1)} words, alphabet has {qm}")
    if len(classes) != qm:
        raise NotAPartition(f"{len(classes)} classes for an alphabet of order {qm}")
    why = full_space_partition_check(classes, V)
    if why:
        raise NotAPartition(why)
    rest = np.delete(Cp.words, position, axis=1)
    sym = Cp.words[:, position]
    out = []
    for i, c in enumerate(classes):
        sel = rest[sym == i]
        if sel.shape[0]:
            out.append(_pair_all(sel, c.words))
    space = Cp.space.drop(position).concat(V)
    return Code(space, np.concatenate(out), require_zero=False)


def _pair_all(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Every (a | b), a from A, b from B."""
    return concat_product([A, B])


def heden_chain(start: Code | None = None, partition=None):
    """Repeated substitution into the last F_4 coordinate: from the Hamming
    [5,3,3]_4 code with the cosets of {000, 111} down to a binary code of length 15."""
    C = hamming_code(4, 2) if start is None else start
    part = hamming_coset_partition(2, 2) if partition is None else partition
    out = []
    while any(o == 4 for o in C.space.orders):
        pos = max(i for i, o in enumerate(C.space.orders) if o == 4)
        C = heden_substitute(C, part, pos)
        out.append(C)
    return out


# ---------------------------------------------------------------- doubling


def doubling(Cp_list, Cpp_list, perm=None) -> Code:
    """{(u | v) : u in C'_i, v in C''_{perm[i]}}; perm is 0-based."""
    A, B = _classes(Cp_list), _classes(Cpp_list)
    if len(A) != len(B):
        raise PartitionShapeMismatch(f"{len(A)} vs {len(B)} classes")
    perm = list(range(len(A))) if perm is None else [int(x) for x in perm]
    if sorted(perm) != list(range(len(A))):
        raise PartitionShapeMismatch(f"not a permutation of {len(A)} classes: {perm}")
    space = A[0].space.concat(B[0].space)
    words = np.concatenate([_pair_all(A[i].words, B[perm[i]].words) for i in range(len(A))])
    return Code(space, words, require_zero=False)


# ------------------------------------------------- mixed code from partition


def theorem4_construct(p: Partition, check: bool = True) -> Code:
    """{(w_i | v) : v in class i} in F_n x F_q^n."""
    if p.class_params is None:
        raise InvalidPartition("partition declares no class parameters")
    q, m, _ = p.class_params
    if (q, m) == (2, 1):
        raise ExcludedParameters("(q, m) = (2, 1) is excluded")
    if check:
        cert = validate_partition(p)
        if not cert.passed:
            raise InvalidPartition("; ".join(cert.violations))
    n = len(p.classes)
    make_field(n)
    words = np.concatenate(
        [
            np.column_stack([np.full(c.size, i, dtype=np.uint8), c.words])
            for i, c in enumerate(p.classes)
        ]
    )
    return Code(MixedSpace((n,) + p.space.orders), words, require_zero=False)


def theorem4_extract(C: Code, check: bool = True) -> Partition:
    """Classes {v : (w_i | v) in C}; the converse of :func:`theorem4_construct`."""
    n = C.space.orders[0]
    rest = C.space.orders[1:]
    if len(set(rest)) != 1 or len(rest) != n:
        raise ShapeMismatch(f"{C.space} is not F_n x F_q^n")
    q = rest[0]
    m = round(np.log(n) / np.log(q))
    if q**m != n:
        raise ShapeMismatch(f"n = {n} is not a power of q = {q}")
    if check and not is_perfect(C).passed:
        raise NotPerfect("code is not 1-perfect")
    space = MixedSpace(rest)
    classes = []
    for i in range(n):
        sel = C.words[C.words[:, 0] == i, 1:]
        if sel.shape[0] == 0:
            raise ShapeMismatch(f"no codeword starts with symbol {i}")
        classes.append(Code(space, sel, require_zero=False))
    target = classes[0].union(*classes[1:])
    return Partition(target, classes, (q, m, (q - 1) * m - 2), canonical=False)


# ---------------------------------------------------------- concatenation


def theorem5_concatenate(p: Partition, hp, perm=None) -> Code:
    """{(u | v) : u in C'_i, v in C''_{perm[i]}} with hp a partition of
    F_q^((n-1)/(q-1)) into 1-perfect codes (Hamming cosets by default)."""
    A, B = _classes(p), _classes(hp)
    if len(A) != len(B):
        raise ClassCountMismatch(f"{len(A)} vs {len(B)} classes")
    return doubling(A, B, perm)


# ------------------------------------------------------------ products


def _parity_classes_partition(A_list) -> list[Code]:
    A = _classes(A_list)
    if not A:
        raise NotAPartitionOfSpace("empty list")
    why = full_space_partition_check(A, A[0].space)
    if why:
        raise NotAPartitionOfSpace(why)
    return A


def prop1_product(A_list, B: Code) -> Code:
    """{(u_1 | ... | u_L) : u_i in A^{v_i}, v in B}; A^c is ``A_list[c]``."""
    A = _parity_classes_partition(A_list)
    q = B.space.q
    if len(A) != q:
        raise NotAPartitionOfSpace(f"{len(A)} classes for q = {q}")
    space = MixedSpace(A[0].space.orders * B.n)
    space.check_gate("product code")
    words = np.concatenate([concat_product([A[c].words for c in v]) for v in B.words])
    return Code(space, words, require_zero=False)


@dataclass
class ProductSpec:
    """m1, m2 and one quasigroup per codeword of B (in B's word order)."""

    q: int
    m1: int
    m2: int
    assignment: tuple

    def __post_init__(self):
        N, L = self.q**self.m1, self.q**self.m2
        self.assignment = tuple(self.assignment)
        for g in self.assignment:
            if g.arity != L - 1 or g.order != N:
                raise BadQuasigroupShape(
                    f"need arity {L - 1} and order {N}, got arity {g.arity} and order {g.order}"
                )

    def quasigroup(self, k: int) -> Quasigroup:
        # sibling classes reuse the assignment cyclically
        return self.assignment[k % len(self.assignment)]


def default_product_spec(q: int, m1: int, m2: int, slots: int) -> ProductSpec:
    """Every slot gets j_1 = j_2 + ... + j_L over F_N (the first affine quasigroup)."""
    g = next(affine_quasigroups(q**m1, q**m2 - 1))
    return ProductSpec(q, m1, m2, (g,) * slots)


def default_a_partitions(q: int, m1: int) -> list[Partition]:
    """A^k: the coset partition of the zero-sum code translated by k e_1."""
    base = coset_partition_rm(q, m1)
    out = []
    for k in range(q):
        shift = np.zeros(base.space.n, dtype=np.uint8)
        shift[0] = k
        out.append(
            Partition(
                base.target.translate(shift),
                [c.translate(shift) for c in base.classes],
                base.class_params,
                canonical=False,
            )
        )
    return out


def _check_orders(q: int, m1: int, m2: int):
    for m in (m1, m2):
        if (q - 1) * m - 2 < 0:
            raise DegenerateOrder(f"(q-1)m - 2 < 0 for q={q}, m={m}")


def _product_words(A_partitions, B: Code, spec: ProductSpec, shift: int = 0, offset: int = 0):
    N = spec.q**spec.m1
    L = B.n
    blocks = []
    args = list(product(range(1, N + 1), repeat=L - 1))
    for k, v in enumerate(B.words):
        g = spec.quasigroup(offset + k)
        for rest in args:
            j1 = (g(*rest) - 1 + shift) % N + 1
            js = (j1,) + rest
            blocks.append(
                concat_product([A_partitions[int(v[i])].classes[js[i] - 1].words for i in range(L)])
            )
    return np.concatenate(blocks)


def theorem6_product(A_partitions, B: Code, spec: ProductSpec) -> Code:
    """{(u_1 | ... | u_L) : u_i in A^{v_i}_{j_i}, v in B, j_1 = q_v(j_2, ..., j_L)}."""
    q, m1, m2 = spec.q, spec.m1, spec.m2
    _check_orders(q, m1, m2)
    if B.n != q**m2 or B.space.q != q:
        raise BadQuasigroupShape(f"B must be a q-ary code of length {q**m2}")
    if len(spec.assignment) < B.size:
        raise BadQuasigroupShape(f"{len(spec.assignment)} quasigroups for {B.size} codewords")
    A = list(A_partitions)
    if len(A) != q or any(len(a.classes) != q**m1 for a in A):
        raise BadQuasigroupShape(f"need {q} partitions of {q**m1} classes")
    space = MixedSpace.qary(q, q ** (m1 + m2))
    return Code(space, _product_words(A, B, spec), require_zero=False)


def theorem6_siblings(A_partitions, B_partition: Partition, spec: ProductSpec) -> Partition:
    """All q^(m1+m2) classes: for each class B_t of ``B_partition`` and each
    cyclic shift s of j_1, the code built with j_1 = q_v(...) + s.  Their
    union is the product of the A-targets with the target of ``B_partition``."""
    q, m1, m2 = spec.q, spec.m1, spec.m2
    _check_orders(q, m1, m2)
    N = q**m1
    space = MixedSpace.qary(q, q ** (m1 + m2))
    classes = []
    for t, Bt in enumerate(B_partition.classes):
        for s in range(N):
            w = _product_words(A_partitions, Bt, spec, shift=s, offset=0)
            classes.append(Code(space, w, require_zero=False))
    target = prop1_product([a.target for a in A_partitions], B_partition.target)
    r = (q - 1) * (m1 + m2) - 2
    return Partition(target, classes, (q, m1 + m2, r))


def product_example(q: int, m1: int, m2: int, spec: ProductSpec | None = None):
    """(A partitions, B partition, spec) with default ingredients; B is the zero class."""
    _check_orders(q, m1, m2)
    A = default_a_partitions(q, m1)
    Bp = coset_partition_rm(q, m2)
    if spec is None:
        spec = default_product_spec(q, m1, m2, Bp.classes[0].size)
    return A, Bp, spec
