"""Distance-2 MDS codes, Latin hypercubes and n-ary quasigroups.

Quasigroup symbols are 1-based ``{1..k}``; code symbols are 0-based field
indices.  The only conversion between the two is :func:`symbol_to_index` /
:func:`index_to_symbol` (symbol ``j`` is field element index ``j - 1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from .galois import is_prime_power, make_field
from .space import Code, MixedSpace, SingletonCode, minimum_distance

TABLE_LIMIT = 1 << 20


class MdsError(ValueError):
    pass


class NotLatin(MdsError):
    pass


class NotMds2(MdsError):
    pass


class TooLarge(MdsError):
    pass


class ShapeMismatch(MdsError):
    pass


def symbol_to_index(table) -> np.ndarray:
    """1-based quasigroup symbols -> 0-based field indices."""
    return np.asarray(table, dtype=np.int64) - 1


def index_to_symbol(values) -> np.ndarray:
    """0-based field indices -> 1-based quasigroup symbols."""
    return np.asarray(values, dtype=np.int64) + 1


def latin_violation(table: np.ndarray) -> str | None:
    """None when every axis-aligned line of ``table`` is a permutation of 1..k."""
    k = table.shape[0] if table.ndim else 1
    if any(s != k for s in table.shape):
        return f"table shape {table.shape} is not a cube of side {k}"
    if table.size and (table.min() < 1 or table.max() > k):
        return f"symbols outside 1..{k}"
    want = np.arange(1, k + 1)
    for axis in range(table.ndim):
        lines = np.sort(np.moveaxis(table, axis, -1).reshape(-1, k), axis=1)
        bad = np.flatnonzero((lines != want).any(axis=1))
        if bad.size:
            return f"argument {axis + 1}: line {int(bad[0])} is not a permutation"
    return None


class Quasigroup:
    """An n-ary quasigroup of order k given by its dense table.

    ``table[j2-1, ..., j_{n+1}-1]`` is ``f(j2, ..., j_{n+1})`` in ``{1..k}``.
    """

    def __init__(self, table, check: bool = True):
        t = np.array(table, dtype=np.int64)
        if t.ndim == 0:
            raise NotLatin("a quasigroup needs at least one argument")
        if t.size > TABLE_LIMIT:
            raise TooLarge(f"table of {t.size} cells exceeds {TABLE_LIMIT}")
        if check:
            why = latin_violation(t)
            if why:
                raise NotLatin(why)
        t.setflags(write=False)
        self.table = t

    @property
    def arity(self) -> int:
        return self.table.ndim

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __call__(self, *args: int) -> int:
        return int(self.table[tuple(a - 1 for a in args)])

    def __eq__(self, other):
        return isinstance(other, Quasigroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.table.shape, self.table.tobytes()))

    def __repr__(self):
        return f"Quasigroup(arity={self.arity}, order={self.order})"

    def isotope(self, arg_perms, out_perm=None) -> "Quasigroup":
        """h(x) = out(f(p_1(x_1), ..., p_n(x_n))); perms are 0-based arrays."""
        t = self.table
        for axis, p in enumerate(arg_perms):
            t = np.take(t, np.asarray(p), axis=axis)
        if out_perm is not None:
            t = index_to_symbol(np.asarray(out_perm)[symbol_to_index(t)])
        return Quasigroup(t, check=False)


LatinHypercube = Quasigroup


def code_from_quasigroup(g: Quasigroup, q: int | None = None) -> Code:
    """{(x_1, ..., x_{n-1}, g(x)) } over F_q, with symbols shifted to field indices."""
    q = g.order if q is None else q
    if q != g.order:
        raise NotLatin(f"quasigroup of order {g.order} cannot label F_{q}")
    make_field(q)
    args = np.array(list(product(range(q), repeat=g.arity)), dtype=np.uint8).reshape(-1, g.arity)
    last = symbol_to_index(g.table.reshape(-1)).astype(np.uint8)
    words = np.column_stack([args, last])
    return Code(MixedSpace.qary(q, g.arity + 1), words, require_zero=False)


@dataclass
class Mds2Certificate:
    n: int
    q: int
    size: int
    expected_size: int
    d: int | None
    deletion_bijective: list[bool]
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "kind": "mds2",
            "n": self.n,
            "q": self.q,
            "size": self.size,
            "expected_size": self.expected_size,
            "d": self.d,
            "deletion_bijective": self.deletion_bijective,
            "violations": self.violations,
            "verdict": self.verdict,
        }


def is_mds2(C: Code) -> Mds2Certificate:
    """Size q^(n-1) and distance 2, cross-checked against the coordinate-deletion
    criterion (every single-coordinate deletion is a bijection onto F_q^(n-1))."""
    if not C.space.is_qary:
        return Mds2Certificate(C.n, 0, C.size, 0, None, [], ["mixed alphabets"])
    q, n = C.space.q, C.n
    expected = q ** (n - 1)
    try:
        d = minimum_distance(C)
    except SingletonCode:
        d = None
    violations = []
    if C.size != expected:
        violations.append(f"size {C.size} != q^(n-1) = {expected}")
    if n < 2:
        violations.append("length must be at least 2")
    elif d != 2:
        violations.append(f"minimum distance {d} != 2")
    bij = []
    if n >= 2:
        for i in range(n):
            sub = MixedSpace.qary(q, n - 1)
            idx = sub.encode(np.delete(C.words, i, axis=1))
            bij.append(C.size == expected and np.unique(idx).size == expected)
    by_params = not violations
    if n >= 2 and by_params != all(bij):
        raise AssertionError("distance-2 MDS criteria disagree")
    return Mds2Certificate(n, q, C.size, expected, d, bij, violations)


def quasigroup_from_code(C: Code) -> Quasigroup:
    cert = is_mds2(C)
    if not cert.passed:
        raise NotMds2("; ".join(cert.violations))
    q, n = C.space.q, C.n
    table = np.zeros((q,) * (n - 1), dtype=np.int64)
    W = C.words.astype(np.int64)
    table[tuple(W[:, :-1].T)] = index_to_symbol(W[:, -1])
    return Quasigroup(table)


def linear_mds2(q: int, n: int) -> Code:
    """The zero-sum code {x in F_q^n : x_1 + ... + x_n = 0}."""
    F = make_field(q)
    if not 1 <= n <= 16:
        raise ValueError(f"length {n} outside [1, 16]")
    space = MixedSpace.qary(q, n)
    MixedSpace.qary(q, n - 1 if n > 1 else 1).check_gate("zero-sum code")
    head = np.array(list(product(range(q), repeat=n - 1)), dtype=np.uint8).reshape(-1, n - 1)
    s = np.zeros(head.shape[0], dtype=np.uint8)
    for j in range(n - 1):
        s = F.add_table[s, head[:, j]]
    return Code(space, np.column_stack([head, F.neg_table[s]]))


def _group_structures(k: int):
    """(name, add, mul_units) pairs: F_k when k is a prime power, and Z_k."""
    out = []
    if is_prime_power(k):
        F = make_field(k)
        out.append(("F", F.add_table.astype(np.int64), F.mul_table.astype(np.int64), list(range(1, k))))
    z = np.arange(k)
    add = (z[:, None] + z[None, :]) % k
    mul = (z[:, None] * z[None, :]) % k
    units = [u for u in range(1, k) if np.gcd(u, k) == 1] if k > 1 else [0]
    out.append(("Z", add, mul, units))
    return out


def affine_quasigroups(k: int, arity: int, limit: int | None = None):
    """c + sum lambda_i x_i over F_k and over Z_k, invertible lambda_i, deduplicated."""
    if k**arity > TABLE_LIMIT:
        raise TooLarge(f"{k}^{arity} cells exceed {TABLE_LIMIT}")
    seen = set()
    args = np.array(list(product(range(k), repeat=arity)), dtype=np.int64).reshape(-1, arity)
    for _, add, mul, units in _group_structures(k):
        for lams in product(units, repeat=arity):
            lin = np.zeros(args.shape[0], dtype=np.int64)
            for i, lam in enumerate(lams):
                lin = add[lin, mul[lam, args[:, i]]]
            for c in range(k):
                vals = add[c, lin]
                key = vals.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                yield Quasigroup(index_to_symbol(vals).reshape((k,) * arity), check=False)
                if limit is not None and len(seen) >= limit:
                    return


def order4_representatives() -> list[Quasigroup]:
    """Representatives of the two main classes of order-4 Latin squares:
    the Klein-group table (F_4 addition) and the cyclic Z_4 table."""
    F = make_field(4)
    z = np.arange(4)
    klein = index_to_symbol(F.add_table.astype(np.int64))
    cyclic = index_to_symbol((z[:, None] + z[None, :]) % 4)
    return [Quasigroup(klein), Quasigroup(cyclic)]


def quasigroup_library(
    k: int,
    arity: int,
    isotopies=(),
    tables=(),
    limit: int | None = None,
) -> list[Quasigroup]:
    """Deterministic library: affine quasigroups, their isotopes under the
    supplied ``(arg_perms, out_perm)`` pairs, order-4 main-class
    representatives when k = 4 and arity = 2, and explicit ``tables``."""
    if k**arity > TABLE_LIMIT:
        raise TooLarge(f"{k}^{arity} cells exceed {TABLE_LIMIT}")
    base = list(affine_quasigroups(k, arity, limit))
    if k == 4 and arity == 2:
        base += order4_representatives()
    out = list(base)
    for arg_perms, out_perm in isotopies:
        out += [g.isotope(arg_perms, out_perm) for g in base]
    out += [t if isinstance(t, Quasigroup) else Quasigroup(t) for t in tables]
    uniq = list(dict.fromkeys(out))
    return uniq[:limit] if limit is not None else uniq


def are_isotopic(g: Quasigroup, h: Quasigroup) -> bool:
    """Exhaustive isotopy test over all argument permutations; the output
    permutation is then forced cell by cell."""
    if g.table.shape != h.table.shape:
        return False
    k = g.order
    perms = [np.array(p) for p in permutations(range(k))]
    hv = symbol_to_index(h.table).reshape(-1)
    for ps in product(perms, repeat=g.arity):
        gv = symbol_to_index(g.isotope(ps).table).reshape(-1)
        out = np.full(k, -1)
        out[gv] = hv
        if (out >= 0).all() and np.array_equal(out[gv], hv) and np.unique(out).size == k:
            return True
    return False


def orthogonal_pair_check(h1: Quasigroup, h2: Quasigroup) -> bool:
    """True iff every 2-dimensional slice of the superposition contains each
    ordered symbol pair exactly once."""
    if h1.table.shape != h2.table.shape:
        raise ShapeMismatch(f"{h1.table.shape} vs {h2.table.shape}")
    k, n = h1.order, h1.arity
    if n < 2:
        raise ShapeMismatch("orthogonality needs dimension at least 2")
    pair = symbol_to_index(h1.table) * k + symbol_to_index(h2.table)
    want = np.arange(k * k)
    for i in range(n):
        for j in range(i + 1, n):
            sl = np.moveaxis(pair, (i, j), (-2, -1)).reshape(-1, k * k)
            if not (np.sort(sl, axis=1) == want).all():
                return False
    return True


def enumerate_latin_hypercubes(k: int, dim: int):
    """Yield every Latin hypercube of order k and dimension ``dim`` by
    cell-by-cell backtracking in lexicographic cell order."""
    if k**dim > 4096:
        raise TooLarge("exhaustive enumeration is limited to 4096 cells")
    cells = list(product(range(k), repeat=dim))
    table = np.zeros((k,) * dim, dtype=np.int64)
    # used[axis][line key] = bitmask of symbols already placed on that line
    used = [dict() for _ in range(dim)]
    keys = [[c[:a] + c[a + 1 :] for a in range(dim)] for c in cells]
    full = (1 << k) - 1

    def rec(pos):
        if pos == len(cells):
            yield Quasigroup(table.copy(), check=False)
            return
        ks = keys[pos]
        taken = 0
        for a in range(dim):
            taken |= used[a].get(ks[a], 0)
        free = full & ~taken
        for s in range(k):
            bit = 1 << s
            if free & bit:
                table[cells[pos]] = s + 1
                for a in range(dim):
                    used[a][ks[a]] = used[a].get(ks[a], 0) | bit
                yield from rec(pos + 1)
                for a in range(dim):
                    used[a][ks[a]] &= ~bit

    yield from rec(0)


def distance2_mds_codes(q: int, n: int, containing_zero: bool = True) -> list[Code]:
    """All q-ary distance-2 MDS codes of length n, found by exhaustive search."""
    codes = [code_from_quasigroup(g, q) for g in enumerate_latin_hypercubes(q, n - 1)]
    if containing_zero:
        codes = [c for c in codes if c.contains_zero]
    return codes
