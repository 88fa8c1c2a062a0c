"""Mixed product spaces F_1 x ... x F_n, codes in them, and their parameters.

Words are stored as rows of a ``uint8`` array, one symbol per byte.  The
canonical order of words is lexicographic over symbol indices, which equals
numeric order of the mixed-radix index with the first coordinate most
significant; every "fixed order" used elsewhere in the package is this one.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

import networkx as nx
import numpy as np

from . import kernels
from .galois import FieldTable, make_field

DEFAULT_GATE = 1 << 25
HARD_GATE = 1 << 28
_gate = DEFAULT_GATE


class SpaceError(ValueError):
    pass


class SpaceMismatch(SpaceError):
    pass


class SpaceTooLarge(SpaceError):
    pass


class SingletonCode(SpaceError):
    pass


class MixedAlphabets(SpaceError):
    pass


class AlphabetMultisetMismatch(SpaceError):
    pass


class ZeroWordMissing(SpaceError):
    pass


def get_gate() -> int:
    return _gate


def set_gate(value: int) -> int:
    """Set the brute-force gate on |V|; returns the previous value."""
    global _gate
    if not 1 <= value <= HARD_GATE:
        raise ValueError(f"gate must lie in [1, 2**28], got {value}")
    old, _gate = _gate, int(value)
    return old


class MixedSpace:
    """Cartesian product of finite fields with the given orders."""

    def __init__(self, orders):
        orders = tuple(int(q) for q in orders)
        if not orders:
            raise SpaceError("a space needs at least one coordinate")
        self.orders = orders
        self.fields: tuple[FieldTable, ...] = tuple(make_field(q) for q in orders)
        self.n = len(orders)
        self.size = math.prod(orders)
        strides = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            strides[i] = strides[i + 1] * orders[i + 1]
        self._strides = strides
        self._orders_arr = np.array(orders, dtype=np.int64)

    @classmethod
    def qary(cls, q: int, n: int) -> "MixedSpace":
        return cls([q] * n)

    def __eq__(self, other):
        return isinstance(other, MixedSpace) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return f"MixedSpace{self.orders}"

    def __len__(self):
        return self.n

    @property
    def is_qary(self) -> bool:
        return len(set(self.orders)) == 1

    @property
    def q(self) -> int:
        if not self.is_qary:
            raise MixedAlphabets(f"{self} mixes alphabets of orders {sorted(set(self.orders))}")
        return self.orders[0]

    @property
    def field(self) -> FieldTable:
        return make_field(self.q)

    @property
    def indexable(self) -> bool:
        return self.size < 2**62

    def concat(self, other: "MixedSpace") -> "MixedSpace":
        return MixedSpace(self.orders + other.orders)

    def drop(self, position: int) -> "MixedSpace":
        return MixedSpace(self.orders[:position] + self.orders[position + 1:])

    def check_gate(self, what: str = "enumeration") -> None:
        if self.size > _gate:
            raise SpaceTooLarge(f"{what} over |V| = {self.size} exceeds the gate {_gate}")

    def encode(self, words) -> np.ndarray:
        words = np.asarray(words, dtype=np.int64)
        if not self.indexable:
            raise SpaceTooLarge(f"{self} is too large for integer word indices")
        return words @ np.array(self._strides, dtype=np.int64)

    def decode(self, indices) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        out = np.empty((idx.shape[0], self.n), dtype=np.uint8)
        for i, (s, q) in enumerate(zip(self._strides, self.orders)):
            out[:, i] = (idx // s) % q
        return out

    def all_words(self) -> np.ndarray:
        self.check_gate()
        return self.decode(np.arange(self.size, dtype=np.int64))

    def validate_words(self, words: np.ndarray) -> None:
        if words.ndim != 2 or words.shape[1] != self.n:
            raise SpaceMismatch(f"words of length {words.shape[-1]} do not fit {self}")
        if words.size and (words.max(axis=0) >= self._orders_arr).any():
            bad = int(np.flatnonzero((words >= self._orders_arr).any(axis=0))[0])
            raise SpaceMismatch(f"coordinate {bad} holds a symbol >= {self.orders[bad]}")

    def sphere_size(self, r: int) -> int:
        """|B_r| = sum over coordinate subsets S with |S| <= r of prod (q_i - 1)."""
        # elementary symmetric polynomials of (q_i - 1), built incrementally
        e = [1] + [0] * self.n
        for q in self.orders:
            for j in range(self.n, 0, -1):
                e[j] += e[j - 1] * (q - 1)
        return sum(e[: min(r, self.n) + 1])

    def neighbours(self, word) -> np.ndarray:
        """All words at distance exactly 1 from ``word``."""
        word = np.asarray(word, dtype=np.uint8)
        out = []
        for i, q in enumerate(self.orders):
            for a in range(q):
                if a != word[i]:
                    y = word.copy()
                    y[i] = a
                    out.append(y)
        return np.array(out, dtype=np.uint8).reshape(-1, self.n)


def _as_word_array(words, n: int) -> np.ndarray:
    if isinstance(words, np.ndarray):
        arr = words
    else:
        arr = np.array([tuple(w) for w in words], dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, n), dtype=np.uint8)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if (arr < 0).any() or (arr > 255).any():
        raise SpaceMismatch("symbols must be field indices")
    return arr.astype(np.uint8)


class Code:
    """A non-empty set of words of a :class:`MixedSpace`.

    Words are de-duplicated and kept in lexicographic order.  By default the
    zero word must belong to the code; pass ``require_zero=False`` for cosets,
    translates and other codes that are documented not to contain it.
    """

    def __init__(self, space: MixedSpace, words, require_zero: bool = True, *, _trusted=False):
        if not isinstance(space, MixedSpace):
            space = MixedSpace(space)
        self.space = space
        arr = _as_word_array(words, space.n)
        if not _trusted:
            space.validate_words(arr)
            if space.indexable:
                idx = np.unique(space.encode(arr))
                arr = space.decode(idx)
                self.__dict__["indices"] = idx
            else:
                arr = np.unique(arr, axis=0)
        if arr.shape[0] == 0:
            raise SpaceError("a code must be non-empty")
        arr.setflags(write=False)
        self.words = arr
        if require_zero and not self.contains_zero:
            raise ZeroWordMissing("code does not contain the zero word (pass require_zero=False)")

    @classmethod
    def from_indices(cls, space: MixedSpace, indices, require_zero: bool = True) -> "Code":
        idx = np.unique(np.asarray(indices, dtype=np.int64))
        code = cls(space, space.decode(idx), require_zero, _trusted=True)
        code.__dict__["indices"] = idx
        return code

    @cached_property
    def indices(self) -> np.ndarray:
        idx = self.space.encode(self.words)
        idx.setflags(write=False)
        return idx

    @property
    def size(self) -> int:
        return self.words.shape[0]

    @property
    def n(self) -> int:
        return self.space.n

    def __len__(self):
        return self.size

    def __iter__(self):
        return (tuple(int(s) for s in w) for w in self.words)

    def __contains__(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64).reshape(1, -1)
        if w.shape[1] != self.n:
            return False
        i = int(self.space.encode(w)[0])
        pos = np.searchsorted(self.indices, i)
        return pos < self.size and self.indices[pos] == i

    def __eq__(self, other):
        return (
            isinstance(other, Code)
            and self.space == other.space
            and self.size == other.size
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self):
        return hash((self.space.orders, self.digest))

    def __repr__(self):
        return f"Code(orders={self.space.orders}, size={self.size})"

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.space.orders).encode())
        h.update(self.words.tobytes())
        return h.hexdigest()

    @property
    def contains_zero(self) -> bool:
        return not self.words[0].any()

    @cached_property
    def minimum_distance(self) -> int:
        return minimum_distance(self)

    @cached_property
    def distance_distribution(self) -> np.ndarray:
        return kernels.pair_distance_histogram(self.words)

    def translate(self, shift) -> "Code":
        """Coordinate-wise field addition of ``shift`` to every word."""
        shift = np.asarray(shift, dtype=np.uint8)
        out = np.empty_like(self.words)
        for i, F in enumerate(self.space.fields):
            out[:, i] = F.add_table[self.words[:, i], shift[i]]
        return Code(self.space, out, require_zero=False)

    def union(self, *others: "Code", require_zero: bool = False) -> "Code":
        for o in others:
            if o.space != self.space:
                raise SpaceMismatch("union of codes from different spaces")
        return Code.from_indices(
            self.space, np.concatenate([self.indices] + [o.indices for o in others]), require_zero
        )

    # cached BFS over the whole space: (dist, label)
    def _bfs(self):
        cached = self.__dict__.get("_bfs_cache")
        if cached is None:
            self.space.check_gate("covering scan")
            cached = kernels.bfs_nearest(self.indices, self.space._orders_arr)
            self.__dict__["_bfs_cache"] = cached
        return cached


def _check_same_space(x, y):
    if len(x) != len(y):
        raise SpaceMismatch(f"words of lengths {len(x)} and {len(y)}")


def hamming_distance(x, y) -> int:
    """Number of coordinates where ``x`` and ``y`` differ."""
    _check_same_space(x, y)
    return int(np.count_nonzero(np.asarray(x) != np.asarray(y)))


def weight(x) -> int:
    return int(np.count_nonzero(np.asarray(x)))


def minimum_distance(C: Code, linear: bool = False) -> int:
    """Minimum distance over distinct pairs of codewords.

    ``linear=True`` takes the minimum nonzero weight instead, which is only
    correct when the caller knows ``C`` is closed under addition.  Otherwise
    the cheaper of two exact routes is used: the all-pairs histogram, or (when
    the space passes the gate) a multi-source BFS where the minimum distance
    equals the smallest ``dist(x) + dist(y) + 1`` over edges joining regions
    of different nearest codewords.
    """
    if C.size < 2:
        raise SingletonCode("minimum distance needs at least two codewords")
    if linear:
        w = np.count_nonzero(C.words, axis=1)
        return int(w[w > 0].min())
    pair_cost = C.size * (C.size - 1) // 2 * C.n
    bfs_cost = C.space.size * sum(q - 1 for q in C.space.orders) * 2
    if C.space.size <= _gate and C.space.indexable and bfs_cost < pair_cost:
        dist, label = C._bfs()
        return int(kernels.min_label_edge(dist, label, C.space._orders_arr))
    hist = C.distance_distribution
    return int(np.flatnonzero(hist[1:])[0]) + 1


def _ball_offsets(space: MixedSpace, radius: int):
    """Yield (positions, shifts) for every nonzero pattern of weight <= radius."""
    for w in range(1, radius + 1):
        for pos in combinations(range(space.n), w):
            for shifts in product(*[range(1, space.orders[i]) for i in pos]):
                yield pos, shifts


def ball_counts(C: Code, radius: int) -> np.ndarray:
    """For each word of V, the number of codewords within distance ``radius``."""
    space = C.space
    space.check_gate("sphere counting")
    counts = np.bincount(C.indices, minlength=space.size).astype(np.int64)
    digits = [(C.indices // s) % q for s, q in zip(space._strides, space.orders)]
    for pos, shifts in _ball_offsets(space, radius):
        idx = C.indices.copy()
        for i, s in zip(pos, shifts):
            q, stride = space.orders[i], space._strides[i]
            idx += (((digits[i] + s) % q) - digits[i]) * stride
        counts += np.bincount(idx, minlength=space.size)
    return counts


def packing_radius(C: Code) -> int:
    """Largest e such that radius-e spheres around codewords are disjoint.

    Computed twice, from the minimum distance and by direct sphere counting;
    the two must agree.
    """
    C.space.check_gate("packing radius")
    from_distance = (minimum_distance(C) - 1) // 2 if C.size > 1 else C.n
    direct = 0
    for e in range(1, C.n + 1):
        if ball_counts(C, e).max() > 1:
            break
        direct = e
    if direct != from_distance:
        raise AssertionError(f"packing radius mismatch: direct {direct} vs distance {from_distance}")
    return direct


def covering_radius(C: Code) -> int:
    """Maximum distance from a word of V to its nearest codeword (full scan)."""
    dist, _ = C._bfs()
    return int(dist.max())


@dataclass
class PerfectCertificate:
    e: int
    packing_radius: int
    covering_radius: int
    code_size: int
    sphere_size: int
    space_size: int
    minimum_distance: int | None
    orders: tuple = field(default=())

    @property
    def sphere_identity(self) -> bool:
        return self.code_size * self.sphere_size == self.space_size

    @property
    def quasi_perfect(self) -> bool:
        return self.covering_radius == self.packing_radius + 1

    @property
    def passed(self) -> bool:
        return (
            self.packing_radius == self.e
            and self.covering_radius == self.e
            and self.sphere_identity
        )

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "kind": "perfect",
            "orders": list(self.orders),
            "e_target": self.e,
            "e": self.packing_radius,
            "rho": self.covering_radius,
            "d": self.minimum_distance,
            "code_size": self.code_size,
            "sphere_size": self.sphere_size,
            "space_size": self.space_size,
            "sphere_identity": self.sphere_identity,
            "quasi_perfect": self.quasi_perfect,
            "verdict": self.verdict,
        }


def is_perfect(C: Code, e: int = 1) -> PerfectCertificate:
    """Certify ``C`` as e-perfect by full scans of the space."""
    C.space.check_gate("perfection check")
    d = minimum_distance(C) if C.size > 1 else None
    return PerfectCertificate(
        e=e,
        packing_radius=packing_radius(C),
        covering_radius=covering_radius(C),
        code_size=C.size,
        sphere_size=C.space.sphere_size(e),
        space_size=C.space.size,
        minimum_distance=d,
        orders=C.space.orders,
    )


def perfect_by_counting(C: Code, e: int = 1) -> bool:
    """Second route: d >= 2e+1 and |C| |B_e| = |V| (no covering scan)."""
    d = minimum_distance(C) if C.size > 1 else C.n + 1
    return d >= 2 * e + 1 and C.size * C.space.sphere_size(e) == C.space.size


def parity(space: MixedSpace, word) -> int:
    """Sum of the coordinates of a q-ary word in F_q."""
    return space.field.sum(int(s) for s in word)


def is_even(space: MixedSpace, word) -> bool:
    return parity(space, word) == 0


def is_additive(C: Code) -> bool:
    """True iff C contains 0 and is closed under coordinate-wise addition."""
    if not C.contains_zero:
        return False
    W = C.words
    for i in range(C.size):
        sums = np.empty_like(W)
        for j, F in enumerate(C.space.fields):
            sums[:, j] = F.add_table[W[i, j], W[:, j]]
        if not np.isin(C.space.encode(sums), C.indices).all():
            return False
    return True


def extend_code(C: Code) -> Code:
    """Append the symbol making every codeword even."""
    F = C.space.field
    sums = np.zeros(C.size, dtype=np.uint8)
    for j in range(C.n):
        sums = F.add_table[sums, C.words[:, j]]
    ext = np.hstack([C.words, F.neg_table[sums][:, None]])
    return Code(MixedSpace(C.space.orders + (F.q,)), ext, require_zero=C.contains_zero)


def relabel(C: Code, position: int, perm) -> Code:
    """Apply the symbol bijection ``perm`` to one coordinate of every codeword."""
    perm = np.asarray(perm, dtype=np.uint8)
    q = C.space.orders[position]
    if sorted(perm.tolist()) != list(range(q)):
        raise ValueError(f"not a permutation of F_{q}: {perm.tolist()}")
    W = C.words.copy()
    W[:, position] = perm[W[:, position]]
    return Code(C.space, W, require_zero=False)


# --------------------------------------------------------------------------
# equivalence


@dataclass
class Equivalence:
    verdict: str  # "equivalent" | "nonequivalent" | "unknown"
    sigma: list[int] | None = None
    pis: list[list[int]] | None = None
    invariant: str | None = None

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"

    @property
    def nonequivalent(self) -> bool:
        return self.verdict == "nonequivalent"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "sigma": self.sigma,
            "pis": self.pis,
            "invariant": self.invariant,
        }


def apply_equivalence(C: Code, sigma, pis, target_space: MixedSpace | None = None) -> Code:
    """Image of C under y[sigma[i]] = pis[i][x[i]]."""
    out = np.empty_like(C.words)
    for i, (j, pi) in enumerate(zip(sigma, pis)):
        out[:, j] = np.asarray(pi, dtype=np.uint8)[C.words[:, i]]
    space = target_space or MixedSpace([C.space.orders[sigma.index(j)] for j in range(C.n)])
    return Code(space, out, require_zero=False)


def coordinate_spectra(C: Code) -> list[tuple]:
    """Sorted multiset of (order, sorted symbol frequencies) per coordinate."""
    spec = []
    for i, q in enumerate(C.space.orders):
        freq = np.bincount(C.words[:, i], minlength=q)
        spec.append((q, tuple(sorted(freq.tolist()))))
    return sorted(spec)


def distance_profiles(C: Code) -> list[tuple]:
    """Sorted multiset over codewords of their distance histograms to C."""
    W = C.words
    n = C.n
    profiles = []
    block = max(1, (1 << 22) // max(1, C.size * n))
    for i0 in range(0, C.size, block):
        d = (W[i0:i0 + block, None, :] != W[None, :, :]).sum(axis=2)
        for row in d:
            profiles.append(tuple(np.bincount(row, minlength=n + 1).tolist()))
    return sorted(profiles)


def fingerprint(C: Code, profiles: bool = True) -> tuple:
    """Equivalence invariants: size, distance distribution, coordinate spectra
    and (for codes up to 4096 words) the per-codeword distance profiles."""
    parts = [
        ("orders", tuple(sorted(C.space.orders))),
        ("size", C.size),
        ("distances", tuple(C.distance_distribution.tolist())),
        ("spectra", tuple(coordinate_spectra(C))),
    ]
    if profiles and C.size <= 4096:
        parts.append(("profiles", tuple(distance_profiles(C))))
    return tuple(parts)


class _BudgetExhausted(Exception):
    pass


class _BudgetMatcher(nx.algorithms.isomorphism.GraphMatcher):
    def __init__(self, G1, G2, budget):
        super().__init__(G1, G2, node_match=lambda a, b: a["color"] == b["color"])
        self.budget = budget
        self.calls = 0

    def semantic_feasibility(self, G1_node, G2_node):
        self.calls += 1
        if self.calls > self.budget:
            raise _BudgetExhausted
        return super().semantic_feasibility(G1_node, G2_node)


def _incidence_graph(C: Code) -> nx.Graph:
    g = nx.Graph()
    for i, q in enumerate(C.space.orders):
        g.add_node(("c", i), color=("c", q))
        for a in range(q):
            g.add_node(("s", i, a), color=("s", q))
            g.add_edge(("c", i), ("s", i, a))
    for w, word in enumerate(C.words):
        g.add_node(("w", w), color=("w",))
        for i, a in enumerate(word):
            g.add_edge(("w", w), ("s", i, int(a)))
    return g


def are_equivalent(C: Code, D: Code, budget: int = 2_000_000) -> Equivalence:
    """Decide whether D is the image of C under coordinate and symbol permutations.

    Invariants reject most non-equivalent pairs; otherwise an isomorphism search
    runs on the codeword/symbol incidence graph (coordinate permutations are
    confined to equal alphabet orders by node colours).  ``budget`` caps the
    number of candidate pairs examined; exceeding it yields ``"unknown"``.
    """
    if sorted(C.space.orders) != sorted(D.space.orders):
        raise AlphabetMultisetMismatch(f"{C.space.orders} vs {D.space.orders}")
    if C.size != D.size:
        return Equivalence("nonequivalent", invariant="size")
    if C == D:
        return Equivalence(
            "equivalent",
            sigma=list(range(C.n)),
            pis=[list(range(q)) for q in C.space.orders],
        )
    if not np.array_equal(C.distance_distribution, D.distance_distribution):
        return Equivalence("nonequivalent", invariant="distance distribution")
    if coordinate_spectra(C) != coordinate_spectra(D):
        return Equivalence("nonequivalent", invariant="coordinate spectra")
    if C.size <= 4096 and distance_profiles(C) != distance_profiles(D):
        return Equivalence("nonequivalent", invariant="distance profiles")

    matcher = _BudgetMatcher(_incidence_graph(C), _incidence_graph(D), budget)
    try:
        found = matcher.is_isomorphic()
    except _BudgetExhausted:
        return Equivalence("unknown", invariant=f"search budget {budget} exhausted")
    if not found:
        return Equivalence("nonequivalent", invariant="exhaustive search")
    mapping = matcher.mapping
    sigma = [mapping[("c", i)][1] for i in range(C.n)]
    pis = []
    for i, q in enumerate(C.space.orders):
        pi = [0] * q
        for a in range(q):
            pi[a] = mapping[("s", i, a)][2]
        pis.append(pi)
    if apply_equivalence(C, sigma, pis, D.space) != D:
        raise AssertionError("equivalence witness failed re-verification")
    return Equivalence("equivalent", sigma=sigma, pis=pis)
