"""Partitions of codes into classes, with the Reed-Muller coset partition,
the construction-gate certificate, and the m = 1 Graeco-Latin correspondence.

Class ordering convention: classes are sorted by their lexicographically
smallest word, so a zero-containing class comes first.  Class ``i``
(0-based) is paired with the field element of index ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .galois import FieldTable, make_field
from .grm import GrmSpec, grm_generate, is_rm_like
from .linalg import null_space
from .mdsq import (
    Quasigroup,
    code_from_quasigroup,
    index_to_symbol,
    is_mds2,
    linear_mds2,
    quasigroup_from_code,
    symbol_to_index,
)
from .space import Code, MixedSpace

MATERIALIZE_LIMIT = 1 << 22


class PartitionError(ValueError):
    pass


class DegenerateOrder(PartitionError):
    pass


class TooLarge(PartitionError):
    pass


class NotM1Partition(PartitionError):
    pass


class Partition:
    """An ordered list of disjoint codes whose union is ``target``.

    ``class_params`` is the ``(q, m, r)`` every class must certify against as
    a Reed-Muller-like code, or None for a plain partition.
    """

    def __init__(self, target: Code, classes, class_params=None, canonical: bool = True):
        classes = list(classes)
        if canonical:
            classes.sort(key=lambda c: int(c.indices[0]))
        self.target = target
        self.classes = classes
        self.class_params = class_params

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i) -> Code:
        return self.classes[i]

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.target == other.target
            and self.classes == other.classes
        )

    def __repr__(self):
        return f"Partition({len(self.classes)} classes over {self.target.space})"

    @property
    def space(self) -> MixedSpace:
        return self.target.space

    @property
    def _lookup(self):
        # sorted word indices of all classes with their class ids
        if not hasattr(self, "_lookup_cache"):
            idx = np.concatenate([c.indices for c in self.classes])
            ids = np.concatenate(
                [np.full(c.size, i, dtype=np.int64) for i, c in enumerate(self.classes)]
            )
            order = np.argsort(idx, kind="stable")
            self._lookup_cache = (idx[order], ids[order])
        return self._lookup_cache

    def class_of(self, words) -> np.ndarray:
        """Class id per word, -1 when a word lies in no class."""
        W = np.asarray(words, dtype=np.uint8).reshape(-1, self.space.n)
        keys = self.space.encode(W)
        idx, ids = self._lookup
        pos = np.searchsorted(idx, keys)
        pos = np.minimum(pos, idx.size - 1)
        return np.where(idx[pos] == keys, ids[pos], -1)

    def relabel_classes(self, order) -> "Partition":
        """Reorder classes: new class i is old class ``order[i]``."""
        return Partition(
            self.target, [self.classes[i] for i in order], self.class_params, canonical=False
        )


def split_by_syndrome(target: Code, H: np.ndarray, F: FieldTable) -> list[Code]:
    """Group the words of ``target`` by their syndrome under ``H``."""
    W = target.words
    syn = np.zeros((W.shape[0], H.shape[0]), dtype=np.uint8)
    for j in range(W.shape[1]):
        syn = F.add_table[syn, F.mul_table[W[:, j, None], H[None, :, j]]]
    key = np.zeros(W.shape[0], dtype=np.int64)
    for c in range(H.shape[0]):
        key = key * F.q + syn[:, c]
    classes = []
    for k in np.unique(key):
        classes.append(Code(target.space, W[key == k], require_zero=False, _trusted=True))
    return classes


def coset_partition_rm(q: int, m: int) -> Partition:
    """RM_q((q-1)m-1, m), i.e. the zero-sum code of length q^m, split into the
    q^m cosets of RM_q((q-1)m-2, m)."""
    r = (q - 1) * m - 2
    if r < 0:
        raise DegenerateOrder(f"order (q-1)m-2 = {r} < 0 for q={q}, m={m}")
    n = q**m
    if n > 16:
        raise TooLarge(f"length q^m = {n} exceeds 16")
    if q ** (n - 1) > MATERIALIZE_LIMIT:
        raise TooLarge(f"q^(n-1) = {q ** (n - 1)} words exceed {MATERIALIZE_LIMIT}")
    F = make_field(q)
    target = linear_mds2(q, n)
    G0, _ = grm_generate(GrmSpec(q, m, r), expand_limit=0)
    classes = split_by_syndrome(target, null_space(G0.rows, F), F)
    return Partition(target, classes, (q, m, r))


def space_partition_mds(q: int, n: int) -> list[Code]:
    """The q parity classes {x : x_1 + ... + x_n = c}, c in index order."""
    base = linear_mds2(q, n)
    out = [base]
    for c in range(1, q):
        shift = np.zeros(n, dtype=np.uint8)
        shift[-1] = c
        out.append(base.translate(shift))
    return out


@dataclass
class PartitionCertificate:
    classes: int
    expected_classes: int | None
    class_params: tuple | None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "kind": "partition",
            "classes": self.classes,
            "expected_classes": self.expected_classes,
            "class_params": list(self.class_params) if self.class_params else None,
            "violations": self.violations,
            "verdict": self.verdict,
        }


def check_cover(p: Partition) -> list[str]:
    """Violated clauses among non-emptiness, pairwise disjointness and union."""
    out = []
    space = p.space
    if any(c.space != space for c in p.classes):
        out.append("space: a class lives in a different space")
        return out
    if not p.classes:
        return ["nonempty: no classes"]
    idx = np.concatenate([c.indices for c in p.classes])
    uniq = np.unique(idx)
    if uniq.size != idx.size:
        out.append(f"disjoint: {idx.size - uniq.size} words lie in more than one class")
    if not np.array_equal(uniq, p.target.indices):
        out.append(f"union: classes cover {uniq.size} words, target has {p.target.size}")
    return out


def validate_partition(p: Partition) -> PartitionCertificate:
    """Check the hypotheses of the main construction: a partition of a q-ary
    distance-2 MDS code of length q^m into q^m Reed-Muller-like classes of
    order (q-1)m-2."""
    violations = check_cover(p)
    params = p.class_params
    expected = None
    mds = is_mds2(p.target)
    if not mds.passed:
        violations.append("target: " + "; ".join(mds.violations))
    if params is None:
        violations.append("class_params: none declared")
    else:
        q, m, r = params
        expected = q**m
        if len(p.classes) != expected:
            violations.append(f"class count {len(p.classes)} != q^m = {expected}")
        for i, c in enumerate(p.classes):
            cert = is_rm_like(c, q, m, r)
            if not cert.passed:
                violations.append(f"class {i + 1}: " + "; ".join(cert.violations))
    return PartitionCertificate(len(p.classes), expected, params, violations)


def _check_m1(p: Partition) -> int:
    if not p.space.is_qary:
        raise NotM1Partition("mixed alphabets")
    q = p.space.q
    if q < 3 or p.space.n != q or len(p.classes) != q:
        raise NotM1Partition(f"need q >= 3, length q and q classes; got {p}")
    return q


def partition_to_graeco_latin(p: Partition) -> tuple[Quasigroup, Quasigroup]:
    """(h1, h2): h1 gives the last symbol of a target word from the others,
    h2 gives the (1-based) class of that word."""
    q = _check_m1(p)
    h1 = quasigroup_from_code(p.target)
    args = np.array(np.unravel_index(np.arange(q ** (q - 1)), (q,) * (q - 1))).T
    last = symbol_to_index(h1.table.reshape(-1))
    ids = p.class_of(np.column_stack([args, last]))
    h2 = Quasigroup(index_to_symbol(ids).reshape((q,) * (q - 1)))
    return h1, h2


def graeco_latin_to_partition(h1: Quasigroup, h2: Quasigroup) -> Partition:
    """Inverse of :func:`partition_to_graeco_latin`; class i holds the words
    whose h2 symbol is i + 1."""
    q = h1.order
    target = code_from_quasigroup(h1)
    args = np.array(np.unravel_index(np.arange(q ** (q - 1)), (q,) * (q - 1))).T
    last = symbol_to_index(h1.table.reshape(-1))
    words = np.column_stack([args, last]).astype(np.uint8)
    ids = symbol_to_index(h2.table.reshape(-1))
    classes = [Code(target.space, words[ids == i], require_zero=False) for i in range(q)]
    return Partition(target, classes, (q, 1, q - 3), canonical=False)
