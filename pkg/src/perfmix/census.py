"""Desk-scale census of quasigroup-indexed product codes.

Each codeword v of the inner code B carries its own quasigroup q_v, so the
number of product codes is multiplicative in the slots.  The census builds
one code per assignment, counts distinct word sets, and bounds the number of
equivalence classes from below where the equivalence search can decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import islice, product

import numpy as np

from .construct import DegenerateOrder, ProductSpec, product_example, theorem6_product
from .mdsq import quasigroup_library
from .space import Code, SpaceTooLarge, are_equivalent, fingerprint

EQUIV_SPACE_GATE = 4096


@dataclass
class CensusReport:
    parameters: dict
    assignments_tried: int
    distinct_code_count: int
    nonequivalent_lower_bound: int | None = None
    undecided_pairs: int = 0
    fingerprints: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.distinct_code_count <= self.assignments_tried
        if self.nonequivalent_lower_bound is not None:
            assert self.nonequivalent_lower_bound <= self.distinct_code_count

    def to_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "assignments_tried": self.assignments_tried,
            "distinct_code_count": self.distinct_code_count,
            "nonequivalent_lower_bound": self.nonequivalent_lower_bound,
            "undecided_pairs": self.undecided_pairs,
            "fingerprints": self.fingerprints,
            **self.notes,
        }


def _fp_summary(C: Code) -> dict:
    return {
        "size": C.size,
        "digest": C.digest[:16],
        "distance_distribution": [int(x) for x in C.distance_distribution],
    }


def assignments(library_size: int, slots: int, enumerator: str, limit: int, seed: int = 0):
    """Index tuples into the quasigroup library, one entry per slot.

    ``single`` varies slot 0 over the library with the others at index 0;
    ``product`` walks library^slots lexicographically; ``random`` draws
    ``limit`` tuples from a seeded generator.
    """
    if enumerator == "single":
        it = ((i,) + (0,) * (slots - 1) for i in range(library_size))
    elif enumerator == "product":
        it = product(range(library_size), repeat=slots)
    elif enumerator == "random":
        rng = np.random.default_rng(seed)
        it = (tuple(int(x) for x in rng.integers(0, library_size, slots)) for _ in range(limit))
    else:
        raise ValueError(f"unknown enumerator {enumerator!r}")
    return list(islice(it, limit))


class _Builder:
    def __init__(self, q: int, m1: int, m2: int, library=None):
        if (q - 1) * m1 - 2 < 0 or (q - 1) * m2 - 2 < 0:
            raise DegenerateOrder(f"degenerate order for q={q}, m1={m1}, m2={m2}")
        self.q, self.m1, self.m2 = q, m1, m2
        self.A, Bp, _ = product_example(q, m1, m2)
        self.B = Bp.classes[0]
        self.library = (
            quasigroup_library(q**m1, q**m2 - 1) if library is None else list(library)
        )

    @property
    def slots(self) -> int:
        return self.B.size

    def build(self, assignment) -> Code:
        spec = ProductSpec(self.q, self.m1, self.m2, tuple(self.library[i] for i in assignment))
        return theorem6_product(self.A, self.B, spec)


def census_distinct(
    q: int,
    m1: int,
    m2: int,
    enumerator: str = "single",
    limit: int = 50,
    seed: int = 0,
    library=None,
) -> CensusReport:
    """Build one code per assignment and count pairwise-distinct word sets."""
    b = _Builder(q, m1, m2, library)
    assigns = assignments(len(b.library), b.slots, enumerator, limit, seed)
    seen: dict[bytes, Code] = {}
    for a in assigns:
        C = b.build(a)
        seen.setdefault(C.indices.tobytes(), C)
    codes = sorted(seen.values(), key=lambda c: c.indices.tobytes())
    return CensusReport(
        parameters={"q": q, "m1": m1, "m2": m2, "enumerator": enumerator, "limit": limit, "seed": seed},
        assignments_tried=len(assigns),
        distinct_code_count=len(codes),
        fingerprints=[_fp_summary(c) for c in codes],
        notes={"slots": b.slots, "library_size": len(b.library)},
    )


def slot_independence(q: int, m1: int, m2: int, slot_a: int = 0, slot_b: int = 1, library=None) -> dict:
    """Codes from the base assignment, from a change in slot a only, in slot b
    only, and in both; the mechanism needs all four to be distinct."""
    b = _Builder(q, m1, m2, library)
    if b.slots < 2 or len(b.library) < 2:
        raise ValueError("need at least two slots and two quasigroups")
    base = [0] * b.slots
    variants = {}
    for name, changes in (("base", {}), ("a", {slot_a: 1}), ("b", {slot_b: 1}), ("ab", {slot_a: 1, slot_b: 1})):
        a = list(base)
        for k, v in changes.items():
            a[k] = v
        variants[name] = b.build(a)
    keys = [c.indices.tobytes() for c in variants.values()]
    return {
        "slots": b.slots,
        "sizes": {k: c.size for k, c in variants.items()},
        "pairwise_distinct": len(set(keys)) == len(keys),
    }


def census_nonequivalent(codes, budget: int = 200_000, space_gate: int = EQUIV_SPACE_GATE) -> CensusReport:
    """Proven lower bound on the number of equivalence classes among ``codes``.

    Codes are grouped by invariant fingerprint; inside a group a code becomes
    a new representative only when proven nonequivalent to every existing one.
    Codes left undecided against some representative are counted, never guessed.
    """
    codes = list(codes)
    for C in codes:
        if C.space.size > space_gate:
            raise SpaceTooLarge(f"|V| = {C.space.size} exceeds the equivalence gate {space_gate}")
    distinct = list({C.indices.tobytes() + repr(C.space.orders).encode(): C for C in codes}.values())
    groups: dict = {}
    for C in distinct:
        groups.setdefault(fingerprint(C), []).append(C)
    reps_total = 0
    undecided = 0
    for key in sorted(groups, key=repr):
        reps: list[Code] = []
        for C in groups[key]:
            new = True
            for R in reps:
                v = are_equivalent(C, R, budget=budget).verdict
                if v == "equivalent":
                    new = False
                    break
                if v != "nonequivalent":
                    undecided += 1
                    new = False
                    break
            if new:
                reps.append(C)
        reps_total += len(reps)
    return CensusReport(
        parameters={"codes": len(codes), "budget": budget},
        assignments_tried=len(codes),
        distinct_code_count=len(distinct),
        nonequivalent_lower_bound=reps_total,
        undecided_pairs=undecided,
        fingerprints=[_fp_summary(c) for c in distinct],
        notes={"fingerprint_groups": len(groups)},
    )


def class_size_bound_check(q: int, m: int) -> dict:
    """Exact integer check of the equivalence-class size bound
    n! n! (q!)^n <= n^(2(n+1)) q^((q+1)n) = q^(2m(q^m+1)) q^((q+1)q^m), n = q^m."""
    n = q**m
    lhs = math.factorial(n) ** 2 * math.factorial(q) ** n
    mid = n ** (n + 1) * n ** (n + 1) * q ** ((q + 1) * n)
    rhs = q ** (2 * m * (q**m + 1)) * q ** ((q + 1) * q**m)
    return {
        "q": q,
        "m": m,
        "n": n,
        "lhs": lhs,
        "rhs": rhs,
        "inequality": lhs <= mid,
        "identity": mid == rhs,
        "holds": lhs <= mid and mid == rhs,
    }
