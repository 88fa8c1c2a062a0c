import numpy as np
import pytest

from perfmix.census import (
    CensusReport,
    assignments,
    census_distinct,
    census_nonequivalent,
    class_size_bound_check,
    slot_independence,
)
from perfmix.construct import (
    DegenerateOrder,
    herzog_schonheim,
    hs_subgroup_partition,
    theorem4_construct,
    theorem4_extract,
)
from perfmix.mdsq import Quasigroup, order4_representatives, quasigroup_library
from perfmix.partition import coset_partition_rm
from perfmix.space import SpaceTooLarge, relabel


def test_assignment_enumerators():
    assert assignments(3, 2, "single", 10) == [(0, 0), (1, 0), (2, 0)]
    assert assignments(2, 2, "product", 10) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    r1 = assignments(12, 3, "random", 20, seed=5)
    assert r1 == assignments(12, 3, "random", 20, seed=5)
    assert len(r1) == 20 and all(0 <= i < 12 for a in r1 for i in a)
    with pytest.raises(ValueError):
        assignments(3, 2, "bogus", 5)


def test_single_slot_sweep_order3():
    rep = census_distinct(3, 1, 1, enumerator="single", limit=12)
    assert rep.assignments_tried == 12
    assert rep.notes["slots"] == 3 and rep.notes["library_size"] == 12
    assert rep.distinct_code_count >= 2


def test_full_product_order3_all_distinct():
    # 12^3 assignments; the run produces 1728 pairwise-distinct codes
    rep = census_distinct(3, 1, 1, enumerator="product", limit=10**6)
    assert rep.assignments_tried == 1728
    assert rep.distinct_code_count == 1728


def test_census_determinism():
    a = census_distinct(3, 1, 1, enumerator="random", limit=50, seed=7).to_dict()
    b = census_distinct(3, 1, 1, enumerator="random", limit=50, seed=7).to_dict()
    assert a == b
    assert a["distinct_code_count"] >= 2


def test_identical_assignments_identical_codes():
    rep = census_distinct(3, 1, 1, enumerator="single", limit=1)
    lib = quasigroup_library(3, 2)
    twice = census_distinct(3, 1, 1, enumerator="single", limit=2, library=[lib[4], lib[4]])
    assert rep.distinct_code_count == 1 and twice.distinct_code_count == 1


def test_nonisotopic_order4_squares_give_two_codes():
    # j1 = g(g(j2, j3), j4) for the two non-isotopic squares g of order 4
    lib = []
    for g in order4_representatives():
        t = g.table - 1
        lib.append(Quasigroup(t[t[:, :, None], np.arange(4)[None, None, :]] + 1))
    rep = census_distinct(2, 2, 2, enumerator="single", limit=2, library=lib)
    assert rep.distinct_code_count == 2


@pytest.mark.parametrize("q,m1,m2", [(3, 1, 1), (2, 2, 2)])
def test_slot_independence(q, m1, m2):
    res = slot_independence(q, m1, m2)
    assert res["pairwise_distinct"]


def test_degenerate_order():
    with pytest.raises(DegenerateOrder):
        census_distinct(2, 1, 1)


def test_nonequivalent_same_code_twice():
    C = theorem4_construct(coset_partition_rm(2, 2))
    rep = census_nonequivalent([C, C])
    assert rep.nonequivalent_lower_bound == 1 and rep.undecided_pairs == 0


def test_nonequivalent_two_routes_to_one_class():
    a = theorem4_construct(coset_partition_rm(2, 2))
    b = theorem4_construct(theorem4_extract(herzog_schonheim(hs_subgroup_partition(2, 3, 2))))
    rep = census_nonequivalent([a, b, relabel(a, 1, [1, 0])])
    assert rep.nonequivalent_lower_bound == 1


def test_nonequivalent_gate():
    big = theorem4_construct(coset_partition_rm(3, 2))
    with pytest.raises(SpaceTooLarge):
        census_nonequivalent([big])


def test_report_invariants():
    with pytest.raises(AssertionError):
        CensusReport({}, assignments_tried=1, distinct_code_count=2)
    with pytest.raises(AssertionError):
        CensusReport({}, assignments_tried=3, distinct_code_count=2, nonequivalent_lower_bound=3)


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2)])
def test_class_size_bound(q, m):
    res = class_size_bound_check(q, m)
    assert res["inequality"] and res["identity"] and res["holds"]
    assert res["lhs"] <= res["rhs"]
