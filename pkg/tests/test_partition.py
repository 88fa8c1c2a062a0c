from itertools import product

import numpy as np
import pytest

from perfmix.grm import is_rm_like
from perfmix.mdsq import Quasigroup, is_mds2, linear_mds2, orthogonal_pair_check
from perfmix.partition import (
    DegenerateOrder,
    NotM1Partition,
    Partition,
    TooLarge,
    check_cover,
    coset_partition_rm,
    graeco_latin_to_partition,
    partition_to_graeco_latin,
    space_partition_mds,
    validate_partition,
)
from perfmix.space import Code, MixedSpace, minimum_distance

import oracles

CASES = [(2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (5, 1)]


@pytest.mark.parametrize("q,m", CASES + [(2, 4)])
def test_coset_partition_valid(q, m):
    p = coset_partition_rm(q, m)
    n = q**m
    assert len(p) == n
    assert p.target == linear_mds2(q, n)
    assert all(c.size == q ** (n - 1) // n for c in p)
    assert validate_partition(p).passed
    # canonical order: class 0 holds the zero word, classes sorted by lex-min word
    assert p[0].contains_zero
    firsts = [int(c.indices[0]) for c in p]
    assert firsts == sorted(firsts)


def test_coset_partition_small_matches_oracle():
    # (2,2): order-0 classes are {0000,1111} and its translates inside the even words
    p = coset_partition_rm(2, 2)
    got = sorted(sorted(map(tuple, c.words.tolist())) for c in p)
    even = [w for w in product(range(2), repeat=4) if sum(w) % 2 == 0]
    want = sorted({tuple(sorted({w, tuple(1 - x for x in w)})) for w in even})
    assert [tuple(g) for g in got] == want


@pytest.mark.parametrize("q,m", [(2, 2), (3, 1), (3, 2), (4, 1)])
def test_coset_classes_have_oracle_distance(q, m):
    p = coset_partition_rm(q, m)
    for c in p:
        if c.size > 1:
            assert oracles.min_distance(c.words.tolist()) == minimum_distance(c)
        assert is_rm_like(c, q, m, (q - 1) * m - 2).passed


def test_coset_partition_errors():
    with pytest.raises(DegenerateOrder):
        coset_partition_rm(2, 1)
    with pytest.raises(TooLarge):
        coset_partition_rm(2, 5)


def test_space_partition_mds():
    classes = space_partition_mds(3, 4)
    full = Code(MixedSpace.qary(3, 4), MixedSpace.qary(3, 4).all_words())
    assert not check_cover(Partition(full, classes, canonical=False))
    for c, cls in enumerate(classes):
        assert all(sum(w) % 3 == c for w in cls.words.tolist())
        assert is_mds2(cls).passed


def test_class_of():
    p = coset_partition_rm(3, 1)
    for i, c in enumerate(p):
        assert (p.class_of(c.words) == i).all()
    assert p.class_of(np.array([[1, 0, 0]]))[0] == -1


def test_validate_reports_each_clause():
    p = coset_partition_rm(2, 2)
    merged = Partition(p.target, [p[0].union(p[1])] + list(p.classes[2:]), p.class_params)
    msgs = validate_partition(merged).violations
    assert any("class count" in v for v in msgs)
    dup = Partition(p.target, [p[0], p[0], p[2], p[3]], p.class_params, canonical=False)
    msgs = validate_partition(dup).violations
    assert any("disjoint" in v for v in msgs) and any("union" in v for v in msgs)
    assert not validate_partition(Partition(p.target, p.classes, None)).passed
    wrong = Partition(p.target, p.classes, (2, 2, 1))
    assert any("class" in v for v in validate_partition(wrong).violations)


def test_relabel_classes():
    p = coset_partition_rm(3, 1)
    r = p.relabel_classes([2, 0, 1])
    assert r[0] == p[2] and r[1] == p[0]
    assert validate_partition(r).passed


@pytest.mark.parametrize("q", [3, 4, 5])
def test_graeco_latin_round_trip(q):
    p = coset_partition_rm(q, 1)
    h1, h2 = partition_to_graeco_latin(p)
    assert orthogonal_pair_check(h1, h2)
    back = graeco_latin_to_partition(h1, h2)
    assert back == p
    assert validate_partition(back).passed


def test_graeco_latin_from_orthogonal_squares():
    # (x + y, x + 2y) over Z_3: two orthogonal squares give a valid m = 1 partition
    h1 = Quasigroup([[((-x - y) % 3) + 1 for y in range(3)] for x in range(3)])
    h2 = Quasigroup([[((x + 2 * y) % 3) + 1 for y in range(3)] for x in range(3)])
    p = graeco_latin_to_partition(h1, h2)
    assert validate_partition(p).passed
    assert partition_to_graeco_latin(p) == (h1, h2)


def test_graeco_latin_rejects_m_greater_than_one():
    with pytest.raises(NotM1Partition):
        partition_to_graeco_latin(coset_partition_rm(2, 2))


@pytest.mark.parametrize("q,m", CASES)
def test_coset_classes_are_translates_of_zero_class(q, m):
    p = coset_partition_rm(q, m)
    total = sum(c.size for c in p)
    assert total == q ** (q**m - 1)
    zero = p[0]
    for c in p:
        assert zero.translate(c.words[0]) == c
