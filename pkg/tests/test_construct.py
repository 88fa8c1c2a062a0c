import numpy as np
import pytest

from perfmix.construct import (
    BadQuasigroupShape,
    ClassCountMismatch,
    DegenerateOrder,
    ExcludedParameters,
    InvalidPartition,
    NotAPartition,
    NotAPartitionOfSpace,
    NotPerfect,
    PartitionShapeMismatch,
    ProductSpec,
    SphereMismatch,
    doubling,
    hamming_code,
    hamming_coset_partition,
    heden_chain,
    heden_substitute,
    herzog_schonheim,
    hs_subgroup_partition,
    prop1_product,
    product_example,
    theorem4_construct,
    theorem4_extract,
    theorem5_concatenate,
    theorem6_product,
    theorem6_siblings,
)
from perfmix.grm import is_rm_like
from perfmix.mdsq import is_mds2, linear_mds2, quasigroup_library
from perfmix.partition import Partition, coset_partition_rm, space_partition_mds, validate_partition
from perfmix.space import Code, MixedSpace, are_equivalent, is_additive, is_perfect

import oracles

# F_4 labels: 0, 1, alpha = 2, beta = 3
HS_WORDS = {
    (0, 0, 0, 0, 0), (2, 1, 0, 1, 0), (3, 1, 1, 0, 0), (1, 1, 0, 0, 1),
    (0, 1, 1, 1, 1), (2, 0, 1, 0, 1), (3, 0, 0, 1, 1), (1, 0, 1, 1, 0),
}


def test_hs_example_words():
    C = herzog_schonheim(hs_subgroup_partition(2, 3, 2))
    assert C.space.orders == (4, 2, 2, 2, 2)
    assert set(map(tuple, C.words.tolist())) == HS_WORDS
    assert is_perfect(C).passed and is_additive(C)
    assert oracles.is_perfect_brute(C.words.tolist(), C.space.orders)


@pytest.mark.parametrize("q,m,alpha", [(2, 3, 2), (2, 4, 2), (2, 4, 3), (3, 3, 2)])
def test_hs_codes_perfect(q, m, alpha):
    sp = hs_subgroup_partition(q, m, alpha)
    assert sp.violation() is None
    C = herzog_schonheim(sp)
    n_rest = (q**m - q**alpha) // (q - 1)
    assert C.space.orders == (q**alpha,) + (q,) * n_rest
    cert = is_perfect(C)
    assert cert.passed and C.size * C.space.sphere_size(1) == C.space.size


def test_hamming_codes():
    for q, m in [(2, 2), (2, 3), (3, 2), (4, 2)]:
        C = hamming_code(q, m)
        n = (q**m - 1) // (q - 1)
        assert C.size == q ** (n - m)
        assert is_perfect(C).passed
        p = hamming_coset_partition(q, m)
        assert len(p) == q**m and all(is_perfect(c).passed for c in p)


def test_heden_chain_sizes_and_perfection():
    chain = heden_chain()
    assert [C.size for C in chain] == [128, 256, 512, 1024, 2048]
    assert chain[0].space.orders == (4,) * 4 + (2,) * 3
    assert chain[-1].space.orders == (2,) * 15
    for C in chain:
        assert is_perfect(C).passed


def test_heden_substitute_errors():
    C = hamming_code(4, 2)
    with pytest.raises(SphereMismatch):
        heden_substitute(C, hamming_coset_partition(2, 3))
    p = hamming_coset_partition(2, 2)
    with pytest.raises(NotAPartition):
        heden_substitute(C, [p[0], p[0], p[1], p[2]])


def test_doubling_with_transposition():
    # even words of F_2^4 split into the cosets of the extended Hamming-like [4,1] code
    Cp = coset_partition_rm(2, 2)
    Cpp = hamming_coset_partition(2, 2)
    # classes of F_2^3 are 1-perfect, classes of the even words are extended 1-perfect
    for perm in ([0, 1, 2, 3], [1, 0, 2, 3], [3, 2, 1, 0]):
        C = doubling(Cp, Cpp, perm)
        assert C.space.orders == (2,) * 7
        assert is_perfect(C).passed
    with pytest.raises(PartitionShapeMismatch):
        doubling(Cp, list(Cpp)[:3])
    with pytest.raises(PartitionShapeMismatch):
        doubling(Cp, Cpp, [0, 0, 1, 2])


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 1), (4, 1), (5, 1)])
def test_mixed_code_round_trip(q, m):
    p = coset_partition_rm(q, m)
    C = theorem4_construct(p)
    n = q**m
    assert C.space.orders == (n,) + (q,) * n
    assert C.size * C.space.sphere_size(1) == C.space.size
    assert is_perfect(C).passed
    back = theorem4_extract(C)
    assert back.classes == p.classes
    for c in back:
        assert is_rm_like(c, q, m, (q - 1) * m - 2).passed


def test_mixed_code_matches_hs_example():
    C = theorem4_construct(coset_partition_rm(2, 2))
    hs = herzog_schonheim(hs_subgroup_partition(2, 3, 2))
    eq = are_equivalent(C, hs)
    assert eq.verdict == "equivalent"


def test_extract_from_hs_code():
    # HS code in F_9 x F_3^9 yields a valid partition for (3, 2)
    C = herzog_schonheim(hs_subgroup_partition(3, 3, 2))
    p = theorem4_extract(C)
    assert validate_partition(p).passed
    assert theorem4_construct(p) == C


def test_mixed_code_errors():
    with pytest.raises(ExcludedParameters):
        theorem4_construct(Partition(linear_mds2(2, 2), [linear_mds2(2, 2)], (2, 1, -1)))
    p = coset_partition_rm(2, 2)
    with pytest.raises(InvalidPartition):
        theorem4_construct(Partition(p.target, p.classes, None))
    with pytest.raises(InvalidPartition):
        theorem4_construct(Partition(p.target, [p[0], p[0], p[2], p[3]], p.class_params, canonical=False))
    C = theorem4_construct(p)
    not_perfect = Code(C.space, C.words[:-1], require_zero=False)
    with pytest.raises(NotPerfect):
        theorem4_extract(not_perfect)


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 1)])
def test_concatenation_perfect(q, m):
    p = coset_partition_rm(q, m)
    hp = hamming_coset_partition(q, m)
    C = theorem5_concatenate(p, hp)
    n = q**m
    assert C.space.orders == (q,) * (n + (n - 1) // (q - 1))
    assert is_perfect(C).passed
    with pytest.raises(ClassCountMismatch):
        theorem5_concatenate(p, list(hp)[1:])


def test_mds_product_is_zero_sum_code():
    for q, N, L in [(2, 2, 2), (2, 4, 2), (2, 2, 4), (2, 4, 4), (3, 3, 3)]:
        A = space_partition_mds(q, N)
        C = prop1_product(A, linear_mds2(q, L))
        assert is_mds2(C).passed
        assert C == linear_mds2(q, N * L)
    with pytest.raises(NotAPartitionOfSpace):
        prop1_product(space_partition_mds(2, 2)[:1] * 2, linear_mds2(2, 2))


@pytest.mark.parametrize("q,m1,m2,size", [(2, 2, 2, 2**11), (3, 1, 1, 3**6)])
def test_quasigroup_product(q, m1, m2, size):
    A, Bp, spec = product_example(q, m1, m2)
    C = theorem6_product(A, Bp.classes[0], spec)
    assert C.size == size
    assert is_rm_like(C, q, m1 + m2, (q - 1) * (m1 + m2) - 2).passed
    fam = theorem6_siblings(A, Bp, spec)
    assert len(fam) == q ** (m1 + m2)
    assert C in fam.classes
    assert validate_partition(fam).passed


def test_quasigroup_product_other_assignments():
    lib = quasigroup_library(3, 2)
    A, Bp, _ = product_example(3, 1, 1)
    for i in (3, 7, 11):
        spec = ProductSpec(3, 1, 1, (lib[i], lib[0], lib[5]))
        C = theorem6_product(A, Bp.classes[0], spec)
        assert is_rm_like(C, 3, 2, 2).passed


def test_quasigroup_product_errors():
    with pytest.raises(DegenerateOrder):
        product_example(2, 1, 2)
    lib = quasigroup_library(3, 1)
    with pytest.raises(BadQuasigroupShape):
        ProductSpec(3, 1, 1, (lib[0],))
    A, Bp, spec = product_example(3, 1, 1)
    with pytest.raises(BadQuasigroupShape):
        theorem6_product(A, Bp.classes[0], ProductSpec(3, 1, 1, spec.assignment[:1]))
