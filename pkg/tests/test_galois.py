import numpy as np
import pytest

from perfmix.galois import (
    FieldError,
    NotPrimePower,
    Unsupported,
    ZeroInverse,
    field_add,
    field_inv,
    field_neg,
    field_mul,
    make_field,
    smallest_irreducible,
)

from oracles import REDUCTION, PolyField

SUPPORTED = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", SUPPORTED)
def test_tables_match_polynomial_arithmetic(q):
    F, ref = make_field(q), PolyField(q)
    for a in range(q):
        assert F.neg(a) == ref.neg(a)
        for b in range(q):
            assert F.add(a, b) == ref.add(a, b)
            assert F.mul(a, b) == ref.mul(a, b)


@pytest.mark.parametrize("q", SUPPORTED)
def test_field_axioms_exhaustive(q):
    F = make_field(q)
    A, M = F.add_table.astype(int), F.mul_table.astype(int)
    e = np.arange(q)
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[0] == e).all() and (M[1] == e).all() and (M[0] == 0).all()
    # associativity and distributivity over all triples
    assert (A[A[:, :, None], e[None, None, :]] == A[e[:, None, None], A[None, :, :]]).all()
    assert (M[M[:, :, None], e[None, None, :]] == M[e[:, None, None], M[None, :, :]]).all()
    assert (M[e[:, None, None], A[None, :, :]] == A[M[:, :, None], M[:, None, :]]).all()
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    # every row of the multiplicative table on nonzero elements is a permutation
    for a in range(1, q):
        assert sorted(M[a, 1:]) == list(range(1, q))


@pytest.mark.parametrize("q", SUPPORTED)
def test_reduction_polynomial_is_documented_one(q):
    p, mod = REDUCTION[q]
    F = make_field(q)
    want = tuple(mod[:-1]) if len(mod) > 2 else ()
    assert F.p == p and tuple(F.reduction_poly) == want


@pytest.mark.parametrize("q", SUPPORTED)
def test_additive_group_has_exponent_p(q):
    F = make_field(q)
    for a in range(q):
        acc = 0
        for _ in range(F.p):
            acc = F.add(acc, a)
        assert acc == 0
        assert F.inv(1) == 1


def test_smallest_irreducible_is_lexicographically_first():
    assert smallest_irreducible(2, 2) == (1, 1)
    assert smallest_irreducible(2, 3) == (1, 1, 0)
    assert smallest_irreducible(3, 2) == (1, 0)
    assert smallest_irreducible(2, 4) == (1, 1, 0, 0)


def test_f4_labels():
    F = make_field(4)
    # alpha = 2, beta = 3 = alpha + 1, alpha^2 = beta
    assert F.mul(2, 2) == 3 and F.mul(3, 3) == 2 and F.add(2, 1) == 3 and F.mul(2, 3) == 1


def test_module_functions_and_errors():
    assert field_add(make_field(3), 1, 2) == 0
    assert field_mul(make_field(5), 3, 4) == 2
    assert field_inv(make_field(7), 3) == 5
    assert field_neg(make_field(9), 0) == 0
    with pytest.raises(NotPrimePower):
        make_field(6)
    with pytest.raises(Unsupported):
        make_field(32)
    with pytest.raises(ZeroInverse):
        make_field(5).inv(0)
    assert issubclass(NotPrimePower, FieldError)


def test_tables_are_read_only():
    F = make_field(4)
    with pytest.raises(ValueError):
        F.mul_table[1, 1] = 0
