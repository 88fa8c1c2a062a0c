from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfmix.space import (
    AlphabetMultisetMismatch,
    Code,
    MixedAlphabets,
    MixedSpace,
    SingletonCode,
    SpaceMismatch,
    SpaceTooLarge,
    ZeroWordMissing,
    apply_equivalence,
    are_equivalent,
    ball_counts,
    covering_radius,
    extend_code,
    get_gate,
    hamming_distance,
    is_additive,
    is_even,
    is_perfect,
    minimum_distance,
    packing_radius,
    parity,
    perfect_by_counting,
    relabel,
    set_gate,
)

import oracles

HS_WORDS = [
    (0, 0, 0, 0, 0), (2, 1, 0, 1, 0), (3, 1, 1, 0, 0), (1, 1, 0, 0, 1),
    (0, 1, 1, 1, 1), (2, 0, 1, 0, 1), (3, 0, 0, 1, 1), (1, 0, 1, 1, 0),
]
HS_SPACE = MixedSpace([4, 2, 2, 2, 2])


def hs_code():
    return Code(HS_SPACE, HS_WORDS)


def even4():
    return Code(MixedSpace.qary(2, 4), [w for w in product(range(2), repeat=4) if sum(w) % 2 == 0])


def rep3():
    return Code(MixedSpace.qary(2, 3), [(0, 0, 0), (1, 1, 1)])


def test_hamming_distance_examples():
    assert hamming_distance((2, 1, 0, 1, 0), (3, 1, 1, 0, 0)) == 3
    assert hamming_distance((0, 0, 0, 0, 0), (2, 1, 0, 1, 0)) == 3
    assert hamming_distance((1, 2), (1, 2)) == 0
    with pytest.raises(SpaceMismatch):
        hamming_distance((0, 1), (0, 1, 1))


def test_minimum_distance_examples():
    full = Code(MixedSpace.qary(2, 3), list(product(range(2), repeat=3)))
    assert minimum_distance(full) == 1
    assert minimum_distance(even4()) == 2
    assert minimum_distance(hs_code()) == 3
    with pytest.raises(SingletonCode):
        minimum_distance(Code(MixedSpace.qary(2, 3), [(0, 0, 0)]))


def test_radii_examples():
    assert packing_radius(rep3()) == 1 and covering_radius(rep3()) == 1
    assert packing_radius(hs_code()) == 1 and covering_radius(hs_code()) == 1
    assert packing_radius(even4()) == 0 and covering_radius(even4()) == 1
    full = Code(MixedSpace.qary(3, 2), list(product(range(3), repeat=2)))
    assert covering_radius(full) == 0


def test_perfect_certificates():
    cert = is_perfect(hs_code())
    assert cert.passed and cert.sphere_identity and cert.code_size * cert.sphere_size == 64
    assert is_perfect(rep3()).passed
    bad = is_perfect(even4())
    assert not bad.passed and bad.packing_radius == 0 and bad.covering_radius == 1 and bad.quasi_perfect
    assert bad.to_dict()["verdict"] == "FAIL"


def test_parity_and_extension():
    s3 = MixedSpace.qary(3, 3)
    assert parity(s3, (0, 0, 0)) == 0 and parity(s3, (1, 1, 1)) == 0
    assert parity(MixedSpace.qary(2, 4), (1, 1, 0, 1)) == 1
    assert not is_even(MixedSpace.qary(2, 4), (1, 1, 0, 1))
    with pytest.raises(MixedAlphabets):
        parity(HS_SPACE, HS_WORDS[1])
    assert set(extend_code(rep3())) == {(0, 0, 0, 0), (1, 1, 1, 1)}
    c = Code(MixedSpace.qary(3, 2), [(0, 0), (1, 2), (2, 1)])
    assert set(extend_code(c)) == {(0, 0, 0), (1, 2, 0), (2, 1, 0)}


def test_extended_hamming_7_has_distance_4():
    H = np.array([[int(b) for b in f"{j:03b}"] for j in range(1, 8)]).T
    words = [w for w in product(range(2), repeat=7) if not (H @ np.array(w) % 2).any()]
    C = Code(MixedSpace.qary(2, 7), words)
    assert C.size == 16 and minimum_distance(C) == 3
    E = extend_code(C)
    assert E.size == 16 and minimum_distance(E) == 4
    assert oracles.min_distance(list(E)) == 4


def test_zero_word_convention():
    with pytest.raises(ZeroWordMissing):
        Code(MixedSpace.qary(2, 2), [(0, 1), (1, 0)])
    c = Code(MixedSpace.qary(2, 2), [(0, 1), (1, 0), (0, 1)], require_zero=False)
    assert c.size == 2


def test_gate():
    old = get_gate()
    try:
        set_gate(1000)
        with pytest.raises(SpaceTooLarge):
            covering_radius(Code(MixedSpace.qary(2, 10), [(0,) * 10]))
        with pytest.raises(ValueError):
            set_gate(2**28 + 1)
    finally:
        set_gate(old)


def test_sphere_size_matches_neighbourhood_enumeration():
    for orders in ([2, 2, 2], [4, 2, 2, 2, 2], [3, 5, 2], [9, 3, 3], [8, 4, 2, 2]):
        V = MixedSpace(orders)
        assert V.sphere_size(1) == 1 + sum(q - 1 for q in orders)
        zero = (0,) * V.n
        direct = [w for w in product(*(range(q) for q in orders)) if oracles.hamming(w, zero) <= 2]
        assert V.sphere_size(2) == len(direct)
        assert len(V.neighbours(zero)) == V.sphere_size(1) - 1


def test_equivalence_examples():
    a = Code(MixedSpace.qary(2, 2), [(0, 0), (1, 1)])
    b = Code(MixedSpace.qary(2, 2), [(0, 1), (1, 0)], require_zero=False)
    res = are_equivalent(a, b)
    assert res.equivalent
    assert apply_equivalence(a, res.sigma, res.pis) == b
    assert are_equivalent(hs_code(), hs_code()).equivalent
    small = Code(MixedSpace.qary(2, 4), [(0,) * 4, (1,) * 4])
    res = are_equivalent(even4(), small)
    assert res.nonequivalent and res.invariant == "size"
    with pytest.raises(AlphabetMultisetMismatch):
        are_equivalent(hs_code(), even4())


def test_relabel_breaks_additivity_but_keeps_perfection():
    C = hs_code()
    assert is_additive(C)
    D = relabel(C, 0, [1, 0, 2, 3])
    assert not is_additive(D)
    assert is_perfect(D).passed
    assert are_equivalent(C, D).equivalent


@st.composite
def small_codes(draw):
    orders = draw(st.lists(st.sampled_from([2, 3, 4]), min_size=2, max_size=5))
    V = MixedSpace(orders)
    k = draw(st.integers(2, min(V.size, 12)))
    idx = draw(st.lists(st.integers(1, V.size - 1), min_size=k - 1, max_size=k - 1, unique=True))
    return Code.from_indices(V, [0] + idx)


@settings(max_examples=80, deadline=None)
@given(small_codes())
def test_parameters_match_brute_force(C):
    words = list(C)
    d = oracles.min_distance(words)
    assert minimum_distance(C) == d
    assert packing_radius(C) == (d - 1) // 2
    assert covering_radius(C) == oracles.covering_radius(words, C.space.orders)
    assert list(C.distance_distribution) == oracles.distance_distribution(words)
    # both perfection routes agree with a brute-force sphere tiling check
    tiling = oracles.is_perfect_brute(words, C.space.orders)
    assert is_perfect(C).passed == tiling == perfect_by_counting(C)
    assert ball_counts(C, 1).sum() == C.size * C.space.sphere_size(1)


@settings(max_examples=60, deadline=None)
@given(small_codes(), st.randoms(use_true_random=False))
def test_equivalence_is_found_for_random_images(C, rnd):
    n = C.n
    sigma = list(range(n))
    # shuffle only among coordinates of equal order
    for q in set(C.space.orders):
        pos = [i for i in range(n) if C.space.orders[i] == q]
        img = pos[:]
        rnd.shuffle(img)
        for a, b in zip(pos, img):
            sigma[a] = b
    pis = []
    for q in C.space.orders:
        p = list(range(q))
        rnd.shuffle(p)
        pis.append(p)
    D = apply_equivalence(C, sigma, pis)
    res = are_equivalent(C, D)
    assert res.equivalent
    assert apply_equivalence(C, res.sigma, res.pis) == D
    assert are_equivalent(D, C).equivalent


def test_extension_property_on_random_codes():
    rng = np.random.default_rng(5)
    for _ in range(30):
        V = MixedSpace.qary(3, 4)
        idx = np.unique(np.concatenate([[0], rng.integers(0, V.size, 10)]))
        C = Code.from_indices(V, idx)
        E = extend_code(C)
        assert E.size == C.size
        assert all(is_even(E.space, w) for w in E)
        assert minimum_distance(E) in (minimum_distance(C), minimum_distance(C) + 1)
