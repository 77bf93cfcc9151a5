import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.utilities.iterables import multiset_partitions

from guegraphs.errors import DomainError, ResourceLimitError
from guegraphs.exact import Poly, double_factorial
from guegraphs.verify import compositions
from guegraphs.wick import (connected_correlator, moment_polynomial, one_face_count, pairings,
                            rotation)

N = Poly.gen("N")
profiles = st.lists(st.integers(1, 5), min_size=1, max_size=4).filter(lambda p: sum(p) <= 10)


def test_rotation_cycles_each_vertex():
    assert rotation((2, 3)) == [1, 0, 3, 4, 2]


def test_moment_examples():
    assert moment_polynomial((2,)) == N * N
    assert moment_polynomial((4,)) == N ** 3 * 2 + N
    assert moment_polynomial((1, 1)) == N
    assert moment_polynomial((3,)).is_zero()


def test_number_of_pairings_is_double_factorial():
    for t in range(2, 11, 2):
        assert sum(1 for _ in pairings((t,))) == double_factorial(t - 1)
        assert sum(moment_polynomial((t,)).coeffs) == double_factorial(t - 1)


def test_connected_examples():
    assert connected_correlator((1, 1)) == N
    assert connected_correlator((2, 2)) == N * N * 2
    assert connected_correlator((1, 3)) == N * N * 3


def test_one_face_counts():
    assert one_face_count((4,)) == 1
    assert one_face_count((8,)) == 21
    assert one_face_count((12,)) == 1485


def test_one_face_rejects_inadmissible():
    with pytest.raises(DomainError):
        one_face_count((6,))


def test_cap_is_enforced():
    with pytest.raises(ResourceLimitError):
        connected_correlator((10, 10), cap=16)
    with pytest.raises(DomainError):
        connected_correlator((0, 2))


@settings(max_examples=40, deadline=None)
@given(profiles)
def test_genus_is_a_non_negative_integer_per_component(profile):
    for d in pairings(profile):
        assert d.total_genus >= 0


@pytest.mark.parametrize("profile", [(4,), (1, 3), (2, 2), (2, 4), (3, 3), (1, 1, 2), (6,)])
def test_connected_diagrams_have_euler_genus(profile):
    n = len(profile)
    for d in pairings(profile):
        if d.components == 1:
            twice = 2 - n + sum(profile) // 2 - d.faces
            assert twice >= 0 and twice % 2 == 0


@settings(max_examples=40, deadline=None)
@given(profiles, st.randoms(use_true_random=False))
def test_reordering_invariance(profile, rnd):
    shuffled = list(profile)
    rnd.shuffle(shuffled)
    assert connected_correlator(shuffled) == connected_correlator(profile)
    assert moment_polynomial(shuffled) == moment_polynomial(profile)


@settings(max_examples=40, deadline=None)
@given(profiles)
def test_odd_total_vanishes(profile):
    if sum(profile) % 2:
        assert connected_correlator(profile).is_zero()


def _connected_by_diagrams(profile):
    hist = {}
    for d in pairings(profile):
        if d.components == 1:
            hist[d.faces] = hist.get(d.faces, 0) + 1
    return Poly([hist.get(k, 0) for k in range(max(hist, default=-1) + 1)], "N")


@pytest.mark.parametrize("profile", [p for t in range(1, 9) for p in compositions(t)])
def test_cumulant_counts_connected_diagrams(profile):
    assert connected_correlator(profile) == _connected_by_diagrams(profile)


def _mobius_cumulant(profile, moment):
    total = 0
    for part in multiset_partitions(list(range(len(profile)))):
        k = len(part)
        term = (-1) ** (k - 1) * math.factorial(k - 1)
        for block in part:
            term = term * moment(tuple(profile[i] for i in block))
        total = total + term
    return total


@pytest.mark.parametrize("profile", [(1, 1), (2, 2), (1, 1, 2), (2, 2, 2), (1, 3, 2), (1, 1, 1, 1),
                                     (2, 1, 1, 2), (3, 3, 2)])
def test_recursion_matches_set_partition_formula(profile):
    assert connected_correlator(profile) == _mobius_cumulant(profile, moment_polynomial)


def _scalar_moment(block):
    t = sum(block)
    return 0 if t % 2 else double_factorial(t - 1)


@pytest.mark.parametrize("profile", [(2,), (1, 1), (2, 2), (1, 3), (2, 4), (1, 1, 2), (3, 3, 2),
                                     (1, 1, 1, 1), (2, 2, 2, 2)])
def test_n_one_gives_scalar_gaussian_cumulants(profile):
    assert connected_correlator(profile)(1) == Fraction(_mobius_cumulant(profile, _scalar_moment))
