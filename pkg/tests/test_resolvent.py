from fractions import Fraction

import pytest

from guegraphs.errors import DomainError
from guegraphs.exact import Poly, double_factorial
from guegraphs.resolvent import (A_value, B_value, hypergeom_2F1_terminating, kernel_matrix,
                                 one_point_correlator, override_kernel, resolvent_coeff)
from guegraphs.wick import moment_polynomial

N = Poly.gen("N")


def P(*coeffs):
    return Poly(coeffs, "N")


def const_matrix(m):
    return tuple(tuple(P(x) for x in row) for row in m)


def test_hypergeometric_terminates_at_j_terms():
    # 2F1(-2, b; 1; 2) = 1 - 4b + 2b(b+1)
    b = Poly.gen("N")
    assert hypergeom_2F1_terminating(2, b, 1, 2) == 1 - b * 4 + b * (b + 1) * 2


def test_hypergeometric_at_j_zero_is_one():
    assert hypergeom_2F1_terminating(0, 1 - N, 2, 2) == P(1)


def test_A_and_B_values_at_n_one_are_one():
    # the second parameter 1-N vanishes at N=1
    for j in range(10):
        assert A_value(j)(1) == 1
        assert B_value(j)(1) == 1


@pytest.mark.parametrize("k, expected", [
    (0, ((P(1), P()), (P(), P()))),
    (1, ((P(), -N), (P(1), P()))),
])
def test_resolvent_examples(k, expected):
    assert resolvent_coeff(k).entries == expected


def test_resolvent_k2_at_n_one():
    assert resolvent_coeff(2).at(1) == ((1, 0), (0, -1))
    assert const_matrix(((1, 0), (0, -1))) == kernel_matrix("L", 2).entries


def test_negative_index_gives_zero_matrix():
    zero = const_matrix(((0, 0), (0, 0)))
    assert resolvent_coeff(-1).entries == zero
    for variant in ("L", "B", "FULL"):
        for k in (-1, -3, -10):
            assert kernel_matrix(variant, k).is_zero()


def test_kernel_examples():
    assert kernel_matrix("L", 1).entries == const_matrix(((0, -1), (1, 0)))
    assert kernel_matrix("B", 4).is_zero()
    assert kernel_matrix("L", -3).is_zero()


def test_unknown_variant():
    with pytest.raises(DomainError):
        kernel_matrix("X", 1)


@pytest.mark.parametrize("k", range(0, 41))
def test_resolvent_at_n_one_is_L(k):
    assert resolvent_coeff(k).at(1) == tuple(
        tuple(e(1) for e in row) for row in kernel_matrix("L", k).entries)
    assert all(e.degree <= 0 for row in kernel_matrix("L", k).entries for e in row)


@pytest.mark.parametrize("k", range(0, 41))
def test_resolvent_linear_truncation_is_B(k):
    (a, b), (c, d) = resolvent_coeff(k).entries
    truncated = ((a.truncate(1), b.truncate(1)), (c.truncate(0), d.truncate(1)))
    assert truncated == kernel_matrix("B", k).entries


@pytest.mark.parametrize("k", range(0, 41))
def test_resolvent_entries_have_integer_coefficients(k):
    for row in resolvent_coeff(k).entries:
        for e in row:
            assert all(c.denominator == 1 for c in e.coeffs)


def test_override_is_scoped():
    original = kernel_matrix("L", 2).entries
    with override_kernel("L", 2, ((1, 0), (0, -2))):
        assert kernel_matrix("L", 2).entries == const_matrix(((1, 0), (0, -2)))
    assert kernel_matrix("L", 2).entries == original


@pytest.mark.parametrize("i, expected", [
    (2, P(0, 0, 1)),
    (4, P(0, 1, 0, 2)),
    (3, P()),
    (6, P(0, 0, 10, 0, 5)),
    (8, P(0, 21, 0, 70, 0, 14)),
])
def test_one_point_examples(i, expected):
    assert one_point_correlator(i) == expected


def test_one_point_rejects_non_positive():
    with pytest.raises(DomainError):
        one_point_correlator(0)


@pytest.mark.parametrize("j", range(1, 21))
def test_one_point_at_n_one_is_gaussian_moment(j):
    assert one_point_correlator(2 * j)(1) == double_factorial(2 * j - 1)


@pytest.mark.parametrize("i", range(1, 15))
def test_one_point_matches_oracle(i):
    assert one_point_correlator(i) == moment_polynomial((i,))


def test_one_point_leading_term_is_catalan():
    # planar maps with one vertex: Catalan numbers
    from math import comb
    for j in range(1, 12):
        p = one_point_correlator(2 * j)
        assert p.degree == j + 1
        assert p.leading == Fraction(comb(2 * j, j), j + 1)
