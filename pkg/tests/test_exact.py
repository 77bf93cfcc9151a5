from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from guegraphs.errors import DomainError, ReconstructionError, UnboundedAtInfinityError
from guegraphs.exact import (Poly, RationalFunction, binomial, double_factorial,
                             expand_at_infinity, rational_reconstruct, search_rational)

F = Fraction
g = Poly.gen("g")


def rf(num, den):
    return RationalFunction(Poly(num, "g"), Poly(den, "g"))


@pytest.mark.parametrize("k, expected", [(5, 15), (0, 1), (-1, 1), (1, 1), (2, 2), (8, 384)])
def test_double_factorial(k, expected):
    assert double_factorial(k) == expected


def test_double_factorial_rejects_below_minus_one():
    with pytest.raises(DomainError):
        double_factorial(-2)


@pytest.mark.parametrize("n, k, expected", [(2, 1, 2), (0, 0, 1), (3, 5, 0), (4, -1, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


@pytest.mark.parametrize("n", range(2, 13))
def test_binomial_strata_sum_to_power_of_two(n):
    assert sum(binomial(n - 2, r - 1) for r in range(1, n)) == 2 ** (n - 2)


rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
polys = st.lists(rationals, max_size=5).map(lambda cs: Poly(cs, "N"))


@given(rationals, rationals, rationals)
def test_fraction_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * (1 / a) == 1


@given(polys, polys, polys)
def test_poly_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(polys, polys)
def test_poly_mul_matches_sympy(p, q):
    x = sympy.Symbol("N")
    sp = sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(p.coeffs))
    sq = sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(q.coeffs))
    prod = sympy.Poly(sympy.expand(sp * sq), x) if (p * q).coeffs else None
    got = [sympy.Rational(c.numerator, c.denominator) for c in (p * q).coeffs]
    if prod is None:
        assert got == []
    else:
        assert got == list(reversed(prod.all_coeffs()))


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_poly_divmod(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


def test_zero_poly_degree_sentinel():
    assert Poly((0, 0), "N").degree == float("-inf")
    assert Poly((), "N").coeffs == ()


def test_rational_function_canonical_form():
    f = RationalFunction(g * 4 * (g + 1), (g + 1) * (g * 4 + 2))
    assert f.den.leading == 1
    assert f == rf([0, 2], [1, 2])
    assert str(f) == "2g/(2g+1)"
    assert str(rf([-1, 4], [2, 4])) == "(4g-1)/(4g+2)"
    assert str(rf([1], [1])) == "1"


def _sympy_fit(samples, a, b):
    """Independent route: sympy nullspace of the same homogeneous system."""
    rows = []
    for x, v in samples:
        v = sympy.Rational(v.numerator, v.denominator)
        rows.append([sympy.Integer(x) ** k for k in range(a + 1)] +
                    [-v * sympy.Integer(x) ** k for k in range(b + 1)])
    (vec,) = sympy.Matrix(rows).nullspace()
    gs = sympy.Symbol("g")
    num = sum(vec[k] * gs ** k for k in range(a + 1))
    den = sum(vec[a + 1 + k] * gs ** k for k in range(b + 1))
    return sympy.cancel(num / den)


def test_reconstruct_two_g_over_two_g_plus_one():
    samples = [(1, F(2, 3)), (2, F(4, 5)), (3, F(6, 7)), (4, F(8, 9))]
    gs = sympy.Symbol("g")
    assert sympy.simplify(_sympy_fit(samples, 1, 1) - 2 * gs / (2 * gs + 1)) == 0
    f = rational_reconstruct(samples, 1, 1)
    assert f == rf([0, 2], [1, 2])


def test_reconstruct_constant():
    assert rational_reconstruct([(1, F(1)), (2, F(1)), (3, F(1))], 0, 0) == rf([1], [1])


def test_reconstruct_failure_carries_residual():
    with pytest.raises(ReconstructionError) as exc:
        rational_reconstruct([(1, F(1)), (2, F(2)), (3, F(5))], 0, 0)
    assert exc.value.residual == (2, F(2))


def test_reconstruct_needs_enough_distinct_samples():
    with pytest.raises(DomainError):
        rational_reconstruct([(1, F(1)), (2, F(1))], 1, 0)
    with pytest.raises(DomainError):
        rational_reconstruct([(1, F(1)), (1, F(1)), (2, F(1))], 0, 0)


small_ints = st.integers(-6, 6)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_ints, min_size=1, max_size=4), st.lists(small_ints, min_size=1, max_size=4))
def test_reconstruct_reproduces_random_rational_functions(num, den):
    den_poly = Poly(den, "g")
    if den_poly.is_zero():
        return
    f = RationalFunction(Poly(num, "g"), den_poly)
    xs = [x for x in range(20, 60) if f.den(x) != 0][:10]
    samples = [(x, f(x)) for x in xs]
    fitted = search_rational(samples, 4)
    assert fitted == f
    assert all(fitted(x) == v for x, v in samples)


@pytest.mark.parametrize("f, order, expected", [
    (rf([0, 2], [1, 2]), 2, [F(1), F(-1, 2), F(1, 4)]),
    (rf([1], [1]), 3, [F(1), F(0), F(0), F(0)]),
    (rf([-1, 4], [2, 4]), 1, [F(1), F(-3, 4)]),
])
def test_expand_at_infinity(f, order, expected):
    assert expand_at_infinity(f, order) == expected


def test_expand_unbounded_raises():
    with pytest.raises(UnboundedAtInfinityError):
        expand_at_infinity(rf([0, 0, 1], [1, 1]), 2)


@pytest.mark.parametrize("f", [rf([0, 2], [1, 2]), rf([-1, 4], [2, 4]),
                               rf([3, 1, 5], [7, -2, 2]), rf([1, 1], [2, 3, 1])])
@pytest.mark.parametrize("order", [0, 1, 3, 5])
def test_expansion_truncation_error_is_next_order(f, order):
    x = 10 ** 6
    coeffs = expand_at_infinity(f, order + 1)
    partial = sum(c * F(1, x ** k) for k, c in enumerate(coeffs[: order + 1]))
    bound = (abs(coeffs[order + 1]) + 1) * F(1, x ** (order + 1))
    assert abs(f(x) - partial) <= bound
