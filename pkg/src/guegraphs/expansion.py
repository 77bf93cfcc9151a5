"""Permutation expansion of the n-point resolvent formula.

For ``n >= 2`` the connected correlator is

    <tr M^{d_1} ... tr M^{d_n}>_c = (1/n) sum_{sigma in S_n} (-1)^{m(sigma)+1}
                                    sum_{j >= 0} tr(rho_{K_1} ... rho_{K_n})

where ``m`` is the cyclic descent count and ``K_q`` are the exponent shifts
produced by expanding ``1/prod(lam_sigma(q) - lam_sigma(q+1))`` in the region
``|lam_1| > ... > |lam_n|``.  Replacing ``rho`` by ``L`` (``N = 1``) or by
``B`` (coefficient of ``N^1``) gives ordinary-graph and one-face ribbon-graph
counts.

Two engines compute the double sum.  :func:`expansion_sum` walks each
permutation and enumerates its exponent tuples; it is cheap when ``n`` is
small, whatever the genus.  :func:`expansion_sum_dp` builds permutations
position by position and merges partial matrix products that share the same
future (used labels, last label, last ``J``); it is the one that scales to
``n`` around 10.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DomainError
from .exact import Poly, binomial, double_factorial
from .resolvent import kernel_entries, one_point_correlator

__all__ = [
    "PermutationData",
    "ExponentTuple",
    "validate_profile",
    "genus_og",
    "genus_rg",
    "m_of",
    "J_value",
    "unimodal_permutations",
    "enumerate_exponent_tuples",
    "trace_kernel",
    "expansion_sum",
    "expansion_sum_dp",
    "normalized_og",
    "normalized_rg",
    "og_count",
    "rg_count",
    "correlator_polynomial",
]

VARIANTS = ("L", "B", "FULL")
DIRECT_MAX_N = 4


@dataclass(frozen=True)
class PermutationData:
    sigma: tuple[int, ...]
    m: int
    unimodal_r: int | None = None


@dataclass(frozen=True)
class ExponentTuple:
    j: tuple[int, ...]
    K: tuple[int, ...] = field(compare=False)


# -- profiles and Euler constraints ---------------------------------------

def validate_profile(profile: Sequence[int]) -> tuple[int, ...]:
    profile = tuple(int(i) for i in profile)
    if not profile:
        raise DomainError("profile must contain at least one valency")
    bad = [i for i in profile if i < 1]
    if bad:
        raise DomainError(f"valencies must be positive, got {bad}")
    return profile


def genus_og(profile: Sequence[int]) -> int:
    """Genus forced by ``sum(i) = 2g + 2n - 2``; raises if there is none."""
    profile = validate_profile(profile)
    total, n = sum(profile), len(profile)
    twice = total - 2 * n + 2
    if twice % 2:
        raise DomainError(f"ordinary graphs need sum(i) = 2g+2n-2: sum {total} is odd")
    if twice < 0:
        raise DomainError(
            f"ordinary graphs need sum(i) = 2g+2n-2 with g >= 0: sum {total} < {2 * n - 2}")
    return twice // 2


def genus_rg(profile: Sequence[int]) -> int:
    """Genus forced by ``sum(i) = 4g + 2n - 2``; raises if there is none."""
    profile = validate_profile(profile)
    total, n = sum(profile), len(profile)
    rest = total - 2 * n + 2
    if rest < 0 or rest % 4:
        raise DomainError(
            f"one-face ribbon graphs need sum(i) = 4g+2n-2 with g >= 0: "
            f"sum {total} - {2 * n - 2} = {rest} is not a non-negative multiple of 4")
    return rest // 4


def _check_genus(got: int, g: int | None, family: str) -> int:
    if g is not None and g != got:
        raise DomainError(f"profile has {family} genus {got}, not {g}")
    return got


# -- permutation statistics -----------------------------------------------

def m_of(sigma: Sequence[int]) -> int:
    """Cyclic descent count ``#{q : sigma(q+1) < sigma(q)}`` with ``sigma(n+1) = sigma(1)``."""
    n = len(sigma)
    return sum(1 for q in range(n) if sigma[(q + 1) % n] < sigma[q])


def _descents(sigma: Sequence[int]) -> tuple[bool, ...]:
    n = len(sigma)
    return tuple(sigma[q] > sigma[(q + 1) % n] for q in range(n))


def J_value(sigma: Sequence[int], q: int, j: int) -> int:
    """Exponent shift at 1-based position ``q``: ``j`` at a descent, ``-j-1`` at an ascent."""
    n = len(sigma)
    if not 1 <= q <= n:
        raise DomainError(f"position {q} outside 1..{n}")
    if sigma[q - 1] > sigma[q % n]:
        return j
    return -j - 1


def unimodal_permutations(n: int) -> list[PermutationData]:
    """Permutations with ``sigma(n) = n`` that decrease to 1 and then increase.

    ``unimodal_r`` is the position of the value 1; it equals ``m(sigma)``.
    """
    if n < 2:
        raise DomainError("unimodal permutations need n >= 2")
    middle = range(2, n)
    out = []
    for r in range(1, n):
        for before in itertools.combinations(middle, r - 1):
            after = sorted(set(middle) - set(before))
            sigma = tuple(sorted(before, reverse=True)) + (1,) + tuple(after) + (n,)
            out.append(PermutationData(sigma, m_of(sigma), r))
    return out


def permutation_data(sigma: Sequence[int]) -> PermutationData:
    sigma = tuple(sigma)
    n = len(sigma)
    r = None
    if n >= 2 and sigma[-1] == n:
        pos = sigma.index(1)
        head, tail = sigma[: pos + 1], sigma[pos:]
        if all(a > b for a, b in zip(head, head[1:])) and all(a < b for a, b in zip(tail, tail[1:])):
            r = pos + 1
    return PermutationData(sigma, m_of(sigma), r)


# -- exponent tuples ------------------------------------------------------

def _K_tuple(profile, sigma, desc, j) -> tuple[int, ...]:
    n = len(sigma)
    J = [jq if desc[q] else -jq - 1 for q, jq in enumerate(j)]
    return tuple(profile[sigma[q] - 1] + J[q] - J[q - 1] for q in range(n))


def enumerate_exponent_tuples(profile: Sequence[int], sigma: Sequence[int]) -> Iterator[ExponentTuple]:
    """All ``j`` in ``Z_{>=0}^n`` with every ``K_q >= 0``.

    Depth-first over ``j_n, j_1, ..., j_{n-1}``.  ``K_q`` only involves
    ``j_{q-1}`` and ``j_q``, so each choice is bounded by the previous one;
    the partial sums ``K_1 + ... + K_t = d_1 + ... + d_t + J_t - J_n`` can
    never exceed the total, which caps ``J_t`` at descents.
    """
    profile = validate_profile(profile)
    sigma = tuple(sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)) or n != len(profile):
        raise DomainError("sigma must be a permutation of 1..n matching the profile length")
    d = [profile[s - 1] for s in sigma]
    desc = _descents(sigma)
    total = sum(d)
    suffix = [sum(d[q:]) for q in range(n + 1)]

    def bounds(q: int, J_prev: int, J_last: int):
        # admissible J_q values at 0-based position q given J_{q-1}
        if desc[q]:
            lo = max(0, J_prev - d[q])
            hi = J_last + suffix[q + 1]
            return range(lo, hi + 1), True
        hi = d[q] - 1 - J_prev
        return range(0, hi + 1), False

    for j_last in range(total):
        J_last = j_last if desc[n - 1] else -j_last - 1
        stack = [(0, J_last, ())]
        while stack:
            q, J_prev, js = stack.pop()
            if q == n - 1:
                if d[q] + J_last - J_prev >= 0:
                    j = js + (j_last,)
                    yield ExponentTuple(j, _K_tuple(profile, sigma, desc, j))
                continue
            rng, is_desc = bounds(q, J_prev, J_last)
            for jq in reversed(rng):
                J_q = jq if is_desc else -jq - 1
                stack.append((q + 1, J_q, js + (jq,)))


# -- trace kernels --------------------------------------------------------

def _matmul(a, b, trunc: int | None):
    (a11, a12), (a21, a22) = a
    (b11, b12), (b21, b22) = b
    out = ((a11 * b11 + a12 * b21, a11 * b12 + a12 * b22),
           (a21 * b11 + a22 * b21, a21 * b12 + a22 * b22))
    if trunc is not None:
        out = tuple(tuple(e.truncate(trunc) for e in row) for row in out)
    return out


def _is_zero_matrix(m) -> bool:
    return all(e.is_zero() for row in m for e in row)


def _kernel_product(variant: str, K: Sequence[int]):
    if any(k < 0 for k in K):
        return None
    trunc = 1 if variant == "B" else None
    acc = None
    for k in K:
        m = kernel_entries(variant, k)
        acc = m if acc is None else _matmul(acc, m, trunc)
        if _is_zero_matrix(acc):
            return None
    return acc


def _finish(variant: str, trace: Poly):
    if variant == "L":
        return trace.coeff(0)
    if variant == "B":
        return trace.coeff(1)
    return trace


def _zero(variant: str):
    return Poly((), "N") if variant == "FULL" else Fraction(0)


def trace_kernel(variant: str, K: Sequence[int]):
    """``l`` (``L``), ``b`` (``B``: coefficient of ``N^1``) or the full ``rho`` trace.

    Zero whenever an index is negative.
    """
    if variant not in VARIANTS:
        raise DomainError(f"unknown kernel variant {variant!r}")
    prod = _kernel_product(variant, tuple(K))
    if prod is None:
        return _zero(variant)
    return _finish(variant, prod[0][0] + prod[1][1])


# -- double sums ----------------------------------------------------------

def _sigmas(n: int, restrict_last: bool):
    if restrict_last:
        for head in itertools.permutations(range(1, n)):
            yield head + (n,)
    else:
        yield from itertools.permutations(range(1, n + 1))


def expansion_sum(profile: Sequence[int], variant: str, restrict_last: bool = False,
                  sigmas=None):
    """``sum_sigma (-1)^{m(sigma)+1} sum_j kernel(K)``, one permutation at a time.

    With ``restrict_last`` only permutations fixing ``n`` are summed, which
    equals ``1/n`` of the full sum by cyclic symmetry.
    """
    profile = validate_profile(profile)
    n = len(profile)
    if n < 2:
        raise DomainError("the permutation expansion needs n >= 2")
    total = _zero(variant)
    for sigma in (sigmas if sigmas is not None else _sigmas(n, restrict_last)):
        sub = _zero(variant)
        for t in enumerate_exponent_tuples(profile, sigma):
            if not any(t.K):
                raise AssertionError("all-zero exponent tuple cannot occur for positive valencies")
            sub = sub + trace_kernel(variant, t.K)
        if m_of(sigma) % 2 == 0:
            total = total - sub
        else:
            total = total + sub
    return total


def _int_pair(variant: str, k: int, at: int, absolute: bool) -> tuple[int, int]:
    """Nonzero pair of a kernel evaluated at ``N = at``.

    Even-index kernels are diagonal, ``diag(a, b)``; odd-index ones are
    anti-diagonal, ``[[0, a], [b, 0]]``.  The pair is ``(a, b)`` in both cases.
    """
    (m11, m12), (m21, m22) = kernel_entries(variant, k)
    pair = (m11, m22) if k % 2 == 0 else (m12, m21)
    if k % 2 == 0 and not (m12.is_zero() and m21.is_zero()) or \
            k % 2 == 1 and not (m11.is_zero() and m22.is_zero()):
        raise ArithmeticError(f"{variant}_{k} is neither diagonal nor anti-diagonal")
    out = []
    for e in pair:
        if any(x.denominator != 1 for x in e.coeffs):
            raise ArithmeticError(f"{variant}_{k} has non-integer coefficients")
        v = 0
        for x in reversed(e.coeffs):
            v = v * at + (abs(x.numerator) if absolute else x.numerator)
        out.append(v)
    return out[0], out[1]


def _dp_evaluate(profile: tuple[int, ...], variant: str, at: int,
                 absolute: bool = False, last: int | None = None) -> int:
    """Signed double sum over ``sigma`` with ``sigma(n) = last``, kernels evaluated at ``N = at``.

    ``last`` is a 1-based label and defaults to ``n``.  Evaluation is a ring
    homomorphism, so the result is the value of the polynomial sum at ``at``.
    With ``absolute`` all signs are dropped and coefficients replaced by
    their absolute values.

    A transition only needs to know, for each unused label, its valency and
    whether it is smaller or larger than the current label.  The state
    therefore keeps the valencies of the unused labels below and above the
    current one, each in label order, instead of the set of used labels;
    label sets with the same valency pattern share one state.  The label
    reserved for position ``n`` sits in these words as ``~valency`` and is
    only taken once nothing else is left.

    Products of diagonal and anti-diagonal matrices stay in one of the two
    shapes, decided by the parity of the indices so far, so a state value is
    just the pair ``(a, b)`` plus that parity.
    """
    n = len(profile)
    d = profile
    total_d = sum(d)
    c = n - 1 if last is None else last - 1
    d_last = d[c]
    # every K_q is at most the total valency
    kern = [_int_pair(variant, K, at, absolute) for K in range(total_d + 1)]

    def times(value, K):
        a, b, anti = value
        x, e = kern[K]
        if anti:
            return a * e, b * x, not (K & 1)
        return a * x, b * e, bool(K & 1)

    # key: (below, above, d_cur, J_prev, J_close) with below/above the
    # valencies of unused labels smaller/larger than the current label
    word = tuple(~v if i == c else v for i, v in enumerate(d))
    states: dict = {}
    for first in range(n):
        if first == c:
            continue
        closing_desc = c > first
        # (-1)^(m+1): the closing step's own factor is applied here
        sign = 1 if closing_desc or absolute else -1
        for j_close in range(total_d):
            J_close = j_close if closing_desc else -j_close - 1
            key = (word[:first], word[first + 1:], d[first], J_close, J_close)
            prev = states.get(key, (0, 0, False))
            states[key] = (prev[0] + sign, prev[1] + sign, False)

    def step(store, key_rest, value, dl, J_prev, J_close, desc, hi):
        if desc:
            Js = range(max(0, J_prev - dl), hi + 1)
        else:
            Js = range(min(-1, hi), J_prev - dl - 1, -1)
        get = store.get
        negate = desc and not absolute
        a0, b0, anti0 = value
        base = dl - J_prev
        for J_q in Js:
            K = base + J_q
            x, e = kern[K]
            if anti0:
                a, b, anti = a0 * e, b0 * x, not (K & 1)
            else:
                a, b, anti = a0 * x, b0 * e, bool(K & 1)
            if not (a or b):
                continue
            if negate:
                a, b = -a, -b
            key = key_rest + (J_q, J_close)
            prev = get(key)
            if prev is not None:
                a += prev[0]
                b += prev[1]
            store[key] = (a, b, anti)

    # fill positions 2..n-1 with the labels other than the reserved one
    for _ in range(n - 2):
        nxt: dict = {}
        for (below, above, dl, J_prev, J_close), value in states.items():
            # partial sums of the K's after this position are non-negative
            hi = J_close + sum(v if v >= 0 else ~v for v in below + above)
            for i, dn in enumerate(below):
                if dn >= 0:
                    step(nxt, (below[:i], below[i + 1:] + above, dn), value, dl, J_prev,
                         J_close, True, hi)
            for i, dn in enumerate(above):
                if dn >= 0:
                    step(nxt, (below + above[:i], above[i + 1:], dn), value, dl, J_prev,
                         J_close, False, hi)
        states = nxt

    # position n carries the reserved label; the closing step returns to position 1
    result = 0
    for (below, above, dl, J_prev, J_close), value in states.items():
        if below:
            Js = range(max(0, J_prev - dl), J_close + d_last + 1)
            negate = not absolute
        else:
            Js = range(min(-1, J_close + d_last), J_prev - dl - 1, -1)
            negate = False
        for J_q in Js:
            a, b, anti = times(times(value, dl + J_q - J_prev), d_last + J_close - J_q)
            if not anti:
                result += -(a + b) if negate else a + b
    return result


def _balanced_digits(value: int, base: int) -> list[int]:
    digits = []
    while value:
        r = value % base
        if r > base // 2:
            r -= base
        digits.append(r)
        value = (value - r) // base
    return digits


def _coefficient_bound(profile: tuple[int, ...], variant: str) -> int:
    """Upper bound on every coefficient of the signed double sum.

    There are at most ``(n-1)! * total^n`` pairs ``(sigma, j)``; each trace is
    ``a + b`` with ``a, b`` single products of kernel entries, so its
    coefficients are bounded by ``2 * prod c(K_q)`` with ``c(K)`` the larger
    absolute coefficient sum of the two entries of kernel ``K``.  The product
    is maximized over all ``K`` with ``sum K = total`` by a small knapsack.
    """
    n, total = len(profile), sum(profile)
    c = [max(_int_pair(variant, K, 1, True)) for K in range(total + 1)]
    best = [1] + [0] * total
    for _ in range(n):
        best = [max(best[t - K] * c[K] for K in range(t + 1)) for t in range(total + 1)]
    return math.factorial(n - 1) * total ** n * 2 * best[total]


def expansion_sum_dp(profile: Sequence[int], variant: str, last: int | str | None = None):
    """Same value as ``expansion_sum(profile, variant, restrict_last=True)``.

    Permutations fixing ``n`` are built one position at a time and partial
    matrix products that share a future are summed before extending (see
    :func:`_dp_evaluate`).  Kernel matrices have integer polynomial entries,
    so the whole sum is evaluated at a single integer ``N = base`` larger than
    twice a proven bound on every coefficient, and the polynomial is read back
    from its balanced base-``base`` digits.

    ``last`` selects another label for position ``n``; ``last="all"`` sums
    over every choice, which is the unrestricted sum over ``S_n``.
    """
    profile = validate_profile(profile)
    n = len(profile)
    if n < 2:
        raise DomainError("the permutation expansion needs n >= 2")
    if variant not in VARIANTS:
        raise DomainError(f"unknown kernel variant {variant!r}")
    if last == "all":
        parts = [expansion_sum_dp(profile, variant, c) for c in range(1, n + 1)]
        return sum(parts[1:], parts[0])
    if last is not None and not 1 <= last <= n:
        raise DomainError(f"last label must lie in 1..{n}, got {last}")
    if variant == "L":
        return Fraction(_dp_evaluate(profile, "L", 1, last=last))
    bound = _coefficient_bound(profile, variant)
    base = 1 << (2 * bound + 1).bit_length()
    poly = Poly(_balanced_digits(_dp_evaluate(profile, variant, base, last=last), base), "N")
    if variant == "B":
        return poly.coeff(1)
    return poly


# -- normalized counts and correlators ------------------------------------

def _restricted_sum(profile: tuple[int, ...], variant: str):
    # the direct walk wins for few vertices, where the DP only adds overhead
    if len(profile) <= DIRECT_MAX_N:
        return expansion_sum(profile, variant, restrict_last=True)
    return expansion_sum_dp(profile, variant)


def normalized_og(profile: Sequence[int], g: int | None = None) -> Fraction:
    """Ordinary-graph count normalized by ``(2g+2n-3)!!``; tends to 1 as ``g`` grows."""
    profile = validate_profile(profile)
    g = _check_genus(genus_og(profile), g, "ordinary-graph")
    n = len(profile)
    if n == 1:
        return one_point_correlator(profile[0])(1) / double_factorial(2 * g - 1)
    s = _restricted_sum(profile, "L")
    return Fraction(s) / double_factorial(2 * g + 2 * n - 3)


def normalized_rg(profile: Sequence[int], g: int | None = None) -> Fraction:
    """One-face ribbon-graph count normalized by ``2 (4g+2n-5)!!``."""
    profile = validate_profile(profile)
    g = _check_genus(genus_rg(profile), g, "one-face ribbon-graph")
    n = len(profile)
    if n == 1:
        return one_point_correlator(profile[0]).coeff(1) / (2 * double_factorial(4 * g - 3))
    s = _restricted_sum(profile, "B")
    return Fraction(s) / (2 * double_factorial(4 * g + 2 * n - 5))


def og_count(profile: Sequence[int], g: int | None = None) -> Fraction:
    """Weighted number of connected ordinary graphs with the given valencies."""
    profile = validate_profile(profile)
    g = _check_genus(genus_og(profile), g, "ordinary-graph")
    n = len(profile)
    scale = double_factorial(2 * g + 2 * n - 3)
    denom = math.prod(math.factorial(i) for i in profile) * math.factorial(n)
    return normalized_og(profile, g) * scale / denom


def rg_count(profile: Sequence[int], g: int | None = None) -> Fraction:
    """Weighted number of connected one-face ribbon graphs with the given valencies."""
    profile = validate_profile(profile)
    g = _check_genus(genus_rg(profile), g, "one-face ribbon-graph")
    n = len(profile)
    return normalized_rg(profile, g) * 2 * double_factorial(4 * g + 2 * n - 5) / math.factorial(n)


def correlator_polynomial(profile: Sequence[int], engine: str = "dp") -> Poly:
    """``<tr M^{i_1} ... tr M^{i_n}>_c`` as a polynomial in ``N``.

    ``engine="dp"`` uses :func:`expansion_sum_dp` over the permutations
    fixing ``n`` (cyclic symmetry makes that sum ``1/n`` of the full one);
    ``"direct"`` walks all of ``S_n``.  Both give identical results.
    """
    profile = validate_profile(profile)
    n = len(profile)
    if n == 1:
        return one_point_correlator(profile[0])
    if engine == "dp":
        return expansion_sum_dp(profile, "FULL")
    elif engine == "direct":
        s = expansion_sum(profile, "FULL")
    else:
        raise DomainError(f"unknown engine {engine!r}")
    return s * Fraction(1, n)
