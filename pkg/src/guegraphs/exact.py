"""Exact scalars, univariate polynomials and rational functions.

Rationals are :class:`fractions.Fraction` throughout.  :class:`Poly` is a
small immutable polynomial type in one formal symbol (``N`` for matrix size,
``g`` for genus) and :class:`RationalFunction` is a quotient of two such
polynomials kept in lowest terms with a monic denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, ReconstructionError, UnboundedAtInfinityError

__all__ = [
    "Fraction",
    "Poly",
    "RationalFunction",
    "double_factorial",
    "binomial",
    "rational_reconstruct",
    "search_rational",
    "expand_at_infinity",
    "format_fraction",
    "parse_fraction",
]


def double_factorial(k: int) -> int:
    """Return ``k!!``, with ``0!! = (-1)!! = 1``."""
    if k < -1:
        raise DomainError(f"double factorial undefined for {k}")
    return math.prod(range(k, 0, -2))


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def format_fraction(x: Fraction | int) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly:
    """Immutable polynomial with rational coefficients in one symbol.

    Coefficients are stored ascending by degree with no trailing zeros, so
    the zero polynomial has an empty coefficient tuple and degree ``-inf``.
    """

    __slots__ = ("coeffs", "symbol", "_hash")

    def __init__(self, coeffs: Iterable = (), symbol: str = "N"):
        self.coeffs = _trim(coeffs)
        self.symbol = symbol
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, symbol: str) -> "Poly":
        # coeffs must already be trimmed Fractions
        p = object.__new__(cls)
        p.coeffs = coeffs
        p.symbol = symbol
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, symbol: str = "N") -> "Poly":
        return cls((c,), symbol)

    @classmethod
    def gen(cls, symbol: str = "N") -> "Poly":
        return cls((0, 1), symbol)

    @property
    def degree(self) -> float | int:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.symbol != self.symbol and other.coeffs and len(other.coeffs) > 1 \
                    and len(self.coeffs) > 1:
                raise TypeError(f"mixing symbols {self.symbol} and {other.symbol}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,), self.symbol)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return Poly._raw(tuple(out), self.symbol)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs), self.symbol)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly._raw((), self.symbol)
            return Poly._raw(tuple(c * other for c in self.coeffs), self.symbol)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw((), self.symbol)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        while out and out[-1] == 0:
            out.pop()
        return Poly._raw(tuple(out), self.symbol)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative power of a polynomial")
        result = Poly((1,), self.symbol)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, Poly) else Poly((), x.symbol)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncate(self, max_degree: int) -> "Poly":
        """Drop every term of degree above ``max_degree``."""
        return Poly(self.coeffs[: max_degree + 1], self.symbol)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] -= c * oc
        return Poly(quot, self.symbol), Poly(rem[:dq] if dq > 0 else (), self.symbol)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def to_strings(self) -> list[str]:
        return [format_fraction(c) for c in self.coeffs]

    def __repr__(self):
        return f"Poly({self.to_strings()}, {self.symbol!r})"

    def __str__(self):
        return _render_terms(self.coeffs, self.symbol, sep=" ")


def _render_terms(coeffs: Sequence[Fraction], symbol: str, sep: str) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = format_fraction(a)
        else:
            mono = symbol if k == 1 else f"{symbol}^{k}"
            if a == 1:
                body = mono
            elif sep == " ":
                body = f"{format_fraction(a)}*{mono}"
            else:
                body = f"{format_fraction(a)}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f"{sep}{sign}{sep}{body}"
    return out


class RationalFunction:
    """Quotient ``num/den`` of polynomials in ``g``, canonical form.

    Canonical means coprime parts and a monic denominator, which makes
    ``==`` a plain comparison of coefficient tuples.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        symbol = num.symbol
        if den is None:
            den = Poly((1,), symbol)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den) if not num.is_zero() else den.monic()
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        scale = 1 / den.leading
        self.num = num * scale
        self.den = den * scale
        if self.num.is_zero():
            self.den = Poly((1,), symbol)

    @property
    def symbol(self) -> str:
        return self.num.symbol

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def limit_at_infinity(self) -> Fraction:
        """Value as ``g -> oo``; raises when the function is unbounded."""
        if self.num.degree > self.den.degree:
            raise UnboundedAtInfinityError("numerator degree exceeds denominator degree")
        if self.num.degree < self.den.degree:
            return Fraction(0)
        return self.num.leading / self.den.leading

    def integer_form(self) -> tuple[list[int], list[int]]:
        """Coefficients scaled to coprime integers with positive leading denominator."""
        coeffs = self.num.coeffs + self.den.coeffs
        lcm = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * lcm) for c in coeffs]
        content = math.gcd(*ints)
        k = len(self.num.coeffs)
        ints = [c // content for c in ints]
        return ints[:k], ints[k:]

    def __str__(self):
        num, den = self.integer_form()
        s = self.symbol
        top = _render_terms([Fraction(c) for c in num], s, sep="")
        if den == [1]:
            return top
        bottom = _render_terms([Fraction(c) for c in den], s, sep="")
        if sum(1 for c in num if c) > 1:
            top = f"({top})"
        if sum(1 for c in den if c) > 1 or (len(den) > 1 and abs(den[-1]) != 1):
            bottom = f"({bottom})"
        return f"{top}/{bottom}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right null space of a rational matrix (Gauss-Jordan)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def rational_reconstruct(samples: Sequence[tuple[int, Fraction]], num_degree: int,
                         den_degree: int, symbol: str = "g") -> RationalFunction:
    """Find ``P/Q`` with ``deg P <= num_degree``, ``deg Q <= den_degree`` through all samples.

    Solves ``P(x_i) - v_i Q(x_i) = 0`` exactly.  At least
    ``num_degree + den_degree + 2`` samples are required so that one equation
    beyond the unknown count is always checked.
    """
    if num_degree < 0 or den_degree < 0:
        raise DomainError("degrees must be non-negative")
    if len(samples) < num_degree + den_degree + 2:
        raise DomainError(
            f"need at least {num_degree + den_degree + 2} samples, got {len(samples)}")
    xs = [Fraction(x) for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise DomainError("sample abscissae must be distinct")
    ncols = num_degree + den_degree + 2
    rows = []
    for x, v in samples:
        x, v = Fraction(x), Fraction(v)
        powers = [x ** k for k in range(max(num_degree, den_degree) + 1)]
        rows.append(powers[: num_degree + 1] + [-v * p for p in powers[: den_degree + 1]])
    basis = _nullspace(rows, ncols)
    for vec in basis:
        den = Poly(vec[num_degree + 1:], symbol)
        if den.is_zero():
            continue
        f = RationalFunction(Poly(vec[: num_degree + 1], symbol), den)
        for x, v in samples:
            if f.den(x) == 0 or f(x) != Fraction(v):
                raise ReconstructionError(
                    f"degree ({num_degree}, {den_degree}) candidate {f} misses sample "
                    f"({x}, {format_fraction(Fraction(v))})", residual=(x, Fraction(v)))
        return f
    raise ReconstructionError(
        f"no rational function of degree ({num_degree}, {den_degree}) fits the samples",
        residual=_first_miss(rows, samples, ncols))


def _first_miss(rows, samples, ncols):
    """First sample that breaks the system, found by growing the prefix."""
    for stop in range(ncols, len(rows) + 1):
        if not _nullspace(rows[:stop], ncols):
            x, v = samples[stop - 1]
            return (Fraction(x), Fraction(v))
    return None


def search_rational(samples: Sequence[tuple[int, Fraction]], degree_cap: int = 8,
                    symbol: str = "g") -> RationalFunction:
    """Fit with equal degrees ``(d, d)`` for ``d = 0, 1, ...`` and return the first success."""
    last = None
    for d in range(degree_cap + 1):
        if len(samples) < 2 * d + 2:
            break
        try:
            return rational_reconstruct(samples, d, d, symbol)
        except ReconstructionError as exc:
            last = exc
    raise ReconstructionError(
        f"no fit with degrees up to {degree_cap} from {len(samples)} samples",
        residual=last.residual if last else None)


def expand_at_infinity(f: RationalFunction, order: int) -> list[Fraction]:
    """Coefficients ``c_0..c_order`` of ``f(g) = sum c_k g^-k`` at large ``g``."""
    if order < 0:
        raise DomainError("order must be non-negative")
    if f.num.degree > f.den.degree:
        raise UnboundedAtInfinityError(f"{f} is unbounded as g -> oo")
    D = f.den.degree
    # reversed coefficient lists are the series in x = 1/g
    num = [f.num.coeff(D - k) for k in range(D + 1)]
    den = [f.den.coeff(D - k) for k in range(D + 1)]
    out: list[Fraction] = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, D) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc / den[0])
    return out
