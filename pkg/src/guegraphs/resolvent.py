"""Resolvent coefficients and the trace-kernel matrices built from them.

The GUE matrix resolvent is the 2x2 matrix series

    R_N(lam) = E11 + N * sum_j (2j-1)!! / lam^(2j+2) * [[(2j+1) A, -lam B'], [lam B / N, -(2j+1) A]]

with ``A = 2F1(-j, 1-N; 2; 2)``, ``B = 2F1(-j, 1-N; 1; 2)`` and ``B'`` the same
as ``B`` with ``N -> N+1``.  :func:`resolvent_coeff` returns the coefficient
of ``lam^-k``.  Setting ``N = 1`` gives the ``L`` matrices used for ordinary
graphs, and keeping only the part that can reach ``N^1`` in a trace gives the
``B`` matrices used for one-face ribbon graphs.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .exact import Poly, double_factorial

__all__ = [
    "ResolventCoeff",
    "TraceKernelMatrix",
    "hypergeom_2F1_terminating",
    "A_value",
    "B_value",
    "resolvent_coeff",
    "kernel_matrix",
    "one_point_correlator",
    "override_kernel",
]

Matrix = tuple[tuple[Poly, Poly], tuple[Poly, Poly]]

_N = Poly.gen("N")
_ZERO = Poly((), "N")
_ONE = Poly((1,), "N")
_ZERO_MATRIX: Matrix = ((_ZERO, _ZERO), (_ZERO, _ZERO))
_E11: Matrix = ((_ONE, _ZERO), (_ZERO, _ZERO))


@dataclass(frozen=True)
class ResolventCoeff:
    k: int
    entries: Matrix

    def at(self, n_value) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """Specialize the formal matrix size to a number."""
        return tuple(tuple(e(Fraction(n_value)) for e in row) for row in self.entries)


@dataclass(frozen=True)
class TraceKernelMatrix:
    variant: str
    k: int
    entries: Matrix

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)


def hypergeom_2F1_terminating(j: int, b_param, c: int, z) -> Poly:
    """``2F1(-j, b; c; z)`` as an exact finite sum.

    ``b_param`` may be a number or a :class:`Poly` in ``N``; the result is
    always returned as a polynomial in ``N``.
    """
    if j < 0:
        raise DomainError("first parameter must be a non-positive integer -j")
    if c < 1:
        raise DomainError("c must be a positive integer")
    if not isinstance(b_param, Poly):
        b_param = Poly.constant(b_param, "N")
    z = Fraction(z)
    term = Poly((1,), b_param.symbol)
    total = term
    for m in range(j):
        term = term * (b_param + m) * (Fraction(-j + m) * z / ((c + m) * (m + 1)))
        if term.is_zero():
            break
        total = total + term
    return total


@lru_cache(maxsize=None)
def A_value(j: int) -> Poly:
    """``A_{N,j} = 2F1(-j, 1-N; 2; 2)``."""
    return hypergeom_2F1_terminating(j, 1 - _N, 2, 2)


@lru_cache(maxsize=None)
def B_value(j: int, shift: int = 0) -> Poly:
    """``B_{N+shift,j} = 2F1(-j, 1-N-shift; 1; 2)``."""
    return hypergeom_2F1_terminating(j, 1 - shift - _N, 1, 2)


@lru_cache(maxsize=None)
def _resolvent_entries(k: int) -> Matrix:
    if k < 0:
        return _ZERO_MATRIX
    if k == 0:
        return _E11
    if k % 2 == 0:
        j = (k - 2) // 2
        d = _N * A_value(j) * double_factorial(2 * j + 1)
        return ((d, _ZERO), (_ZERO, -d))
    j = (k - 1) // 2
    df = double_factorial(2 * j - 1)
    return ((_ZERO, -(_N * B_value(j, shift=1)) * df), (B_value(j) * df, _ZERO))


def resolvent_coeff(k: int) -> ResolventCoeff:
    """Coefficient of ``lam^-k`` in ``R_N(lam)``; the zero matrix for ``k < 0``."""
    return ResolventCoeff(k, _resolvent_entries(k))


def _const(x) -> Poly:
    return Poly((x,), "N")


@lru_cache(maxsize=None)
def _L_entries(k: int) -> Matrix:
    if k < 0:
        return _ZERO_MATRIX
    if k == 0:
        return _E11
    if k % 2 == 0:
        d = _const(double_factorial(k - 1))
        return ((d, _ZERO), (_ZERO, -d))
    return ((_ZERO, _const(-double_factorial(k))), (_const(double_factorial(k - 2)), _ZERO))


@lru_cache(maxsize=None)
def _B_entries(k: int) -> Matrix:
    if k < 0:
        return _ZERO_MATRIX
    if k == 0:
        return _E11
    if k % 2 == 0:
        d = _N * Fraction(double_factorial(k - 1) * (1 + (-1) ** ((k - 2) // 2)), k)
        return ((d, _ZERO), (_ZERO, -d))
    df = double_factorial(k - 2)
    return ((_ZERO, _N * (-df)), (_const(df * (-1) ** ((k - 1) // 2)), _ZERO))


_BUILDERS = {"L": _L_entries, "B": _B_entries, "FULL": _resolvent_entries}

# test/fault-injection hook: (variant, k) -> replacement entries
_OVERRIDES: dict[tuple[str, int], Matrix] = {}


def kernel_matrix(variant: str, k: int) -> TraceKernelMatrix:
    """The ``L_k`` (``N = 1``) or ``B_k`` (one-face) matrix; ``FULL`` gives ``rho_k``."""
    try:
        build = _BUILDERS[variant]
    except KeyError:
        raise DomainError(f"unknown kernel variant {variant!r}") from None
    entries = _OVERRIDES.get((variant, k))
    if entries is None:
        entries = build(k)
    return TraceKernelMatrix(variant, k, entries)


def kernel_entries(variant: str, k: int) -> Matrix:
    return kernel_matrix(variant, k).entries


@contextlib.contextmanager
def override_kernel(variant: str, k: int, entries):
    """Temporarily replace one kernel matrix (used to check that verification catches faults)."""
    key = (variant, k)
    entries = tuple(tuple(e if isinstance(e, Poly) else _const(e) for e in row) for row in entries)
    previous = _OVERRIDES.get(key)
    _OVERRIDES[key] = entries
    try:
        yield
    finally:
        if previous is None:
            _OVERRIDES.pop(key, None)
        else:
            _OVERRIDES[key] = previous


def overrides_active() -> bool:
    return bool(_OVERRIDES)


@lru_cache(maxsize=None)
def one_point_correlator(i: int) -> Poly:
    """``<tr M^i>(N)`` from the closed hypergeometric form."""
    if i <= 0:
        raise DomainError(f"valency must be positive, got {i}")
    if i % 2:
        return _ZERO
    j = i // 2
    first = hypergeom_2F1_terminating(j, -_N, 2, 2)
    second = hypergeom_2F1_terminating(j - 1, 1 - _N, 3, 2)
    return _N * (first - second * j) * double_factorial(2 * j - 1)
