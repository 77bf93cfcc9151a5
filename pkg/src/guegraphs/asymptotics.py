"""Large-genus behaviour of normalized graph counts.

For fixed valencies ``i_1..i_{n-1}`` the last valency is tied to the genus
(``2g+2n-2-|i|`` for ordinary graphs, ``4g+2n-2-|i|`` for one-face ribbon
graphs).  The normalized count is then a rational function of ``g`` with
limit 1.  This module samples the sequence, reconstructs that rational
function exactly, checks it on held-out genera and expands it in ``1/g``.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, ReconstructionError
from .exact import (RationalFunction, expand_at_infinity, format_fraction,
                    search_rational)
from .expansion import normalized_og, normalized_rg

__all__ = [
    "FAMILIES",
    "AsymptoticReport",
    "closing_valency",
    "smallest_admissible_g",
    "profile_for",
    "sequence",
    "fit_and_verify",
]

FAMILIES = ("og", "rg")


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise DomainError(f"family must be one of {FAMILIES}, got {family!r}")


def closing_valency(family: str, fixed: Sequence[int], g: int) -> int:
    _check_family(family)
    n = len(fixed) + 1
    scale = 2 if family == "og" else 4
    return scale * g + 2 * n - 2 - sum(fixed)


def smallest_admissible_g(family: str, fixed: Sequence[int]) -> int:
    g = 0
    while closing_valency(family, fixed, g) < 1:
        g += 1
    return g


def profile_for(family: str, fixed: Sequence[int], g: int) -> tuple[int, ...]:
    return tuple(fixed) + (closing_valency(family, fixed, g),)


def _value(args) -> Fraction:
    family, profile, g = args
    if family == "og":
        return normalized_og(profile, g)
    return normalized_rg(profile, g)


def sequence(family: str, fixed: Sequence[int], g_range: Sequence[int],
             jobs: int = 1) -> list[tuple[int, Fraction]]:
    """Normalized counts for every admissible ``g`` in ``g_range``."""
    _check_family(family)
    fixed = tuple(int(i) for i in fixed)
    if any(i < 1 for i in fixed):
        raise DomainError(f"fixed valencies must be positive, got {fixed}")
    gs = [g for g in g_range if g >= 0 and closing_valency(family, fixed, g) >= 1]
    if not gs:
        raise DomainError(f"no admissible genus in the requested range for {family} {fixed}")
    work = [(family, profile_for(family, fixed, g), g) for g in gs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_value, work))
    else:
        values = [_value(w) for w in work]
    return list(zip(gs, values))


@dataclass
class AsymptoticReport:
    family: str
    fixed: tuple[int, ...]
    samples: list[tuple[int, Fraction]]
    fitted: RationalFunction | None
    expansion: list[Fraction] = field(default_factory=list)
    limit_verified: bool = False
    holdout_exact: bool = False
    fit_window: tuple[int, int] | None = None
    diagnostic: str = ""

    @property
    def ok(self) -> bool:
        return self.limit_verified and self.holdout_exact

    def to_dict(self) -> dict:
        fitted = None
        if self.fitted is not None:
            fitted = {
                "num": self.fitted.num.to_strings(),
                "den": self.fitted.den.to_strings(),
                "text": str(self.fitted),
            }
        return {
            "family": self.family,
            "fixed": list(self.fixed),
            "samples": [[g, format_fraction(v)] for g, v in self.samples],
            "fitted": fitted,
            "expansion": [format_fraction(c) for c in self.expansion],
            "limit_verified": self.limit_verified,
            "holdout_exact": self.holdout_exact,
            "fit_window": list(self.fit_window) if self.fit_window else None,
            "diagnostic": self.diagnostic,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def fit_and_verify(family: str, fixed: Sequence[int], fit_range: Sequence[int],
                   holdout_range: Sequence[int], degree_cap: int = 8,
                   expansion_order: int = 6, jobs: int = 1) -> AsymptoticReport:
    """Reconstruct the rational function in ``g`` and check it out of sample.

    When the fit fails or misses a held-out value, the smallest genus is
    dropped from the fit window and the fit is retried; early genera can sit
    below the point where the number of terms in the expansion stabilizes.
    """
    fixed = tuple(int(i) for i in fixed)
    fit_range, holdout_range = list(fit_range), list(holdout_range)
    if set(fit_range) & set(holdout_range):
        raise DomainError("fit and holdout ranges must be disjoint")
    fit = sequence(family, fixed, fit_range, jobs)
    hold = sequence(family, fixed, holdout_range, jobs)
    report = AsymptoticReport(family, fixed, fit + hold, None)

    window = list(fit)
    diagnostics = []
    while len(window) >= 2:
        try:
            f = search_rational(window, degree_cap)
        except ReconstructionError as exc:
            diagnostics.append(f"g={window[0][0]}..{window[-1][0]}: {exc}")
            window = window[1:]
            continue
        misses = [(g, v) for g, v in hold if f.den(g) == 0 or f(g) != v]
        if misses:
            g, v = misses[0]
            diagnostics.append(f"g={window[0][0]}..{window[-1][0]}: {f} misses holdout g={g}")
            window = window[1:]
            continue
        report.fitted = f
        report.holdout_exact = True
        report.fit_window = (window[0][0], window[-1][0])
        break

    report.diagnostic = "; ".join(diagnostics)
    if report.fitted is None:
        report.diagnostic = report.diagnostic or "not enough samples"
        return report
    f = report.fitted
    if f.num.degree <= f.den.degree:
        report.limit_verified = f.limit_at_infinity() == 1
        report.expansion = expand_at_infinity(f, expansion_order)
    else:
        report.diagnostic = f"{f} is unbounded as g -> oo"
    return report
