"""Brute-force GUE moments by Wick's theorem.

Every perfect matching of the half-edges of ``n`` star vertices contributes
``N^F`` where ``F`` is the number of cycles of (rotation o matching), i.e.
the number of faces of the glued ribbon graph.  Connected correlators are
recovered from moments by the moment-cumulant relation, so no diagram is
ever tested for connectedness.

Nothing here uses the resolvent formulas; this module is the reference the
formula path is checked against.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DomainError, ResourceLimitError
from .exact import Poly

__all__ = [
    "DEFAULT_CAP",
    "PairingDiagram",
    "rotation",
    "pairings",
    "moment_polynomial",
    "connected_correlator",
    "one_face_count",
]

DEFAULT_CAP = int(os.environ.get("GUEGRAPHS_ORACLE_CAP", "16"))


def rotation(profile: Sequence[int]) -> list[int]:
    """Successor of each half-edge around its vertex."""
    nxt = []
    start = 0
    for i in profile:
        nxt.extend(start + (h + 1) % i for h in range(i))
        start += i
    return nxt


def _count_cycles(perm_a: Sequence[int], perm_b: Sequence[int]) -> int:
    # cycles of h -> perm_a[perm_b[h]]
    n = len(perm_a)
    seen = [False] * n
    cycles = 0
    for h in range(n):
        if not seen[h]:
            cycles += 1
            x = h
            while not seen[x]:
                seen[x] = True
                x = perm_a[perm_b[x]]
    return cycles


@dataclass(frozen=True)
class PairingDiagram:
    profile: tuple[int, ...]
    matching: tuple[int, ...]

    @property
    def faces(self) -> int:
        return _count_cycles(rotation(self.profile), self.matching)

    @property
    def components(self) -> int:
        owner = []
        for v, i in enumerate(self.profile):
            owner.extend([v] * i)
        parent = list(range(len(self.profile)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h, p in enumerate(self.matching):
            a, b = find(owner[h]), find(owner[p])
            if a != b:
                parent[a] = b
        return len({find(v) for v in range(len(self.profile))})

    @property
    def total_genus(self) -> int:
        """Sum of the genera of the connected components."""
        twice = 2 * self.components - len(self.profile) + len(self.matching) // 2 - self.faces
        if twice < 0 or twice % 2:
            raise AssertionError(f"Euler characteristic violated by {self}")
        return twice // 2


def _matchings(legs: int, fixed: Sequence[tuple[int, int]] = ()) -> Iterator[list[int]]:
    """Perfect matchings as involution arrays, lowest free leg paired first."""
    partner = [-1] * legs
    for a, b in fixed:
        partner[a], partner[b] = b, a

    def rec(start):
        h = start
        while h < legs and partner[h] >= 0:
            h += 1
        if h == legs:
            yield partner
            return
        for k in range(h + 1, legs):
            if partner[k] < 0:
                partner[h], partner[k] = k, h
                yield from rec(h + 1)
                partner[h] = partner[k] = -1

    yield from rec(0)


def pairings(profile: Sequence[int]) -> Iterator[PairingDiagram]:
    profile = tuple(profile)
    for m in _matchings(sum(profile)):
        yield PairingDiagram(profile, tuple(m))


def _check(profile: Sequence[int], cap: int | None) -> tuple[int, ...]:
    profile = tuple(int(i) for i in profile)
    if any(i < 1 for i in profile):
        raise DomainError(f"valencies must be positive, got {profile}")
    cap = DEFAULT_CAP if cap is None else cap
    if sum(profile) > cap:
        raise ResourceLimitError(f"total valency {sum(profile)} exceeds oracle cap {cap}")
    return profile


def _face_histogram(profile: tuple[int, ...], first_partner: int | None) -> list[int]:
    legs = sum(profile)
    rot = rotation(profile)
    hist = [0] * (legs // 2 + len(profile) + 1)
    fixed = () if first_partner is None else ((0, first_partner),)
    for m in _matchings(legs, fixed):
        hist[_count_cycles(rot, m)] += 1
    return hist


@lru_cache(maxsize=None)
def _moment_sorted(profile: tuple[int, ...]) -> Poly:
    if not profile:
        return Poly((1,), "N")
    if sum(profile) % 2:
        return Poly((), "N")
    return Poly(_face_histogram(profile, None), "N")


def moment_polynomial(profile: Sequence[int], cap: int | None = None, jobs: int = 1) -> Poly:
    """``<tr M^{i_1} ... tr M^{i_n}>(N)``, the full (disconnected) moment."""
    profile = _check(profile, cap)
    key = tuple(sorted(profile))
    if jobs <= 1 or sum(profile) % 2 or sum(profile) < 8:
        return _moment_sorted(key)
    legs = sum(key)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        hists = list(pool.map(_face_histogram, [key] * (legs - 1), range(1, legs)))
    width = max(len(h) for h in hists)
    total = [sum(h[i] for h in hists if i < len(h)) for i in range(width)]
    return Poly(total, "N")


@lru_cache(maxsize=None)
def _cumulant_sorted(profile: tuple[int, ...]) -> Poly:
    # m(S) = sum over blocks B containing the first element of k(B) m(S \ B)
    if len(profile) == 1:
        return _moment_sorted(profile)
    first, rest = profile[0], profile[1:]
    r = len(rest)
    result = _moment_sorted(profile)
    for mask in range((1 << r) - 1):
        block = (first,) + tuple(rest[i] for i in range(r) if mask >> i & 1)
        other = tuple(rest[i] for i in range(r) if not mask >> i & 1)
        mom = _moment_sorted(other)
        if mom.is_zero():
            continue
        result = result - _cumulant_sorted(tuple(sorted(block))) * mom
    return result


def connected_correlator(profile: Sequence[int], cap: int | None = None) -> Poly:
    """``<tr M^{i_1} ... tr M^{i_n}>_c(N)``, the joint cumulant."""
    profile = _check(profile, cap)
    return _cumulant_sorted(tuple(sorted(profile)))


def one_face_count(profile: Sequence[int], cap: int | None = None) -> Fraction:
    """Weighted count of connected one-face gluings: ``[N^1] <...>_c / n!``."""
    profile = _check(profile, cap)
    rest = sum(profile) - 2 * len(profile) + 2
    if rest < 0 or rest % 4:
        raise DomainError(f"profile {profile} admits no one-face ribbon graph (sum(i) != 4g+2n-2)")
    return connected_correlator(profile, cap).coeff(1) / math.factorial(len(profile))
