"""Formula path versus Wick oracle, profile by profile."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DomainError
from .exact import double_factorial
from .expansion import correlator_polynomial, genus_og, genus_rg, normalized_og, normalized_rg
from .wick import connected_correlator


def compositions(total: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def all_profiles(max_total: int) -> list[tuple[int, ...]]:
    return [p for t in range(1, max_total + 1) for p in compositions(t)]


@dataclass
class ProfileCheck:
    profile: tuple[int, ...]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def check_profile(profile: tuple[int, ...], cap: int | None = None) -> ProfileCheck:
    """Compare the full correlator and, where admissible, both graph normalizations."""
    result = ProfileCheck(tuple(profile))
    oracle = connected_correlator(profile, cap)
    result.checks["correlator"] = correlator_polynomial(profile) == oracle
    n = len(profile)
    try:
        g = genus_og(profile)
    except DomainError:
        pass
    else:
        expected = oracle(1) / double_factorial(2 * g + 2 * n - 3)
        result.checks["og"] = normalized_og(profile, g) == expected
    try:
        g = genus_rg(profile)
    except DomainError:
        pass
    else:
        expected = oracle.coeff(1) / (2 * double_factorial(4 * g + 2 * n - 5))
        result.checks["rg"] = normalized_rg(profile, g) == expected
    return result


def _check(args):
    profile, cap = args
    return check_profile(profile, cap)


def verify_up_to(max_total: int, cap: int | None = None, jobs: int = 1) -> list[ProfileCheck]:
    work = [(p, cap) for p in all_profiles(max_total)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_check, work, chunksize=8))
    return [_check(w) for w in work]
