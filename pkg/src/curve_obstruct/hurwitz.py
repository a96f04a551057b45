"""Euler-characteristic bookkeeping for branched covers of surfaces.

The degree/ramification formula chi(source) = deg * chi(target) - sum (e-1)
drives two things here: the cross-checks for the smooth degree-genus
count, and the non-existence test for rational cuspidal curves obtained
by projecting away from one of their cusps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .invariants import rational_cuspidal_check
from .singularities import SingularityType


@dataclass(frozen=True)
class RamificationProfile:
    """Ramification data of a cover: per-point contributions e_p(x) - 1.

    When ``exact`` is set the entries are exact indices rather than lower
    bounds; callers enforce the total against the Euler count.
    """

    degree: int
    contributions: tuple[int, ...]
    exact: bool = False

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("cover degree must be >= 1")
        contributions = tuple(int(x) for x in self.contributions)
        if any(x < 1 for x in contributions):
            raise ValueError("ramification contributions must be >= 1")
        if any(x > self.degree - 1 for x in contributions):
            raise ValueError(
                f"a single point contributes at most degree - 1 = {self.degree - 1}"
            )
        object.__setattr__(self, "contributions", contributions)

    @property
    def total(self) -> int:
        return sum(self.contributions)


def hurwitz_euler(degree: int, chi_base: int, contributions: Iterable[int]) -> int:
    """chi of the covering surface: degree * chi_base - sum of (e - 1) terms."""
    if degree < 1:
        raise ValueError("cover degree must be >= 1")
    total = 0
    for x in contributions:
        if x < 0:
            raise ValueError("ramification contributions must be >= 0")
        total += x
    return degree * chi_base - total


def rational_cover_slack(degree: int) -> int:
    """Total ramification of a degree-d sphere-to-sphere cover: 2d - 2, exactly."""
    if degree < 1:
        raise ValueError("cover degree must be >= 1")
    return 2 * degree - 2


@dataclass(frozen=True)
class OtherCuspBound:
    """Forced contribution of one non-pivot cusp, with its Bezout sanity."""

    cusp: str
    bound: int
    within_cover_degree: bool


@dataclass(frozen=True)
class ProjectionCertificate:
    """Forced ramification of the projection away from a chosen cusp."""

    degree: int
    pivot_index: int
    pivot: str
    cover_degree: int
    slack: int
    pivot_bound: int
    pivot_bound_heuristic: int
    other_bounds: tuple[OtherCuspBound, ...]
    total: int
    total_heuristic: int
    profile: RamificationProfile
    note: str


@dataclass(frozen=True)
class ProjectionResult:
    obstructed: bool
    certificate: ProjectionCertificate


@dataclass(frozen=True)
class BestPivotResult:
    obstructed: bool
    results: tuple[ProjectionResult, ...]


_FIBRE_NOTE = (
    "lower bounds are summed over distinct singular points; the distribution "
    "of ramification over individual fibres is not determined combinatorially"
)


def forced_ramification(
    d: int, cusps: Sequence[SingularityType], pivot_index: int
) -> ProjectionCertificate:
    """Lower bounds on ramification when projecting away from one cusp.

    The cover has degree d - a_pivot.  Every other cusp of type (a, b)
    forces a point of index >= a, contributing a - 1.  The pivot's own
    preimage contributes 1 as soon as b - a >= 2; the local-parametrisation
    estimate b - a - 1 is reported alongside but never used to obstruct.
    """
    cusps = tuple(cusps)
    if not (0 <= pivot_index < len(cusps)):
        raise ValueError(f"pivot index {pivot_index} out of range")
    for s in cusps:
        if s.branch_count != 1:
            raise ValueError(f"{s} is not a cusp; projection bounds need unibranch singularities")
    pivot = cusps[pivot_index]
    cover_degree = d - pivot.multiplicity
    if cover_degree < 1:
        raise ValueError(
            f"projection away from {pivot} on a degree-{d} curve has degree {cover_degree} <= 0"
        )
    gap = pivot.b - pivot.a
    pivot_bound = 1 if gap >= 2 else 0
    pivot_bound_heuristic = max(gap - 1, 0)
    others = tuple(
        OtherCuspBound(str(s), s.multiplicity - 1, s.multiplicity <= cover_degree)
        for i, s in enumerate(cusps)
        if i != pivot_index
    )
    other_total = sum(o.bound for o in others)
    # Profile entries are clamped into [1, degree - 1]; the raw totals below
    # carry the actual bounds (a clamp only ever weakens the certificate).
    bounds = [min(x, cover_degree - 1) for x in (pivot_bound, *(o.bound for o in others))]
    profile = RamificationProfile(cover_degree, tuple(x for x in bounds if x >= 1))
    return ProjectionCertificate(
        degree=d,
        pivot_index=pivot_index,
        pivot=str(pivot),
        cover_degree=cover_degree,
        slack=rational_cover_slack(cover_degree),
        pivot_bound=pivot_bound,
        pivot_bound_heuristic=pivot_bound_heuristic,
        other_bounds=others,
        total=pivot_bound + other_total,
        total_heuristic=pivot_bound_heuristic + other_total,
        profile=profile,
        note=_FIBRE_NOTE,
    )


def projection_obstruction(
    d: int, cusps: Sequence[SingularityType], pivot_index: int
) -> ProjectionResult:
    """Compare forced ramification of the cusp projection against 2 deg - 2.

    Requires a rational cuspidal combinatorial type (total link genus
    equal to the degree-genus bound).  Obstructed when the forced total
    exceeds the available ramification.
    """
    check = rational_cuspidal_check(d, cusps)
    if not check.passed:
        raise ValueError(
            f"not a rational cuspidal type: total link genus {check.genus_sum} != {check.expected}"
        )
    certificate = forced_ramification(d, cusps, pivot_index)
    return ProjectionResult(certificate.total > certificate.slack, certificate)


def best_pivot_obstruction(d: int, cusps: Sequence[SingularityType]) -> BestPivotResult:
    """Try every cusp as projection centre; one contradiction suffices."""
    cusps = tuple(cusps)
    results = tuple(projection_obstruction(d, cusps, i) for i in range(len(cusps)))
    return BestPivotResult(any(r.obstructed for r in results), results)
