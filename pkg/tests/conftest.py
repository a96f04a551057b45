from __future__ import annotations

import pytest

from curve_obstruct.curve_model import LineArrangement
from curve_obstruct.singularities import SingularityType


def fano_arrangement() -> LineArrangement:
    """Seven lines meeting at seven triple points (every pair covered once)."""
    return LineArrangement(
        7,
        (
            frozenset({1, 2, 5}),
            frozenset({1, 3, 6}),
            frozenset({1, 4, 7}),
            frozenset({2, 3, 7}),
            frozenset({2, 4, 6}),
            frozenset({3, 4, 5}),
            frozenset({5, 6, 7}),
        ),
    )


def six_lines_shared() -> LineArrangement:
    """Two triple points lying on a common line (line 6 carries no triple)."""
    return LineArrangement(6, (frozenset({1, 2, 3}), frozenset({1, 4, 5})))


def six_lines_disjoint() -> LineArrangement:
    """Two triple points with no line in common (every line carries one)."""
    return LineArrangement(6, (frozenset({1, 2, 3}), frozenset({4, 5, 6})))


def triangle() -> LineArrangement:
    """Three lines in general position: three implicit double points."""
    return LineArrangement(3)


def pencil(d: int) -> LineArrangement:
    """d lines through a single point."""
    return LineArrangement(d, (frozenset(range(1, d + 1)),))


@pytest.fixture
def fano() -> LineArrangement:
    return fano_arrangement()


@pytest.fixture
def shared_triples() -> LineArrangement:
    return six_lines_shared()


@pytest.fixture
def disjoint_triples() -> LineArrangement:
    return six_lines_disjoint()


def cusp(a: int, b: int) -> SingularityType:
    return SingularityType(a, b)
