"""Exhaustive realizability search for arrangements in planes over F_p.

An incidence structure is *realised* over F_p when its lines map
injectively to lines of PG(2, p) so that the induced intersection
pattern matches exactly: listed points become concurrences, and no
unlisted concurrence of three or more lines appears.

The search backtracks over line images.  Up to the projective group we
may pin the images of up to four arrangement lines, no three of which
share an arrangement point, to the standard quadrilateral: any valid
realisation keeps those images in general position (an unexpected
concurrence would be an unlisted triple point), and the group is
transitive on ordered quadruples of lines in general position.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .curve_model import LineArrangement, all_points

PlanePoint = tuple[int, int, int]

_FRAME: tuple[PlanePoint, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _normalize(v: Sequence[int], p: int) -> Optional[PlanePoint]:
    v = tuple(x % p for x in v)
    for x in v:
        if x:
            inv = pow(x, p - 2, p)
            return tuple((y * inv) % p for y in v)  # type: ignore[return-value]
    return None


@dataclass(frozen=True)
class ProjectivePlane:
    """PG(2, p): normalised point and line triples with dot-product incidence."""

    p: int
    points: tuple[PlanePoint, ...]
    lines: tuple[PlanePoint, ...]

    def incident(self, point: PlanePoint, line: PlanePoint) -> bool:
        return sum(a * b for a, b in zip(point, line)) % self.p == 0

    def meet(self, l1: PlanePoint, l2: PlanePoint) -> PlanePoint:
        """The unique common point of two distinct lines (cross product mod p)."""
        a1, b1, c1 = l1
        a2, b2, c2 = l2
        cross = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
        point = _normalize(cross, self.p)
        if point is None:
            raise ValueError(f"lines {l1} and {l2} coincide in PG(2, {self.p})")
        return point

    def points_on_line(self, line: PlanePoint) -> tuple[PlanePoint, ...]:
        return tuple(pt for pt in self.points if self.incident(pt, line))


@lru_cache(maxsize=None)
def projective_plane(p: int) -> ProjectivePlane:
    """Build PG(2, p) for a prime p; points and lines share the triple list."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime; only prime fields are supported")
    triples: list[PlanePoint] = [(0, 0, 1)]
    triples.extend((0, 1, z) for z in range(p))
    triples.extend((1, y, z) for y in range(p) for z in range(p))
    triples.sort()
    return ProjectivePlane(p, tuple(triples), tuple(triples))


def _pinned_lines(arr: LineArrangement, points: Sequence[frozenset[int]]) -> tuple[int, ...]:
    # Largest prefix of the standard quadrilateral we may pin: k lines with
    # no three of them through a common arrangement point.
    d = arr.line_count
    for size in (4, 3):
        if d < size:
            continue
        for combo in combinations(range(1, d + 1), size):
            chosen = set(combo)
            if all(len(point & chosen) < 3 for point in points):
                return combo
    if d >= 2:
        return (1, 2)
    return (1,)


def _search_order(arr: LineArrangement, pinned: tuple[int, ...]) -> list[int]:
    # After the pinned lines, repeatedly take the line sharing the most
    # points with lines already ordered; forced meets prune early.
    points = all_points(arr)
    order = list(pinned)
    placed = set(pinned)
    remaining = [i for i in range(1, arr.line_count + 1) if i not in placed]
    while remaining:
        def shared(i: int) -> int:
            return sum(1 for point in points if i in point and point & placed)

        best = max(remaining, key=lambda i: (shared(i), -i))
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order


def realize(arr: LineArrangement, p: int) -> Optional[tuple[PlanePoint, ...]]:
    """Find line images in PG(2, p) realising the exact incidence structure.

    Returns one witness assignment (indexed by arrangement line) or
    ``None`` when the search space is exhausted.
    """
    plane = projective_plane(p)
    d = arr.line_count
    if d > len(plane.lines):
        raise ValueError(
            f"{d} lines cannot embed in PG(2, {p}), which has only {len(plane.lines)} lines"
        )
    points = all_points(arr)
    pair_point: dict[frozenset[int], frozenset[int]] = {}
    for point in points:
        for pair in combinations(point, 2):
            pair_point[frozenset(pair)] = point

    pinned = _pinned_lines(arr, points)
    order = _search_order(arr, pinned)
    assignment: dict[int, PlanePoint] = {}
    used: set[PlanePoint] = set()
    point_image: dict[frozenset[int], PlanePoint] = {}
    image_point: dict[PlanePoint, frozenset[int]] = {}

    def try_assign(i: int, line: PlanePoint) -> Optional[list[frozenset[int]]]:
        new_bindings: list[frozenset[int]] = []
        for j, other in assignment.items():
            meeting = plane.meet(line, other)
            point = pair_point[frozenset((i, j))]
            bound = point_image.get(point)
            if bound is not None:
                if bound != meeting:
                    break
                continue
            owner = image_point.get(meeting)
            if owner is not None and owner != point:
                break
            if owner is None:
                point_image[point] = meeting
                image_point[meeting] = point
                new_bindings.append(point)
        else:
            assignment[i] = line
            used.add(line)
            return new_bindings
        for point in new_bindings:
            del image_point[point_image.pop(point)]
        return None

    def undo(i: int, bindings: list[frozenset[int]]) -> None:
        used.remove(assignment.pop(i))
        for point in bindings:
            del image_point[point_image.pop(point)]

    def search(depth: int) -> bool:
        if depth == d:
            return True
        i = order[depth]
        if depth < len(pinned):
            candidates: Iterable[PlanePoint] = (_FRAME[depth],)
        else:
            candidates = plane.lines
        for line in candidates:
            if line in used:
                continue
            bindings = try_assign(i, line)
            if bindings is None:
                continue
            if search(depth + 1):
                return True
            undo(i, bindings)
        return False

    if not search(0):
        return None
    witness = tuple(assignment[i] for i in range(1, d + 1))
    if not verify_realization(arr, p, witness):
        raise RuntimeError("search produced an assignment that fails verification")
    return witness


def verify_realization(
    arr: LineArrangement, p: int, assignment: Sequence[PlanePoint]
) -> bool:
    """Independent check that an assignment realises the exact incidence."""
    plane = projective_plane(p)
    d = arr.line_count
    if len(assignment) != d or len(set(assignment)) != d:
        return False
    if any(line not in plane.lines for line in assignment):
        return False
    groups: dict[PlanePoint, set[int]] = {}
    for i, j in combinations(range(1, d + 1), 2):
        meeting = plane.meet(assignment[i - 1], assignment[j - 1])
        groups.setdefault(meeting, set()).add(i)
        groups[meeting].add(j)
    induced = {frozenset(lines) for lines in groups.values()}
    return induced == set(all_points(arr))


def realizable_primes(
    arr: LineArrangement, primes: Iterable[int]
) -> dict[int, tuple[PlanePoint, ...]]:
    """Filter the primes over which the arrangement is realisable.

    Returns one witness per realisable prime, in input order.
    """
    witnesses: dict[int, tuple[PlanePoint, ...]] = {}
    for p in primes:
        witness = realize(arr, p)
        if witness is not None:
            witnesses[p] = witness
    return witnesses
