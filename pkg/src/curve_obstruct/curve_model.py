"""Combinatorial types of plane curves and line-arrangement incidence data.

A :class:`CombinatorialCurve` records component degrees and a multiset of
singularities; a :class:`LineArrangement` records labelled lines and the
point-sets where three or more of them (or decorated pairs) meet.  Pairs
of lines not covered by a listed point are implicit double points, so an
input file only needs the interesting incidences.

The module also owns the input document format used by the command line
driver: one curve or arrangement per document, either as a JSON object or
as a short line-oriented text form (see :func:`parse_document`).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping, Optional, Sequence, Union

from .singularities import SingularityType


@dataclass(frozen=True)
class WeakProfile:
    """Counts of arrangement points by multiplicity: t_m for m >= 2."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_counts(cls, mapping: Mapping[int, int]) -> "WeakProfile":
        entries = []
        for m, t in sorted(mapping.items()):
            if m < 2:
                raise ValueError(f"point multiplicity must be >= 2, got {m}")
            if t < 0:
                raise ValueError(f"negative count for multiplicity {m}")
            if t:
                entries.append((int(m), int(t)))
        return cls(tuple(entries))

    def __getitem__(self, m: int) -> int:
        for mult, count in self.counts:
            if mult == m:
                return count
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)


@dataclass(frozen=True)
class CombinatorialCurve:
    """Component degrees plus a multiset of singularity types.

    ``per_component_assignment`` optionally distributes local branch
    degrees of each singularity over the components; it is carried for
    per-component feasibility checks but not consumed by the pipeline.
    """

    component_degrees: tuple[int, ...]
    singularities: tuple[SingularityType, ...] = ()
    per_component_assignment: Optional[tuple] = None

    def __post_init__(self) -> None:
        degrees = tuple(int(d) for d in self.component_degrees)
        if not degrees:
            raise ValueError("a curve needs at least one component")
        if any(d < 1 for d in degrees):
            raise ValueError(f"component degrees must be >= 1, got {degrees}")
        object.__setattr__(self, "component_degrees", degrees)
        object.__setattr__(self, "singularities", tuple(self.singularities))

    @property
    def total_degree(self) -> int:
        return sum(self.component_degrees)

    @property
    def component_count(self) -> int:
        return len(self.component_degrees)


@dataclass(frozen=True)
class LineArrangement:
    """``line_count`` labelled lines and the listed points among them.

    Each listed point is a subset of {1, ..., line_count} of size >= 2;
    two distinct lines may appear together in at most one listed point.
    Line pairs not covered by any listed point are implicit double points.
    """

    line_count: int
    points: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        if self.line_count < 1:
            raise ValueError("an arrangement needs at least one line")
        canonical = []
        for point in self.points:
            lines = frozenset(int(i) for i in point)
            if len(lines) < 2:
                raise ValueError(f"listed point {sorted(point)} has fewer than two lines")
            if not all(1 <= i <= self.line_count for i in lines):
                raise ValueError(f"point {sorted(lines)} mentions a line outside 1..{self.line_count}")
            canonical.append(lines)
        canonical.sort(key=lambda s: tuple(sorted(s)))
        covered: dict[frozenset[int], frozenset[int]] = {}
        for point in canonical:
            for pair in combinations(sorted(point), 2):
                key = frozenset(pair)
                if key in covered:
                    raise ValueError(
                        f"lines {sorted(pair)} meet in two listed points "
                        f"{sorted(covered[key])} and {sorted(point)}"
                    )
                covered[key] = point
        object.__setattr__(self, "points", tuple(canonical))


@dataclass(frozen=True)
class PairCountCheck:
    """Bezout pair count: sum over points of C(m, 2) against C(d, 2)."""

    passed: bool
    pair_sum: int
    expected: int


@dataclass(frozen=True)
class StrongEquivalence:
    equivalent: bool
    witness: Optional[tuple[int, ...]] = None


def implicit_double_count(arr: LineArrangement) -> int:
    """Number of line pairs not covered by any listed point."""
    listed = sum(comb(len(p), 2) for p in arr.points)
    return comb(arr.line_count, 2) - listed


def all_points(arr: LineArrangement) -> tuple[frozenset[int], ...]:
    """Every intersection point: listed points plus implicit double points."""
    covered = {frozenset(pair) for point in arr.points for pair in combinations(point, 2)}
    implicit = [
        frozenset(pair)
        for pair in combinations(range(1, arr.line_count + 1), 2)
        if frozenset(pair) not in covered
    ]
    points = list(arr.points) + implicit
    points.sort(key=lambda s: tuple(sorted(s)))
    return tuple(points)


def weak_profile(arr: LineArrangement) -> WeakProfile:
    """The sequence t_m, with unlisted line pairs counted as double points."""
    counts: dict[int, int] = {}
    for point in arr.points:
        counts[len(point)] = counts.get(len(point), 0) + 1
    implicit = implicit_double_count(arr)
    if implicit:
        counts[2] = counts.get(2, 0) + implicit
    return WeakProfile.from_counts(counts)


def pair_count_check(arr: LineArrangement) -> PairCountCheck:
    """Check sum_m C(m,2) t_m == C(d,2); an identity for valid arrangements."""
    profile = weak_profile(arr)
    pair_sum = sum(comb(m, 2) * t for m, t in profile.counts)
    expected = comb(arr.line_count, 2)
    return PairCountCheck(pair_sum == expected, pair_sum, expected)


def arrangement_euler(arr: LineArrangement) -> int:
    """Euler characteristic 2d - sum (m-1) t_m of the union of lines."""
    profile = weak_profile(arr)
    return 2 * arr.line_count - sum((m - 1) * t for m, t in profile.counts)


def as_combinatorial_curve(arr: LineArrangement) -> CombinatorialCurve:
    """View the arrangement as d lines with one (m, m) point per incidence."""
    singularities = [SingularityType(len(p), len(p)) for p in all_points(arr)]
    singularities.sort()
    return CombinatorialCurve((1,) * arr.line_count, tuple(singularities))


def relabel(arr: LineArrangement, sigma: Sequence[int]) -> LineArrangement:
    """Apply a line permutation; ``sigma[i-1]`` is the new label of line i."""
    if sorted(sigma) != list(range(1, arr.line_count + 1)):
        raise ValueError(f"not a permutation of 1..{arr.line_count}: {sigma}")
    points = tuple(frozenset(sigma[i - 1] for i in point) for point in arr.points)
    return LineArrangement(arr.line_count, points)


def weak_equivalent(a: CombinatorialCurve, b: CombinatorialCurve) -> bool:
    """Same multisets of component degrees and of singularities."""
    return sorted(a.component_degrees) == sorted(b.component_degrees) and sorted(
        a.singularities
    ) == sorted(b.singularities)


def _essential_points(arr: LineArrangement) -> frozenset[frozenset[int]]:
    # Listed double points constrain nothing: any two lines meet anyway.
    return frozenset(p for p in arr.points if len(p) >= 3)


def _line_signature(lines: int, points: frozenset[frozenset[int]]) -> dict[int, tuple[int, ...]]:
    sig: dict[int, list[int]] = {i: [] for i in range(1, lines + 1)}
    for point in points:
        for i in point:
            sig[i].append(len(point))
    return {i: tuple(sorted(sizes)) for i, sizes in sig.items()}


def strong_equivalent(a: LineArrangement, b: LineArrangement) -> StrongEquivalence:
    """Search for a line permutation mapping the point system of a onto b.

    Only points of multiplicity >= 3 matter: a permutation automatically
    respects double points.  Backtracking over line images, pruned by the
    per-line multiset of incident point sizes.
    """
    if a.line_count != b.line_count:
        return StrongEquivalence(False)
    d = a.line_count
    points_a = _essential_points(a)
    points_b = _essential_points(b)
    if sorted(len(p) for p in points_a) != sorted(len(p) for p in points_b):
        return StrongEquivalence(False)
    sig_a = _line_signature(d, points_a)
    sig_b = _line_signature(d, points_b)
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return StrongEquivalence(False)

    # Most constrained lines first: long signatures have few candidates.
    order = sorted(range(1, d + 1), key=lambda i: (-len(sig_a[i]), i))
    candidates = {i: [j for j in range(1, d + 1) if sig_b[j] == sig_a[i]] for i in order}
    image: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int) -> bool:
        for point in points_a:
            if i not in point:
                continue
            mapped = {image[x] for x in point if x in image}
            if len(mapped) < 2:
                continue
            hosts = [q for q in points_b if mapped <= q]
            if not hosts or len(hosts[0]) != len(point):
                return False
        return True

    def search(k: int) -> bool:
        if k == d:
            mapped_points = {frozenset(image[x] for x in point) for point in points_a}
            return mapped_points == set(points_b)
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            image[i] = j
            used.add(j)
            if consistent(i) and search(k + 1):
                return True
            del image[i]
            used.remove(j)
        return False

    if search(0):
        witness = tuple(image[i] for i in range(1, d + 1))
        return StrongEquivalence(True, witness)
    return StrongEquivalence(False)


# ---------------------------------------------------------------------------
# Input documents
# ---------------------------------------------------------------------------

Document = Union[CombinatorialCurve, LineArrangement]


class DocumentError(ValueError):
    """Parse failure with a 1-based line/column position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _ints(raw: str, line: int) -> list[int]:
    tokens = raw.replace(",", " ").split()
    values = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            raise DocumentError(f"expected an integer, got {token!r}", line) from None
    return values


def _parse_text_document(text: str) -> Document:
    kind = None
    degrees: list[int] = []
    singularities: list[SingularityType] = []
    lines_declared: Optional[int] = None
    points: list[frozenset[int]] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition(":")
        if not sep:
            raise DocumentError("expected 'key: value'", lineno, len(raw) - len(raw.lstrip()) + 1)
        key = key.strip()
        value = value.strip()
        if key != "point" and key in seen:
            raise DocumentError(f"duplicate key {key!r}", lineno)
        seen.add(key)
        if key == "kind":
            if value not in ("curve", "arrangement"):
                raise DocumentError(f"kind must be 'curve' or 'arrangement', got {value!r}", lineno)
            kind = value
        elif key == "degrees":
            degrees = _ints(value, lineno)
        elif key == "singularities":
            # Tokens like T(2,3) contain commas, so separators are matched around them.
            tokens = re.findall(r"[TO]\(\s*\d+\s*(?:,\s*\d+\s*)?\)", value)
            leftover = re.sub(r"[TO]\(\s*\d+\s*(?:,\s*\d+\s*)?\)", "", value).replace(",", " ").strip()
            if leftover:
                raise DocumentError(f"cannot parse singularity list near {leftover.split()[0]!r}", lineno)
            for token in tokens:
                try:
                    singularities.append(SingularityType.parse(token))
                except ValueError as exc:
                    raise DocumentError(str(exc), lineno) from None
        elif key == "lines":
            values = _ints(value, lineno)
            if len(values) != 1:
                raise DocumentError("'lines' takes a single integer", lineno)
            lines_declared = values[0]
        elif key == "point":
            points.append(frozenset(_ints(value, lineno)))
        else:
            raise DocumentError(f"unknown key {key!r}", lineno)
    if kind is None:
        raise DocumentError("missing 'kind: curve' or 'kind: arrangement'")
    try:
        if kind == "curve":
            if not degrees:
                raise DocumentError("a curve document needs 'degrees:'")
            return CombinatorialCurve(tuple(degrees), tuple(sorted(singularities)))
        if lines_declared is None:
            raise DocumentError("an arrangement document needs 'lines:'")
        return LineArrangement(lines_declared, tuple(points))
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def _parse_json_document(text: str) -> Document:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(payload, dict):
        raise DocumentError("top-level JSON value must be an object")
    kind = payload.get("kind")
    try:
        if kind == "curve":
            degrees = payload.get("degrees")
            if not isinstance(degrees, list) or not degrees:
                raise DocumentError("curve documents need a non-empty 'degrees' array")
            sings = payload.get("singularities", [])
            if not isinstance(sings, list):
                raise DocumentError("'singularities' must be an array of strings")
            parsed = tuple(sorted(SingularityType.parse(str(s)) for s in sings))
            return CombinatorialCurve(tuple(int(d) for d in degrees), parsed)
        if kind == "arrangement":
            lines = payload.get("lines")
            if not isinstance(lines, int):
                raise DocumentError("arrangement documents need an integer 'lines'")
            points = payload.get("points", [])
            if not isinstance(points, list):
                raise DocumentError("'points' must be an array of integer arrays")
            return LineArrangement(lines, tuple(frozenset(int(i) for i in p) for p in points))
        raise DocumentError(f"kind must be 'curve' or 'arrangement', got {kind!r}")
    except DocumentError:
        raise
    except (TypeError, ValueError) as exc:
        raise DocumentError(str(exc)) from None


def parse_document(text: str) -> Document:
    """Parse one curve or arrangement document (JSON or line-oriented text)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json_document(text)
    return _parse_text_document(text)


def document_echo(doc: Document) -> dict:
    """Canonical JSON-able echo of a parsed document."""
    if isinstance(doc, CombinatorialCurve):
        return {
            "kind": "curve",
            "degrees": list(doc.component_degrees),
            "singularities": [str(s) for s in sorted(doc.singularities)],
        }
    return {
        "kind": "arrangement",
        "lines": doc.line_count,
        "points": [sorted(p) for p in doc.points],
    }
