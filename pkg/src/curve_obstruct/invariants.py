"""Global invariants: adjunction bookkeeping, complement homology, counting.

Everything here is exact integer arithmetic, with one deliberate
exception: :func:`hardy_ramanujan_ratio` evaluates a floating-point
asymptotic and says so in its contract.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import exp, gcd, pi, sqrt
from typing import Iterable, Optional, Sequence

from .curve_model import CombinatorialCurve
from .singularities import SingularityType


@dataclass(frozen=True)
class AbelianGroupSpec:
    """A finitely generated abelian group: free rank plus torsion divisors."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        torsion = tuple(int(t) for t in self.torsion)
        if any(t < 2 for t in torsion):
            raise ValueError(f"torsion entries must be >= 2, got {torsion}")
        for first, second in zip(torsion, torsion[1:]):
            if second % first:
                raise ValueError(f"torsion {torsion} is not in divisibility order")
        object.__setattr__(self, "torsion", torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AdjunctionVerdict:
    """Outcome of the global adjunction identity for a combinatorial type."""

    total_chi_g: int
    feasible: bool
    reason: str


@dataclass(frozen=True)
class CuspidalGenusCheck:
    passed: bool
    genus_sum: int
    expected: int


@dataclass(frozen=True)
class UnicuspidalFamily:
    """One of the six families of unicuspidal rational curve types."""

    tag: str
    parameter: Optional[int] = None


def degree_genus(d: int) -> int:
    """Genus (d-1)(d-2)/2 of a smooth curve of degree d."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return (d - 1) * (d - 2) // 2


def adjunction_check(curve: CombinatorialCurve) -> AdjunctionVerdict:
    """Evaluate the forced total orientable Euler characteristic.

    The identity pins sum chi_g = 3d - d^2 + sum (mu + beta - 1); the type
    is declared feasible when that total is even and at most 2c.  These
    are necessary conditions only.
    """
    d = curve.total_degree
    c = curve.component_count
    contribution = sum(s.adjunction_contribution for s in curve.singularities)
    total = 3 * d - d * d + contribution
    if total % 2:
        return AdjunctionVerdict(total, False, f"forced total {total} is odd")
    if total > 2 * c:
        return AdjunctionVerdict(
            total, False, f"forced total {total} exceeds the bound 2c = {2 * c} for {c} component(s)"
        )
    return AdjunctionVerdict(total, True, "necessary conditions hold")


def rational_cuspidal_check(d: int, cusps: Iterable[SingularityType]) -> CuspidalGenusCheck:
    """Total link genus of the cusps against the degree-genus bound."""
    cusps = tuple(cusps)
    for s in cusps:
        if s.branch_count != 1:
            raise ValueError(f"{s} is not a cusp (it has {s.branch_count} branches)")
    genus_sum = sum(s.link_genus() for s in cusps)
    expected = degree_genus(d)
    return CuspidalGenusCheck(genus_sum == expected, genus_sum, expected)


def unicuspidal_torus_check(a: int, b: int, d: int) -> bool:
    """(a-1)(b-1) == (d-1)(d-2) for a single cusp of type T(a, b)."""
    if gcd(a, b) != 1 or not (2 <= a < b):
        raise ValueError(f"need coprime 2 <= a < b, got ({a}, {b})")
    if d < 3:
        raise ValueError("degree must be >= 3")
    return (a - 1) * (b - 1) == (d - 1) * (d - 2)


def _fibonacci_index(value: int) -> Optional[int]:
    # F_0, F_1, ... = 0, 1, 1, 2, 3, ...; values >= 2 have a unique index.
    prev, curr, k = 0, 1, 1
    while curr < value:
        prev, curr = curr, prev + curr
        k += 1
    return k if curr == value else None


def _fibonacci(k: int) -> int:
    prev, curr = 0, 1
    for _ in range(k):
        prev, curr = curr, prev + curr
    return prev


def fdblmhn_family(a: int, b: int, d: int) -> Optional[UnicuspidalFamily]:
    """Match (a, b, d) against the classified unicuspidal torus-cusp families.

    Returns the containing family, or ``None`` when the classification
    rules the type out.  Requires :func:`unicuspidal_torus_check` to pass.
    """
    if not unicuspidal_torus_check(a, b, d):
        raise ValueError(f"({a}, {b}, {d}) fails the unicuspidal degree equation")
    if b == a + 1 and d == a + 1:
        return UnicuspidalFamily("(a, a+1, a+1)", a)
    if b == 4 * a - 1 and d == 2 * a:
        return UnicuspidalFamily("(a, 4a-1, 2a)", a)
    k = _fibonacci_index(a)
    if k is not None and k % 2 == 1:
        if b == _fibonacci(k + 4) and d == _fibonacci(k + 2):
            return UnicuspidalFamily("(F_k, F_k+4, F_k+2)", k)
    square_root = round(sqrt(a))
    if square_root * square_root == a:
        k = _fibonacci_index(square_root)
        if k is not None and k % 2 == 1:
            f2 = _fibonacci(k + 2)
            if b == f2 * f2 and d == square_root * f2:
                return UnicuspidalFamily("(F_k^2, F_k+2^2)", k)
    if (a, b) == (3, 22) and d == 8:
        return UnicuspidalFamily("(3, 22)")
    if (a, b) == (6, 43) and d == 16:
        return UnicuspidalFamily("(6, 43)")
    return None


def max_singular_points(d: int) -> int:
    """A degree-d curve has at most d(d-1)/2 singular points."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return d * (d - 1) // 2


# ---------------------------------------------------------------------------
# Exact linear algebra over Z
# ---------------------------------------------------------------------------


def _validated_matrix(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in matrix]
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ValueError("matrix rows have unequal lengths")
    return rows


def smith_normal_diagonal(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Non-zero diagonal of the Smith normal form, in divisibility order."""
    A = _validated_matrix(matrix)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag: list[int] = []
    t = 0

    def pivot(start: int) -> Optional[tuple[int, int]]:
        best = None
        for i in range(start, rows):
            for j in range(start, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        return best

    while t < min(rows, cols):
        position = pivot(t)
        if position is None:
            break
        while True:
            bi, bj = pivot(t)
            A[t], A[bi] = A[bi], A[t]
            for row in A:
                row[t], row[bj] = row[bj], row[t]
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // p
                    for j in range(t, cols):
                        A[i][j] -= q * A[t][j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // p
                    for i in range(t, rows):
                        A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                if any(A[i][j] % p for j in range(t + 1, cols)):
                    offender = i
                    break
            if offender is None:
                break
            for j in range(t, cols):
                A[t][j] += A[offender][j]
        diag.append(abs(A[t][t]))
        t += 1

    # The divisibility sweep above already orders the chain; normalise defensively.
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            if diag[j] % diag[i]:
                g = gcd(diag[i], diag[j])
                diag[i], diag[j] = g, diag[i] * diag[j] // g
    return tuple(diag)


def smith_invariants(matrix: Sequence[Sequence[int]]) -> AbelianGroupSpec:
    """Cokernel of the map Z^cols -> Z^rows given by the matrix columns."""
    rows = len(_validated_matrix(matrix))
    diag = smith_normal_diagonal(matrix)
    return AbelianGroupSpec(rows - len(diag), tuple(d for d in diag if d > 1))


def complement_h1(curve: CombinatorialCurve) -> AbelianGroupSpec:
    """First homology of the complement: Z^c modulo the degree vector."""
    return smith_invariants([[d] for d in curve.component_degrees])


def complement_euler(curve: CombinatorialCurve, chi_g_per_component: Sequence[int]) -> int:
    """Euler characteristic of the complement, 3 - chi(C).

    ``chi_g_per_component`` lists the orientable Euler characteristic of
    each component; the sum must match the adjunction total.
    """
    chi_g = [int(x) for x in chi_g_per_component]
    if len(chi_g) != curve.component_count:
        raise ValueError(
            f"expected {curve.component_count} component values, got {len(chi_g)}"
        )
    if any(x % 2 or x > 2 for x in chi_g):
        raise ValueError(f"component chi_g values must be even and <= 2, got {chi_g}")
    forced = adjunction_check(curve).total_chi_g
    if sum(chi_g) != forced:
        raise ValueError(f"sum chi_g = {sum(chi_g)} is inconsistent with the forced total {forced}")
    chi_curve = sum(chi_g) - sum(s.branch_count - 1 for s in curve.singularities)
    return 3 - chi_curve


# ---------------------------------------------------------------------------
# Partition counting
# ---------------------------------------------------------------------------

_partition_lock = threading.Lock()
_partition_table: list[int] = [1]


def partition_number(n: int) -> int:
    """Exact p_n via the dense largest-part recurrence; values are cached."""
    if n < 0:
        raise ValueError("partition index must be >= 0")
    with _partition_lock:
        if n >= len(_partition_table):
            table = [0] * (n + 1)
            table[0] = 1
            for part in range(1, n + 1):
                for m in range(part, n + 1):
                    table[m] += table[m - part]
            _partition_table[:] = table
        return _partition_table[n]


def count_cuspidal_types(d: int) -> int:
    """Number of degree-d types with only T(2, 2k+1) cusps: sum of p_0..p_g."""
    bound = degree_genus(d)
    partition_number(bound)
    with _partition_lock:
        return sum(_partition_table[n] for n in range(bound + 1))


def hardy_ramanujan_ratio(n: int) -> float:
    """p_n divided by exp(pi sqrt(2n/3)) / (4n sqrt(3)); floating point."""
    if n < 1:
        raise ValueError("ratio is defined for n >= 1")
    asymptotic = exp(pi * sqrt(2 * n / 3)) / (4 * n * sqrt(3))
    return partition_number(n) / asymptotic
