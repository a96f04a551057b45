"""Integer intersection lattice of the plane blown up at n points.

Classes are stored as ``(d; m_1, ..., m_n)`` meaning ``d*h - sum m_i e_i``
in the diagonal basis ``h, e_1, ..., e_n`` of square ``+1, -1, ..., -1``,
so curve multiplicities stay positive.  On top of the form sit the two
4-dimensional obstructions: the mod-16 congruence for characteristic
spheres and the branched double-cover second-Betti-number pipeline for
line arrangements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .curve_model import LineArrangement, all_points
from .invariants import AbelianGroupSpec, smith_invariants

PASS = "pass"
OBSTRUCTED = "obstructed"
INAPPLICABLE = "inapplicable"

IN_BRANCH = "in_branch"
DISJOINT = "disjoint"
TRANSVERSE = "transverse"


@dataclass(frozen=True)
class LatticeClass:
    """The class d*h - sum m_i e_i."""

    d: int
    m: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @property
    def coordinates(self) -> tuple[int, ...]:
        """Coefficients in the basis (h, e_1, ..., e_n), signs included."""
        return (self.d, *(-x for x in self.m))

    def __str__(self) -> str:
        text = f"{self.d}h"
        for i, x in enumerate(self.m, start=1):
            if x > 0:
                text += f"-{x}e{i}"
            elif x < 0:
                text += f"+{-x}e{i}"
        return text


@dataclass(frozen=True)
class BlowupLattice:
    """The lattice of the plane blown up at ``exceptional_count`` points."""

    exceptional_count: int

    def __post_init__(self) -> None:
        if self.exceptional_count < 0:
            raise ValueError("number of exceptional classes must be >= 0")

    @property
    def signature(self) -> int:
        return 1 - self.exceptional_count

    def hyperplane(self) -> LatticeClass:
        return LatticeClass(1, (0,) * self.exceptional_count)

    def exceptional(self, i: int) -> LatticeClass:
        if not (1 <= i <= self.exceptional_count):
            raise ValueError(f"exceptional index {i} out of range")
        m = [0] * self.exceptional_count
        m[i - 1] = -1
        return LatticeClass(0, tuple(m))

    def element(self, d: int, mults: Sequence[int]) -> LatticeClass:
        if len(mults) != self.exceptional_count:
            raise ValueError("one multiplicity per exceptional class required")
        return LatticeClass(d, tuple(mults))


def intersect(x: LatticeClass, y: LatticeClass) -> int:
    """Intersection pairing in the diagonal form: x.d*y.d - sum x_i*y_i."""
    if len(x.m) != len(y.m):
        raise ValueError(f"classes live in different lattices ({len(x.m)} vs {len(y.m)} exceptional)")
    return x.d * y.d - sum(a * b for a, b in zip(x.m, y.m))


def self_intersection(x: LatticeClass) -> int:
    return intersect(x, x)


def proper_transform(d: int, mults: Sequence[int]) -> LatticeClass:
    """Class of a degree-d curve after blowing up with the given multiplicities."""
    return LatticeClass(d, tuple(mults))


def is_characteristic(T: LatticeClass) -> bool:
    """In a diagonal unimodular form: characteristic iff every coordinate is odd."""
    return all(x % 2 for x in T.coordinates)


@dataclass(frozen=True)
class KervaireMilnorResult:
    verdict: str
    square: int
    signature: int
    square_mod_16: int
    signature_mod_16: int


def kervaire_milnor_check(T: LatticeClass) -> KervaireMilnorResult:
    """Mod-16 test for a characteristic class to be a smoothly embedded sphere.

    A characteristic sphere satisfies T.T == signature (mod 16); violating
    the congruence obstructs any smooth sphere representative.
    """
    square = self_intersection(T)
    signature = 1 - len(T.m)
    if not is_characteristic(T):
        verdict = INAPPLICABLE
    elif (square - signature) % 16:
        verdict = OBSTRUCTED
    else:
        verdict = PASS
    return KervaireMilnorResult(verdict, square, signature, square % 16, signature % 16)


def tube_classes(classes: Sequence[LatticeClass]) -> LatticeClass:
    """Class of the sphere obtained by tubing: the coordinate-wise sum."""
    if not classes:
        raise ValueError("need at least one class to tube")
    n = len(classes[0].m)
    if any(len(c.m) != n for c in classes):
        raise ValueError("classes live in different lattices")
    return LatticeClass(
        sum(c.d for c in classes),
        tuple(sum(c.m[i] for c in classes) for i in range(n)),
    )


def divisible_by_two(x: LatticeClass) -> bool:
    return all(v % 2 == 0 for v in x.coordinates)


def double_cover_euler(chi_base: int, chi_branch: int) -> int:
    """Euler characteristic of a double cover: 2 chi(base) - chi(branch)."""
    return 2 * chi_base - chi_branch


@dataclass(frozen=True)
class LiftDescription:
    """How a surface lifts to the double cover branched over ``branch``.

    ``count`` components; ``square`` is the self-intersection of each.
    """

    count: int
    square: int
    connected: bool


def lift_square(F: LatticeClass, relation: str, branch: LatticeClass) -> LiftDescription:
    """Self-intersections upstairs for a sphere downstairs.

    * ``in_branch``: one lift of square F^2 / 2 (F^2 must be even);
    * ``disjoint``: two disjoint copies, each of square F^2;
    * ``transverse``: the preimage has square 2 F^2, connected as soon as
      F meets the branch at all.
    """
    square = self_intersection(F)
    if relation == IN_BRANCH:
        if square % 2:
            raise ValueError(f"square {square} of an in-branch component must be even")
        return LiftDescription(1, square // 2, True)
    if relation == DISJOINT:
        if intersect(F, branch) != 0:
            raise ValueError("a class disjoint from the branch must pair to zero with it")
        return LiftDescription(2, square, True)
    if relation == TRANSVERSE:
        pairing = intersect(F, branch)
        if pairing < 0:
            raise ValueError(f"transverse intersection with the branch must be >= 0, got {pairing}")
        return LiftDescription(1, 2 * square, pairing > 0)
    raise ValueError(f"unknown relation {relation!r}")


@dataclass(frozen=True)
class LiftTableRow:
    line: int
    transform: LatticeClass
    square: int
    relation: str
    lift_count: int
    lift_square: int


@dataclass(frozen=True)
class BranchedCoverReport:
    """Full certificate of the double-cover negativity count."""

    verdict: str
    reason: str
    branch_lines: tuple[int, ...]
    point_count: int
    branch_class: Optional[LatticeClass] = None
    inclusion_matrix: Optional[tuple[tuple[int, ...], ...]] = None
    h1_branch_complement: Optional[AbelianGroupSpec] = None
    chi_blowup: Optional[int] = None
    chi_branch: Optional[int] = None
    chi_cover: Optional[int] = None
    b2_cover: Optional[int] = None
    lift_table: tuple[LiftTableRow, ...] = ()
    negative_lift_count: Optional[int] = None
    transverse_lift_square: Optional[int] = None


def line_transform_classes(arr: LineArrangement) -> dict[int, LatticeClass]:
    """Proper transforms of the lines after blowing up every intersection point.

    Exceptional index i corresponds to the i-th entry of
    :func:`curve_obstruct.curve_model.all_points`.
    """
    points = all_points(arr)
    classes = {}
    for line in range(1, arr.line_count + 1):
        mults = tuple(1 if line in point else 0 for point in points)
        classes[line] = LatticeClass(1, mults)
    return classes


def branched_cover_b2_obstruction(
    arr: LineArrangement, branch_subset: Iterable[int]
) -> BranchedCoverReport:
    """Run the double-cover negativity pipeline for one branch subset.

    Blow up all intersection points, branch over the chosen proper
    transforms (their total class must be divisible by two and the branch
    complement must have finite cyclic first homology), and compare the
    count of pairwise-disjoint negative lifted spheres against b_2 of the
    cover.  Together with the square +2 lift of a generic line, a count
    reaching b_2 is a contradiction: the arrangement cannot exist.
    """
    branch = tuple(sorted(set(int(i) for i in branch_subset)))
    if any(i < 1 or i > arr.line_count for i in branch):
        raise ValueError(f"branch lines {branch} out of range 1..{arr.line_count}")
    points = all_points(arr)
    n = len(points)
    if not branch:
        return BranchedCoverReport(
            INAPPLICABLE, "empty branch subset: the double cover would be disconnected", branch, n
        )
    transforms = line_transform_classes(arr)
    for i, x in transforms.items():
        for j, y in transforms.items():
            if i < j and intersect(x, y) != 0:
                raise RuntimeError(
                    f"proper transforms of lines {i}, {j} are not orthogonal; blow-up bookkeeping broken"
                )
    branch_class = tube_classes([transforms[i] for i in branch])
    if not divisible_by_two(branch_class):
        return BranchedCoverReport(
            INAPPLICABLE,
            f"branch class {branch_class} is not divisible by 2; no double cover branches there",
            branch,
            n,
            branch_class=branch_class,
        )
    matrix = tuple(transforms[i].coordinates for i in branch)
    h1 = smith_invariants(matrix)
    if h1.free_rank > 0 or len(h1.torsion) > 1:
        return BranchedCoverReport(
            INAPPLICABLE,
            f"H_1 of the branch complement is {h1}, not finite cyclic; "
            "b_1 of the cover cannot be controlled",
            branch,
            n,
            branch_class=branch_class,
            inclusion_matrix=matrix,
            h1_branch_complement=h1,
        )
    if not h1.torsion:
        return BranchedCoverReport(
            INAPPLICABLE,
            "H_1 of the branch complement is trivial: no double cover exists",
            branch,
            n,
            branch_class=branch_class,
            inclusion_matrix=matrix,
            h1_branch_complement=h1,
        )

    chi_blowup = 3 + n
    chi_branch = 2 * len(branch)
    chi_cover = double_cover_euler(chi_blowup, chi_branch)
    b2_cover = chi_cover - 2  # b_1 = 0 by the finite cyclic H_1 step

    table = []
    negative = 0
    for line in range(1, arr.line_count + 1):
        cls = transforms[line]
        square = self_intersection(cls)
        if line in branch:
            lift = lift_square(cls, IN_BRANCH, branch_class)
        else:
            lift = lift_square(cls, DISJOINT, branch_class)
        table.append(LiftTableRow(line, cls, square, IN_BRANCH if line in branch else DISJOINT,
                                  lift.count, lift.square))
        if lift.square < 0:
            negative += lift.count

    generic_line = LatticeClass(1, (0,) * n)
    transverse = lift_square(generic_line, TRANSVERSE, branch_class)

    obstructed = negative >= b2_cover and transverse.connected and transverse.square > 0
    if obstructed:
        reason = (
            f"{negative} pairwise-disjoint negative classes meet b_2 = {b2_cover} "
            f"while a connected lift of square +{transverse.square} forces b_2^+ > 0"
        )
    else:
        reason = (
            f"negative count {negative} stays below b_2 = {b2_cover}; no contradiction"
        )
    return BranchedCoverReport(
        OBSTRUCTED if obstructed else PASS,
        reason,
        branch,
        n,
        branch_class=branch_class,
        inclusion_matrix=matrix,
        h1_branch_complement=h1,
        chi_blowup=chi_blowup,
        chi_branch=chi_branch,
        chi_cover=chi_cover,
        b2_cover=b2_cover,
        lift_table=tuple(table),
        negative_lift_count=negative,
        transverse_lift_square=transverse.square,
    )
