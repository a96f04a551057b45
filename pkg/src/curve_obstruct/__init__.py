"""curve-obstruct: exact-integer non-existence obstructions for plane curve types."""

from .curve_model import (
    CombinatorialCurve,
    DocumentError,
    LineArrangement,
    WeakProfile,
    arrangement_euler,
    as_combinatorial_curve,
    pair_count_check,
    parse_document,
    strong_equivalent,
    weak_equivalent,
    weak_profile,
)
from .hurwitz import best_pivot_obstruction, hurwitz_euler, projection_obstruction, rational_cover_slack
from .invariants import (
    AbelianGroupSpec,
    AdjunctionVerdict,
    adjunction_check,
    complement_euler,
    complement_h1,
    count_cuspidal_types,
    degree_genus,
    fdblmhn_family,
    hardy_ramanujan_ratio,
    max_singular_points,
    partition_number,
    rational_cuspidal_check,
    smith_invariants,
    unicuspidal_torus_check,
)
from .lattice import (
    BlowupLattice,
    LatticeClass,
    branched_cover_b2_obstruction,
    divisible_by_two,
    double_cover_euler,
    intersect,
    is_characteristic,
    kervaire_milnor_check,
    lift_square,
    proper_transform,
    tube_classes,
)
from .realize_ff import projective_plane, realizable_primes, realize, verify_realization
from .singularities import SingularityType

__all__ = [
    "AbelianGroupSpec",
    "AdjunctionVerdict",
    "BlowupLattice",
    "CombinatorialCurve",
    "DocumentError",
    "LatticeClass",
    "LineArrangement",
    "SingularityType",
    "WeakProfile",
    "adjunction_check",
    "arrangement_euler",
    "as_combinatorial_curve",
    "best_pivot_obstruction",
    "branched_cover_b2_obstruction",
    "complement_euler",
    "complement_h1",
    "count_cuspidal_types",
    "degree_genus",
    "divisible_by_two",
    "double_cover_euler",
    "fdblmhn_family",
    "hardy_ramanujan_ratio",
    "hurwitz_euler",
    "intersect",
    "is_characteristic",
    "kervaire_milnor_check",
    "lift_square",
    "max_singular_points",
    "pair_count_check",
    "parse_document",
    "partition_number",
    "projection_obstruction",
    "projective_plane",
    "proper_transform",
    "rational_cover_slack",
    "rational_cuspidal_check",
    "realizable_primes",
    "realize",
    "smith_invariants",
    "strong_equivalent",
    "tube_classes",
    "unicuspidal_torus_check",
    "verify_realization",
    "weak_equivalent",
    "weak_profile",
]
