"""Local models of plane curve singularities of the form {x^a = y^b}.

A single two-parameter family covers every singularity used by the
obstruction pipeline: ``a == b == m`` is the ordinary m-fold point
(m transverse branches), while coprime ``(a, b)`` is the cusp whose
link is the torus knot T(a, b).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

_TEXT_FORM = re.compile(r"^([TO])\((\d+)(?:,(\d+))?\)$")


@dataclass(frozen=True, order=True)
class SingularityType:
    """The singularity {x^a = y^b}, normalised so that 2 <= a <= b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if not (2 <= self.a <= self.b):
            raise ValueError(f"singularity parameters need 2 <= a <= b, got ({self.a}, {self.b})")

    @classmethod
    def parse(cls, text: str) -> "SingularityType":
        """Parse the text forms ``T(a,b)`` and ``O(m)`` (sugar for (m, m))."""
        match = _TEXT_FORM.match(text.replace(" ", ""))
        if match is None:
            raise ValueError(f"cannot parse singularity {text!r}; expected T(a,b) or O(m)")
        kind, first, second = match.groups()
        if kind == "O":
            if second is not None:
                raise ValueError(f"O(m) takes a single parameter, got {text!r}")
            m = int(first)
            return cls(m, m)
        if second is None:
            raise ValueError(f"T(a,b) takes two parameters, got {text!r}")
        return cls(int(first), int(second))

    def __str__(self) -> str:
        if self.a == self.b:
            return f"O({self.a})"
        return f"T({self.a},{self.b})"

    @property
    def branch_count(self) -> int:
        """Number of local branches; the link has gcd(a, b) components."""
        return gcd(self.a, self.b)

    @property
    def is_cusp(self) -> bool:
        return self.branch_count == 1

    @property
    def milnor_number(self) -> int:
        """First Betti number of the local smoothing: (a-1)(b-1)."""
        return (self.a - 1) * (self.b - 1)

    @property
    def adjunction_contribution(self) -> int:
        """The quantity mu + beta - 1; always even and at least 2."""
        return self.milnor_number + self.branch_count - 1

    @property
    def delta_invariant(self) -> int:
        """Local genus defect (mu + beta - 1) / 2; an integer by parity."""
        return self.adjunction_contribution // 2

    @property
    def multiplicity(self) -> int:
        """Local intersection of a generic line through the point: min(a, b)."""
        return self.a

    def link_genus(self) -> int:
        """Seifert genus mu / 2 of the link; defined only for cusps."""
        if self.branch_count != 1:
            raise ValueError(f"{self} has {self.branch_count} branches; link genus is only computed for cusps")
        return self.milnor_number // 2
