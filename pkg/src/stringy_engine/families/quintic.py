"""Newton polytopes of hypersurfaces in projective space.

A degree-``high`` hypersurface in ``P^dim`` whose equation vanishes to order
``low`` at ``(1:0:...:0)`` has the slab ``{x >= 0 : low <= sum(x) <= high}``
as its Newton polytope in the affine chart.
"""

import re

from stringy_engine.config import get_settings
from stringy_engine.errors import DimensionGuard, InvalidParams
from stringy_engine.families.base import PolytopeFamily
from stringy_engine.polytope import Polytope, hull

MEMBERS = {
    "smooth": (4, 1, 5),
    "conifold": (4, 2, 5),
    "quintic-simplex": (4, 0, 5),
    "quartic-simplex": (3, 0, 4),
    "cubic-simplex": (2, 0, 3),
}

_QUADRIC_POINT = re.compile(r"quadric-point-(\d+)")


def slab(dim: int, low: int, high: int) -> Polytope:
    """Lattice polytope ``{x in R^dim : x >= 0, low <= sum(x) <= high}``.

    Raises:
        InvalidParams: Unless ``dim >= 1`` and ``0 <= low < high``
    """
    if dim < 1 or low < 0 or high <= low:
        raise InvalidParams(f"slab needs dim >= 1 and 0 <= low < high, got {dim}, {low}, {high}")
    axes = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    points = [tuple(high * c for c in e) for e in axes]
    if low == 0:
        points.append((0,) * dim)
    else:
        points.extend(tuple(low * c for c in e) for e in axes)
    return hull(points)


def quadric_point(d: int) -> Polytope:
    """Newton polytope of a degree-(d+2) hypersurface in ``P^(d+1)`` with a quadratic point."""
    if d < 2:
        raise InvalidParams(f"quadric-point hypersurfaces need d >= 2, got {d}")
    if d + 1 > get_settings().max_dim:
        raise DimensionGuard(f"dimension {d + 1} exceeds STRINGY_MAX_DIM")
    return slab(d + 1, 2, d + 2)


class ProjectiveHypersurfaces(PolytopeFamily):
    """Slab polytopes of hypersurfaces in projective space."""

    @property
    def name(self) -> str:
        return "projective"

    @property
    def display_name(self) -> str:
        return "Hypersurfaces in projective space"

    def members(self) -> list[str]:
        return [*MEMBERS, "quadric-point-3", "quadric-point-4"]

    def build(self, member: str) -> Polytope:
        if member in MEMBERS:
            return slab(*MEMBERS[member])
        match = _QUADRIC_POINT.fullmatch(member)
        if match:
            return quadric_point(int(match.group(1)))
        raise self.unknown(member)

    def describe(self, member: str) -> str:
        if member in MEMBERS:
            dim, low, high = MEMBERS[member]
            return f"slab({dim}, {low}, {high}): degree {high} in P^{dim}, order {low} at a point"
        return super().describe(member)
