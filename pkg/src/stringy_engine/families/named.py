"""Individual polytopes that separate the Calabi-Yau classes."""

from stringy_engine.families.base import PolytopeFamily
from stringy_engine.polytope import Polytope, hull


def _axes(dim: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for j in range(dim)) for i in range(dim)]


NAMED_VERTICES: dict[str, tuple[str, list[tuple[int, ...]]]] = {
    "corti-golyshev": (
        "degree 20 in P(1,5,6,8): one-dimensional Fine interior",
        [*_axes(3), (-5, -6, -8)],
    ),
    "almost-reflexive-simplex": (
        "Fine interior {0}, closure adds the vertex (0,0,-1)",
        [*_axes(3), (-1, -1, -2)],
    ),
    "pseudoreflexive-simplex-5": (
        "pseudoreflexive but not reflexive",
        [*_axes(5), (-1, -1, -1, -1, -2)],
    ),
    "empty-fine-triangle": (
        "conv{0, 2e1, 2e2}: empty Fine interior",
        [(0, 0), (2, 0), (0, 2)],
    ),
}


class NamedExamples(PolytopeFamily):
    """Hand-picked polytopes, one per interesting classification outcome."""

    @property
    def name(self) -> str:
        return "named"

    @property
    def display_name(self) -> str:
        return "Named examples"

    def members(self) -> list[str]:
        return list(NAMED_VERTICES)

    def build(self, member: str) -> Polytope:
        if member not in NAMED_VERTICES:
            raise self.unknown(member)
        return hull(NAMED_VERTICES[member][1])

    def describe(self, member: str) -> str:
        if member not in NAMED_VERTICES:
            raise self.unknown(member)
        return NAMED_VERTICES[member][0]
