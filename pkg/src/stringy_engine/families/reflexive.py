"""Reflexive polytopes: the 16 polygons, simplices, cubes and cross-polytopes."""

import re
from functools import lru_cache
from itertools import combinations, product

from stringy_engine.errors import InvalidParams
from stringy_engine.families.base import PolytopeFamily
from stringy_engine.lattice_points import points_in
from stringy_engine.linalg import IntegerMatrix, hermite_normal_form
from stringy_engine.polytope import Polytope, hull

# every reflexive polygon is equivalent to a lattice subpolygon of one of these
MAXIMAL_POLYGONS = (
    ((-1, -1), (2, -1), (-1, 2)),
    ((-1, -1), (1, -1), (1, 1), (-1, 1)),
    ((-1, -1), (3, -1), (-1, 1)),
)

_NAMED = re.compile(r"(simplex|cube|cross)-(\d+)")
_POLYGON = re.compile(r"polygon-(\d+)")


def _cyclic_order(p: Polytope) -> list[int]:
    neighbours: dict[int, list[int]] = {i: [] for i in range(len(p.vertices))}
    for face in p.faces.of_dim(1):
        i, j = sorted(face.vertices)
        neighbours[i].append(j)
        neighbours[j].append(i)
    order = [0]
    previous = None
    while len(order) < len(p.vertices):
        current = order[-1]
        following = next(v for v in neighbours[current] if v != previous)
        previous = current
        order.append(following)
    return order


def polygon_normal_form(p: Polytope) -> tuple[tuple[int, ...], ...]:
    """Invariant of a lattice polygon under ``GL(2, Z)``.

    The Hermite normal form of the vertex matrix is unique under left
    multiplication by unimodular matrices; the minimum over all cyclic
    relabelings removes the choice of starting vertex and orientation.
    """
    order = _cyclic_order(p)
    n = len(order)
    best = None
    for start in range(n):
        for step in (1, -1):
            labels = [order[(start + step * i) % n] for i in range(n)]
            columns = [p.vertices[i].to_ints() for i in labels]
            matrix = IntegerMatrix.of([[v[0] for v in columns], [v[1] for v in columns]], n)
            h, _ = hermite_normal_form(matrix)
            if best is None or h.rows < best:
                best = h.rows
    return best


@lru_cache(maxsize=1)
def reflexive_polygons() -> tuple[Polytope, ...]:
    """The 16 reflexive polygons up to ``GL(2, Z)``, by number of boundary points."""
    found: dict[tuple, Polytope] = {}
    origin = (0, 0)
    for maximal in MAXIMAL_POLYGONS:
        boundary = [pt for pt in points_in(hull(maximal)) if pt != origin]
        for size in range(3, len(boundary) + 1):
            for subset in combinations(boundary, size):
                candidate = hull(subset)
                if candidate.dim != 2 or not candidate.interior_contains(origin):
                    continue
                found.setdefault(polygon_normal_form(candidate), candidate)
    return tuple(
        sorted(found.values(), key=lambda p: (len(points_in(p)), len(p.vertices), p.vertices))
    )


def reflexive_simplex(dim: int) -> Polytope:
    """``conv{e_1, ..., e_d, -e_1 - ... - e_d}``."""
    axes = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    return hull([*axes, (-1,) * dim])


def cube(dim: int) -> Polytope:
    return hull(product((-1, 1), repeat=dim))


def cross_polytope(dim: int) -> Polytope:
    points = []
    for i in range(dim):
        for sign in (1, -1):
            points.append(tuple(sign * int(i == j) for j in range(dim)))
    return hull(points)


_BUILDERS = {"simplex": reflexive_simplex, "cube": cube, "cross": cross_polytope}


class ReflexiveFamily(PolytopeFamily):
    """Small reflexive polytopes with known stringy Euler numbers."""

    @property
    def name(self) -> str:
        return "reflexive"

    @property
    def display_name(self) -> str:
        return "Reflexive polytopes"

    def members(self) -> list[str]:
        names = [f"polygon-{i}" for i in range(1, 17)]
        for kind in _BUILDERS:
            names.extend(f"{kind}-{d}" for d in range(2, 5))
        return names

    def build(self, member: str) -> Polytope:
        match = _POLYGON.fullmatch(member)
        if match:
            index = int(match.group(1))
            polygons = reflexive_polygons()
            if not 1 <= index <= len(polygons):
                raise InvalidParams(f"there are {len(polygons)} reflexive polygons, got {index}")
            return polygons[index - 1]
        match = _NAMED.fullmatch(member)
        if match:
            dim = int(match.group(2))
            if dim < 1:
                raise InvalidParams(f"dimension must be positive, got {dim}")
            return _BUILDERS[match.group(1)](dim)
        raise self.unknown(member)
