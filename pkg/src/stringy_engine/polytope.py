"""Exact polytopes in dual description.

A :class:`Polytope` stores its irredundant vertices, its facet inequalities
``<x, n> >= c`` with primitive integer normals, the equations of its affine
span when it is not full-dimensional, and a face lattice built eagerly from
vertex-facet incidences. Hulls are computed by exact beneath-beyond insertion
in a coordinate projection of the affine span.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from stringy_engine.errors import (
    DimensionMismatch,
    LinealityError,
    NotFullDimensional,
    OriginNotInterior,
)
from stringy_engine.linalg import (
    IntVector,
    RationalVector,
    clear_denominators,
    dot,
    integer_kernel,
    primitive,
    rank,
    rational_kernel,
    row_echelon,
)

logger = logging.getLogger(__name__)


class Side(Enum):
    """Lattice a polytope lives in: M (monomials) or N (one-parameter subgroups)."""

    M = "M"
    N = "N"

    @property
    def dual(self) -> "Side":
        return Side.N if self is Side.M else Side.M


class Marker(Enum):
    """Results that are not polytopes."""

    EMPTY = "empty"
    ABSENT = "absent"


EMPTY = Marker.EMPTY
ABSENT = Marker.ABSENT


class Facet(NamedTuple):
    """Inequality ``<x, normal> >= offset``."""

    normal: IntVector
    offset: Fraction


class Equation(NamedTuple):
    """Equation ``<x, normal> == value`` of the affine span."""

    normal: IntVector
    value: Fraction


@dataclass(frozen=True)
class Face:
    index: int
    vertices: frozenset[int]
    dim: int
    facets: frozenset[int]
    subfaces: tuple[int, ...]
    superfaces: tuple[int, ...]


class FaceLattice:
    """All nonempty faces ordered by (dimension, sorted vertex indices).

    The polytope itself is the last face.
    """

    def __init__(self, faces: Sequence[Face]):
        self._faces = tuple(faces)
        self._by_vertices = {f.vertices: f.index for f in self._faces}

    def __len__(self) -> int:
        return len(self._faces)

    def __iter__(self) -> Iterator[Face]:
        return iter(self._faces)

    def __getitem__(self, index: int) -> Face:
        return self._faces[index]

    @property
    def top(self) -> Face:
        return self._faces[-1]

    def of_dim(self, k: int) -> list[Face]:
        return [f for f in self._faces if f.dim == k]

    def proper(self) -> list[Face]:
        return list(self._faces[:-1])

    def find(self, vertex_indices: Iterable[int]) -> Face | None:
        index = self._by_vertices.get(frozenset(vertex_indices))
        return None if index is None else self._faces[index]

    def f_vector(self) -> list[int]:
        """Face counts ``f_0, ..., f_{dim-1}`` of the boundary complex."""
        return [len(self.of_dim(k)) for k in range(self.top.dim)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))


def _affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _build_face_lattice(
    vertices: Sequence[RationalVector], facet_sets: Sequence[frozenset[int]]
) -> FaceLattice:
    full = frozenset(range(len(vertices)))
    found = {full}
    layer = set(facet_sets) - found
    while layer:
        found |= layer
        nxt = set()
        for f in layer:
            for g in facet_sets:
                inter = f & g
                if inter and inter not in found:
                    nxt.add(inter)
        layer = nxt

    dims = {s: _affine_dim([vertices[i] for i in sorted(s)]) for s in found}
    ordered = sorted(found, key=lambda s: (dims[s], sorted(s)))
    index = {s: i for i, s in enumerate(ordered)}
    by_dim: dict[int, list[frozenset[int]]] = {}
    for s in ordered:
        by_dim.setdefault(dims[s], []).append(s)

    subs: dict[frozenset[int], list[int]] = {s: [] for s in ordered}
    supers: dict[frozenset[int], list[int]] = {s: [] for s in ordered}
    for s in ordered:
        for t in by_dim.get(dims[s] + 1, []):
            if s < t:
                subs[t].append(index[s])
                supers[s].append(index[t])

    faces = []
    for i, s in enumerate(ordered):
        containing = frozenset(
            j for j, fs in enumerate(facet_sets) if s <= fs and s != full
        )
        faces.append(
            Face(
                index=i,
                vertices=s,
                dim=dims[s],
                facets=containing,
                subfaces=tuple(sorted(subs[s])),
                superfaces=tuple(sorted(supers[s])),
            )
        )
    return FaceLattice(faces)


class Polytope:
    """Immutable polytope over the rationals.

    Build instances with :func:`hull`; the constructor trusts its input.
    """

    def __init__(
        self,
        vertices: Sequence[RationalVector],
        facets: Sequence[Facet],
        equations: Sequence[Equation],
        side: Side,
        dim: int,
        faces: FaceLattice | None = None,
    ):
        self._vertices = tuple(vertices)
        self._facets = tuple(facets)
        self._equations = tuple(equations)
        self._side = side
        self._dim = dim
        if faces is None:
            facet_sets = [
                frozenset(
                    i
                    for i, v in enumerate(self._vertices)
                    if dot(v, f.normal) == f.offset
                )
                for f in self._facets
            ]
            faces = _build_face_lattice(self._vertices, facet_sets)
        self._faces = faces

    @property
    def vertices(self) -> tuple[RationalVector, ...]:
        return self._vertices

    @property
    def facets(self) -> tuple[Facet, ...]:
        return self._facets

    @property
    def equations(self) -> tuple[Equation, ...]:
        return self._equations

    @property
    def side(self) -> Side:
        return self._side

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def ambient_dim(self) -> int:
        return len(self._vertices[0])

    @property
    def faces(self) -> FaceLattice:
        return self._faces

    @property
    def is_full_dimensional(self) -> bool:
        return self._dim == self.ambient_dim

    @property
    def is_lattice(self) -> bool:
        return all(v.is_integral() for v in self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self._side is other._side and self._vertices == other._vertices

    def __hash__(self) -> int:
        return hash((self._side, self._vertices))

    def __repr__(self) -> str:
        verts = ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in self._vertices)
        return f"Polytope(dim={self._dim}, side={self._side.value}, vertices=[{verts}])"

    def contains(self, x: Sequence) -> bool:
        return all(dot(x, f.normal) >= f.offset for f in self._facets) and all(
            dot(x, e.normal) == e.value for e in self._equations
        )

    def interior_contains(self, x: Sequence) -> bool:
        """True when ``x`` lies in the relative interior."""
        return all(dot(x, f.normal) > f.offset for f in self._facets) and all(
            dot(x, e.normal) == e.value for e in self._equations
        )

    def ord(self, n: Sequence) -> Fraction:
        """Minimum of ``<x, n>`` over the polytope."""
        if len(n) != self.ambient_dim:
            raise DimensionMismatch(
                f"direction of dimension {len(n)} for a polytope in dimension {self.ambient_dim}"
            )
        return min(v.dot(n) for v in self._vertices)

    def centroid(self) -> RationalVector:
        """Average of the vertices, a relative-interior point."""
        total = self._vertices[0]
        for v in self._vertices[1:]:
            total = total + v
        return total / len(self._vertices)

    def face_vertices(self, face: Face) -> list[RationalVector]:
        return [self._vertices[i] for i in sorted(face.vertices)]

    def face_polytope(self, face: Face) -> "Polytope":
        if face.index == self._faces.top.index:
            return self
        return hull(self.face_vertices(face), side=self._side)

    def edges(self) -> list[tuple[RationalVector, RationalVector]]:
        return [
            tuple(self.face_vertices(f)) for f in self._faces if f.dim == 1
        ]

    def f_vector(self) -> list[int]:
        return self._faces.f_vector()

    def euler_characteristic(self) -> int:
        return self._faces.euler_characteristic()

    def translate(self, shift: Sequence) -> "Polytope":
        """Polytope moved by ``shift``; face indices are preserved."""
        shift = RationalVector(shift)
        return Polytope(
            [v + shift for v in self._vertices],
            [Facet(f.normal, f.offset + shift.dot(f.normal)) for f in self._facets],
            [Equation(e.normal, e.value + shift.dot(e.normal)) for e in self._equations],
            self._side,
            self._dim,
            self._faces,
        )

    def dilate(self, factor) -> "Polytope":
        """Polytope scaled by a positive rational ``factor``; face indices are preserved."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("dilation factor must be positive")
        return Polytope(
            [v * factor for v in self._vertices],
            [Facet(f.normal, f.offset * factor) for f in self._facets],
            [Equation(e.normal, e.value * factor) for e in self._equations],
            self._side,
            self._dim,
            self._faces,
        )

    def cut(self, normal: Sequence[int], bound) -> "Polytope | Marker":
        """Intersection with the half-space ``<x, normal> >= bound``.

        Returns:
            The smaller polytope, ``self`` when nothing is cut, or ``EMPTY``
        """
        values = [v.dot(normal) for v in self._vertices]
        if min(values) >= bound:
            return self
        if max(values) < bound:
            return EMPTY
        points = [v for v, val in zip(self._vertices, values) if val >= bound]
        for f in self._faces:
            if f.dim != 1:
                continue
            i, j = sorted(f.vertices)
            vi, vj = values[i], values[j]
            if (vi - bound) * (vj - bound) < 0:
                t = (bound - vi) / (vj - vi)
                a, b = self._vertices[i], self._vertices[j]
                points.append(a + (b - a) * t)
        return hull(points, side=self._side)


def _plane_through(points: Sequence[IntVector]) -> IntVector:
    base = points[0]
    rows = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    kernel = rational_kernel(rows, len(base))
    return primitive(kernel[0])


def _independent_subset(points: Sequence[IntVector], indices: Iterable[int], size: int) -> list[int]:
    """Greedily pick ``size`` affinely independent points among ``indices``."""
    chosen: list[int] = []
    rows: list[list[int]] = []
    base = None
    for i in indices:
        if base is None:
            base = points[i]
            chosen.append(i)
        else:
            candidate = rows + [[a - b for a, b in zip(points[i], base)]]
            if rank(candidate) == len(candidate):
                rows = candidate
                chosen.append(i)
        if len(chosen) == size:
            break
    return chosen


def _hull_full(points: list[IntVector]) -> tuple[list[tuple[IntVector, int]], list[int]]:
    """Facets and vertex indices of the full-dimensional hull of integer ``points``."""
    k = len(points[0])
    if k == 1:
        values = [p[0] for p in points]
        lo, hi = min(values), max(values)
        return [((1,), lo), ((-1,), -hi)], sorted({values.index(lo), values.index(hi)})

    simplex = _independent_subset(points, range(len(points)), k + 1)
    center = [sum(points[i][c] for i in simplex) for c in range(k)]

    def oriented(indices: Sequence[int]) -> tuple[IntVector, int]:
        normal = _plane_through([points[i] for i in indices])
        offset = dot(points[indices[0]], normal)
        if dot(center, normal) < (k + 1) * offset:
            normal = tuple(-c for c in normal)
            offset = -offset
        return normal, offset

    facets: dict[tuple[IntVector, int], set[int]] = {}
    for j in range(k + 1):
        others = [simplex[i] for i in range(k + 1) if i != j]
        facets[oriented(others)] = set(others)
    kept = set(simplex)

    for idx, p in enumerate(points):
        if idx in kept:
            continue
        values = {key: dot(key[0], p) - key[1] for key in facets}
        visible = [key for key, val in values.items() if val < 0]
        if not visible:
            on = [key for key, val in values.items() if val == 0]
            for key in on:
                facets[key].add(idx)
            if on:
                kept.add(idx)
            continue

        visible_set = set(visible)
        new_keys = set()
        for f in visible:
            for g in facets:
                if g in visible_set:
                    continue
                ridge = facets[f] & facets[g]
                if len(ridge) < k - 1:
                    continue
                if any(ridge <= facets[h] for h in facets if h != f and h != g):
                    continue
                base = _independent_subset(points, sorted(ridge), k - 1)
                new_keys.add(oriented(base + [idx]))

        for key in visible:
            del facets[key]
        kept.add(idx)
        for key, val in values.items():
            if key not in visible_set and val == 0:
                facets[key].add(idx)
        for key in new_keys:
            if key not in facets:
                facets[key] = {q for q in kept if dot(key[0], points[q]) == key[1]}
        on_boundary = set().union(*facets.values())
        kept &= on_boundary

    incident: dict[int, list[set[int]]] = {}
    for members in facets.values():
        for q in members:
            incident.setdefault(q, []).append(members)
    vertices = sorted(
        q for q, sets in incident.items() if set.intersection(*sets) == {q}
    )
    return list(facets), vertices


def hull(points: Iterable[Sequence], side: Side = Side.M) -> Polytope:
    """Convex hull of a nonempty finite set of rational points.

    Args:
        points: Points of equal dimension
        side: Lattice tag carried by the result

    Returns:
        Polytope with irredundant vertices, facets, span equations and faces
    """
    pts = sorted({RationalVector(p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of different dimensions")

    scale = lcm(*(c.denominator for p in pts for c in p))
    ipts = [tuple(int(c * scale) for c in p) for p in pts]
    base = ipts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in ipts[1:]]
    reduced, pivots = row_echelon(diffs)
    k = len(pivots)

    equations: list[Equation] = []
    if k < d:
        kernel = integer_kernel([clear_denominators(r) for r in reduced], d)
        for normal in kernel:
            normal = primitive(normal)
            equations.append(Equation(normal, pts[0].dot(normal)))
        equations.sort()

    if k == 0:
        return Polytope([pts[0]], [], equations, side, 0)

    projected = [tuple(p[c] for c in pivots) for p in ipts]
    raw_facets, vertex_idx = _hull_full(projected)
    facets = []
    for normal_k, offset in raw_facets:
        normal = [0] * d
        for c, value in zip(pivots, normal_k):
            normal[c] = value
        facets.append(Facet(tuple(normal), Fraction(offset, scale)))
    facets.sort()
    logger.debug(
        "hull of %d points in dimension %d: %d vertices, %d facets",
        len(pts),
        k,
        len(vertex_idx),
        len(facets),
    )
    return Polytope([pts[i] for i in vertex_idx], facets, equations, side, k)


def polar(p: Polytope) -> Polytope:
    """Polar dual ``{y : <x, y> >= -1 for all x in p}`` with the side flipped.

    Raises:
        NotFullDimensional: If ``p`` is lower-dimensional
        OriginNotInterior: If 0 is not strictly inside ``p``
    """
    if not p.is_full_dimensional:
        raise NotFullDimensional("polar requires a full-dimensional polytope")
    if any(f.offset >= 0 for f in p.facets):
        raise OriginNotInterior("the origin is not strictly inside the polytope")
    return hull(
        [RationalVector(f.normal) / (-f.offset) for f in p.facets], side=p.side.dual
    )


def dual_face(p: Polytope, face: Face) -> Polytope:
    """Face of the polar dual polytope where ``<x, y> = -1`` on ``face``."""
    if not p.is_full_dimensional:
        raise NotFullDimensional("dual faces require a full-dimensional polytope")
    if any(f.offset >= 0 for f in p.facets):
        raise OriginNotInterior("the origin is not strictly inside the polytope")
    if not face.facets:
        raise ValueError("the polytope itself has no dual face")
    return hull(
        [RationalVector(p.facets[j].normal) / (-p.facets[j].offset) for j in sorted(face.facets)],
        side=p.side.dual,
    )


class Cone:
    """Pointed rational polyhedral cone with apex 0.

    Attributes:
        generators: Primitive extreme rays, sorted
        facet_normals: Primitive inner normals of the facets within the span
        equations: Normals of the linear span
        dim: Dimension of the cone
    """

    def __init__(self, generators: Iterable[Sequence[int]], ambient_dim: int | None = None):
        gens = sorted({primitive(g) for g in generators if any(g)})
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient dimension is required for the zero cone")
            ambient_dim = len(gens[0])
        self.ambient_dim = ambient_dim
        origin = (0,) * ambient_dim
        if not gens:
            self.generators: tuple[IntVector, ...] = ()
            self.facet_normals: tuple[IntVector, ...] = ()
            self.equations: tuple[IntVector, ...] = tuple(
                tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)
            )
            self.dim = 0
            self.apex_hull = hull([origin])
            return

        q = hull([origin, *gens])
        if origin not in q.vertices:
            raise LinealityError("the cone contains a line")
        apex = q.vertices.index(origin)
        if q.dim == 1:
            rays = [v for v in q.vertices if v != origin]
        else:
            rays = []
            for f in q.faces.of_dim(1):
                if apex in f.vertices:
                    other = next(i for i in f.vertices if i != apex)
                    rays.append(q.vertices[other])
        self.generators = tuple(sorted(primitive(r) for r in rays))
        self.facet_normals = tuple(f.normal for f in q.facets if f.offset == 0)
        self.equations = tuple(e.normal for e in q.equations)
        self.dim = q.dim
        self.apex_hull = hull([origin, *self.generators])
        for g in gens:
            if not self.contains(g):
                raise RuntimeError(f"generator {g} outside its own cone")

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def contains(self, y: Sequence) -> bool:
        return all(dot(y, n) >= 0 for n in self.facet_normals) and all(
            dot(y, e) == 0 for e in self.equations
        )

    def relative_interior_contains(self, y: Sequence) -> bool:
        if self.dim == 0:
            return not any(y)
        return all(dot(y, n) > 0 for n in self.facet_normals) and all(
            dot(y, e) == 0 for e in self.equations
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient_dim, self.generators) == (other.ambient_dim, other.generators)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.generators))

    def __repr__(self) -> str:
        return f"Cone(dim={self.dim}, generators={list(self.generators)})"


def normal_cone(p: Polytope, face: Face) -> Cone:
    """Cone of directions ``y`` whose minimum over ``p`` is attained on ``face``."""
    if not p.is_full_dimensional:
        raise NotFullDimensional("normal cones require a full-dimensional polytope")
    return Cone([p.facets[j].normal for j in sorted(face.facets)], p.ambient_dim)


def pulling_triangulation(p: Polytope, first: int | None = None) -> list[tuple[int, ...]]:
    """Triangulate ``p`` by pulling vertices in index order.

    Args:
        p: Polytope to triangulate
        first: Vertex index pulled before all others

    Returns:
        Simplices as tuples of vertex indices, each of size ``p.dim + 1``
    """
    order = list(range(len(p.vertices)))
    if first is not None:
        order.remove(first)
        order.insert(0, first)
    position = {v: i for i, v in enumerate(order)}
    memo: dict[int, list[tuple[int, ...]]] = {}

    def pull(face_index: int) -> list[tuple[int, ...]]:
        if face_index in memo:
            return memo[face_index]
        face = p.faces[face_index]
        if face.dim == 0:
            result = [tuple(face.vertices)]
        else:
            apex = min(face.vertices, key=position.__getitem__)
            result = []
            for sub in face.subfaces:
                if apex in p.faces[sub].vertices:
                    continue
                result.extend((apex, *s) for s in pull(sub))
        memo[face_index] = result
        return result

    return pull(p.faces.top.index)
