"""Lattice points of rational polytopes, parallelepipeds and Hilbert bases."""

import logging
from collections.abc import Sequence
from fractions import Fraction
from itertools import product
from math import ceil, floor

from stringy_engine.errors import DependentGenerators, NonLatticeVertices
from stringy_engine.linalg import (
    IntVector,
    IntegerMatrix,
    coordinates_in,
    dot,
    hermite_normal_form,
    inverse,
    lattice_basis_of_span,
    rank,
)
from stringy_engine.polytope import EMPTY, Cone, Marker, Polytope, hull, pulling_triangulation

logger = logging.getLogger(__name__)


def _integer_constraints(
    p: Polytope, strict: bool = False
) -> list[tuple[IntVector, int]] | None:
    """Facet and span constraints as ``<x, n> >= b`` with integer ``b``.

    Returns None when the affine span holds no lattice point.
    """
    constraints = []
    for f in p.facets:
        bound = floor(f.offset) + 1 if strict else ceil(f.offset)
        constraints.append((f.normal, bound))
    for e in p.equations:
        if e.value.denominator != 1:
            return None
        value = e.value.numerator
        constraints.append((e.normal, value))
        constraints.append((tuple(-c for c in e.normal), -value))
    return constraints


def _enumerate(p: Polytope, strict: bool) -> list[IntVector]:
    constraints = _integer_constraints(p, strict)
    if constraints is None:
        return []
    d = p.ambient_dim
    lo = [ceil(min(v[i] for v in p.vertices)) for i in range(d)]
    hi = [floor(max(v[i] for v in p.vertices)) for i in range(d)]
    if any(a > b for a, b in zip(lo, hi)):
        return []

    normals = [c[0] for c in constraints]
    bounds = [c[1] for c in constraints]
    m = len(constraints)
    # rest[c][j]: largest value coordinates j.. can add to constraint c inside the box
    rest = [[0] * (d + 1) for _ in range(m)]
    for c in range(m):
        for j in range(d - 1, -1, -1):
            a = normals[c][j]
            rest[c][j] = rest[c][j + 1] + max(a * lo[j], a * hi[j])

    found: list[IntVector] = []
    partial = [0] * m
    x = [0] * d

    def descend(j: int) -> None:
        if j == d:
            if all(partial[c] >= bounds[c] for c in range(m)):
                found.append(tuple(x))
            return
        low, high = lo[j], hi[j]
        for c in range(m):
            a = normals[c][j]
            need = bounds[c] - partial[c] - rest[c][j + 1]
            if a > 0:
                low = max(low, -((-need) // a))
            elif a < 0:
                high = min(high, need // a)
            elif need > 0:
                return
        for value in range(low, high + 1):
            x[j] = value
            for c in range(m):
                partial[c] += normals[c][j] * value
            descend(j + 1)
            for c in range(m):
                partial[c] -= normals[c][j] * value

    descend(0)
    return found


def points_in(p: Polytope) -> list[IntVector]:
    """All lattice points of ``p``, sorted lexicographically."""
    return _enumerate(p, strict=False)


def interior_points(p: Polytope) -> list[IntVector]:
    """Lattice points in the relative interior of ``p``."""
    return _enumerate(p, strict=True)


def count_dilation(p: Polytope, l: int) -> int:
    """Number of lattice points in the dilation ``l * p`` of a lattice polytope."""
    if not p.is_lattice:
        raise NonLatticeVertices("dilation counts need integer vertices")
    if l < 0:
        raise ValueError("dilation factor must be nonnegative")
    if l == 0:
        return 1
    return len(points_in(p.dilate(l)))


def lattice_hull(p: Polytope) -> Polytope | Marker:
    """Convex hull of the lattice points of ``p``, or ``EMPTY``."""
    pts = points_in(p)
    if not pts:
        return EMPTY
    return hull(pts, side=p.side)


def parallelepiped_with_coefficients(
    generators: Sequence[Sequence[int]],
) -> list[tuple[IntVector, list[Fraction]]]:
    """Lattice points of the half-open parallelepiped with their coefficients.

    Each entry pairs a point ``sum(l_i * g_i)`` with its coefficients
    ``l_i`` in ``[0, 1)``.

    Raises:
        DependentGenerators: If the generators are linearly dependent
    """
    gens = [tuple(int(c) for c in g) for g in generators]
    if not gens:
        raise ValueError("at least one generator is required")
    k, d = len(gens), len(gens[0])
    if rank(gens) < k:
        raise DependentGenerators("parallelepiped generators must be independent")
    basis = lattice_basis_of_span(gens)
    coords = [[int(c) for c in coordinates_in(basis, g)] for g in gens]
    h, _ = hermite_normal_form(IntegerMatrix.of(coords, k))
    diagonal = [h.rows[i][i] for i in range(k)]
    inv = inverse(coords)

    result = []
    for rep in product(*(range(n) for n in diagonal)):
        lam = [sum(rep[i] * inv[i][j] for i in range(k)) for j in range(k)]
        frac = [c - floor(c) for c in lam]
        point = tuple(
            int(sum(frac[j] * gens[j][c] for j in range(k))) for c in range(d)
        )
        result.append((point, frac))
    result.sort()
    return result


def parallelepiped_points(generators: Sequence[Sequence[int]]) -> list[IntVector]:
    """Lattice points ``sum(l_i * g_i)`` with all ``0 <= l_i < 1``, sorted."""
    return [pt for pt, _ in parallelepiped_with_coefficients(generators)]


def simplicial_pieces(cone: Cone) -> list[list[IntVector]]:
    """Generator lists of the simplicial cones of a pulling triangulation of ``cone``."""
    q = cone.apex_hull
    origin = (0,) * cone.ambient_dim
    apex = q.vertices.index(origin)
    return [
        [q.vertices[i].to_ints() for i in simplex if i != apex]
        for simplex in pulling_triangulation(q, first=apex)
    ]


def hilbert_basis(cone: Cone) -> list[IntVector]:
    """Minimal generating set of the semigroup of lattice points of a pointed cone."""
    if cone.dim == 0:
        raise ValueError("the zero cone has an empty Hilbert basis")
    candidates = set(cone.generators)
    for gens in simplicial_pieces(cone):
        candidates.update(pt for pt in parallelepiped_points(gens) if any(pt))
    height = [sum(n[i] for n in cone.facet_normals) for i in range(cone.ambient_dim)]
    basis: list[IntVector] = []
    for v in sorted(candidates, key=lambda v: (dot(v, height), v)):
        if any(cone.contains(tuple(a - b for a, b in zip(v, u))) for u in basis):
            continue
        basis.append(v)
    logger.debug("Hilbert basis of %r: %d elements", cone, len(basis))
    return sorted(basis)
