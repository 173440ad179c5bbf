"""Shared polytopes for the test suite."""

import random
from fractions import Fraction
from itertools import product

import pytest

from stringy_engine.families.quintic import slab
from stringy_engine.lattice_points import interior_points
from stringy_engine.polytope import Polytope, hull


@pytest.fixture
def reflexive_triangle() -> Polytope:
    return hull([(1, 0), (0, 1), (-1, -1)])


@pytest.fixture
def unit_square() -> Polytope:
    return hull([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def quint1() -> Polytope:
    """Newton polytope of the smooth quintic, with the origin cut off."""
    return slab(4, 1, 5)


@pytest.fixture
def quint2() -> Polytope:
    """Newton polytope of a quintic with a double point."""
    return slab(4, 2, 5)


@pytest.fixture
def quartic_simplex() -> Polytope:
    return slab(3, 0, 4)


@pytest.fixture
def quintic_simplex() -> Polytope:
    return slab(4, 0, 5)


def random_polygon(rng: random.Random, radius: int = 5) -> Polytope:
    """Full-dimensional lattice polygon from 3 to 7 random points in a box."""
    while True:
        count = rng.randint(3, 7)
        points = [
            (rng.randint(-radius, radius), rng.randint(-radius, radius))
            for _ in range(count)
        ]
        p = hull(points)
        if p.dim == 2:
            return p


def brute_force_fine_interior(p: Polytope) -> Polytope | None:
    """Hull of the interior lattice points, which is the Fine interior of a polygon."""
    points = interior_points(p)
    return hull(points) if points else None


def random_origin_polytope(rng: random.Random, dim: int = 3) -> Polytope:
    """Lattice polytope inside ``[-1, 1]^dim`` with the origin in its interior.

    Every such polytope has Fine interior exactly the origin.
    """
    box = [pt for pt in product((-1, 0, 1), repeat=dim) if any(pt)]
    origin = (0,) * dim
    while True:
        p = hull(rng.sample(box, rng.randint(dim + 1, 2 * dim + 4)))
        if p.dim == dim and p.interior_contains(origin):
            return p


def random_rational_polytope(rng: random.Random, dim: int = 3) -> Polytope:
    """Rational polytope around the origin with a few random extra points."""
    points = []
    for i in range(dim):
        for sign in (1, -1):
            axis = [Fraction(0)] * dim
            axis[i] = sign * Fraction(rng.randint(1, 6), rng.randint(1, 3))
            points.append(axis)
    for _ in range(rng.randint(0, 4)):
        points.append([Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(dim)])
    return hull(points)


@pytest.fixture
def origin_polytopes() -> list[Polytope]:
    """Fifty seeded lattice polytopes in ``[-1, 1]^3`` with Fine interior at the origin."""
    rng = random.Random(314)
    return [random_origin_polytope(rng) for _ in range(50)]
