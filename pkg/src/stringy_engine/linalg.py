"""Exact integer and rational linear algebra.

Hermite normal form convention used throughout the package: row-style
echelon form ``H = U @ A`` with positive pivots, entries above each pivot
reduced into ``[0, pivot)`` and zero rows last. Callers rely only on the
span and rank of ``H``.

Rational elimination (echelon forms, kernels, determinants and inverses)
runs on sympy ``DomainMatrix`` over ``QQ``; the Hermite normal form keeps
its own elimination because it needs the unimodular transform.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from stringy_engine.errors import DimensionMismatch, ZeroVectorError

IntVector = tuple[int, ...]


class RationalVector(tuple):
    """Immutable vector of exact rationals.

    Compares and hashes like the plain tuple of its coordinates, so
    ``RationalVector([1, 2]) == (1, 2)``.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable) -> "RationalVector":
        return super().__new__(
            cls, (c if isinstance(c, Fraction) else Fraction(c) for c in coords)
        )

    @property
    def dim(self) -> int:
        return len(self)

    def _check(self, other: Sequence) -> None:
        if len(other) != len(self):
            raise DimensionMismatch(
                f"cannot combine vectors of dimension {len(self)} and {len(other)}"
            )

    def __add__(self, other: Sequence) -> "RationalVector":
        self._check(other)
        return RationalVector(a + b for a, b in zip(self, other))

    def __sub__(self, other: Sequence) -> "RationalVector":
        self._check(other)
        return RationalVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> "RationalVector":
        return RationalVector(-a for a in self)

    def __mul__(self, scalar) -> "RationalVector":
        return RationalVector(a * scalar for a in self)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "RationalVector":
        return RationalVector(a / scalar for a in self)

    def dot(self, other: Sequence) -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self)

    def to_ints(self) -> IntVector:
        """Return the coordinates as ints.

        Raises:
            ValueError: If a coordinate is not an integer
        """
        if not self.is_integral():
            raise ValueError(f"vector {self} is not integral")
        return tuple(c.numerator for c in self)

    def __repr__(self) -> str:
        return "RationalVector(" + ", ".join(str(c) for c in self) + ")"


def dot(u: Sequence, v: Sequence):
    """Exact inner product of two equal-length sequences."""
    if len(u) != len(v):
        raise DimensionMismatch(
            f"cannot pair vectors of dimension {len(u)} and {len(v)}"
        )
    return sum(a * b for a, b in zip(u, v))


def clear_denominators(v: Sequence) -> IntVector:
    """Scale ``v`` by the lcm of its denominators and return the integer vector."""
    fracs = [Fraction(c) for c in v]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    return tuple(int(f * scale) for f in fracs)


def primitive(v: Sequence) -> IntVector:
    """Divide a nonzero lattice direction by the gcd of its coordinates.

    Rational input is first scaled to integers by a positive factor.

    Raises:
        ZeroVectorError: If ``v`` is zero
    """
    ints = clear_denominators(v)
    g = gcd(*ints)
    if g == 0:
        raise ZeroVectorError("the zero vector has no primitive direction")
    return tuple(c // g for c in ints)


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense integer matrix stored as a tuple of row tuples."""

    rows: tuple[IntVector, ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatch(
                    f"row of length {len(row)} in a matrix with {self.ncols} columns"
                )

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntegerMatrix":
        body = tuple(tuple(int(c) for c in row) for row in rows)
        if ncols is None:
            ncols = len(body[0]) if body else 0
        return cls(body, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols)),
            self.nrows,
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = other.transpose().rows
        return IntegerMatrix(
            tuple(tuple(dot(row, col) for col in cols) for row in self.rows),
            other.ncols,
        )

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.rows for c in row)

    def rank(self) -> int:
        return rank(self.rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return int(determinant(self.rows))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(matrix: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form.

    Args:
        matrix: Integer matrix A with at least one row

    Returns:
        Pair (H, U) with H = U @ A, U unimodular and H in echelon form
    """
    m, n = matrix.nrows, matrix.ncols
    h = [list(row) for row in matrix.rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    p = 0
    for col in range(n):
        if p == m:
            break
        for i in range(p + 1, m):
            y = h[i][col]
            if y == 0:
                continue
            x = h[p][col]
            g, s, t = _ext_gcd(x, y)
            xg, yg = x // g, y // g
            for mat in (h, u):
                rp, ri = mat[p], mat[i]
                mat[p] = [s * a + t * b for a, b in zip(rp, ri)]
                mat[i] = [xg * b - yg * a for a, b in zip(rp, ri)]
        pivot = h[p][col]
        if pivot == 0:
            continue
        if pivot < 0:
            h[p] = [-c for c in h[p]]
            u[p] = [-c for c in u[p]]
            pivot = -pivot
        for i in range(p):
            q = h[i][col] // pivot
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[p])]
                u[i] = [a - q * b for a, b in zip(u[i], u[p])]
        p += 1
    return IntegerMatrix.of(h, n), IntegerMatrix.of(u, m)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Basis of the lattice ``{x in Z^ncols : A x = 0}``."""
    if not rows:
        return list(IntegerMatrix.identity(ncols).rows)
    transposed = IntegerMatrix.of(rows, ncols).transpose()
    h, u = hermite_normal_form(transposed)
    r = sum(1 for row in h.rows if any(row))
    return list(u.rows[r:])


def lattice_basis_of_span(points: Iterable[Sequence]) -> list[IntVector]:
    """Basis of the lattice ``Z^d`` intersected with the linear span of ``points``.

    Rational points are accepted; only their directions matter. Returns an
    empty list when the span is zero.
    """
    pts = [clear_denominators(p) for p in points]
    pts = [p for p in pts if any(p)]
    if not pts:
        return []
    d = len(pts[0])
    orthogonal = integer_kernel(pts, d)
    basis = integer_kernel(orthogonal, d) if orthogonal else list(
        IntegerMatrix.identity(d).rows
    )
    h, _ = hermite_normal_form(IntegerMatrix.of(basis, d))
    return [row for row in h.rows if any(row)]


def _qq_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    entries = []
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch(
                f"row of length {len(row)} in a matrix with {ncols} columns"
            )
        fracs = [Fraction(c) for c in row]
        entries.append([QQ(f.numerator, f.denominator) for f in fracs])
    return DomainMatrix(entries, (len(entries), ncols), QQ)


def _fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _fraction_rows(m: DomainMatrix) -> list[list[Fraction]]:
    return [[_fraction(x) for x in row] for row in m.to_list()]


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.

    Returns:
        The nonzero reduced rows and their pivot columns
    """
    if not rows:
        return [], []
    reduced, pivots = _qq_matrix(rows, len(rows[0])).rref()
    return _fraction_rows(reduced)[: len(pivots)], list(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return _qq_matrix(rows, len(rows[0])).rank()


def rational_kernel(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x in Q^ncols : A x = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    return _fraction_rows(_qq_matrix(rows, ncols).nullspace())


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square matrix."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in rows):
        raise DimensionMismatch("determinant of a non-square matrix")
    return _fraction(_qq_matrix(rows, n).det())


def coordinates_in(basis: Sequence[Sequence[int]], v: Sequence) -> list[Fraction]:
    """Coordinates of ``v`` in an independent ``basis`` of a subspace containing it.

    Raises:
        ValueError: If ``v`` is not in the span of ``basis``
    """
    k = len(basis)
    if k == 0:
        if any(v):
            raise ValueError("nonzero vector in the zero subspace")
        return []
    system = [[basis[i][j] for i in range(k)] + [v[j]] for j in range(len(v))]
    reduced, pivots = row_echelon(system)
    if k in pivots:
        raise ValueError("vector is not in the span")
    coords = [Fraction(0)] * k
    for row, pc in zip(reduced, pivots):
        coords[pc] = row[k]
    return coords


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a nonsingular square matrix.

    Raises:
        ValueError: If the matrix is singular
    """
    n = len(rows)
    try:
        inv = _qq_matrix(rows, n).inv()
    except DMNonInvertibleMatrixError as e:
        raise ValueError("matrix is singular") from e
    return _fraction_rows(inv)
