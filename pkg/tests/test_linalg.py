"""Tests for exact integer and rational linear algebra."""

import random
from fractions import Fraction

import pytest

from stringy_engine.errors import DimensionMismatch, ZeroVectorError
from stringy_engine.linalg import (
    IntegerMatrix,
    RationalVector,
    coordinates_in,
    determinant,
    hermite_normal_form,
    integer_kernel,
    inverse,
    lattice_basis_of_span,
    primitive,
    rank,
    rational_kernel,
    row_echelon,
)


class TestRationalVector:
    """Tests for RationalVector arithmetic."""

    def test_equal_to_plain_tuple(self):
        """Test that a vector compares like the tuple of its coordinates."""
        assert RationalVector([1, 2]) == (1, 2)
        assert hash(RationalVector([1, 2])) == hash((Fraction(1), Fraction(2)))

    def test_arithmetic(self):
        """Test addition, subtraction, scaling and the inner product."""
        v = RationalVector([1, Fraction(1, 2)])
        w = RationalVector([3, 4])
        assert v + w == (4, Fraction(9, 2))
        assert w - v == (2, Fraction(7, 2))
        assert 2 * v == (2, 1)
        assert v / 2 == (Fraction(1, 2), Fraction(1, 4))
        assert v.dot(w) == 5

    def test_dimension_mismatch(self):
        """Test that vectors of different lengths do not combine."""
        with pytest.raises(DimensionMismatch):
            RationalVector([1, 2]) + RationalVector([1, 2, 3])

    def test_to_ints(self):
        """Test conversion of integral vectors and rejection of fractional ones."""
        assert RationalVector([2, -3]).to_ints() == (2, -3)
        with pytest.raises(ValueError):
            RationalVector([Fraction(1, 2), 0]).to_ints()


class TestPrimitive:
    """Tests for primitive lattice directions."""

    def test_divides_by_gcd(self):
        """Test that common factors are removed and signs kept."""
        assert primitive((4, -6, 2)) == (2, -3, 1)

    def test_rational_input(self):
        """Test that rational directions are scaled to integers first."""
        assert primitive((Fraction(1, 2), Fraction(1, 3))) == (3, 2)

    def test_zero_vector(self):
        """Test that the zero vector has no primitive direction."""
        with pytest.raises(ZeroVectorError):
            primitive((0, 0, 0))


class TestHermiteNormalForm:
    """Tests for the row-style Hermite normal form."""

    def test_worked_example(self):
        """Test the two-by-two example with a nontrivial pivot."""
        h, u = hermite_normal_form(IntegerMatrix.of([[2, 4], [1, 1]]))
        assert h.rows == ((1, 1), (0, 2))
        assert abs(u.det()) == 1

    def test_transform_reproduces_form(self):
        """Test H = U A with U unimodular on random matrices."""
        rng = random.Random(7)
        for _ in range(30):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            a = IntegerMatrix.of(
                [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)], n
            )
            h, u = hermite_normal_form(a)
            assert u @ a == h
            assert abs(u.det()) == 1
            assert h.rank() == a.rank()

    def test_echelon_shape(self):
        """Test positive pivots with reduced entries above them."""
        h, _ = hermite_normal_form(IntegerMatrix.of([[3, 5, 1], [6, 1, 4], [0, 2, 2]]))
        lead_col = -1
        for i, row in enumerate(h.rows):
            if not any(row):
                continue
            col = next(j for j, c in enumerate(row) if c)
            assert col > lead_col
            assert row[col] > 0
            for above in h.rows[:i]:
                assert 0 <= above[col] < row[col]
            lead_col = col


class TestKernelsAndSpans:
    """Tests for integer kernels and lattice bases of spans."""

    def test_integer_kernel(self):
        """Test that kernel vectors are annihilated by the matrix."""
        rows = [[1, 2, 3], [2, 4, 7]]
        kernel = integer_kernel(rows, 3)
        assert len(kernel) == 1
        for v in kernel:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)

    def test_saturated_span_basis(self):
        """Test that the span basis of (2, 0) and (0, 2) is the whole lattice."""
        basis = lattice_basis_of_span([(2, 0), (0, 2)])
        assert abs(determinant(basis)) == 1

    def test_line_basis(self):
        """Test that a line through (2, 4) has primitive generator (1, 2)."""
        assert lattice_basis_of_span([(2, 4)]) == [(1, 2)]

    def test_zero_span(self):
        """Test the empty basis of the zero subspace."""
        assert lattice_basis_of_span([(0, 0)]) == []


class TestRationalAlgebra:
    """Tests for rank, determinant, inverse and coordinates."""

    def test_rank(self):
        """Test rank of a dependent set."""
        assert rank([[1, 2], [2, 4], [0, 0]]) == 1

    def test_determinant(self):
        """Test determinant including a row swap."""
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant([[2, 1], [1, 1]]) == 1

    def test_inverse(self):
        """Test the exact inverse and singular input."""
        assert inverse([[2, 0], [0, 4]]) == [
            [Fraction(1, 2), 0],
            [0, Fraction(1, 4)],
        ]
        with pytest.raises(ValueError):
            inverse([[1, 2], [2, 4]])

    def test_coordinates_in(self):
        """Test coordinates in a basis and rejection outside the span."""
        basis = [(1, 0, 1), (0, 1, 1)]
        assert coordinates_in(basis, (2, 3, 5)) == [2, 3]
        with pytest.raises(ValueError):
            coordinates_in(basis, (1, 1, 0))

    def test_row_echelon(self):
        """Test reduced rows, pivot columns and the dropped zero row."""
        reduced, pivots = row_echelon([[2, 4, 2], [1, 2, 3], [3, 6, 5]])
        assert pivots == [0, 2]
        assert reduced == [[1, 2, 0], [0, 0, 1]]
        assert row_echelon([]) == ([], [])

    def test_rational_kernel(self):
        """Test that kernel vectors are annihilated and span the right dimension."""
        rows = [[1, Fraction(1, 2), 3], [2, 1, 6]]
        kernel = rational_kernel(rows, 3)
        assert len(kernel) == 2
        for v in kernel:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
        assert rank(kernel) == 2
        assert rational_kernel([[1, 0], [0, 1]], 2) == []
        assert len(rational_kernel([], 3)) == 3

    def test_non_square_determinant(self):
        """Test that a determinant needs a square matrix."""
        with pytest.raises(DimensionMismatch):
            determinant([[1, 2, 3], [4, 5, 6]])
        assert determinant([]) == 1

    def test_random_inverse(self):
        """Test A times its inverse and det(A) det(A^-1) = 1 on random matrices."""
        rng = random.Random(11)
        for _ in range(30):
            n = rng.randint(1, 4)
            a = [
                [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
                for _ in range(n)
            ]
            if determinant(a) == 0:
                assert rank(a) < n
                with pytest.raises(ValueError):
                    inverse(a)
                continue
            inv = inverse(a)
            product = [
                [sum(a[i][k] * inv[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)
            ]
            assert product == [[int(i == j) for j in range(n)] for i in range(n)]
            assert determinant(a) * determinant(inv) == 1
            assert rank(a) == n

    def test_random_coordinates(self):
        """Test that coordinates reproduce random combinations of a basis."""
        rng = random.Random(13)
        basis = [(1, 0, 2, -1), (0, 3, 1, 1), (2, 1, 0, 0)]
        for _ in range(20):
            coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in basis]
            v = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(4)]
            assert coordinates_in(basis, v) == coeffs
