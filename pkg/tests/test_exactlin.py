"""Tests for exact linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tannakit.exactlin import (
    FieldSpec,
    Matrix,
    Scalar,
    block_diag,
    contains_columns,
    determinant,
    hstack,
    image_basis,
    inverse,
    invertible_in_span,
    is_invertible,
    joint_kernel,
    kernel_basis,
    kron,
    rank,
    rref,
    same_column_space,
    solve,
    tensor_permutation,
    vstack,
)
from tannakit.exceptions import DimensionMismatchError, SingularMatrixError, TannakitError

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)


def small_matrices(rows: int, cols: int) -> st.SearchStrategy[list[list[int]]]:
    return st.lists(
        st.lists(st.integers(min_value=-4, max_value=4), min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    )


class TestFieldSpec:
    """Test cases for field parsing and coercion."""

    @pytest.mark.unit
    @pytest.mark.parametrize("text", ["Q", "qq", " Q "])
    def test_parse_rationals(self, text):
        """Test parsing the rational field."""
        assert FieldSpec.parse(text) == QQ

    @pytest.mark.unit
    @pytest.mark.parametrize("text", ["F5", "Fp5", "GF(5)", "f5"])
    def test_parse_prime(self, text):
        """Test the accepted spellings of F5."""
        assert FieldSpec.parse(text) == FieldSpec.prime(5)

    @pytest.mark.unit
    def test_parse_rejects_composite(self):
        """Test that F6 is not a field."""
        with pytest.raises(TannakitError):
            FieldSpec.parse("F6")

    @pytest.mark.unit
    def test_parse_rejects_garbage(self):
        """Test an unrecognised field spec."""
        with pytest.raises(TannakitError):
            FieldSpec.parse("R")

    @pytest.mark.unit
    def test_coerce_fraction_into_prime_field(self):
        """Test that 1/2 maps to the inverse of 2 mod 7."""
        assert F7.coerce("1/2") == 4
        assert F7.coerce(-1) == 6

    @pytest.mark.unit
    def test_coerce_rejects_bad_denominator(self):
        """Test that 1/7 has no image in F7."""
        with pytest.raises(TannakitError):
            F7.coerce(Fraction(1, 7))

    @pytest.mark.unit
    def test_divides(self):
        """Test the characteristic divisibility predicate."""
        assert FieldSpec.prime(3).divides(6)
        assert not FieldSpec.prime(3).divides(4)
        assert not QQ.divides(6)

    @pytest.mark.unit
    def test_scalar_normalizes(self):
        """Test that scalars are kept in lowest terms or reduced residues."""
        assert Scalar(Fraction(2, 4), QQ).value == Fraction(1, 2)
        assert Scalar(9, F7).value == 2
        assert Scalar(7, F7).is_zero()


class TestMatrix:
    """Test cases for the Matrix type."""

    @pytest.mark.unit
    def test_entries_are_fractions_over_q(self):
        """Test that rational entries are stored exactly."""
        m = Matrix.from_rows([[1, "1/3"]], QQ)
        assert m[0, 1] == Fraction(1, 3)
        assert isinstance(m[0, 0], Fraction)

    @pytest.mark.unit
    def test_entries_reduced_mod_p(self):
        """Test that prime-field entries live in [0, p)."""
        m = Matrix.from_rows([[8, -1]], F7)
        assert m.tolist() == [[1, 6]]

    @pytest.mark.unit
    def test_matmul_shape_mismatch(self):
        """Test composing incompatible shapes."""
        with pytest.raises(DimensionMismatchError):
            Matrix.identity(2, QQ) @ Matrix.identity(3, QQ)

    @pytest.mark.unit
    def test_field_mismatch(self):
        """Test combining matrices over different fields."""
        with pytest.raises(DimensionMismatchError):
            Matrix.identity(2, QQ) + Matrix.identity(2, F7)

    @pytest.mark.unit
    def test_reshape_and_flatten_are_row_major(self):
        """Test row-major vectorization."""
        m = Matrix.from_rows([[1, 2], [3, 4]], QQ)
        assert m.flatten().tolist() == [[1], [2], [3], [4]]
        assert m.flatten().reshape(2, 2) == m

    @pytest.mark.unit
    def test_first_nonzero(self):
        """Test the failure witness position."""
        m = Matrix.from_entries(2, 3, {(1, 2): 5}, QQ)
        assert m.first_nonzero() == (1, 2)
        assert Matrix.zeros(2, 2, QQ).first_nonzero() is None


class TestElimination:
    """Test cases for echelon forms, kernels and solving."""

    @pytest.mark.unit
    def test_rref(self):
        """Test the reduced row echelon form and pivots."""
        m = Matrix.from_rows([[2, 4, 2], [1, 2, 3]], QQ)
        reduced, pivots = rref(m)
        assert pivots == (0, 2)
        assert reduced == Matrix.from_rows([[1, 2, 0], [0, 0, 1]], QQ)

    @pytest.mark.unit
    def test_kernel_basis(self):
        """Test the kernel of a rank one matrix."""
        m = Matrix.from_rows([[1, 1, 1]], QQ)
        k = kernel_basis(m)
        assert k.cols == 2
        assert (m @ k).is_zero()

    @pytest.mark.unit
    def test_kernel_over_prime_field(self):
        """Test a kernel that exists only in characteristic 3."""
        m = Matrix.from_rows([[1, 1, 1], [1, 2, 0]], FieldSpec.prime(3))
        assert kernel_basis(m).cols == 1
        assert kernel_basis(Matrix.from_rows([[1, 1, 1], [1, 2, 0]], QQ)).cols == 1
        assert kernel_basis(Matrix.from_rows([[1, 1], [1, -2]], FieldSpec.prime(3))).cols == 1
        assert kernel_basis(Matrix.from_rows([[1, 1], [1, -2]], QQ)).cols == 0

    @pytest.mark.unit
    def test_joint_kernel_matches_stack(self):
        """Test that the joint kernel equals the kernel of the stacked blocks."""
        a = Matrix.from_rows([[1, 0, -1]], QQ)
        b = Matrix.from_rows([[0, 1, -1]], QQ)
        stacked = Matrix.from_rows([[1, 0, -1], [0, 1, -1]], QQ)
        assert joint_kernel([a, b], 3, QQ) == kernel_basis(stacked)

    @pytest.mark.unit
    def test_joint_kernel_rejects_width(self):
        """Test a block with the wrong number of columns."""
        with pytest.raises(DimensionMismatchError):
            joint_kernel([Matrix.identity(2, QQ)], 3, QQ)

    @pytest.mark.unit
    def test_solve_inconsistent(self):
        """Test that an inconsistent system has no solution."""
        a = Matrix.from_rows([[1, 1], [2, 2]], QQ)
        b = Matrix.from_rows([[1], [3]], QQ)
        assert solve(a, b) is None

    @pytest.mark.unit
    def test_inverse_and_singular(self):
        """Test inversion and the singular case."""
        m = Matrix.from_rows([[2, 1], [1, 1]], QQ)
        assert inverse(m) @ m == Matrix.identity(2, QQ)
        with pytest.raises(SingularMatrixError):
            inverse(Matrix.from_rows([[1, 2], [2, 4]], QQ))

    @pytest.mark.unit
    def test_determinant(self):
        """Test determinants over Q and F7."""
        assert determinant(Matrix.from_rows([[2, 1], [1, 1]], QQ)) == 1
        assert determinant(Matrix.from_rows([[0, 1], [1, 0]], QQ)) == -1
        assert determinant(Matrix.from_rows([[0, 1], [1, 0]], F7)) == 6

    @pytest.mark.unit
    def test_column_space_helpers(self):
        """Test column space comparison and membership."""
        a = Matrix.from_rows([[1, 2], [1, 2]], QQ)
        b = Matrix.from_rows([[3], [3]], QQ)
        assert same_column_space(a, b)
        assert image_basis(a).cols == 1
        assert contains_columns(b, Matrix.from_rows([[1], [1]], QQ))
        assert not contains_columns(b, Matrix.from_rows([[1], [0]], QQ))


class TestTensorHelpers:
    """Test cases for Kronecker products and factor permutations."""

    @pytest.mark.unit
    def test_kron_index_convention(self):
        """Test that (i, j) pairs map to i * dim2 + j."""
        a = Matrix.from_rows([[1], [2]], QQ)
        b = Matrix.from_rows([[3], [4]], QQ)
        assert kron(a, b).tolist() == [[3], [4], [6], [8]]

    @pytest.mark.unit
    def test_swap_permutation(self):
        """Test that the swap sends a (x) b to b (x) a."""
        a = Matrix.from_rows([[1], [2]], QQ)
        b = Matrix.from_rows([[3], [5], [7]], QQ)
        swap = tensor_permutation((2, 3), (1, 0), QQ)
        assert swap @ kron(a, b) == kron(b, a)

    @pytest.mark.unit
    def test_block_diag(self):
        """Test block diagonal assembly."""
        m = block_diag([Matrix.identity(1, QQ), Matrix.from_rows([[2, 3]], QQ)], QQ)
        assert m.tolist() == [[1, 0, 0], [0, 2, 3]]


F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


def diagonal_pair(field: FieldSpec) -> list[Matrix]:
    """diag(1, 0, 1) and diag(0, 1, 1): a combination c0, c1 is invertible iff c0, c1 and c0 + c1 are nonzero."""
    return [
        Matrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 1]], field),
        Matrix.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 1]], field),
    ]


def skew_basis(field: FieldSpec) -> list[Matrix]:
    """The alternating 3 x 3 matrices, all singular, with full joint row and column rank."""
    rows = [
        [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
    ]
    return [Matrix.from_rows(r, field) for r in rows]


class TestInvertibleSearch:
    """Test cases for finding an invertible matrix in a span."""

    @pytest.mark.unit
    @pytest.mark.parametrize("field", [QQ, F3, F7], ids=["Q", "F3", "F7"])
    def test_combination_of_singular_matrices(self, field):
        """Test a span whose basis is singular but which contains an invertible matrix."""
        found = invertible_in_span(diagonal_pair(field), 3, field)
        assert found is not None
        assert is_invertible(found)

    @pytest.mark.unit
    def test_singular_span_over_f2(self):
        """Test c0 + c1 = 0 for c0 = c1 = 1 leaves no invertible matrix over F2."""
        assert invertible_in_span(diagonal_pair(F2), 3, F2) is None

    @pytest.mark.unit
    @pytest.mark.parametrize("field", [QQ, F2, F3], ids=["Q", "F2", "F3"])
    def test_alternating_span(self, field):
        """Test odd alternating matrices are never invertible."""
        mats = skew_basis(field)
        assert rank(hstack(mats)) == rank(vstack(mats)) == 3
        assert invertible_in_span(mats, 3, field) is None

    @pytest.mark.unit
    def test_deficient_joint_rank(self):
        """Test a span killing a common vector."""
        mats = [Matrix.from_rows([[1, 0], [0, 0]], QQ), Matrix.from_rows([[0, 0], [1, 0]], QQ)]
        assert invertible_in_span(mats, 2, QQ) is None

    @pytest.mark.unit
    def test_basis_element_and_empty_cases(self):
        """Test an invertible basis element is returned and n = 0 gives the empty matrix."""
        ident = Matrix.identity(2, QQ)
        assert invertible_in_span([Matrix.zeros(2, 2, QQ), ident], 2, QQ) == ident
        assert invertible_in_span([], 2, QQ) is None
        assert invertible_in_span([], 0, QQ).shape == (0, 0)

    @pytest.mark.unit
    def test_wrong_shape(self):
        """Test matrices of the wrong size."""
        assert invertible_in_span([Matrix.identity(3, QQ)], 2, QQ) is None


class TestLinearAlgebraProperties:
    """Property tests for exact linear algebra identities."""

    @pytest.mark.property
    @settings(max_examples=40, deadline=None)
    @given(small_matrices(3, 4))
    def test_rank_nullity(self, rows):
        """Test rank plus nullity equals the number of columns."""
        m = Matrix.from_rows(rows, QQ)
        assert rank(m) + kernel_basis(m).cols == 4

    @pytest.mark.property
    @settings(max_examples=40, deadline=None)
    @given(small_matrices(3, 3), small_matrices(2, 2), small_matrices(3, 3), small_matrices(2, 2))
    def test_kron_mixed_product(self, a, b, c, d):
        """Test (A (x) B)(C (x) D) = AC (x) BD."""
        ma, mb, mc, md = (Matrix.from_rows(x, F7) for x in (a, b, c, d))
        assert kron(ma, mb) @ kron(mc, md) == kron(ma @ mc, mb @ md)

    @pytest.mark.property
    @settings(max_examples=40, deadline=None)
    @given(small_matrices(3, 3), small_matrices(3, 1))
    def test_solve_consistency(self, a, x):
        """Test that solving A y = A x returns a solution."""
        ma = Matrix.from_rows(a, QQ)
        mx = Matrix.from_rows(x, QQ)
        y = solve(ma, ma @ mx)
        assert y is not None
        assert ma @ y == ma @ mx

    @pytest.mark.property
    @settings(max_examples=40, deadline=None)
    @given(small_matrices(3, 3))
    def test_invertible_iff_nonzero_determinant(self, rows):
        """Test that invertibility agrees with the determinant."""
        m = Matrix.from_rows(rows, F7)
        assert is_invertible(m) == (determinant(m) != 0)
