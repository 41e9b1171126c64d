"""Tests for the linalg module."""

import numpy as np
import pytest

from bellpigeon.errors import (
    ConvergenceError,
    DimensionError,
    HermitianityError,
    RangeError,
)
from bellpigeon.linalg import (
    adjoint,
    as_matrix,
    as_vector,
    eigenvalues,
    frozen,
    hermitian_eigensystem,
    hermiticity_defect,
    inner,
    mul,
    outer,
    partial_transpose,
    tensor,
    tensor_all,
    trace,
)
from tests.fixtures import assert_close, random_hermitian


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomised checks."""
    return np.random.default_rng(20240611)


class TestCoercion:
    """Tests for input coercion helpers."""

    def test_vector_rejects_matrix(self) -> None:
        """Test a 2-D array is not accepted as a vector."""
        with pytest.raises(DimensionError):
            as_vector(np.eye(2))

    def test_matrix_rejects_non_square(self) -> None:
        """Test a 2x3 array is not accepted as a matrix."""
        with pytest.raises(DimensionError):
            as_matrix(np.zeros((2, 3)))

    def test_matrix_rejects_nan(self) -> None:
        """Test NaN entries are rejected."""
        with pytest.raises(RangeError):
            as_matrix([[np.nan, 0.0], [0.0, 1.0]])

    def test_frozen_is_read_only(self) -> None:
        """Test frozen copies cannot be written."""
        array = frozen(np.zeros(2, dtype=np.complex128))
        with pytest.raises(ValueError):
            array[0] = 1.0


class TestProducts:
    """Tests for tensor, matrix and inner products."""

    def test_tensor_left_factor_most_significant(self) -> None:
        """Test |0> (x) |1> lands at index 1 and |1> (x) |0> at index 2."""
        zero, one = np.array([1.0, 0.0]), np.array([0.0, 1.0])
        assert_close(tensor(zero, one), [0, 1, 0, 0])
        assert_close(tensor(one, zero), [0, 0, 1, 0])

    def test_tensor_rejects_vector_with_matrix(self) -> None:
        """Test mixing a vector and a matrix raises."""
        with pytest.raises(DimensionError):
            tensor(np.array([1.0, 0.0]), np.eye(2))

    def test_tensor_all_three_factors(self) -> None:
        """Test folding three qubits gives an 8-entry vector."""
        plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
        result = tensor_all(plus, plus, plus)
        assert result.shape == (8,)
        assert_close(result, np.full(8, 1.0 / np.sqrt(8.0)))

    def test_tensor_all_requires_factor(self) -> None:
        """Test an empty product raises."""
        with pytest.raises(DimensionError):
            tensor_all()

    def test_mul_shape_mismatch(self) -> None:
        """Test multiplying 2x2 by 4x4 raises."""
        with pytest.raises(DimensionError):
            mul(np.eye(2), np.eye(4))

    def test_inner_is_conjugate_linear_in_first_argument(self) -> None:
        """Test <+i|+> = (1 - i)/2."""
        plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
        plus_i = np.array([1.0, 1j]) / np.sqrt(2.0)
        assert inner(plus_i, plus) == pytest.approx((1 - 1j) / 2)

    def test_outer_and_trace(self) -> None:
        """Test trace(|u><u|) = 1 for a unit vector."""
        u = np.array([0.6, 0.8j])
        assert trace(outer(u, u)) == pytest.approx(1.0)

    def test_adjoint_and_defect(self) -> None:
        """Test a Hermitian matrix has zero defect and equals its adjoint."""
        m = np.array([[1.0, 2 - 1j], [2 + 1j, -3.0]])
        assert_close(adjoint(m), m)
        assert hermiticity_defect(m) == 0.0
        assert hermiticity_defect([[0.0, 1.0], [0.0, 0.0]]) == 1.0


class TestHermitianEigensystem:
    """Tests for the Jacobi eigensolver."""

    def test_diagonal_matrix_sorted(self) -> None:
        """Test a diagonal matrix returns its diagonal in ascending order."""
        values = eigenvalues(np.diag([3.0, -1.0, 2.0]))
        assert_close(values, [-1.0, 2.0, 3.0])

    def test_pauli_y_spectrum(self) -> None:
        """Test Y has eigenvalues -1 and +1 with complex eigenvectors."""
        y = np.array([[0, -1j], [1j, 0]])
        pairs = hermitian_eigensystem(y)
        assert [round(value, 12) for value, _ in pairs] == [-1.0, 1.0]
        for value, vector in pairs:
            assert_close(y @ vector, value * vector, 1e-12)

    @pytest.mark.parametrize("dim", [2, 4, 8])
    def test_random_hermitian_matches_numpy(
        self, rng: np.random.Generator, dim: int
    ) -> None:
        """Test eigenvalues agree with numpy and V diag V^dagger rebuilds m."""
        m = random_hermitian(rng, dim)
        pairs = hermitian_eigensystem(m)
        values = np.array([value for value, _ in pairs])
        vectors = np.column_stack([vector for _, vector in pairs])

        assert_close(values, np.linalg.eigvalsh(m), 1e-10)
        assert_close(vectors.conj().T @ vectors, np.eye(dim), 1e-10)
        assert_close(vectors @ np.diag(values) @ vectors.conj().T, m, 1e-10)

    @pytest.mark.parametrize("scale", [1e-6, 1e-3, 1.0, 1e6])
    def test_reconstruction_relative_to_norm(
        self, rng: np.random.Generator, scale: float
    ) -> None:
        """Test ||m - V diag V^dagger||_max <= 10 tol ||m||_max at any scale."""
        tol = 1e-12
        m = scale * random_hermitian(rng, 16)
        pairs = hermitian_eigensystem(m, tol=tol)
        values = np.array([value for value, _ in pairs])
        vectors = np.column_stack([vector for _, vector in pairs])

        rebuilt = vectors @ np.diag(values) @ vectors.conj().T
        assert np.max(np.abs(m - rebuilt)) <= 10 * tol * np.max(np.abs(m))

    def test_zero_matrix(self) -> None:
        """Test the zero matrix returns zero eigenvalues and the standard basis."""
        pairs = hermitian_eigensystem(np.zeros((3, 3)))
        assert [value for value, _ in pairs] == [0.0, 0.0, 0.0]
        assert_close(np.column_stack([v for _, v in pairs]), np.eye(3))

    def test_rejects_non_hermitian(self) -> None:
        """Test a non-Hermitian input raises HermitianityError."""
        with pytest.raises(HermitianityError):
            hermitian_eigensystem([[0.0, 1.0], [0.0, 0.0]])

    def test_sweep_cap_raises(self) -> None:
        """Test a zero sweep budget cannot diagonalise X."""
        with pytest.raises(ConvergenceError):
            hermitian_eigensystem([[0.0, 1.0], [1.0, 0.0]], max_sweeps=0)


class TestPartialTranspose:
    """Tests for the partial transpose."""

    def test_bell_projector_becomes_half_swap(self) -> None:
        """Test PT of |beta_00><beta_00| is SWAP/2."""
        beta = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
        swap = np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=float
        )
        assert_close(partial_transpose(outer(beta, beta), 2), swap / 2.0)

    def test_involution(self, rng: np.random.Generator) -> None:
        """Test applying the partial transpose twice is the identity."""
        m = random_hermitian(rng, 4)
        assert_close(partial_transpose(partial_transpose(m, 1), 1), m)
        assert_close(partial_transpose(partial_transpose(m, 2), 2), m)

    def test_first_and_second_related_by_full_transpose(
        self, rng: np.random.Generator
    ) -> None:
        """Test PT_1(m) = PT_2(m)^T."""
        m = random_hermitian(rng, 4)
        assert_close(partial_transpose(m, 1), partial_transpose(m, 2).T)

    def test_bad_inputs(self) -> None:
        """Test wrong shape and subsystem raise."""
        with pytest.raises(DimensionError):
            partial_transpose(np.eye(2))
        with pytest.raises(RangeError):
            partial_transpose(np.eye(4), 3)
