"""Dense complex linear algebra for small qubit systems.

Basis convention: for a product |ab> the left factor is most significant, so
row index r = r_a * dim(b) + r_b. ``numpy.kron`` follows the same order.
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from bellpigeon.config import EIG_MAX_SWEEPS, EIG_TOL
from bellpigeon.errors import (
    ConvergenceError,
    DimensionError,
    HermitianityError,
    RangeError,
)

logger = logging.getLogger(__name__)

CVector = npt.NDArray[np.complex128]
CMatrix = npt.NDArray[np.complex128]


def _require_finite(array: npt.NDArray[np.complex128], what: str) -> None:
    if not np.all(np.isfinite(array)):
        raise RangeError(f"{what} contains NaN or Inf entries")


def as_vector(values: npt.ArrayLike) -> CVector:
    """Coerce input to a finite, non-empty complex vector."""
    vec = np.asarray(values, dtype=np.complex128)
    if vec.ndim != 1 or vec.shape[0] < 1:
        raise DimensionError(f"Expected a non-empty vector, got shape {vec.shape}")
    _require_finite(vec, "Vector")
    return vec


def as_matrix(values: npt.ArrayLike) -> CMatrix:
    """Coerce input to a finite, square complex matrix."""
    mat = np.asarray(values, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
        raise DimensionError(f"Expected a square matrix, got shape {mat.shape}")
    _require_finite(mat, "Matrix")
    return mat


def frozen(array: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Return a read-only copy of an array."""
    out = np.array(array, copy=True)
    out.setflags(write=False)
    return out


def max_abs(array: npt.ArrayLike) -> float:
    """Max-norm of an array (0.0 for empty input)."""
    arr = np.asarray(array)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def tensor(a: npt.ArrayLike, b: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Kronecker product of two vectors or two square matrices.

    Args:
        a: Left (most significant) factor
        b: Right factor

    Returns:
        Vector of length dim(a)*dim(b) or matrix of that dimension

    Raises:
        DimensionError: If one argument is a vector and the other a matrix
    """
    left = np.asarray(a, dtype=np.complex128)
    right = np.asarray(b, dtype=np.complex128)
    if left.ndim != right.ndim:
        raise DimensionError("Cannot tensor a vector with a matrix")
    if left.ndim == 1:
        return np.kron(as_vector(left), as_vector(right))
    return np.kron(as_matrix(left), as_matrix(right))


def tensor_all(*factors: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Fold ``tensor`` over one or more factors, left to right."""
    if not factors:
        raise DimensionError("tensor_all needs at least one factor")
    result = np.asarray(factors[0], dtype=np.complex128)
    for factor in factors[1:]:
        result = tensor(result, factor)
    return result


def mul(a: npt.ArrayLike, b: npt.ArrayLike) -> CMatrix:
    """Matrix product of two conformable square matrices."""
    left, right = as_matrix(a), as_matrix(b)
    if left.shape != right.shape:
        raise DimensionError(f"Cannot multiply {left.shape} by {right.shape}")
    return left @ right


def adjoint(a: npt.ArrayLike) -> CMatrix:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def trace(a: npt.ArrayLike) -> complex:
    """Matrix trace."""
    return complex(np.trace(as_matrix(a)))


def inner(u: npt.ArrayLike, v: npt.ArrayLike) -> complex:
    """Inner product <u|v>, conjugate-linear in the first argument."""
    left, right = as_vector(u), as_vector(v)
    if left.shape != right.shape:
        raise DimensionError(f"Cannot take <{left.shape}|{right.shape}>")
    return complex(np.vdot(left, right))


def outer(u: npt.ArrayLike, v: npt.ArrayLike) -> CMatrix:
    """Outer product |u><v|."""
    left, right = as_vector(u), as_vector(v)
    if left.shape != right.shape:
        raise DimensionError(f"Cannot take |{left.shape}><{right.shape}|")
    return np.outer(left, right.conj())


def apply(m: npt.ArrayLike, v: npt.ArrayLike) -> CVector:
    """Matrix-vector product."""
    mat, vec = as_matrix(m), as_vector(v)
    if mat.shape[1] != vec.shape[0]:
        raise DimensionError(f"Cannot apply {mat.shape} to {vec.shape}")
    return mat @ vec


def hermiticity_defect(m: npt.ArrayLike) -> float:
    """Return ||m - m^dagger||_max."""
    mat = as_matrix(m)
    return max_abs(mat - mat.conj().T)


def _off_diagonal_norm(a: CMatrix) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _rotate(a: CMatrix, v: CMatrix, p: int, q: int) -> None:
    """Apply one complex Jacobi rotation zeroing a[p, q] in place."""
    b = a[p, q]
    r = abs(b)
    if r == 0.0:
        return

    # Phase-align the pivot, then a real Givens rotation diagonalises the block
    phase = b / r
    diff = (a[p, p] - a[q, q]).real
    # |theta| <= pi/4 keeps the cyclic sweep convergent
    if diff >= 0.0:
        theta = 0.5 * math.atan2(2.0 * r, diff)
    else:
        theta = 0.5 * math.atan2(-2.0 * r, -diff)
    c, s = math.cos(theta), math.sin(theta)
    g = np.array(
        [[c, -s], [s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128
    )

    cols = [p, q]
    a[:, cols] = a[:, cols] @ g
    a[cols, :] = g.conj().T @ a[cols, :]
    v[:, cols] = v[:, cols] @ g

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def hermitian_eigensystem(
    m: npt.ArrayLike, tol: float = EIG_TOL, max_sweeps: int = EIG_MAX_SWEEPS
) -> list[tuple[float, CVector]]:
    """Diagonalise a Hermitian matrix by cyclic complex Jacobi rotations.

    Args:
        m: Square Hermitian matrix
        tol: Hermiticity tolerance and off-diagonal convergence target
            (relative to ||m||_max)
        max_sweeps: Maximum number of cyclic sweeps

    Returns:
        List of (eigenvalue, eigenvector) pairs sorted by ascending eigenvalue;
        eigenvectors are orthonormal

    Raises:
        HermitianityError: If ||m - m^dagger||_max > tol
        ConvergenceError: If the off-diagonal norm does not fall below
            tol * ||m||_max
    """
    mat = as_matrix(m)
    defect = hermiticity_defect(mat)
    if defect > tol:
        raise HermitianityError(f"Matrix is not Hermitian (defect {defect:.3e})")

    a = 0.5 * (mat + mat.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max_abs(a)
    if scale == 0.0:
        return [(0.0, v[:, k].copy()) for k in range(n)]
    target = tol * scale

    sweeps = 0
    while _off_diagonal_norm(a) > target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_diagonal_norm(a):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
        sweeps += 1
        logger.debug(
            f"Jacobi sweep {sweeps}: off-diagonal norm {_off_diagonal_norm(a):.3e}"
        )

    values = np.diag(a).real
    order = np.argsort(values, kind="stable")
    return [(float(values[k]), v[:, k].copy()) for k in order]


def eigenvalues(m: npt.ArrayLike, tol: float = EIG_TOL) -> npt.NDArray[np.float64]:
    """Ascending eigenvalues of a Hermitian matrix."""
    return np.array([value for value, _ in hermitian_eigensystem(m, tol)])


def partial_transpose(m: npt.ArrayLike, subsystem: int = 2) -> CMatrix:
    """Transpose one tensor factor of a two-qubit operator.

    Args:
        m: 4x4 matrix
        subsystem: 1 for the left qubit, 2 for the right qubit

    Returns:
        Partially transposed 4x4 matrix

    Raises:
        DimensionError: If m is not 4x4
        RangeError: If subsystem is not 1 or 2
    """
    mat = as_matrix(m)
    if mat.shape != (4, 4):
        raise DimensionError(f"partial_transpose needs a 4x4 matrix, got {mat.shape}")
    if subsystem not in (1, 2):
        raise RangeError(f"subsystem must be 1 or 2, got {subsystem}")

    # Axes: (row_a, row_b, col_a, col_b)
    t = mat.reshape(2, 2, 2, 2)
    if subsystem == 2:
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return t.reshape(4, 4).copy()
