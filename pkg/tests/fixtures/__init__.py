"""Shared helpers for the test suite."""

import numpy as np
import numpy.typing as npt


def assert_close(
    actual: npt.ArrayLike, expected: npt.ArrayLike, tol: float = 1e-12
) -> None:
    """Assert entrywise |actual - expected| <= tol."""
    diff = np.max(np.abs(np.asarray(actual) - np.asarray(expected)))
    assert diff <= tol, f"max deviation {diff:.3e} exceeds {tol:.0e}"


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random complex Hermitian matrix with entries of order one."""
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_amplitudes(rng: np.random.Generator, n_qubits: int) -> np.ndarray:
    """Random normalised state vector of n_qubits."""
    dim = 2**n_qubits
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return amps / np.linalg.norm(amps)


def same_up_to_phase(u: npt.ArrayLike, v: npt.ArrayLike, tol: float = 1e-8) -> bool:
    """Whether two normalised vectors agree up to a global phase."""
    return bool(1.0 - abs(np.vdot(np.asarray(u), np.asarray(v))) ** 2 <= tol)
