"""PPT separability, the vanishing-trace identity and entanglement witnesses."""

import logging

import numpy as np

from bellpigeon.config import PSD_TOL, WERNER_BISECTION_WIDTH, ZERO_PROBABILITY_EPS
from bellpigeon.errors import DimensionError, RangeError
from bellpigeon.linalg import eigenvalues, outer, partial_transpose, tensor
from bellpigeon.models import DensityOperator, PptVerdict, Witness
from bellpigeon.states import bell, pauli_string, projector_of, rho_family, werner

logger = logging.getLogger(__name__)

MAX_SEPARABLE_TERMS = 4


def ppt_check(rho: DensityOperator) -> PptVerdict:
    """Positive-partial-transpose test on the second qubit.

    For two qubits PPT is equivalent to separability.

    Raises:
        DimensionError: If rho is not a two-qubit state
    """
    if rho.n_qubits != 2:
        raise DimensionError(f"PPT check needs a two-qubit state, got {rho.n_qubits}")
    smallest = float(eigenvalues(partial_transpose(rho.matrix, 2))[0])
    return PptVerdict(min_pt_eigenvalue=smallest, ppt=smallest >= -PSD_TOL)


def vanishing_trace(i: int, j: int) -> float:
    """1/4 trace((sigma_i (x) sigma_i)(sigma_j (x) sigma_j)), equal to delta_ij."""
    for index in (i, j):
        if index not in range(4):
            raise RangeError(f"Pauli index {index} outside 0..3")
    product = pauli_string(i, i) @ pauli_string(j, j)
    return 0.25 * float(np.trace(product).real)


def vanishing_trace_table() -> np.ndarray:
    """All 16 values of vanishing_trace as a 4x4 grid."""
    return np.array([[vanishing_trace(i, j) for j in range(4)] for i in range(4)])


def _bell_projectors() -> list[np.ndarray]:
    return [projector_of(bell(j, k)) for j in (0, 1) for k in (0, 1)]


def zero_event_table() -> np.ndarray:
    """trace(rho^+/-_Y |beta><beta|) for the four Bell states.

    Returns:
        2x4 grid; row 0 is rho^+_Y, row 1 is rho^-_Y, columns are
        beta_00, beta_01, beta_10, beta_11
    """
    rows = []
    for sign in ("+", "-"):
        rho = rho_family("Y", sign).matrix
        rows.append([float(np.trace(rho @ proj).real) for proj in _bell_projectors()])
    return np.array(rows)


def annihilates(axis: str, sign: str, j: int, k: int) -> bool:
    """Whether family member rho^sign_axis has zero overlap with beta_jk."""
    rho = rho_family(axis, sign).matrix
    overlap = float(np.trace(rho @ projector_of(bell(j, k))).real)
    return abs(overlap) <= ZERO_PROBABILITY_EPS


def witness_expectation(w: Witness, rho: DensityOperator) -> float:
    """trace(W rho); a negative value flags entanglement.

    Raises:
        DimensionError: If the witness and state dimensions differ
    """
    if w.matrix.shape != rho.matrix.shape:
        raise DimensionError(
            f"Witness {w.matrix.shape} does not match state {rho.matrix.shape}"
        )
    return float(np.trace(w.matrix @ rho.matrix).real)


def werner_witness() -> Witness:
    """W = 1/4 (I(x)I + Z(x)Z + X(x)X + Y(x)Y), i.e. half the SWAP operator."""
    matrix = 0.25 * sum(pauli_string(i, i) for i in range(4))
    return Witness(np.asarray(matrix), "werner")


def werner_ppt_threshold(width: float = WERNER_BISECTION_WIDTH) -> float:
    """Largest Werner weight p that still passes the PPT test, by bisection.

    The exact value is 1/3.
    """
    if width <= 0.0:
        raise RangeError(f"Bisection width must be positive, got {width}")
    lo, hi = 0.0, 1.0
    steps = 0
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if ppt_check(werner(mid)).ppt:
            lo = mid
        else:
            hi = mid
        steps += 1
    threshold = 0.5 * (lo + hi)
    logger.debug(f"Werner PPT threshold {threshold:.10f} after {steps} bisections")
    return threshold


def _haar_qubit(rng: np.random.Generator) -> np.ndarray:
    amps = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return amps / np.linalg.norm(amps)


def random_separable_state(
    rng: np.random.Generator, n_terms: int | None = None
) -> DensityOperator:
    """Convex mixture of Haar-random two-qubit product states.

    Args:
        rng: Random generator
        n_terms: Number of product states (1..4); drawn from rng when None

    Returns:
        Separable two-qubit density operator
    """
    if n_terms is None:
        n_terms = int(rng.integers(1, MAX_SEPARABLE_TERMS + 1))
    if not 1 <= n_terms <= MAX_SEPARABLE_TERMS:
        raise RangeError(f"n_terms {n_terms} outside [1, {MAX_SEPARABLE_TERMS}]")

    weights = rng.dirichlet(np.ones(n_terms))
    matrix = np.zeros((4, 4), dtype=np.complex128)
    for weight in weights:
        product = tensor(_haar_qubit(rng), _haar_qubit(rng))
        matrix += weight * outer(product, product)
    # Remove rounding asymmetry before validation
    matrix = 0.5 * (matrix + matrix.conj().T)
    return DensityOperator(2, matrix / np.trace(matrix).real)
