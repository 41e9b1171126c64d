"""Spin observables, correlations, Bell operators and the pigeonhole inequalities.

Measurement directions in the XZ-plane follow the fixed geometry
a = (0, 0, 1), b = (sin alpha, 0, cos alpha), c = (-sin beta, 0, cos beta).
"""

import itertools
import logging
import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from bellpigeon.config import VIOLATION_TOL
from bellpigeon.errors import ArityError, DimensionError, RangeError, UnknownNameError
from bellpigeon.linalg import CMatrix, hermitian_eigensystem, inner, tensor
from bellpigeon.models import (
    DensityOperator,
    Direction3,
    Eigenpair,
    InequalityId,
    MeasurementSetup,
    PauliTensor,
    ViolationReport,
)
from bellpigeon.states import PAULI, X, Z, bell

logger = logging.getLogger(__name__)

SQRT_TWO = math.sqrt(2.0)

_LHV_VALUES = {"pm1": (1.0, -1.0), "pmi": (1j, -1j)}


def _sigma_dot(vec: npt.ArrayLike) -> CMatrix:
    """v . sigma for any real 3-vector."""
    x, y, z = np.asarray(vec, dtype=np.float64)
    return x * PAULI[1] + y * PAULI[2] + z * PAULI[3]


def spin_observable(d: Direction3) -> CMatrix:
    """Spin observable d.sigma = d.x X + d.y Y + d.z Z (eigenvalues +/-1)."""
    return _sigma_dot(d.as_array())


def xz_direction(angle: float) -> Direction3:
    """Unit vector at angle (radians) from +Z towards +X."""
    return Direction3(math.sin(angle), 0.0, math.cos(angle))


def xz_setup(alpha: float, beta: float) -> MeasurementSetup:
    """Settings a, b, c in the XZ-plane; alpha = angle(a, b), beta = angle(a, c)."""
    return MeasurementSetup(
        a=xz_direction(0.0),
        b=xz_direction(alpha),
        c=xz_direction(-beta),
        plane="XZ",
    )


def equal_interval_setup(theta: float) -> MeasurementSetup:
    """XZ-plane setup with alpha = beta = theta; theta = 2pi/3 gives equal 120 deg."""
    return xz_setup(theta, theta)


def original_bell_setup(theta: float) -> MeasurementSetup:
    """Equal-interval setup with c replaced by c' = -c.

    At theta = 2pi/3 this puts a and b 120 deg apart and c' 60 deg from each.
    """
    setup = equal_interval_setup(theta)
    return MeasurementSetup(a=setup.a, b=setup.b, c=-setup.c, plane="XZ")


def _check_two_qubit(state: DensityOperator) -> None:
    if state.n_qubits != 2:
        raise DimensionError(f"Expected a two-qubit state, got {state.n_qubits} qubits")


def expectation(state: DensityOperator, operator: npt.ArrayLike) -> float:
    """Real part of trace(rho . operator)."""
    op = np.asarray(operator, dtype=np.complex128)
    if op.shape != state.matrix.shape:
        raise DimensionError(
            f"Operator {op.shape} does not match state {state.matrix.shape}"
        )
    return float(np.trace(state.matrix @ op).real)


def correlation(state: DensityOperator, da: Direction3, db: Direction3) -> float:
    """E(a, b) = trace(rho . (a.sigma (x) b.sigma)).

    The result is clamped to [-1 - VIOLATION_TOL, 1 + VIOLATION_TOL].
    """
    _check_two_qubit(state)
    value = expectation(state, tensor(spin_observable(da), spin_observable(db)))
    limit = 1.0 + VIOLATION_TOL
    return float(np.clip(value, -limit, limit))


def pigeonhole_sum(state: DensityOperator, setup: MeasurementSetup) -> float:
    """E(a, b) + E(a, c) + E(b, c)."""
    a, b, c = setup.directions()
    return sum(correlation(state, u, v) for u, v in ((a, b), (a, c), (b, c)))


def evaluate_inequality(
    inequality: InequalityId, state: DensityOperator, settings: Sequence[Direction3]
) -> ViolationReport:
    """Evaluate one Bell inequality on a state.

    Args:
        inequality: Which inequality to evaluate
        state: Two-qubit density operator
        settings: (a, b, c) for the three-setting inequalities, or
            (a, a', b, b') for CHSH

    Returns:
        ViolationReport with the value and whether it breaks the classical bound

    Raises:
        ArityError: If the number of settings does not match the inequality
    """
    if len(settings) != inequality.arity:
        raise ArityError(
            f"{inequality.value} takes {inequality.arity} settings, got {len(settings)}"
        )

    if inequality is InequalityId.CHSH:
        a, a_prime, b, b_prime = settings
        value = (
            correlation(state, a, b)
            + correlation(state, a, b_prime)
            + correlation(state, a_prime, b)
            - correlation(state, a_prime, b_prime)
        )
    elif inequality is InequalityId.ORIGINAL_BELL:
        a, b, c = settings
        value = (
            correlation(state, a, b)
            - correlation(state, a, c)
            - correlation(state, b, c)
        )
    else:
        a, b, c = settings
        value = sum(correlation(state, u, v) for u, v in ((a, b), (a, c), (b, c)))

    violated = inequality.is_violated(value, VIOLATION_TOL)
    logger.debug(f"{inequality.value}: value {value:.12g}, violated={violated}")
    return ViolationReport(
        inequality=inequality,
        value=value,
        bound=inequality.bound,
        violated=violated,
        settings=tuple(settings),
    )


def bell_operator(setup: MeasurementSetup) -> CMatrix:
    """a.sigma(x)b.sigma + a.sigma(x)c.sigma + b.sigma(x)c.sigma."""
    a, b, c = (spin_observable(d) for d in setup.directions())
    return tensor(a, b) + tensor(a, c) + tensor(b, c)


def reduced_bell_operator(alpha: float, beta: float) -> PauliTensor:
    """Bell operator of the XZ-plane setup with the Z(x)X and X(x)Z cross terms dropped.

    The cross terms are traceless against every Bell-diagonal state, so the
    reduced form has the same expectation on such states.

    Raises:
        RangeError: If alpha or beta lies outside [0, pi]
    """
    for name, angle in (("alpha", alpha), ("beta", beta)):
        if not 0.0 <= angle <= math.pi:
            raise RangeError(f"{name}={angle} outside [0, pi]")
    grid = np.zeros((4, 4))
    grid[3, 3] = math.cos(alpha) + math.cos(beta) + math.cos(alpha) * math.cos(beta)
    grid[1, 1] = -math.sin(alpha) * math.sin(beta)
    return PauliTensor(grid)


def chsh_operator(
    a: Direction3, a_prime: Direction3, b: Direction3, b_prime: Direction3
) -> CMatrix:
    """a.sigma (x) (b + b').sigma + a'.sigma (x) (b - b').sigma."""
    b_sum = b.as_array() + b_prime.as_array()
    b_diff = b.as_array() - b_prime.as_array()
    return tensor(spin_observable(a), _sigma_dot(b_sum)) + tensor(
        spin_observable(a_prime), _sigma_dot(b_diff)
    )


def chsh_max_form() -> CMatrix:
    """sqrt2 (Z(x)Z + X(x)X), the CHSH operator at Tsirelson-optimal settings."""
    return SQRT_TWO * (tensor(Z, Z) + tensor(X, X))


def maximal_violation_operator() -> CMatrix:
    """-3/4 (Z(x)Z + X(x)X), the reduced Bell operator at alpha = beta = 120 deg."""
    return -0.75 * (tensor(Z, Z) + tensor(X, X))


def eigenanalysis(op: npt.ArrayLike) -> list[Eigenpair]:
    """Diagonalise a two-qubit operator and match each eigenvector to a Bell state.

    Returns:
        Eigenpairs in ascending eigenvalue order
    """
    basis = {f"bell{j}{k}": bell(j, k).amplitudes for j in (0, 1) for k in (0, 1)}
    pairs = []
    for value, vector in hermitian_eigensystem(op):
        if vector.shape[0] != 4:
            raise DimensionError(
                f"Expected a 4x4 operator, got dimension {vector.shape[0]}"
            )
        overlaps = {
            label: abs(inner(amps, vector)) ** 2 for label, amps in basis.items()
        }
        label = max(overlaps, key=lambda name: overlaps[name])
        pairs.append(Eigenpair(value, vector, label, overlaps[label]))
    return pairs


def deterministic_sums(mode: str = "pm1") -> list[tuple[tuple[complex, ...], float]]:
    """Enumerate ab + ac + bc over all 8 deterministic assignments.

    Args:
        mode: "pm1" for values in {+1, -1}, "pmi" for values in {+i, -i}

    Returns:
        List of ((a, b, c), sum); the sums are {-1, 3} in "pm1" mode and
        {-3, 1} in "pmi" mode
    """
    if mode not in _LHV_VALUES:
        raise UnknownNameError(f"Unknown assignment mode {mode!r}")
    rows = []
    for a, b, c in itertools.product(_LHV_VALUES[mode], repeat=3):
        total = complex(a * b + a * c + b * c)
        rows.append(((complex(a), complex(b), complex(c)), total.real))
    return rows
