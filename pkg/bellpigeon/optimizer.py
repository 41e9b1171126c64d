"""Minimisation of the reduced Bell-operator coefficient and the theta scan."""

import logging
import math
from collections.abc import Callable

import numpy as np

from bellpigeon.bell import expectation, reduced_bell_operator
from bellpigeon.config import (
    DEFAULT_GRID_STEP_DEG,
    DEFAULT_REFINE_TOL,
    MAX_GRID_STEP_DEG,
    REFINE_MAX_ITERATIONS,
)
from bellpigeon.errors import RangeError
from bellpigeon.models import DensityOperator, ScanPoint
from bellpigeon.states import pauli_string

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def F(alpha: float, beta: float) -> float:
    """cos(alpha) + cos(beta) + cos(alpha)cos(beta) - sin(alpha)sin(beta).

    This is the Z(x)Z coefficient minus the X(x)X coefficient of the reduced
    Bell operator, i.e. its expectation on beta_00 (up to the cross terms).
    """
    return math.cos(alpha) + math.cos(beta) + math.cos(alpha + beta)


def golden_section(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> float:
    """Minimiser of a unimodal function on [lo, hi] to bracket width tol."""
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def minimize_F(
    grid_step: float = math.radians(DEFAULT_GRID_STEP_DEG),
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> tuple[float, float, float]:
    """Minimise F over [0, pi]^2 by a grid scan and coordinate-wise refinement.

    Args:
        grid_step: Grid spacing in radians, at most one degree
        refine_tol: Bracket width at which golden-section refinement stops

    Returns:
        (alpha, beta, value) at the minimum; ties on the grid resolve to the
        lowest alpha, then the lowest beta

    Raises:
        RangeError: If grid_step is not in (0, 1 deg] or refine_tol <= 0
    """
    if not 0.0 < grid_step <= math.radians(MAX_GRID_STEP_DEG) * (1.0 + 1e-12):
        raise RangeError(
            f"grid_step {grid_step} rad outside (0, {MAX_GRID_STEP_DEG} deg]"
        )
    if refine_tol <= 0.0:
        raise RangeError(f"refine_tol must be positive, got {refine_tol}")

    n_points = int(math.ceil(math.pi / grid_step - 1e-9)) + 1
    axis = np.linspace(0.0, math.pi, n_points)
    alphas, betas = np.meshgrid(axis, axis, indexing="ij")
    values = np.cos(alphas) + np.cos(betas) + np.cos(alphas + betas)
    # argmin returns the first minimum in row-major order: lowest alpha, then beta
    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    alpha, beta = float(axis[i]), float(axis[j])
    value = F(alpha, beta)
    logger.info(
        f"Grid minimum F({math.degrees(alpha):.3f}, {math.degrees(beta):.3f})"
        f" = {value:.12g}"
    )

    step = axis[1] - axis[0]
    for iteration in range(REFINE_MAX_ITERATIONS):
        previous = (alpha, beta)
        alpha = golden_section(
            lambda x: F(x, beta),
            max(0.0, alpha - step),
            min(math.pi, alpha + step),
            refine_tol,
        )
        beta = golden_section(
            lambda y: F(alpha, y),
            max(0.0, beta - step),
            min(math.pi, beta + step),
            refine_tol,
        )
        shift = max(abs(alpha - previous[0]), abs(beta - previous[1]))
        logger.debug(f"Refinement {iteration + 1}: shift {shift:.3e}")
        if shift <= refine_tol:
            break

    value = F(alpha, beta)
    logger.info(
        f"Refined minimum F({math.degrees(alpha):.6f}, {math.degrees(beta):.6f}) "
        f"= {value:.12g}"
    )
    return alpha, beta, value


def scan_curve(
    state: DensityOperator, theta_min: float, theta_max: float, step: float
) -> list[ScanPoint]:
    """Expectation of the reduced Bell operator along alpha = beta = theta.

    Args:
        state: Two-qubit density operator
        theta_min: First angle in radians
        theta_max: Last angle in radians (inclusive)
        step: Angle increment in radians

    Returns:
        One ScanPoint per theta = theta_min + k*step, with the Z(x)Z and X(x)X
        contributions reported separately

    Raises:
        RangeError: If step <= 0 or the range is empty or leaves [0, pi]
    """
    if step <= 0.0:
        raise RangeError(f"step must be positive, got {step}")
    if not 0.0 <= theta_min <= theta_max <= math.pi:
        raise RangeError(f"theta range [{theta_min}, {theta_max}] not within [0, pi]")

    zz = expectation(state, pauli_string(3, 3))
    xx = expectation(state, pauli_string(1, 1))

    count = int(math.floor((theta_max - theta_min) / step + 1e-9)) + 1
    points = []
    for k in range(count):
        theta = min(theta_min + k * step, theta_max)
        reduced = reduced_bell_operator(theta, theta)
        zz_part = reduced.coefficient("ZZ") * zz
        xx_part = reduced.coefficient("XX") * xx
        points.append(ScanPoint(theta, zz_part + xx_part, zz_part, xx_part))

    logger.debug(f"Scanned {len(points)} points")
    return points
