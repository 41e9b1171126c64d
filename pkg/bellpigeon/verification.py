"""Deterministic identity suite run by ``bellpigeon verify``."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from bellpigeon.bell import (
    chsh_max_form,
    deterministic_sums,
    eigenanalysis,
    equal_interval_setup,
    evaluate_inequality,
    maximal_violation_operator,
    original_bell_setup,
    pigeonhole_sum,
    reduced_bell_operator,
    xz_direction,
)
from bellpigeon.config import VIOLATION_TOL
from bellpigeon.errors import BellPigeonError
from bellpigeon.linalg import eigenvalues, inner, max_abs, partial_transpose
from bellpigeon.models import InequalityId
from bellpigeon.pigeonhole import (
    collapse,
    expectation,
    pair_amplitude,
    pigeonhole_report,
    postselect_probability,
    projector,
)
from bellpigeon.separability import (
    ppt_check,
    vanishing_trace_table,
    werner_witness,
    witness_expectation,
    zero_event_table,
)
from bellpigeon.states import (
    AXES,
    bell,
    bell_basis,
    density,
    ket_basic,
    postselected,
    postselected_mixture,
    product_ket,
    repeated_ket,
    rho_family,
    rho_family_mixture,
    so3_from_su2,
    su2_rotation,
    werner,
)

logger = logging.getLogger(__name__)

EIGENVECTOR_TOL = 1e-8
THETA_120 = 2.0 * math.pi / 3.0
FAMILY = [(axis, sign) for axis in AXES for sign in ("+", "-")]


@dataclass(frozen=True)
class CheckOutcome:
    """One identity check: its name, max residual and tolerance."""

    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        """Whether the residual is within tolerance."""
        return self.residual <= self.tol


class VerificationResult:
    """Container for identity check outcomes."""

    def __init__(self) -> None:
        """Initialize an empty result."""
        self.passed: bool = True
        self.messages: list[str] = []
        self.outcomes: list[CheckOutcome] = []

    def add(self, outcome: CheckOutcome) -> None:
        """Record one outcome with a pass/fail line."""
        self.outcomes.append(outcome)
        line = f"{outcome.name}: max residual {outcome.residual:.3e}"
        if outcome.passed:
            self.messages.append(f"✅ {line}")
            logger.debug(line)
        else:
            self.passed = False
            self.messages.append(f"❌ {line} (tol {outcome.tol:.0e})")
            logger.warning(f"Identity check failed: {line}")

    def all_passed(self) -> bool:
        """Check if all identities held."""
        return self.passed


def _bell_orthonormality() -> float:
    basis = bell_basis()
    gram = np.array([[inner(u.amplitudes, v.amplitudes) for v in basis] for u in basis])
    return max_abs(gram - np.eye(4))


def _projector_completeness() -> float:
    return max_abs(projector("same").matrix + projector("diff").matrix - np.eye(4))


def _projector_idempotent(label: str) -> Callable[[], float]:
    def check() -> float:
        p = projector(label).matrix
        return max_abs(p @ p - p)

    return check


def _projectors_orthogonal() -> float:
    return max_abs(projector("same").matrix @ projector("diff").matrix)


def _postselection_table() -> float:
    expected = {(0, 0): [0.0, 0.5, 0.5, 0.0], (0, 1): [0.5, 0.0, 0.0, 0.5]}
    residual = 0.0
    for (j, k), row in expected.items():
        for index, value in enumerate(row, start=1):
            actual = postselect_probability(postselected(index), bell(j, k))
            residual = max(residual, abs(actual - value))
    return residual


def _postselection_completeness() -> float:
    states = bell_basis() + [repeated_ket("plus", 2)]
    totals = [
        sum(postselect_probability(postselected(k), s) for k in range(1, 5))
        for s in states
    ]
    return max(abs(total - 1.0) for total in totals)


def _phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    return 1.0 - abs(inner(u, v)) ** 2


def _collapse_to(label: str, j: int, k: int) -> Callable[[], float]:
    def check() -> float:
        after = collapse(repeated_ket("plus", 2), projector(label))
        return max_abs(after.amplitudes - bell(j, k).amplitudes)

    return check


def _same_probability_half() -> float:
    return abs(expectation(repeated_ket("plus", 2), projector("same")) - 0.5)


def _pigeonhole_zero(n: int) -> Callable[[], float]:
    def check() -> float:
        return max(abs(result.amplitude) for _, result in pigeonhole_report(n))

    return check


def _pair_factorization() -> float:
    pre, post = repeated_ket("plus", 3), repeated_ket("plus_i", 3)
    amplitude = pair_amplitude(3, (1, 2), pre, post, "same").amplitude
    plus, plus_i = ket_basic("plus"), ket_basic("plus_i")
    factored = (
        inner(postselected(1).amplitudes, bell(0, 0).amplitudes)
        * inner(plus_i.amplitudes, plus.amplitudes)
        / math.sqrt(2.0)
    )
    return abs(amplitude - factored)


def _diff_label_probability() -> float:
    residual = 0.0
    for n in (2, 3, 4):
        expected = 0.25 * 0.5 ** (n - 2)
        for _, result in pigeonhole_report(n, "diff"):
            residual = max(residual, abs(result.probability - expected))
    return residual


def _family_dual_construction() -> float:
    return max(
        max_abs(rho_family(axis, sign).matrix - rho_family_mixture(axis, sign).matrix)
        for axis, sign in FAMILY
    )


def _postselected_mixture_matches_family() -> float:
    return max(
        max_abs(postselected_mixture(sign).matrix - rho_family("Y", sign).matrix)
        for sign in ("+", "-")
    )


def _family_ppt() -> float:
    worst = min(
        ppt_check(rho_family(axis, sign)).min_pt_eigenvalue for axis, sign in FAMILY
    )
    return max(0.0, -worst)


def _partial_transpose_swaps_y_family() -> float:
    plus, minus = rho_family("Y", "+").matrix, rho_family("Y", "-").matrix
    return max(
        max_abs(partial_transpose(plus, 2) - minus),
        max_abs(partial_transpose(minus, 2) - plus),
    )


def _bell_projectors_not_ppt() -> float:
    return max(abs(ppt_check(density(b)).min_pt_eigenvalue + 0.5) for b in bell_basis())


def _vanishing_trace() -> float:
    return max_abs(vanishing_trace_table() - np.eye(4))


def _zero_event_table() -> float:
    expected = np.array([[0.0, 0.5, 0.5, 0.0], [0.5, 0.0, 0.0, 0.5]])
    return max_abs(zero_event_table() - expected)


def _zero_event_rows() -> float:
    return max_abs(zero_event_table().sum(axis=1) - 1.0)


def _spectrum(op: np.ndarray, expected: list[float]) -> Callable[[], float]:
    def check() -> float:
        return max_abs(eigenvalues(op) - np.array(expected))

    return check


def _maximal_violation_eigenvectors() -> float:
    pairs = eigenanalysis(maximal_violation_operator())
    lowest, highest = pairs[0], pairs[-1]
    return max(
        _phase_distance(lowest.vector, bell(0, 0).amplitudes),
        _phase_distance(highest.vector, bell(1, 1).amplitudes),
    )


def _reduced_operator_120() -> float:
    reduced = reduced_bell_operator(THETA_120, THETA_120)
    return max(
        abs(reduced.coefficient("ZZ") + 0.75),
        abs(reduced.coefficient("XX") + 0.75),
    )


def _pigeonhole_sum_at_120(j: int, k: int, expected: float) -> Callable[[], float]:
    def check() -> float:
        value = pigeonhole_sum(density(bell(j, k)), equal_interval_setup(THETA_120))
        return abs(value - expected)

    return check


def _original_bell_contrast() -> float:
    singlet = density(bell(1, 1))
    flipped = original_bell_setup(THETA_120).directions()
    equal_spaced = equal_interval_setup(THETA_120).directions()
    violated = evaluate_inequality(InequalityId.ORIGINAL_BELL, singlet, flipped)
    equal = evaluate_inequality(InequalityId.ORIGINAL_BELL, singlet, equal_spaced)
    return max(abs(violated.value - 1.5), abs(equal.value + 0.5))


def _chsh_tsirelson() -> float:
    settings = (
        xz_direction(0.0),
        xz_direction(math.pi / 2.0),
        xz_direction(math.pi / 4.0),
        xz_direction(-math.pi / 4.0),
    )
    report = evaluate_inequality(InequalityId.CHSH, density(bell(0, 0)), settings)
    return abs(report.value - 2.0 * math.sqrt(2.0))


def _deterministic_sums(mode: str, allowed: tuple[float, float]) -> Callable[[], float]:
    def check() -> float:
        return max(
            min(abs(total - value) for value in allowed)
            for _, total in deterministic_sums(mode)
        )

    return check


def _werner_witness_line() -> float:
    w = werner_witness()
    return max(
        abs(witness_expectation(w, werner(p)) - (0.25 - 0.75 * p))
        for p in np.linspace(0.0, 1.0, 11)
    )


def _su2_to_so3() -> float:
    # exp(-i theta Y/2) carries Z to cos(theta) Z + sin(theta) X
    residual = 0.0
    for theta in np.linspace(-3.0, 3.0, 13):
        rotation = so3_from_su2(su2_rotation(theta, "Y"))
        expected = np.array([math.sin(theta), 0.0, math.cos(theta)])
        residual = max(
            residual,
            max_abs(rotation[:, 2] - expected),
            max_abs(rotation @ rotation.T - np.eye(3)),
            abs(np.linalg.det(rotation) - 1.0),
        )
    return residual


def _product_postselection() -> float:
    # phi_1 is the product |+i>|+i>
    built = product_ket([ket_basic("plus_i"), ket_basic("plus_i")])
    return max_abs(built.amplitudes - postselected(1).amplitudes)


def identity_checks() -> list[tuple[str, Callable[[], float], float]]:
    """All identity checks as (name, residual function, tolerance)."""
    sqrt8 = 2.0 * math.sqrt(2.0)
    tol = VIOLATION_TOL
    return [
        ("bell_basis_orthonormal", _bell_orthonormality, tol),
        ("projector_completeness", _projector_completeness, tol),
        ("projector_same_idempotent", _projector_idempotent("same"), tol),
        ("projector_diff_idempotent", _projector_idempotent("diff"), tol),
        ("projectors_orthogonal", _projectors_orthogonal, tol),
        ("same_box_probability_half", _same_probability_half, tol),
        ("collapse_same_gives_bell00", _collapse_to("same", 0, 0), tol),
        ("collapse_diff_gives_bell01", _collapse_to("diff", 0, 1), tol),
        ("postselection_table", _postselection_table, tol),
        ("postselection_completeness", _postselection_completeness, tol),
        ("postselected_product_form", _product_postselection, tol),
        ("pigeonhole_zero_n3", _pigeonhole_zero(3), tol),
        ("pigeonhole_zero_n4", _pigeonhole_zero(4), tol),
        ("pigeonhole_zero_n5", _pigeonhole_zero(5), tol),
        ("pair_amplitude_factorization", _pair_factorization, tol),
        ("diff_label_probability", _diff_label_probability, tol),
        ("family_dual_construction", _family_dual_construction, tol),
        ("postselected_mixture_is_y_family", _postselected_mixture_matches_family, tol),
        ("family_is_ppt", _family_ppt, tol),
        ("partial_transpose_swaps_y_family", _partial_transpose_swaps_y_family, tol),
        ("bell_projectors_not_ppt", _bell_projectors_not_ppt, tol),
        ("vanishing_trace_table", _vanishing_trace, tol),
        ("zero_event_table", _zero_event_table, tol),
        ("zero_event_rows_sum_to_one", _zero_event_rows, tol),
        (
            "maximal_violation_spectrum",
            _spectrum(maximal_violation_operator(), [-1.5, 0.0, 0.0, 1.5]),
            tol,
        ),
        (
            "maximal_violation_eigenvectors",
            _maximal_violation_eigenvectors,
            EIGENVECTOR_TOL,
        ),
        (
            "tsirelson_spectrum",
            _spectrum(chsh_max_form(), [-sqrt8, 0.0, 0.0, sqrt8]),
            tol,
        ),
        ("reduced_operator_at_120", _reduced_operator_120, tol),
        ("pigeonhole_sum_bell00_at_120", _pigeonhole_sum_at_120(0, 0, -1.5), tol),
        ("pigeonhole_sum_bell11_at_120", _pigeonhole_sum_at_120(1, 1, 1.5), tol),
        ("original_bell_contrast", _original_bell_contrast, tol),
        ("chsh_tsirelson_bell00", _chsh_tsirelson, tol),
        ("lhv_sums_pm1", _deterministic_sums("pm1", (-1.0, 3.0)), tol),
        ("lhv_sums_pmi", _deterministic_sums("pmi", (-3.0, 1.0)), tol),
        ("werner_witness_line", _werner_witness_line, tol),
        ("su2_to_so3_rotation", _su2_to_so3, tol),
    ]


def verify_identities() -> VerificationResult:
    """Run every identity check.

    A check that raises counts as failed with an infinite residual.
    """
    result = VerificationResult()
    for name, check, tol in identity_checks():
        try:
            residual = float(check())
        except BellPigeonError as e:
            logger.error(f"Identity check {name} raised: {e}")
            residual = math.inf
        result.add(CheckOutcome(name, residual, tol))

    failures = sum(1 for outcome in result.outcomes if not outcome.passed)
    logger.info(f"Verified {len(result.outcomes)} identities, {failures} failed")
    return result
