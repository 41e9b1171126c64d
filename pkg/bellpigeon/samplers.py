"""Monte Carlo samplers for local-hidden-variable models and Born-rule measurements.

LHV draws assign values to all three settings at once, so each draw can be
scored on every product. Quantum draws measure exactly two settings per pair
of particles; the three correlations therefore come from separate draws.
"""

import itertools
import logging
import math

import numpy as np
import numpy.typing as npt

from bellpigeon.bell import expectation, spin_observable
from bellpigeon.config import BORN_NEGATIVITY_TOL, MAX_QUBITS, MAX_SEED, STDERR_MARGIN
from bellpigeon.errors import (
    DistributionError,
    ModelError,
    RangeError,
    UnknownNameError,
)
from bellpigeon.linalg import tensor
from bellpigeon.models import (
    CampaignResult,
    DensityOperator,
    Direction3,
    InequalityId,
    MeasurementSetup,
    PairStats,
    SampleStats,
    ViolationReport,
)
from bellpigeon.states import I2

logger = logging.getLogger(__name__)

# Sign pattern of each of the 8 deterministic assignments (a, b, c)
ASSIGNMENTS = np.array(list(itertools.product((1, -1), repeat=3)), dtype=np.int64)
MODES = ("pm1", "pmi")
_PAIR_COLUMNS = (("a", "b", 0, 1), ("a", "c", 0, 2), ("b", "c", 1, 2))
_OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_DIST_TOL = 1e-12


def substream(seed: int, ordinal: int) -> np.random.Generator:
    """Independent PCG64 stream for one (seed, ordinal) pair.

    Streams with different ordinals never overlap, so campaigns can assign one
    per setting pair and stay reproducible however they are scheduled.
    """
    if not 0 <= seed <= MAX_SEED:
        raise RangeError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if ordinal < 0:
        raise RangeError(f"Substream ordinal must be >= 0, got {ordinal}")
    sequence = np.random.SeedSequence(seed, spawn_key=(ordinal,))
    return np.random.Generator(np.random.PCG64(sequence))


def _stderr(e: float, n: int) -> float:
    return math.sqrt(max(0.0, 1.0 - e * e) / n)


def _check_count(n: int) -> None:
    if n < 1:
        raise RangeError(f"Sample count must be >= 1, got {n}")


def _check_distribution(dist: npt.ArrayLike) -> np.ndarray:
    probs = np.asarray(dist, dtype=np.float64)
    if probs.shape != (8,):
        raise DistributionError(
            f"Need 8 assignment probabilities, got shape {probs.shape}"
        )
    if not np.all(np.isfinite(probs)) or np.any(probs < 0.0):
        raise DistributionError("Assignment probabilities must be finite and >= 0")
    total = float(probs.sum())
    if abs(total - 1.0) > _DIST_TOL:
        raise DistributionError(f"Assignment probabilities sum to {total!r}, not 1")
    return probs / total


def random_lhv_distribution(rng: np.random.Generator) -> np.ndarray:
    """Uniformly random distribution over the 8 deterministic assignments."""
    return rng.dirichlet(np.ones(len(ASSIGNMENTS)))


def lhv_sample(
    dist: npt.ArrayLike, n: int, seed: int, mode: str = "pm1"
) -> SampleStats:
    """Draw n hidden-variable assignments and score all three products per draw.

    Args:
        dist: Probabilities of the 8 assignments in itertools.product order
        n: Number of draws
        seed: Root seed
        mode: "pm1" for values +/-1; "pmi" for values +/-i, whose products
            are the negated sign products

    Returns:
        SampleStats including the set of distinct per-draw sums

    Raises:
        DistributionError: If dist is not a probability vector over 8 entries
    """
    probs = _check_distribution(dist)
    _check_count(n)
    if mode not in MODES:
        raise UnknownNameError(f"Unknown LHV mode {mode!r}")

    rng = substream(seed, 0)
    signs = ASSIGNMENTS[rng.choice(len(ASSIGNMENTS), size=n, p=probs)]
    # (+/-i)(+/-i) = -(+/-1)(+/-1)
    factor = 1 if mode == "pm1" else -1

    pairs = []
    per_draw = np.zeros(n, dtype=np.int64)
    for label_a, label_b, col_a, col_b in _PAIR_COLUMNS:
        products = factor * signs[:, col_a] * signs[:, col_b]
        per_draw += products
        e = float(products.mean())
        pairs.append(
            PairStats(
                setting_a=label_a,
                setting_b=label_b,
                n=n,
                e=e,
                stderr=_stderr(e, n),
                mean_a=float(signs[:, col_a].mean()),
                mean_b=float(signs[:, col_b].mean()),
            )
        )

    draw_sums = frozenset(float(value) for value in np.unique(per_draw))
    logger.debug(f"LHV sample ({mode}, n={n}): per-draw sums {sorted(draw_sums)}")
    return SampleStats(n=n, pairs=(pairs[0], pairs[1], pairs[2]), draw_sums=draw_sums)


def born_probabilities(
    state: DensityOperator, da: Direction3, db: Direction3
) -> np.ndarray:
    """P(s, t) for outcomes (+,+), (+,-), (-,+), (-,-) of a.sigma and b.sigma.

    Raises:
        ModelError: If any probability is below -BORN_NEGATIVITY_TOL
    """
    spin_a, spin_b = spin_observable(da), spin_observable(db)
    probs = np.array(
        [
            expectation(state, tensor(0.5 * (I2 + s * spin_a), 0.5 * (I2 + t * spin_b)))
            for s, t in _OUTCOMES
        ]
    )
    if np.any(probs < -BORN_NEGATIVITY_TOL):
        raise ModelError(f"Negative Born probability {probs.min():.3e}; invalid state")
    if np.any(probs < 0.0):
        logger.warning(f"Clipping Born probabilities {probs} to be nonnegative")
    probs = np.where(probs < BORN_NEGATIVITY_TOL, 0.0, probs)
    return probs / probs.sum()


def quantum_sample(
    state: DensityOperator,
    da: Direction3,
    db: Direction3,
    n: int,
    seed: int,
    labels: tuple[str, str] = ("a", "b"),
    ordinal: int = 0,
) -> PairStats:
    """Sample n outcome pairs of measuring a.sigma and b.sigma on fresh copies of state.

    Args:
        state: Two-qubit density operator
        da: Direction measured on the first particle
        db: Direction measured on the second particle
        n: Number of draws
        seed: Root seed
        labels: Setting names recorded in the result
        ordinal: Substream index

    Returns:
        PairStats for the empirical correlation of s*t
    """
    _check_count(n)
    probs = born_probabilities(state, da, db)
    rng = substream(seed, ordinal)
    draws = rng.choice(len(_OUTCOMES), size=n, p=probs)
    outcomes = np.array(_OUTCOMES, dtype=np.int64)[draws]
    s, t = outcomes[:, 0], outcomes[:, 1]
    e = float((s * t).mean())
    return PairStats(
        setting_a=labels[0],
        setting_b=labels[1],
        n=n,
        e=e,
        stderr=_stderr(e, n),
        mean_a=float(s.mean()),
        mean_b=float(t.mean()),
    )


def _verdict(
    stats: SampleStats, inequality: InequalityId, settings: tuple[Direction3, ...]
) -> ViolationReport:
    total = stats.total
    margin = STDERR_MARGIN * stats.total_stderr
    return ViolationReport(
        inequality=inequality,
        value=total,
        bound=inequality.bound,
        violated=inequality.is_violated(total, margin),
        settings=settings,
    )


def campaign(
    state: DensityOperator, setup: MeasurementSetup, n_per_pair: int, seed: int
) -> CampaignResult:
    """Measure the pairs (a,b), (a,c), (b,c) on separate draws and test the sum.

    The verdict uses the lower pigeonhole bound for a negative sum and the
    upper one otherwise, with a margin of STDERR_MARGIN standard errors.
    """
    directions = dict(zip(("a", "b", "c"), setup.directions()))
    logger.info(f"Quantum campaign: {n_per_pair} draws per pair, seed {seed}")
    pairs = [
        quantum_sample(
            state,
            directions[label_a],
            directions[label_b],
            n_per_pair,
            seed,
            labels=(label_a, label_b),
            ordinal=ordinal,
        )
        for ordinal, (label_a, label_b, _, _) in enumerate(_PAIR_COLUMNS)
    ]
    stats = SampleStats(n=n_per_pair, pairs=(pairs[0], pairs[1], pairs[2]))
    if stats.total < 0:
        inequality = InequalityId.PIGEON_LOWER
    else:
        inequality = InequalityId.PIGEON_UPPER
    report = _verdict(stats, inequality, setup.directions())
    logger.info(
        f"Campaign sum {stats.total:.6f} +/- {stats.total_stderr:.6f}, "
        f"violated={report.violated}"
    )
    return CampaignResult(stats=stats, report=report, seed=seed)


def lhv_campaign(
    dist: npt.ArrayLike, n: int, seed: int, mode: str = "pm1"
) -> CampaignResult:
    """LHV counterpart of campaign, tested against the bound the mode obeys.

    Values +/-1 satisfy ab + ac + bc >= -1; values +/-i satisfy ab + ac + bc <= 1.
    """
    stats = lhv_sample(dist, n, seed, mode)
    if mode == "pm1":
        inequality = InequalityId.PIGEON_LOWER
    else:
        inequality = InequalityId.PIGEON_UPPER
    report = _verdict(stats, inequality, ())
    logger.info(
        f"LHV campaign ({mode}): sum {stats.total:.6f}, violated={report.violated}"
    )
    return CampaignResult(stats=stats, report=report, seed=seed)


def box_assignment_minimum(n: int) -> int:
    """Fewest same-box pairs over every placement of n particles in two boxes.

    Any n >= 3 gives at least one pair sharing a box.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise RangeError(f"Particle count {n} outside [1, {MAX_QUBITS}]")
    best = None
    for boxes in itertools.product((0, 1), repeat=n):
        shared = sum(
            1 for i, j in itertools.combinations(range(n), 2) if boxes[i] == boxes[j]
        )
        best = shared if best is None else min(best, shared)
    return int(best or 0)
