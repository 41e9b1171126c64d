"""Same-box/different-box projectors, collapse, and pre/postselected amplitudes.

Qubits are numbered 1..n from the most significant bit of the basis index.
"""

import itertools
import logging
import math

import numpy as np
import numpy.typing as npt

from bellpigeon.config import MAX_QUBITS, ZERO_PROBABILITY_EPS
from bellpigeon.errors import (
    DimensionError,
    RangeError,
    UnknownNameError,
    ZeroProbabilityError,
)
from bellpigeon.linalg import CVector, apply, as_matrix, as_vector, inner
from bellpigeon.models import Ket, Projector, SelectionResult
from bellpigeon.states import basis_ket, projector_of, repeated_ket

logger = logging.getLogger(__name__)

LABELS = ("same", "diff")


def projector(label: str) -> Projector:
    """Box projector on two particles.

    Pi_same = |00><00| + |11><11| finds both particles in the same box;
    Pi_diff = |01><01| + |10><10| finds them in different boxes.
    """
    if label == "same":
        bits = ("00", "11")
    elif label == "diff":
        bits = ("01", "10")
    else:
        raise UnknownNameError(f"Unknown projector label {label!r}")
    matrix = sum(projector_of(basis_ket(b)) for b in bits)
    return Projector(np.asarray(matrix), label)


def expectation(state: Ket, p: Projector) -> float:
    """<state|P|state> for a two-qubit state."""
    if state.n_qubits != 2:
        raise DimensionError(f"Projector acts on 2 qubits, state has {state.n_qubits}")
    return inner(state.amplitudes, apply(p.matrix, state.amplitudes)).real


def collapse(state: Ket, p: Projector, eps: float = ZERO_PROBABILITY_EPS) -> Ket:
    """Post-measurement state P|state> / sqrt(<state|P|state>).

    Raises:
        ZeroProbabilityError: If <state|P|state> <= eps
    """
    probability = expectation(state, p)
    if probability <= eps:
        raise ZeroProbabilityError(
            f"Projector {p.label!r} has probability {probability:.3e} on this state"
        )
    projected = apply(p.matrix, state.amplitudes) / math.sqrt(probability)
    # Renormalise to absorb rounding in the probability
    projected = projected / np.linalg.norm(projected)
    return Ket(state.n_qubits, projected)


def postselect_probability(post: Ket, state: Ket) -> float:
    """|<post|state>|**2.

    Raises:
        DimensionError: If the qubit counts differ
    """
    if post.n_qubits != state.n_qubits:
        raise DimensionError(
            f"Cannot postselect {state.n_qubits} qubits on {post.n_qubits}"
        )
    return abs(inner(post.amplitudes, state.amplitudes)) ** 2


def _check_pair(n: int, pair: tuple[int, int]) -> None:
    i, j = pair
    if not 1 <= i < j <= n:
        raise RangeError(
            f"Pair {pair} invalid for {n} particles (need 1 <= i < j <= n)"
        )


def apply_pair_operator(
    op: npt.ArrayLike, vector: npt.ArrayLike, n: int, pair: tuple[int, int]
) -> CVector:
    """Apply a 4x4 operator to qubits (i, j) of an n-qubit vector.

    The operator is embedded by basis-index arithmetic: for each basis index
    the bits of qubits i and j are read out, and the source index for every
    local input value is the same index with those two bits replaced.

    Args:
        op: 4x4 operator in the local |q_i q_j> basis
        vector: Amplitudes of length 2**n
        n: Number of qubits
        pair: 1-based qubit positions (i, j) with i < j

    Returns:
        (op on i, j (x) identity elsewhere) |vector>
    """
    _check_pair(n, pair)
    local_op = as_matrix(op)
    if local_op.shape != (4, 4):
        raise DimensionError(f"Pair operator must be 4x4, got {local_op.shape}")
    vec = as_vector(vector)
    if vec.shape[0] != 2**n:
        raise DimensionError(f"Vector of length {vec.shape[0]} is not {n} qubits")

    shift_i, shift_j = n - pair[0], n - pair[1]
    index = np.arange(2**n)
    bit_i = (index >> shift_i) & 1
    bit_j = (index >> shift_j) & 1
    local_row = 2 * bit_i + bit_j
    cleared = index & ~((1 << shift_i) | (1 << shift_j))

    out = np.zeros_like(vec)
    for local_col in range(4):
        source = cleared | ((local_col >> 1) << shift_i) | ((local_col & 1) << shift_j)
        out += local_op[local_row, local_col] * vec[source]
    return out


def pair_amplitude(
    n: int, pair: tuple[int, int], pre: Ket, post: Ket, label: str
) -> SelectionResult:
    """Amplitude <post| (Pi_label on pair (x) I elsewhere) |pre>.

    Raises:
        RangeError: If the pair is not 1 <= i < j <= n
        DimensionError: If pre or post is not an n-qubit state
    """
    if n < 2:
        raise RangeError(f"Need at least two particles, got {n}")
    if pre.n_qubits != n or post.n_qubits != n:
        raise DimensionError(
            f"Expected {n}-qubit states, got pre={pre.n_qubits} post={post.n_qubits}"
        )
    p = projector(label)
    projected = apply_pair_operator(p.matrix, pre.amplitudes, n, pair)
    amplitude = inner(post.amplitudes, projected)
    probability = min(1.0, abs(amplitude) ** 2)
    logger.debug(f"n={n} pair={pair} {label}: amplitude {amplitude:.3e}")
    return SelectionResult(amplitude=amplitude, probability=probability)


def pigeonhole_report(
    n: int, label: str = "same"
) -> list[tuple[tuple[int, int], SelectionResult]]:
    """Pair amplitudes for pre = |+>^n and post = |+i>^n over all C(n, 2) pairs.

    With label "same" every amplitude vanishes: no pair is ever found in the
    same box, which is the quantum pigeonhole effect.

    Returns:
        List of ((i, j), result) sorted lexicographically by pair
    """
    if not 2 <= n <= MAX_QUBITS:
        raise RangeError(f"Particle count {n} outside [2, {MAX_QUBITS}]")
    if label not in LABELS:
        raise UnknownNameError(f"Unknown projector label {label!r}")

    pre = repeated_ket("plus", n)
    post = repeated_ket("plus_i", n)
    report = [
        (pair, pair_amplitude(n, pair, pre, post, label))
        for pair in itertools.combinations(range(1, n + 1), 2)
    ]
    worst = max(abs(result.amplitude) for _, result in report)
    logger.info(
        f"Pigeonhole report n={n} label={label}: {len(report)} pairs, "
        f"max |amplitude| {worst:.3e}"
    )
    return report
