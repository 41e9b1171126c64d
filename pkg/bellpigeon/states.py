"""Named kets, Bell states, the separable Bell-mixture family and Pauli expansions.

Basis order: |ab> sits at index 2a + b. Pauli matrices use the standard
convention Y = [[0, -i], [i, 0]].
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from bellpigeon.config import HERMITIAN_TOL
from bellpigeon.errors import (
    DimensionError,
    HermitianityError,
    RangeError,
    UnknownNameError,
)
from bellpigeon.linalg import (
    CMatrix,
    as_matrix,
    hermiticity_defect,
    outer,
    tensor,
    tensor_all,
)
from bellpigeon.models import DensityOperator, Ket, PauliTensor

logger = logging.getLogger(__name__)

SQRT_HALF = 1.0 / math.sqrt(2.0)

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (I2, X, Y, Z)
AXES = {"X": 1, "Y": 2, "Z": 3}

for _matrix in PAULI:
    _matrix.setflags(write=False)

_BASIC_KETS = {
    "zero": (1.0, 0.0),
    "one": (0.0, 1.0),
    "plus": (SQRT_HALF, SQRT_HALF),
    "minus": (SQRT_HALF, -SQRT_HALF),
    "plus_i": (SQRT_HALF, 1j * SQRT_HALF),
    "minus_i": (SQRT_HALF, -1j * SQRT_HALF),
}

# Which two Bell states (j, k) mix into each family member
_FAMILY_BELL_PAIRS = {
    ("Z", "+"): ((0, 0), (1, 0)),
    ("X", "+"): ((0, 0), (0, 1)),
    ("Y", "+"): ((0, 1), (1, 0)),
    ("Y", "-"): ((0, 0), (1, 1)),
    ("X", "-"): ((1, 0), (1, 1)),
    ("Z", "-"): ((0, 1), (1, 1)),
}


def ket_basic(name: str) -> Ket:
    """Single-qubit named ket: zero, one, plus, minus, plus_i or minus_i."""
    if name not in _BASIC_KETS:
        raise UnknownNameError(
            f"Unknown ket {name!r}; choose from {', '.join(_BASIC_KETS)}"
        )
    return Ket(1, np.array(_BASIC_KETS[name], dtype=np.complex128))


def product_ket(kets: Sequence[Ket]) -> Ket:
    """Tensor product of kets, first factor most significant."""
    if not kets:
        raise RangeError("product_ket needs at least one factor")
    amps = tensor_all(*(k.amplitudes for k in kets))
    return Ket(sum(k.n_qubits for k in kets), amps)


def repeated_ket(name: str, n: int) -> Ket:
    """The n-fold product of one named single-qubit ket."""
    if n < 1:
        raise RangeError(f"Need at least one qubit, got {n}")
    return product_ket([ket_basic(name)] * n)


def basis_ket(bits: str) -> Ket:
    """Computational basis ket from a bit string such as "01"."""
    if not bits or any(b not in "01" for b in bits):
        raise UnknownNameError(f"Invalid bit string {bits!r}")
    amps = np.zeros(2 ** len(bits), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return Ket(len(bits), amps)


def bell(j: int, k: int) -> Ket:
    """Bell state beta_jk.

    beta_00 = (|00> + |11>)/sqrt2, beta_01 = (|01> + |10>)/sqrt2,
    beta_10 = (|00> - |11>)/sqrt2, beta_11 = (|01> - |10>)/sqrt2.
    """
    if j not in (0, 1) or k not in (0, 1):
        raise UnknownNameError(f"Bell indices must be bits, got ({j}, {k})")
    sign = -1.0 if j else 1.0
    amps = np.zeros(4, dtype=np.complex128)
    if k == 0:
        amps[0], amps[3] = SQRT_HALF, sign * SQRT_HALF
    else:
        amps[1], amps[2] = SQRT_HALF, sign * SQRT_HALF
    return Ket(2, amps)


def bell_basis() -> list[Ket]:
    """Bell states in the order beta_00, beta_01, beta_10, beta_11."""
    return [bell(j, k) for j in (0, 1) for k in (0, 1)]


def postselected(k: int) -> Ket:
    """Postselected product state phi_k, k = 1..4.

    phi_1 = |+i>|+i>, phi_2 = |+i>|-i>, phi_3 = |-i>|+i>, phi_4 = |-i>|-i>.
    """
    if k not in (1, 2, 3, 4):
        raise UnknownNameError(f"Postselected index must be 1..4, got {k}")
    first = "plus_i" if k in (1, 2) else "minus_i"
    second = "plus_i" if k in (1, 3) else "minus_i"
    return product_ket([ket_basic(first), ket_basic(second)])


def projector_of(ket: Ket) -> CMatrix:
    """Rank-one projector |k><k|."""
    return outer(ket.amplitudes, ket.amplitudes)


def density(ket: Ket) -> DensityOperator:
    """Pure-state density operator."""
    return DensityOperator(ket.n_qubits, projector_of(ket))


def maximally_mixed(n_qubits: int) -> DensityOperator:
    """I / 2**n."""
    dim = 2**n_qubits
    return DensityOperator(n_qubits, np.eye(dim, dtype=np.complex128) / dim)


def _check_family_key(axis: str, sign: str) -> None:
    if axis not in AXES or sign not in ("+", "-"):
        raise UnknownNameError(f"Unknown family member rho^{sign}_{axis}")


def rho_family(axis: str, sign: str) -> DensityOperator:
    """Separable family member 1/4 (I(x)I +/- A(x)A) for A in X, Y, Z.

    Args:
        axis: "X", "Y" or "Z"
        sign: "+" or "-"
    """
    _check_family_key(axis, sign)
    pauli = PAULI[AXES[axis]]
    factor = 1.0 if sign == "+" else -1.0
    matrix = 0.25 * (tensor(I2, I2) + factor * tensor(pauli, pauli))
    return DensityOperator(2, matrix)


def family_bell_pair(axis: str, sign: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """Indices (j, k) of the two Bell states mixed into a family member."""
    _check_family_key(axis, sign)
    return _FAMILY_BELL_PAIRS[(axis, sign)]


def rho_family_mixture(axis: str, sign: str) -> DensityOperator:
    """The same family member built as an equal mixture of two Bell projectors."""
    (j1, k1), (j2, k2) = family_bell_pair(axis, sign)
    matrix = 0.5 * (projector_of(bell(j1, k1)) + projector_of(bell(j2, k2)))
    return DensityOperator(2, matrix)


def postselected_mixture(sign: str) -> DensityOperator:
    """rho^+_Y = (phi_1 + phi_4)/2 or rho^-_Y = (phi_2 + phi_3)/2 as projectors."""
    if sign not in ("+", "-"):
        raise UnknownNameError(f"Unknown sign {sign!r}")
    first, second = (1, 4) if sign == "+" else (2, 3)
    matrix = 0.5 * (
        projector_of(postselected(first)) + projector_of(postselected(second))
    )
    return DensityOperator(2, matrix)


def werner(p: float) -> DensityOperator:
    """Werner state p |beta_11><beta_11| + (1 - p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"Werner weight p={p} outside [0, 1]")
    matrix = p * projector_of(bell(1, 1)) + (1.0 - p) * np.eye(4) / 4.0
    return DensityOperator(2, matrix)


def named_state(name: str) -> DensityOperator:
    """Two-qubit state by CLI name: bell00, bell01, bell10, bell11 or mixed."""
    if name == "mixed":
        return maximally_mixed(2)
    if len(name) == 6 and name.startswith("bell") and set(name[4:]) <= {"0", "1"}:
        return density(bell(int(name[4]), int(name[5])))
    raise UnknownNameError(f"Unknown state {name!r}")


def pauli_string(i: int, j: int) -> CMatrix:
    """sigma_i (x) sigma_j."""
    return tensor(PAULI[i], PAULI[j])


def to_pauli(m: CMatrix) -> PauliTensor:
    """Expand a Hermitian 4x4 operator as sum c[i][j] sigma_i (x) sigma_j.

    Raises:
        HermitianityError: If m is not Hermitian within HERMITIAN_TOL
    """
    mat = as_matrix(m)
    if mat.shape != (4, 4):
        raise DimensionError(f"to_pauli needs a 4x4 matrix, got {mat.shape}")
    defect = hermiticity_defect(mat)
    if defect > HERMITIAN_TOL:
        raise HermitianityError(
            f"Cannot Pauli-expand non-Hermitian matrix ({defect:.3e})"
        )
    grid = np.empty((4, 4), dtype=np.float64)
    for i in range(4):
        for j in range(4):
            grid[i, j] = 0.25 * np.trace(pauli_string(i, j) @ mat).real
    return PauliTensor(grid)


def from_pauli(t: PauliTensor) -> CMatrix:
    """Rebuild the 4x4 operator from its Pauli coefficients."""
    result = np.zeros((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            if t.c[i, j] != 0.0:
                result += t.c[i, j] * pauli_string(i, j)
    return result


def su2_rotation(theta: float, axis: str) -> CMatrix:
    """exp(-i theta sigma/2) for sigma = X, Y or Z."""
    if axis not in AXES:
        raise UnknownNameError(f"Unknown rotation axis {axis!r}")
    return math.cos(theta / 2.0) * I2 - 1j * math.sin(theta / 2.0) * PAULI[AXES[axis]]


def so3_from_su2(u: CMatrix) -> np.ndarray:
    """Rotation P with U sigma_j U^dagger = sum_k P[k, j] sigma_k.

    Returns:
        3x3 real matrix indexed by (X, Y, Z)
    """
    mat = as_matrix(u)
    rotation = np.empty((3, 3), dtype=np.float64)
    for j in range(3):
        conjugated = mat @ PAULI[j + 1] @ mat.conj().T
        for k in range(3):
            rotation[k, j] = 0.5 * np.trace(PAULI[k + 1] @ conjugated).real
    return rotation
