"""Domain data structures: states, operators, settings and reports."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from bellpigeon.config import (
    DIRECTION_NORM_TOL,
    MAX_SEED,
    NORM_TOL,
    OUTPUT_FORMATS,
    PSD_TOL,
    STATE_NAMES,
)
from bellpigeon.errors import (
    DimensionError,
    HermitianityError,
    ModelError,
    NormError,
    RangeError,
    UnknownNameError,
)
from bellpigeon.linalg import (
    CMatrix,
    CVector,
    as_matrix,
    as_vector,
    eigenvalues,
    frozen,
    hermiticity_defect,
    trace,
)

logger = logging.getLogger(__name__)

PAULI_LABELS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class Ket:
    """Normalised pure state of n qubits.

    Attributes:
        n_qubits: Number of qubits
        amplitudes: Complex amplitudes of length 2**n_qubits (read-only)
    """

    n_qubits: int
    amplitudes: CVector

    def __post_init__(self) -> None:
        """Validate dimension and normalisation, then freeze the amplitudes."""
        amps = as_vector(self.amplitudes)
        if self.n_qubits < 1 or amps.shape[0] != 2**self.n_qubits:
            raise DimensionError(
                f"{self.n_qubits} qubits need {2 ** max(self.n_qubits, 0)} "
                f"amplitudes, got {amps.shape[0]}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise NormError(f"Ket norm is {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", frozen(amps))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator on n qubits.

    Attributes:
        n_qubits: Number of qubits
        matrix: 2**n x 2**n complex matrix (read-only)
    """

    n_qubits: int
    matrix: CMatrix

    def __post_init__(self) -> None:
        """Validate the density-operator invariants, then freeze the matrix."""
        mat = as_matrix(self.matrix)
        if self.n_qubits < 1 or mat.shape[0] != 2**self.n_qubits:
            raise DimensionError(
                f"{self.n_qubits} qubits need a {2 ** max(self.n_qubits, 0)}-dim "
                f"matrix, got {mat.shape}"
            )
        defect = hermiticity_defect(mat)
        if defect > NORM_TOL:
            raise HermitianityError(f"Density operator not Hermitian ({defect:.3e})")
        tr = trace(mat)
        if abs(tr - 1.0) > NORM_TOL:
            raise ModelError(f"Density operator trace is {tr}, expected 1")
        smallest = float(eigenvalues(mat)[0])
        if smallest < -PSD_TOL:
            raise ModelError(f"Density operator has eigenvalue {smallest:.3e} < 0")
        object.__setattr__(self, "matrix", frozen(mat))


@dataclass(frozen=True)
class PauliTensor:
    """Real coefficients c[i][j] of a two-qubit operator over sigma_i (x) sigma_j.

    Index order is sigma_0=I, sigma_1=X, sigma_2=Y, sigma_3=Z.
    """

    c: np.ndarray

    def __post_init__(self) -> None:
        """Validate shape and realness, then freeze the grid."""
        grid = np.asarray(self.c)
        if grid.shape != (4, 4):
            raise DimensionError(f"Pauli grid must be 4x4, got {grid.shape}")
        if np.iscomplexobj(grid):
            if np.max(np.abs(grid.imag)) > 0.0:
                raise HermitianityError("Pauli coefficients must be real")
            grid = grid.real
        grid = np.array(grid, dtype=np.float64)
        grid.setflags(write=False)
        object.__setattr__(self, "c", grid)

    def coefficient(self, label: str) -> float:
        """Coefficient of a two-letter label such as "ZZ" or "IX"."""
        if len(label) != 2 or any(ch not in PAULI_LABELS for ch in label):
            raise UnknownNameError(f"Unknown Pauli label: {label!r}")
        i, j = (PAULI_LABELS.index(ch) for ch in label)
        return float(self.c[i, j])


@dataclass(frozen=True)
class Direction3:
    """Unit vector in R^3 used as a spin measurement setting."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        """Reject vectors that are not unit length."""
        norm = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if not math.isfinite(norm) or abs(norm - 1.0) > DIRECTION_NORM_TOL:
            raise NormError(f"Direction ({self.x}, {self.y}, {self.z}) has norm {norm}")

    def as_array(self) -> np.ndarray:
        """Return (x, y, z) as a float array."""
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    def __neg__(self) -> "Direction3":
        return Direction3(-self.x, -self.y, -self.z)


@dataclass(frozen=True)
class MeasurementSetup:
    """Three measurement directions a, b, c.

    Attributes:
        a, b, c: Unit directions
        plane: "XZ" when all three lie in the XZ-plane, else None
    """

    a: Direction3
    b: Direction3
    c: Direction3
    plane: str | None = None

    def directions(self) -> tuple[Direction3, Direction3, Direction3]:
        """Return (a, b, c)."""
        return self.a, self.b, self.c


class InequalityId(Enum):
    """Bell inequalities handled by the package with their classical bounds."""

    PIGEON_LOWER = "pigeon_lower"  # ab + ac + bc >= -1
    PIGEON_UPPER = "pigeon_upper"  # ab + ac + bc <= 1
    CHSH = "chsh"  # |ab + ab' + a'b - a'b'| <= 2
    ORIGINAL_BELL = "original_bell"  # ab - ac - bc <= 1

    @property
    def bound(self) -> float:
        """The classical bound (lower bound for PIGEON_LOWER, else upper)."""
        return {
            InequalityId.PIGEON_LOWER: -1.0,
            InequalityId.PIGEON_UPPER: 1.0,
            InequalityId.CHSH: 2.0,
            InequalityId.ORIGINAL_BELL: 1.0,
        }[self]

    @property
    def arity(self) -> int:
        """Number of measurement directions the inequality takes."""
        return 4 if self is InequalityId.CHSH else 3

    def is_violated(self, value: float, margin: float) -> bool:
        """Whether value lies outside the classical bound by more than margin."""
        if self is InequalityId.PIGEON_LOWER:
            return value < self.bound - margin
        if self is InequalityId.CHSH:
            return abs(value) > self.bound + margin
        return value > self.bound + margin


@dataclass(frozen=True)
class ViolationReport:
    """Scorecard row for one inequality evaluation."""

    inequality: InequalityId
    value: float
    bound: float
    violated: bool
    settings: tuple[Direction3, ...] = ()


@dataclass(frozen=True)
class Eigenpair:
    """Eigenvalue with its eigenvector and closest Bell state.

    Attributes:
        value: Eigenvalue
        vector: Normalised eigenvector
        bell_label: Name of the Bell state with the largest overlap
        fidelity: |<bell|vector>|**2 for that Bell state
    """

    value: float
    vector: CVector
    bell_label: str
    fidelity: float


@dataclass(frozen=True)
class Projector:
    """Two-qubit box projector.

    Attributes:
        matrix: 4x4 projector
        label: "same" or "diff"
    """

    matrix: CMatrix
    label: str

    def __post_init__(self) -> None:
        """Freeze the matrix."""
        object.__setattr__(self, "matrix", frozen(as_matrix(self.matrix)))


@dataclass(frozen=True)
class SelectionResult:
    """Transition amplitude between pre- and postselected states."""

    amplitude: complex
    probability: float

    def __post_init__(self) -> None:
        """Reject probabilities outside [0, 1]."""
        if not -NORM_TOL <= self.probability <= 1.0 + NORM_TOL:
            raise RangeError(f"Probability {self.probability} outside [0, 1]")


@dataclass(frozen=True)
class PptVerdict:
    """Result of the positive-partial-transpose test."""

    min_pt_eigenvalue: float
    ppt: bool


@dataclass(frozen=True)
class Witness:
    """Named Hermitian entanglement witness."""

    matrix: CMatrix
    name: str

    def __post_init__(self) -> None:
        """Require a Hermitian matrix and freeze it."""
        mat = as_matrix(self.matrix)
        if hermiticity_defect(mat) > NORM_TOL:
            raise HermitianityError(f"Witness {self.name!r} is not Hermitian")
        object.__setattr__(self, "matrix", frozen(mat))


@dataclass(frozen=True)
class PairStats:
    """Empirical statistics for one pair of measured settings.

    Attributes:
        setting_a, setting_b: Labels of the two settings ("a", "b" or "c")
        n: Number of draws
        e: Empirical correlation of the outcome product
        stderr: sqrt((1 - e**2) / n)
        mean_a, mean_b: Empirical single-side outcome means
    """

    setting_a: str
    setting_b: str
    n: int
    e: float
    stderr: float
    mean_a: float = 0.0
    mean_b: float = 0.0


@dataclass(frozen=True)
class SampleStats:
    """Correlations for the three setting pairs (a,b), (a,c), (b,c).

    Attributes:
        n: Draws per pair
        pairs: Statistics ordered (a,b), (a,c), (b,c)
        draw_sums: Distinct per-draw values of ab + ac + bc (LHV sampling
            only; quantum draws never measure all three settings)
    """

    n: int
    pairs: tuple[PairStats, PairStats, PairStats]
    draw_sums: frozenset[float] | None = None

    @property
    def e_ab(self) -> float:
        """Empirical correlation of (a, b)."""
        return self.pairs[0].e

    @property
    def e_ac(self) -> float:
        """Empirical correlation of (a, c)."""
        return self.pairs[1].e

    @property
    def e_bc(self) -> float:
        """Empirical correlation of (b, c)."""
        return self.pairs[2].e

    @property
    def total(self) -> float:
        """Empirical pigeonhole sum."""
        return self.e_ab + self.e_ac + self.e_bc

    @property
    def total_stderr(self) -> float:
        """Standard error of the sum, treating pairs as independent."""
        return math.sqrt(sum(pair.stderr**2 for pair in self.pairs))


@dataclass(frozen=True)
class CampaignResult:
    """Sampled statistics together with their inequality verdict."""

    stats: SampleStats
    report: ViolationReport
    seed: int


@dataclass(frozen=True)
class ScanPoint:
    """One point of the theta scan of the reduced Bell operator."""

    theta: float
    total: float
    zz_part: float
    xx_part: float


@dataclass
class RunConfig:
    """Validated CLI run parameters.

    Attributes:
        command: Subcommand name
        state: Named state ("bell00", ...)
        angles: Angles in degrees
        n_samples: Draws per setting pair
        seed: Root RNG seed
        output_format: "csv" or "json"
        output_path: Destination file, None for standard output
    """

    command: str
    state: str | None = None
    angles: tuple[float, ...] = field(default_factory=tuple)
    n_samples: int = 1
    seed: int = 0
    output_format: str = "json"
    output_path: str | None = None

    def validate(self) -> None:
        """Check the run parameters.

        Raises:
            RangeError: If an angle, sample count or seed is out of range
            UnknownNameError: If the state or output format is unknown
        """
        if self.state is not None and self.state not in STATE_NAMES:
            raise UnknownNameError(
                f"Unknown state {self.state!r}; choose from {', '.join(STATE_NAMES)}"
            )
        for angle in self.angles:
            if not 0.0 <= angle < 360.0:
                raise RangeError(f"Angle {angle} deg outside [0, 360)")
        if self.n_samples < 1:
            raise RangeError(f"n_samples must be >= 1, got {self.n_samples}")
        if not 0 <= self.seed <= MAX_SEED:
            raise RangeError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.output_format not in OUTPUT_FORMATS:
            raise UnknownNameError(f"Unknown output format {self.output_format!r}")
