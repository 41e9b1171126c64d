"""Numerical tolerances, caps and defaults shared across the package."""

# Linear algebra
EIG_TOL = 1e-12  # Off-diagonal norm target for the Jacobi eigensolver
EIG_MAX_SWEEPS = 100  # Cyclic sweeps before giving up
HERMITIAN_TOL = 1e-10  # Hermiticity check for Pauli expansion and states

# States
NORM_TOL = 1e-12  # Ket norm and density-operator trace
PSD_TOL = 1e-10  # Smallest admissible eigenvalue is -PSD_TOL
DIRECTION_NORM_TOL = 1e-9  # Unit-vector check for measurement directions

# Pigeonhole
ZERO_PROBABILITY_EPS = 1e-12  # Collapse refuses probabilities at or below this
MAX_QUBITS = 10  # Largest particle count for pigeonhole reports

# Bell inequalities
VIOLATION_TOL = 1e-10  # Distance past a classical bound that counts as violation

# Optimizer
DEFAULT_GRID_STEP_DEG = 0.5
MAX_GRID_STEP_DEG = 1.0
DEFAULT_REFINE_TOL = 1e-9
REFINE_MAX_ITERATIONS = 100

# Separability
WERNER_BISECTION_WIDTH = 1e-8

# Sampling
BORN_NEGATIVITY_TOL = 1e-12  # Born probabilities below -this signal an invalid state
STDERR_MARGIN = 4.0  # Monte Carlo verdicts use a 4-sigma margin

# Output
OUTPUT_SIGNIFICANT_DIGITS = 12
OUTPUT_ZERO_SNAP = 1e-15  # Smaller magnitudes print as 0
JSON_SCHEMA = "bellpigeon/1"

# CLI
STATE_NAMES = ("bell00", "bell01", "bell10", "bell11", "mixed")
OUTPUT_FORMATS = ("csv", "json")
MAX_SEED = 2**64 - 1
