"""Exception hierarchy for bellpigeon.

Every error is a ValueError so callers that only care about bad input can
catch the builtin.
"""


class BellPigeonError(ValueError):
    """Base class for all bellpigeon errors."""


class DimensionError(BellPigeonError):
    """Operands have incompatible shapes or qubit counts."""


class HermitianityError(BellPigeonError):
    """A matrix that must be Hermitian is not."""


class ConvergenceError(BellPigeonError):
    """An iterative routine hit its iteration cap."""


class UnknownNameError(BellPigeonError):
    """A named state, label or index is not recognised."""


class RangeError(BellPigeonError):
    """A scalar parameter is outside its admissible range."""


class ZeroProbabilityError(BellPigeonError):
    """A projection has (numerically) zero probability."""


class NormError(BellPigeonError):
    """A vector that must be normalised is not."""


class ArityError(BellPigeonError):
    """The wrong number of measurement settings was supplied."""


class DistributionError(BellPigeonError):
    """A probability distribution is malformed."""


class ModelError(BellPigeonError):
    """A state or model violates a physical constraint."""
