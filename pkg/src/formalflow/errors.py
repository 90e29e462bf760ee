"""Exception types shared across the package."""


class FormalFlowError(Exception):
    """Base class for all errors raised by this package."""


class BasisMismatchError(FormalFlowError):
    """Two series (or a series and a table) do not share the same basis."""


class RingMismatchError(FormalFlowError):
    """Two series do not share the same coefficient ring."""


class DimensionMismatchError(FormalFlowError):
    """Vector fields / polynomials of different ambient dimension were combined."""


class DegreeCapError(FormalFlowError):
    """A computation exceeded its configured degree or size cap."""


class UnitCoefficientError(FormalFlowError):
    """A series has the wrong coefficient at the unit index for the requested map."""


class SecularTermError(FormalFlowError):
    """A periodic-only operation received a coefficient with a t^m factor, m > 0."""


class NonzeroMeanError(FormalFlowError):
    """periodic_primitive was asked for an antiderivative of a nonzero-mean input."""


class NotLieElementError(FormalFlowError):
    """A series expected to lie in the free Lie algebra does not."""


class JacobiError(FormalFlowError):
    """Structure constants fail antisymmetry or the Jacobi identity."""


class NotPreLieError(FormalFlowError):
    """A candidate pre-Lie coproduct fails the coassociator symmetry check."""


class UnrepresentableResidualError(FormalFlowError):
    """Commutator compression could not match the target image.

    Carries the degree and the residual that could not be represented.
    """

    def __init__(self, degree, residual):
        self.degree = degree
        self.residual = residual
        super().__init__(f"no commutator representation at degree {degree}")


class ResonanceError(FormalFlowError):
    """A modified-generator solve hit a singular frequency block.

    ``blocks`` is a list of (degree, frequency) pairs whose integral
    rotation factor vanishes.
    """

    def __init__(self, blocks):
        self.blocks = list(blocks)
        super().__init__(f"numerical resonance on blocks {self.blocks}")


class SpecParseError(FormalFlowError):
    """A system-description or structure-constant file failed to parse."""
