"""Exception hierarchy.

Two base classes split failures the way the CLI reports them: bad inputs
(exit status 2) versus numerical breakdown at runtime (exit status 3).
"""


class InvalidParameterError(ValueError):
    """A parameter or window violates its documented domain."""


class OutOfRangeError(InvalidParameterError):
    """A request has no answer in the admissible parameter range."""


class NotPinnedError(InvalidParameterError):
    """The operation requires parameters inside the pinning region."""


class StepSizeError(InvalidParameterError):
    """Time step exceeds the stability bound of the explicit integrator."""


class NumericsError(RuntimeError):
    """Base class for runtime numerical failures."""


class NonFiniteStateError(NumericsError):
    """Integration produced NaN or infinite state values."""


class SingularSystemError(NumericsError):
    """Zero pivot encountered while eliminating a tridiagonal system."""


class NoCrossingError(NumericsError):
    """Profile does not straddle the requested level."""


class InsufficientDataError(NumericsError):
    """Too few usable snapshots for a speed fit."""


class BesselRangeError(NumericsError):
    """Unscaled Bessel evaluation would overflow for this argument."""


class BranchPatternViolationError(NumericsError):
    """Perturbed state crossed the reaction threshold where the base wave
    does not, leaving the linearizable regime."""
