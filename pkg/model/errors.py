"""Exception hierarchy shared by every cmslab package."""


class CMSError(Exception):
    """Base class for all errors raised by cmslab."""


class ConfigError(CMSError, ValueError):
    """Invalid model specification, run configuration or parameter range."""


class PoleError(CMSError, ArithmeticError):
    """Evaluation within the pole guard of a singularity or lattice point."""


class CollisionError(PoleError):
    """Two particles closer than the pole guard."""


class StepCollapseError(CMSError, RuntimeError):
    """Adaptive step size underflowed (near-collision beyond resolution)."""


class StencilError(CMSError, ValueError):
    """A finite-difference stencil left the configuration cone."""


class DegenerateSpectrumError(CMSError, ArithmeticError):
    """Two eigenvalues closer than the spectral gap where distinct ones are required."""


class NormalizationError(CMSError, ArithmeticError):
    """An eigenvector cannot be normalized (vanishing component sum)."""


class BranchError(CMSError, ValueError):
    """Nonpositive radicand or evaluation too close to a branch cut."""


class ExpOverflowError(CMSError, OverflowError):
    """An exponent such as β·Σ|p| beyond the overflow guard."""


class DegreeGuardError(CMSError, ValueError):
    """Polynomial degree above the configured maximum."""


class GuardExceededError(CMSError, ValueError):
    """A size limit on integration steps or on an enumeration was exceeded."""


class NotSymmetricError(CMSError, ValueError):
    """A symmetric polynomial was required and the input is not."""


class WeightMismatchError(CMSError, ValueError):
    """Partitions of different weights compared in dominance order."""


class PivotError(CMSError, ArithmeticError):
    """Vanishing pivot in a triangular eigen-solve (resonant coupling)."""


class DivisibilityError(CMSError, ArithmeticError):
    """An exact division left a nonzero remainder."""


class VerificationError(CMSError, AssertionError):
    """Two independent computations of the same quantity disagree."""
