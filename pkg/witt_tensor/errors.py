"""
Witt Tensor - Exception Hierarchy

Every failure raised by the library derives from WittTensorError so that the
verification graph can turn it into a FAIL check instead of crashing the run.
"""


class WittTensorError(Exception):
    """Base class for all library errors."""


class InvalidPrimeError(WittTensorError, ValueError):
    """The characteristic is not a prime p with 3 < p < 2**31 (or the CLI cap)."""


class DimensionMismatchError(WittTensorError, ValueError):
    """Shapes or ambient dimensions are incompatible."""


class IndexOutOfRangeError(WittTensorError, IndexError):
    """A basis index or weight label lies outside its allowed range."""


class NotInvariantError(WittTensorError):
    """A subspace is not stable under the action."""


class ModuleAxiomError(WittTensorError):
    """Lie compatibility, restrictedness or grading failed at construction."""


class IncompleteWeightDecompositionError(WittTensorError):
    """The eigenspaces of rho(e_0) do not fill the module."""


class IdentificationError(WittTensorError):
    """A module could not be matched with a known simple module."""


class EnumerationBudgetError(WittTensorError):
    """Projective enumeration of candidate generators exceeds the cap."""


class HomogeneityError(WittTensorError, ValueError):
    """A vector expected to be homogeneous mixes several degrees."""


class VerificationError(WittTensorError):
    """A pipeline assertion about the tensor square failed."""
