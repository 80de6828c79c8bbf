"""Exception hierarchy shared by all hodgelab modules."""


class HodgeLabError(Exception):
    """Base class for every error raised by this package."""


class SymmetryError(HodgeLabError):
    """A tensor does not carry the symmetry it was declared with."""


class DomainError(HodgeLabError):
    """A point or radius lies outside where a model can be evaluated."""


class EvaluationError(HodgeLabError):
    """A model returned non-finite values."""


class PositivityError(HodgeLabError):
    """The Hodge norm sqrt(-1) Q(Omega, conj Omega) is not positive."""


class InversionError(HodgeLabError):
    """A metric that must be inverted is singular."""


class ModelConsistencyError(HodgeLabError):
    """Period data violates Griffiths transversality beyond tolerance."""


class ContractError(HodgeLabError):
    """Inputs were not expressed in the frame an operation requires."""


class StructureError(HodgeLabError):
    """Operator or degeneration data lacks the assumed structure."""


class PrecisionError(HodgeLabError):
    """A numerical estimate failed to reach its tolerance.

    The best available value is kept on ``best`` so callers can still
    report it.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


class CrossCheckError(HodgeLabError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
