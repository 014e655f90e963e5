"""Exception types raised by the solver components."""


class SSARCError(Exception):
    """Base class for all errors raised by :mod:`ssarc`."""


class RankDeficient(SSARCError):
    """The constraint Jacobian does not have full row rank."""

    def __init__(self, message, rank=None, smallest=None):
        super().__init__(message)
        self.rank = rank
        self.smallest = smallest


class NumericalBreakdown(SSARCError):
    """A recurrence quantity in the shifted Lanczos-CG became non-finite."""

    def __init__(self, message, shift_index=None, step=None):
        super().__init__(message)
        self.shift_index = shift_index
        self.step = step


class LadderExhausted(SSARCError):
    """No shift in the ladder gives an admissible step."""


class ContractViolation(SSARCError):
    """An argument violates a documented precondition."""


class DegenerateModel(SSARCError):
    """The predicted model decrease is too small to form a ratio."""

    def __init__(self, message, predicted=None, threshold=None):
        super().__init__(message)
        self.predicted = predicted
        self.threshold = threshold


class EvaluationError(SSARCError):
    """A problem function returned a non-finite value."""


class DerivativeCheckError(SSARCError):
    """Finite-difference probing hit a non-finite evaluation."""
