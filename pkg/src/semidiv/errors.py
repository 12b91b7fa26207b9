"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class SemidivError(Exception):
    exit_code = 1


class InputError(SemidivError, ValueError):
    """Malformed or dimensionally inconsistent input."""

    exit_code = 2


class HypothesisError(SemidivError):
    """A mathematical precondition does not hold (non-positive semigroup, torsion direction, ...)."""

    exit_code = 3


class NotPositiveError(HypothesisError):
    pass


class InfeasibleError(HypothesisError):
    pass


class CapExceededError(SemidivError):
    """A configurable resource cap was hit."""

    exit_code = 4


class StabilizationError(SemidivError):
    """Finite differences did not stabilize inside the computation window."""

    exit_code = 4

    def __init__(self, message, tail=None):
        super().__init__(message)
        self.tail = list(tail) if tail is not None else []
