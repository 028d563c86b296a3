"""Exception types shared across the package."""


class NumericDomainError(ArithmeticError):
    """A numeric quantity left its mathematically valid domain.

    Raised for unphysical covariance matrices, entropy arguments below one,
    and negative discriminants beyond roundoff tolerance.  Distinct from
    ValueError so that callers (and the CLI exit codes) can tell malformed
    arguments apart from inputs that are well-formed but non-physical.
    """


class EvaluationError(RuntimeError):
    """An objective function returned a non-finite value during optimization."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
