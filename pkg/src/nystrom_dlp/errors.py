"""Exception hierarchy shared by all modules."""

import numpy as np


class NystromDLPError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(NystromDLPError, ValueError):
    """An argument is outside its admissible range."""


class CornerEvaluationError(NystromDLPError, ValueError):
    """A one-sided quantity was requested exactly at a corner parameter."""

    def __init__(self, index, s):
        self.index = index
        self.s = s
        super().__init__(f"parameter s={s!r} coincides with corner {index}")


class GeometryError(NystromDLPError, ValueError):
    """The contour violates a geometric invariant (closedness, simplicity, ...)."""


class SingularMatrixError(NystromDLPError, np.linalg.LinAlgError):
    """An exactly zero pivot was met during factorization."""

    def __init__(self, pivot):
        self.pivot = pivot
        super().__init__(f"matrix is singular: zero pivot at index {pivot}")


class NumericalFailureError(NystromDLPError, ArithmeticError):
    """An iterative numerical routine did not converge."""


class PoleError(NystromDLPError, ZeroDivisionError):
    """A symbol was evaluated at a pole."""
