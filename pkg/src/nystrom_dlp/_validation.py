"""Input validation helpers (sklearn ``check_*`` style)."""

import math
import numbers

import numpy as np

from .errors import InvalidArgumentError


def check_int(value, name, *, min_value=None, max_value=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InvalidArgumentError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if min_value is not None and value < min_value:
        raise InvalidArgumentError(f"{name} must be >= {min_value}, got {value}")
    if max_value is not None and value > max_value:
        raise InvalidArgumentError(f"{name} must be <= {max_value}, got {value}")
    return value


def check_positive(value, name):
    value = check_finite(value, name)
    if value <= 0:
        raise InvalidArgumentError(f"{name} must be positive, got {value}")
    return value


def check_finite(value, name):
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise InvalidArgumentError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidArgumentError(f"{name} must be finite, got {value}")
    return value


def check_opening_angle(omega, name="omega"):
    """Return ``omega`` as float if it lies in the open interval (0, 2*pi)."""
    omega = check_finite(omega, name)
    if not 0.0 < omega < 2.0 * math.pi:
        raise InvalidArgumentError(
            f"{name} must lie in the open interval (0, 2*pi), got {omega}"
        )
    return omega


def check_square(matrix, name="matrix"):
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InvalidArgumentError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    return a


def check_matrix(matrix, name="matrix"):
    a = np.asarray(matrix)
    if a.ndim != 2 or min(a.shape) < 1:
        raise InvalidArgumentError(f"{name} must be a non-empty 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidArgumentError(f"{name} has non-finite entries")
    return a
