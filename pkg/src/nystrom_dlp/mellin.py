"""Mellin symbol calculus for the model corner operator.

On the line ``y = z + (1/p + alpha) i`` the Mellin symbol of the double
layer operator on a wedge of opening ``omega`` is::

    sinh((pi - omega) y) / sinh(pi y)

and the corresponding Mellin convolution kernel is
``k_omega(z) = z sin(omega) / (pi (1 - 2 z cos(omega) + z^2))``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.integrate

from ._validation import check_finite, check_int, check_opening_angle, check_positive
from .errors import InvalidArgumentError, NumericalFailureError, PoleError

DEFAULT_Z_MAX = 40.0
DEFAULT_Z_STEPS = 4001
TRANSFORM_TOL = 1e-8


@dataclass(frozen=True)
class MellinLine:
    """Integration line ``y(z) = z + (1/p + alpha) i``."""

    p: float = 2.0
    alpha: float = 0.0

    def __post_init__(self):
        shift = 1.0 / check_finite(self.p, "p") + check_finite(self.alpha, "alpha")
        if not (self.p > 1.0 and 0.0 < shift < 1.0):
            raise InvalidArgumentError(f"need p > 1 and 0 < 1/p + alpha < 1, got p={self.p}, alpha={self.alpha}")

    @property
    def shift(self):
        return 1.0 / self.p + self.alpha

    def y(self, z):
        return np.asarray(z, dtype=float) + 1j * self.shift


@dataclass(frozen=True)
class SymbolMatrix2:
    """The 2x2 symbol ``[[1, c], [c, 1]]``."""

    offdiag: complex

    @property
    def matrix(self):
        c = self.offdiag
        return np.array([[1.0, c], [c, 1.0]], dtype=complex)

    @property
    def det(self):
        return 1.0 - self.offdiag**2


def _sinh_pi(y):
    s = np.sinh(np.pi * np.asarray(y, dtype=complex))
    if np.any(s == 0):
        raise PoleError(f"sinh(pi y) vanishes at y={y!r}")
    return s


def n_omega(omega, y):
    """Symbol ``exp((pi - omega) y) / sinh(pi y)`` of the operator N_omega."""
    return np.exp((np.pi - omega) * np.asarray(y, dtype=complex)) / _sinh_pi(y)


def offdiag_symbol(omega, y):
    """``sinh((pi - omega) y) / sinh(pi y)``, vectorized over ``y``."""
    return np.sinh((np.pi - omega) * np.asarray(y, dtype=complex)) / _sinh_pi(y)


def symbol_A(omega, y):
    return SymbolMatrix2(complex(offdiag_symbol(omega, y)))


def symbol_det(omega, y):
    """Closed form ``1 - sinh^2((pi - omega) y) / sinh^2(pi y)``."""
    y = np.asarray(y, dtype=complex)
    return 1.0 - np.sinh((np.pi - omega) * y) ** 2 / _sinh_pi(y) ** 2


def fredholm_scan(omega, z_max=DEFAULT_Z_MAX, z_steps=DEFAULT_Z_STEPS, line=MellinLine()):
    """Minimum of ``|det smb A_omega|`` over a uniform grid of ``[-z_max, z_max]``.

    The off-diagonal symbol decays like ``exp(-min(omega, 2 pi - omega) |z|)``,
    so for ``omega`` in ``[0.1 pi, 1.9 pi]`` the determinant is within
    ``1e-16`` of one beyond ``|z| = 40``.

    Returns
    -------
    (min_abs_det, argmin_z) : tuple of float
    """
    omega = check_opening_angle(omega)
    z_max = check_positive(z_max, "z_max")
    z_steps = check_int(z_steps, "z_steps", min_value=2)
    z = np.linspace(-z_max, z_max, z_steps)
    absdet = np.abs(symbol_det(omega, line.y(z)))
    i = int(np.argmin(absdet))
    return float(absdet[i]), float(z[i])


def fredholm_profile(omega, z_max=DEFAULT_Z_MAX, z_steps=DEFAULT_Z_STEPS, line=MellinLine()):
    """Grid ``z`` and ``|det|`` values behind :func:`fredholm_scan`."""
    z = np.linspace(-z_max, z_max, z_steps)
    return z, np.abs(symbol_det(check_opening_angle(omega), line.y(z)))


def k_omega(omega, z):
    """Mellin kernel of ``(N_omega - N_{2 pi - omega}) / 2``; real for ``z > 0``."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise InvalidArgumentError("k_omega is defined for positive arguments only")
    return z * np.sin(omega) / (np.pi * (1.0 - 2.0 * z * np.cos(omega) + z * z))


def mellin_transform(omega, z, line=MellinLine()):
    """Numerical Mellin transform ``int_0^inf x^(shift - z i - 1) k_omega(x) dx``.

    The range is split at ``x = 1``; the tail is mapped back to ``(0, 1)``
    by ``x -> 1/x`` and the resulting ``u^(-1/2)`` endpoint behaviour is
    removed with ``u = v^2``.
    """
    a = line.shift
    zi = 1j * float(z)

    def head(x):
        return x ** (a - zi - 1.0) * k_omega(omega, x)

    def tail(v):
        u = v * v
        return 2.0 * v * u ** (-a + zi - 1.0) * k_omega(omega, 1.0 / u)

    total = 0j
    for fn in (head, tail):
        val, err = scipy.integrate.quad(
            fn, 0.0, 1.0, complex_func=True, epsabs=TRANSFORM_TOL * 1e-2, epsrel=1e-12, limit=500
        )
        if not np.isfinite(val) or abs(err) > TRANSFORM_TOL:
            raise NumericalFailureError(f"Mellin transform quadrature did not converge (error {abs(err):.2e})")
        total += val
    return total


def mellin_transform_check(omega, z_values, line=MellinLine()):
    """Max deviation between the numerical transform of ``k_omega`` and the symbol."""
    omega = check_opening_angle(omega)
    dev = 0.0
    for z in z_values:
        numeric = mellin_transform(omega, z, line)
        exact = complex(offdiag_symbol(omega, line.y(z)))
        dev = max(dev, abs(numeric - exact))
    return dev
