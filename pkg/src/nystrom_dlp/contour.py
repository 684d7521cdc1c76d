"""Piecewise-smooth, 1-periodic closed contours with corner metadata.

A :class:`Contour` wraps three vectorized callables (the parametrization and
its first two derivatives) defined on ``[0, 1]``. Corners sit at the
parameters ``j/q``. Their opening angles and orientations are measured from
one-sided derivatives, so user-defined curves do not need to state them.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_int, check_opening_angle, check_positive
from .errors import CornerEvaluationError, GeometryError, InvalidArgumentError

CLOSED_TOL = 1e-13
SPEED_TOL = 1e-10
SIMPLICITY_SAMPLES = 512
SIMPLICITY_TOL = 1e-9
_ONE_SIDED_STEP = 1e-6


@dataclass(frozen=True)
class Corner:
    """A corner point ``gamma(s)``.

    ``omega`` is the interior opening angle between the two semi-tangents.
    ``beta`` is the angle of the outgoing (right) semi-tangent against the
    real axis.
    """

    s: float
    omega: float
    beta: float


class Contour:
    """A simple closed positively oriented contour ``s -> gamma(s)``, period 1.

    Parameters
    ----------
    gamma, dgamma, ddgamma : callable
        Vectorized maps from parameters in ``[0, 1]`` to complex points and
        derivatives. ``dgamma`` and ``ddgamma`` need only be correct off the
        corners.
    q : int
        Number of corners; they are placed at ``s = j/q``.
    name : str, optional
    params : dict, optional
        Construction parameters, echoed into run manifests.
    validate : bool
        Check closedness, one-sided speed equality and simplicity.
    """

    def __init__(self, gamma, dgamma, ddgamma, q=0, *, name="custom", params=None, validate=True):
        self._gamma = gamma
        self._dgamma = dgamma
        self._ddgamma = ddgamma
        self.q = check_int(q, "q", min_value=0)
        self.name = name
        self.params = dict(params or {})
        self.corners = tuple(self._measure_corner(j) for j in range(self.q))
        if validate:
            self._validate()

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"<Contour {self.name}({args}) q={self.q}>"

    @property
    def corner_params(self):
        return np.array([c.s for c in self.corners])

    def gamma(self, s):
        return np.asarray(self._gamma(np.mod(s, 1.0)), dtype=complex)

    def dgamma(self, s):
        return np.asarray(self._dgamma(np.mod(s, 1.0)), dtype=complex)

    def ddgamma(self, s):
        return np.asarray(self._ddgamma(np.mod(s, 1.0)), dtype=complex)

    def one_sided_derivative(self, s, side):
        """Limit of ``gamma'`` at ``s`` from the right (``side=+1``) or left (``-1``).

        Uses linear extrapolation from two nearby samples, which is second
        order accurate in the step.
        """
        h = side * _ONE_SIDED_STEP
        return complex(2.0 * self.dgamma(s + h) - self.dgamma(s + 2.0 * h))

    def _measure_corner(self, j):
        s = j / self.q
        right = self.one_sided_derivative(s, +1)
        left = self.one_sided_derivative(s, -1)
        if right == 0 or left == 0:
            raise GeometryError(f"vanishing one-sided derivative at corner {j}")
        omega = math.atan2((-left / right).imag, (-left / right).real) % (2.0 * math.pi)
        beta = math.atan2(right.imag, right.real)
        return Corner(s=s, omega=omega, beta=beta)

    def _validate(self):
        start, end = complex(self._gamma(np.array(0.0))), complex(self._gamma(np.array(1.0)))
        if abs(start - end) > CLOSED_TOL:
            raise GeometryError(f"contour is not closed: |gamma(0) - gamma(1)| = {abs(start - end):.3e}")
        for j, c in enumerate(self.corners):
            if not 0.0 < c.omega < 2.0 * math.pi:
                raise GeometryError(f"corner {j} has degenerate opening angle {c.omega}")
            r = abs(self.one_sided_derivative(c.s, +1))
            l = abs(self.one_sided_derivative(c.s, -1))
            if abs(r - l) > SPEED_TOL * max(1.0, r):
                raise GeometryError(f"one-sided speeds differ at corner {j}: {r!r} vs {l!r}")
        s = np.arange(SIMPLICITY_SAMPLES + 1) / SIMPLICITY_SAMPLES
        z = self.gamma(s)
        z[-1] = z[0]
        pair = _crossing_segments(z)
        if pair is not None:
            i, k = pair
            raise GeometryError(f"contour self-intersects near s={s[i]:.6f} and s={s[k]:.6f}")

    def corner_index(self, s):
        """Index of the corner located exactly at ``s`` (mod 1), else ``None``."""
        if self.q == 0:
            return None
        t = float(np.mod(s, 1.0))
        for j, c in enumerate(self.corners):
            if t == c.s:
                return j
        return None


def _crossing_segments(z):
    """First pair of non-adjacent crossing chords of the closed polygon ``z``, else ``None``."""
    a, b = z[:-1], z[1:]
    m = a.size

    def orient(p, q, r):
        return np.imag(np.conj(q - p) * (r - p))

    d1 = orient(a[:, None], b[:, None], a[None, :])
    d2 = orient(a[:, None], b[:, None], b[None, :])
    d3 = orient(a[None, :], b[None, :], a[:, None])
    d4 = orient(a[None, :], b[None, :], b[:, None])
    cross = (d1 * d2 < 0) & (d3 * d4 < 0)
    i, k = np.indices((m, m))
    gap = np.abs(i - k)
    cross &= (gap > 1) & (gap < m - 1)
    # non-adjacent chords with (nearly) coinciding vertices also count
    close = np.minimum.reduce([np.abs(a[:, None] - a[None, :]), np.abs(b[:, None] - b[None, :]),
                               np.abs(a[:, None] - b[None, :]), np.abs(b[:, None] - a[None, :])])
    cross |= (close <= SIMPLICITY_TOL) & (gap > 1) & (gap < m - 1)
    hits = np.argwhere(np.triu(cross))
    return None if hits.size == 0 else tuple(hits[0])


def derivatives_at(contour, s):
    """Return ``(gamma(s), gamma'(s), gamma''(s))`` at an off-corner parameter."""
    j = contour.corner_index(s)
    if j is not None:
        raise CornerEvaluationError(j, s)
    return complex(contour.gamma(s)), complex(contour.dgamma(s)), complex(contour.ddgamma(s))


def curve_l1(omega):
    """One-corner curve ``sin(pi s) exp(i omega (s - 1/2))``, corner at the origin."""
    omega = check_opening_angle(omega)

    def gamma(s):
        return np.sin(np.pi * s) * np.exp(1j * omega * (s - 0.5))

    def dgamma(s):
        e = np.exp(1j * omega * (s - 0.5))
        return (np.pi * np.cos(np.pi * s) + 1j * omega * np.sin(np.pi * s)) * e

    def ddgamma(s):
        e = np.exp(1j * omega * (s - 0.5))
        return ((-np.pi**2 - omega**2) * np.sin(np.pi * s) + 2j * omega * np.pi * np.cos(np.pi * s)) * e

    return Contour(gamma, dgamma, ddgamma, q=1, name="l1", params={"omega": omega})


def curve_l2(omega):
    """Lens made of two circular arcs meeting at ``-i/2`` and ``i/2``."""
    omega = check_opening_angle(omega)
    shift = 0.5 / math.tan(omega / 2.0)
    radius = 0.5 / math.sin(omega / 2.0)

    def _split(s):
        s = np.asarray(s, dtype=float)
        first = s <= 0.5
        e1 = np.exp(1j * omega * (2.0 * s - 0.5))
        e2 = np.exp(1j * omega * (2.0 * s - 1.5))
        return first, e1, e2

    def gamma(s):
        first, e1, e2 = _split(s)
        return np.where(first, -shift + radius * e1, shift - radius * e2)

    def dgamma(s):
        first, e1, e2 = _split(s)
        k = 2j * omega * radius
        return np.where(first, k * e1, -k * e2)

    def ddgamma(s):
        first, e1, e2 = _split(s)
        k = (2j * omega) ** 2 * radius
        return np.where(first, k * e1, -k * e2)

    return Contour(gamma, dgamma, ddgamma, q=2, name="l2", params={"omega": omega})


def curve_ellipse(a, b):
    """Smooth ellipse ``a cos(2 pi s) + i b sin(2 pi s)`` (no corners)."""
    a = check_positive(a, "a")
    b = check_positive(b, "b")
    w = 2.0 * np.pi

    def gamma(s):
        return a * np.cos(w * s) + 1j * b * np.sin(w * s)

    def dgamma(s):
        return w * (-a * np.sin(w * s) + 1j * b * np.cos(w * s))

    def ddgamma(s):
        return -(w**2) * gamma(s)

    return Contour(gamma, dgamma, ddgamma, q=0, name="ellipse", params={"a": a, "b": b})


CURVES = {"l1": curve_l1, "l2": curve_l2, "ellipse": curve_ellipse}


def make_curve(name, omega=None, a=1.0, b=1.0):
    """Build a named curve; ``omega`` is required for the cornered curves."""
    if name == "ellipse":
        return curve_ellipse(a, b)
    if name in ("l1", "l2"):
        if omega is None:
            raise InvalidArgumentError(f"curve {name!r} requires an opening angle")
        return CURVES[name](omega)
    raise InvalidArgumentError(f"unknown curve {name!r}; choose from {sorted(CURVES)}")
