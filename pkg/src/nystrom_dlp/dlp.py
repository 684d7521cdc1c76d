"""Double layer potential kernel in parametrized form and model right-hand sides.

With ``tau = gamma(s)`` a source point and ``t = gamma(sigma)`` a target,
the kernel (already multiplied by ``gamma'(s)``) is::

    (1 / (2 pi i)) * (tau' / (tau - t) - conj(tau') / (conj(tau) - conj(t)))

which equals ``Im(tau' / (tau - t)) / pi`` and is therefore real. When the
two parameters coincide the removable singularity is replaced by
``Im(conj(gamma') gamma'') / (2 pi |gamma'|^2)``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .contour import derivatives_at
from .errors import GeometryError, InvalidArgumentError

DIAGONAL_THRESHOLD = 1e-9
_ROW_BLOCK = 1024


class Regime(enum.Enum):
    OFF_DIAGONAL = "off-diagonal"
    DIAGONAL_LIMIT = "diagonal-limit"


@dataclass(frozen=True)
class KernelEval:
    value: complex
    regime: Regime


def periodic_distance(a, b):
    d = np.abs(np.mod(np.asarray(a) - np.asarray(b), 1.0))
    return np.minimum(d, 1.0 - d)


def diagonal_limit(dgamma, ddgamma):
    """Real form of the kernel on the diagonal, vectorized over parameters."""
    return np.imag(np.conj(dgamma) * ddgamma) / (2.0 * np.pi * np.abs(dgamma) ** 2)


def kernel_bracket(contour, s_src, s_tgt):
    """Evaluate the kernel bracket for one source/target pair.

    Returns
    -------
    KernelEval
        ``regime`` is ``DIAGONAL_LIMIT`` when the periodic parameter distance
        is below ``DIAGONAL_THRESHOLD``.
    """
    tau, dtau, ddtau = derivatives_at(contour, s_src)
    t, _, _ = derivatives_at(contour, s_tgt)
    if periodic_distance(s_src, s_tgt) < DIAGONAL_THRESHOLD:
        _, dt, ddt = derivatives_at(contour, s_tgt)
        return KernelEval(complex(diagonal_limit(dt, ddt)), Regime.DIAGONAL_LIMIT)
    if tau == t:
        raise GeometryError(f"parameters {s_src!r} and {s_tgt!r} map to the same point")
    value = (dtau / (tau - t) - np.conj(dtau) / (np.conj(tau) - np.conj(t))) / (2j * np.pi)
    return KernelEval(complex(value), Regime.OFF_DIAGONAL)


def kernel_matrix(contour, s_src, s_tgt, weights=None):
    """Kernel values for all (target, source) pairs as a real array.

    Row ``i`` corresponds to ``s_tgt[i]`` and column ``j`` to ``s_src[j]``.
    Columns are scaled by ``weights`` when given. Parameters closer than
    ``DIAGONAL_THRESHOLD`` use the diagonal limit at the target. Rows are
    processed in blocks so that temporaries stay bounded for large grids.
    """
    s_src = np.asarray(s_src, dtype=float)
    s_tgt = np.asarray(s_tgt, dtype=float)
    tau = contour.gamma(s_src)
    dtau = contour.dgamma(s_src)
    t = contour.gamma(s_tgt)
    out = np.empty((s_tgt.size, s_src.size))
    for start in range(0, s_tgt.size, _ROW_BLOCK):
        rows = slice(start, start + _ROW_BLOCK)
        diff = tau[None, :] - t[rows, None]
        near = periodic_distance(s_src[None, :], s_tgt[rows, None]) < DIAGONAL_THRESHOLD
        if np.any((diff == 0) & ~near):
            raise GeometryError("distinct parameters map to the same contour point")
        diff[near] = 1.0
        block = np.imag(dtau[None, :] / diff) / np.pi
        if near.any():
            i, j = np.nonzero(near)
            sg = s_tgt[rows][i]
            block[i, j] = diagonal_limit(contour.dgamma(sg), contour.ddgamma(sg))
        out[rows] = block
    if weights is not None:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != s_src.shape:
            raise InvalidArgumentError("weights must align with source parameters")
        out *= weights[None, :]
    return out


def rhs_f1(z):
    """Continuous right-hand side ``-z |z|``."""
    z = np.asarray(z, dtype=complex)
    return -z * np.abs(z)


def rhs_f2(z):
    """Discontinuous right-hand side: ``-1 + iz`` below the real axis, ``1 + iz`` on or above."""
    z = np.asarray(z, dtype=complex)
    return np.where(z.imag < 0, -1.0 + 1j * z, 1.0 + 1j * z)


def rhs_const2(z):
    """The constant 2; the exact solution on a smooth curve is 1."""
    return np.full(np.shape(z), 2.0 + 0j)


RHS = {"f1": rhs_f1, "f2": rhs_f2, "const2": rhs_const2}


def get_rhs(rhs):
    """Resolve a right-hand side given by name or as a callable."""
    if callable(rhs):
        return rhs
    try:
        return RHS[rhs]
    except KeyError:
        raise InvalidArgumentError(f"unknown right-hand side {rhs!r}; choose from {sorted(RHS)}") from None
