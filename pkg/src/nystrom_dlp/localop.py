"""Finite sections of the local corner operator.

The model corner is the wedge ``s -> -s e^{i(beta+omega)}`` for ``s < 0``,
``s -> s e^{i beta}`` for ``s >= 0``: two rays leaving the origin with
opening ``omega``. Its Nystrom system with ``n = 1`` has unknowns indexed
by ``(k, r)``, ``k = -N..N-1``. It does not depend on ``n`` (scale
invariance), and its invertibility decides stability at a corner of
opening ``omega``.

Equivalently, after reflecting the incoming ray (``l -> -1-l``, node
``p -> d-1-p``) the section becomes the 2x2 block matrix::

    [ I                            w_p k(a/(l+eps_p))/(l+eps_p)    ]
    [ w'_p k(a'/(l+eps'_p))/(l+eps'_p)   I                          ]

with ``a = k + delta_r`` and primes denoting reversed rules ``1 - delta``,
``1 - eps``.
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_int, check_opening_angle
from .errors import InvalidArgumentError
from .mellin import k_omega
from .numerics import singular_values
from .quadrature import QuadratureRule, gauss_legendre

STABILIZATION_RATIO = 0.9


@dataclass(frozen=True)
class Wedge:
    omega: float
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "omega", check_opening_angle(self.omega))

    def gamma(self, s):
        s = np.asarray(s, dtype=float)
        return np.where(s < 0, -s * np.exp(1j * (self.beta + self.omega)), s * np.exp(1j * self.beta))

    def dgamma(self, s):
        s = np.asarray(s, dtype=float)
        return np.where(s < 0, -np.exp(1j * (self.beta + self.omega)), np.exp(1j * self.beta))


@dataclass(frozen=True)
class WedgeSection:
    """Assembled finite section of size ``2 N d``; rows/columns ordered ``(k, r)``, ``k = -N..N-1``."""

    wedge: Wedge
    rule_eps: QuadratureRule
    rule_delta: QuadratureRule
    N: int
    matrix: np.ndarray = field(repr=False)

    @property
    def omega(self):
        return self.wedge.omega

    @property
    def beta(self):
        return self.wedge.beta


def _params(rule, N, scale=1):
    return ((np.arange(-N, N)[:, None] + rule.nodes[None, :]) / scale).ravel()


def assemble_wedge(omega, beta, rule_eps, rule_delta=None, N=64, scale=1):
    """Assemble the wedge finite section.

    ``scale`` places the points at ``(l + eps_p)/scale`` with weights
    ``w_p/scale``; the result is independent of it.
    """
    wedge = Wedge(omega, beta)
    rule_delta = rule_eps if rule_delta is None else rule_delta
    if rule_delta.d != rule_eps.d:
        raise InvalidArgumentError("quadrature and collocation rules must have the same number of points")
    N = check_int(N, "N", min_value=1)
    scale = check_int(scale, "scale", min_value=1)
    src = _params(rule_eps, N, scale)
    tgt = _params(rule_delta, N, scale)
    weights = np.tile(rule_eps.weights, 2 * N) / scale
    tau = wedge.gamma(src)
    dtau = wedge.dgamma(src)
    t = wedge.gamma(tgt)
    same_ray = (src[None, :] < 0) == (tgt[:, None] < 0)
    diff = np.where(same_ray, 1.0, tau[None, :] - t[:, None])
    bracket = (dtau[None, :] / diff - np.conj(dtau)[None, :] / np.conj(diff)) / (2j * np.pi)
    # straight rays: the double layer kernel vanishes identically
    k = np.where(same_ray, 0.0, bracket.real) * weights[None, :]
    matrix = np.eye(src.size) + k
    return WedgeSection(wedge, rule_eps, rule_delta, N, matrix)


def _cross_block(omega, rule_src, rule_tgt, N):
    a = (np.arange(N)[:, None] + rule_tgt.nodes[None, :]).ravel()
    m = (np.arange(N)[:, None] + rule_src.nodes[None, :]).ravel()
    w = np.tile(rule_src.weights, N)
    return w[None, :] * k_omega(omega, a[:, None] / m[None, :]) / m[None, :]


def assemble_block_mellin(omega, rule_eps, rule_delta=None, N=64):
    """Assemble the 2x2 block Mellin form of the same finite section."""
    omega = check_opening_angle(omega)
    rule_delta = rule_eps if rule_delta is None else rule_delta
    N = check_int(N, "N", min_value=1)
    size = N * rule_eps.d
    out = np.eye(2 * size)
    out[:size, size:] = _cross_block(omega, rule_eps, rule_delta, N)
    out[size:, :size] = _cross_block(omega, rule_eps.reversed(), rule_delta.reversed(), N)
    return out


def wedge_to_block_permutation(N, d):
    """Indices ``perm`` with ``block = wedge[perm][:, perm]``.

    The first block is the outgoing ray (``k = 0..N-1``). The second is the
    incoming ray, reflected by ``k -> -1-k`` with nodes reversed.
    """
    N = check_int(N, "N", min_value=1)
    d = check_int(d, "d", min_value=1)
    k = np.arange(N)
    r = np.arange(d)
    outgoing = ((k[:, None] + N) * d + r[None, :]).ravel()
    incoming = ((-1 - k[:, None] + N) * d + (d - 1 - r)[None, :]).ravel()
    return np.concatenate([outgoing, incoming])


@dataclass(frozen=True)
class SigmaMinRow:
    N: int
    sigma_min: float
    cond: float


@dataclass(frozen=True)
class SigmaMinStudy:
    omega: float
    d: int
    rows: tuple
    stabilized: bool
    ratio_threshold: float = STABILIZATION_RATIO


def sigma_min_study(omega, rule, N_list, ratio_threshold=STABILIZATION_RATIO):
    """Smallest singular value and condition number of wedge sections of growing size.

    ``stabilized`` compares the largest section with the one of half its
    size (or the next smaller one available): ``sigma_min(N_max) >=
    ratio_threshold * sigma_min(N_max/2)``. This is a diagnostic only.
    """
    if isinstance(rule, int):
        rule = gauss_legendre(rule)
    N_list = [check_int(N, "N", min_value=1) for N in N_list]
    if not N_list or N_list != sorted(N_list) or len(set(N_list)) != len(N_list):
        raise InvalidArgumentError(f"N_list must be strictly ascending, got {N_list}")
    rows = []
    for N in N_list:
        sv = singular_values(assemble_wedge(omega, 0.0, rule, N=N).matrix)
        cond = np.inf if sv[-1] == 0 else float(sv[0] / sv[-1])
        rows.append(SigmaMinRow(N, float(sv[-1]), cond))
    if len(rows) == 1:
        stabilized = False
    else:
        by_n = {row.N: row for row in rows}
        ref = by_n.get(N_list[-1] // 2, rows[-2]) if N_list[-1] % 2 == 0 else rows[-2]
        stabilized = rows[-1].sigma_min >= ratio_threshold * ref.sigma_min
    return SigmaMinStudy(float(omega), rule.d, tuple(rows), bool(stabilized), ratio_threshold)
