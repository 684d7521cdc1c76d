"""Nystrom discretization of ``(I + V) x = f`` on a closed contour.

Sources sit at ``tau_lp = gamma((l + eps_p)/n)`` and collocation points at
``t_kr = gamma((k + delta_r)/n)``. The linear system reads::

    x(t_kr) + sum_{l,p} (w_p / n) K(tau_lp, t_kr) x_lp = f(t_kr)

with ``K`` the kernel bracket from :mod:`nystrom_dlp.dlp`. Unknowns and rows
are flattened panel-major (index ``l*d + p``).
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_int
from .contour import make_curve
from .dlp import get_rhs, kernel_matrix
from .errors import CornerEvaluationError, InvalidArgumentError
from .numerics import condition_number_2, solve
from .quadrature import CompositeGrid, QuadratureRule, gauss_legendre


@dataclass(frozen=True)
class Discretization:
    """Contour plus quadrature (``rule_eps``) and collocation (``rule_delta``) rules.

    ``n`` must be a positive multiple of the number of corners so that every
    corner falls on a panel boundary.
    """

    contour: object
    rule_eps: QuadratureRule
    n: int
    rule_delta: QuadratureRule = None

    def __post_init__(self):
        n = check_int(self.n, "n", min_value=1)
        q = max(self.contour.q, 1)
        if n % q:
            raise InvalidArgumentError(f"n={n} must be a multiple of the corner count q={q}")
        if self.rule_delta is None:
            object.__setattr__(self, "rule_delta", self.rule_eps)
        if self.rule_delta.d != self.rule_eps.d:
            raise InvalidArgumentError("quadrature and collocation rules must have the same number of points")
        object.__setattr__(self, "n", n)

    @classmethod
    def gauss(cls, contour, n, d):
        """Discretization with ``eps = delta`` = the ``d``-point Gauss-Legendre nodes."""
        return cls(contour, gauss_legendre(d), n)

    @property
    def d(self):
        return self.rule_eps.d

    @property
    def size(self):
        return self.n * self.d

    @property
    def source_params(self):
        return CompositeGrid(self.n, self.rule_eps).abscissae

    @property
    def target_params(self):
        return CompositeGrid(self.n, self.rule_delta).abscissae

    @property
    def weights(self):
        return CompositeGrid(self.n, self.rule_eps).weights

    def flat_index(self, k, r):
        return k * self.d + r

    def panel_node(self, index):
        return divmod(index, self.d)

    def compatible_with(self, other):
        return (
            _same_contour(self.contour, other.contour)
            and self.rule_eps == other.rule_eps
            and self.rule_delta == other.rule_delta
        )


def _same_contour(a, b):
    return a is b or (a.name == b.name and a.params == b.params and a.name != "custom")


@dataclass(frozen=True)
class NystromSystem:
    disc: Discretization
    matrix: np.ndarray
    rhs: np.ndarray
    rhs_fn: object = field(repr=False)
    rhs_name: str = "custom"


@dataclass(frozen=True)
class Solution:
    """Nodal values ``x_lp`` of an approximate solution (at the collocation grid)."""

    disc: Discretization
    values: np.ndarray
    rhs_fn: object = field(repr=False)
    rhs_name: str = "custom"


def _rhs_name(rhs):
    return rhs if isinstance(rhs, str) else getattr(rhs, "__name__", "custom")


def _check_grid_off_corners(disc):
    q = disc.contour.q
    if q == 0:
        return
    for params in (disc.source_params, disc.target_params):
        scaled = params * q
        assert not np.any(scaled == np.round(scaled)), "grid point collides with a corner"


def assemble_matrix(disc):
    """The system matrix ``I + K`` (real; the double layer kernel is real-valued)."""
    _check_grid_off_corners(disc)
    a = kernel_matrix(disc.contour, disc.source_params, disc.target_params, disc.weights)
    a[np.diag_indices_from(a)] += 1.0
    return a


def assemble(disc, rhs):
    """Assemble matrix and right-hand side vector for ``rhs`` (name or callable)."""
    fn = get_rhs(rhs)
    matrix = assemble_matrix(disc)
    b = np.asarray(fn(disc.contour.gamma(disc.target_params)), dtype=complex)
    return NystromSystem(disc, matrix, b, fn, _rhs_name(rhs))


def solve_system(system):
    values = solve(system.matrix, system.rhs)
    return Solution(system.disc, values, system.rhs_fn, system.rhs_name)


def solve_dlp(contour, rhs, n, d):
    """Assemble and solve with Gauss-Legendre ``eps = delta`` in one call."""
    return solve_system(assemble(Discretization.gauss(contour, n, d), rhs))


def interpolate(solution, s):
    """Natural Nystrom interpolant ``x(s) = f(gamma(s)) - sum (w_p/n) K x_lp``.

    Vectorized over ``s``; raises :class:`CornerEvaluationError` if any
    parameter is a corner.
    """
    disc = solution.disc
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    for value in s_arr:
        j = disc.contour.corner_index(value)
        if j is not None:
            raise CornerEvaluationError(j, float(value))
    k = kernel_matrix(disc.contour, disc.source_params, s_arr, disc.weights)
    out = np.asarray(solution.rhs_fn(disc.contour.gamma(s_arr)), dtype=complex) - k @ solution.values
    return out if np.ndim(s) else out[0]


def l2_weights(disc):
    """Quadrature weights ``(w_p/n) |gamma'(s_lp)|`` of the discrete L2(Gamma) norm."""
    return CompositeGrid(disc.n, disc.rule_eps).weights * np.abs(disc.contour.dgamma(disc.target_params))


def relative_error(coarse, fine):
    """Relative discrete L2 distance between a solution and its ``2n`` refinement.

    The coarse solution is evaluated on the fine grid by Nystrom
    interpolation (the Gauss grids for ``n`` and ``2n`` do not nest).
    """
    if not coarse.disc.compatible_with(fine.disc):
        raise InvalidArgumentError("solutions belong to different contours or rules")
    if coarse.rhs_name != fine.rhs_name or (coarse.rhs_name == "custom" and coarse.rhs_fn is not fine.rhs_fn):
        raise InvalidArgumentError("solutions have different right-hand sides")
    if fine.disc.n != 2 * coarse.disc.n:
        raise InvalidArgumentError(f"fine n={fine.disc.n} is not twice coarse n={coarse.disc.n}")
    wt = l2_weights(fine.disc)
    projected = interpolate(coarse, fine.disc.target_params)
    num = np.sum(wt * np.abs(fine.values - projected) ** 2)
    den = np.sum(wt * np.abs(fine.values) ** 2)
    return float(np.sqrt(num / den))


def _convergence_row(args):
    contour, rhs, d, n = args
    return n, relative_error(solve_dlp(contour, rhs, n, d), solve_dlp(contour, rhs, 2 * n, d))


def convergence_study(contour, rhs, d, n_list, workers=1):
    """Rows ``(n, E_n)`` with ``E_n`` the relative error between the n- and 2n-solutions.

    With ``workers > 1`` the rows are computed in separate processes; this
    needs a picklable contour and right-hand side (built-in curves are
    rebuilt from their name and parameters). Results do not depend on
    ``workers``.
    """
    n_list = [check_int(n, "n", min_value=1) for n in n_list]
    if len(set(n_list)) != len(n_list):
        raise InvalidArgumentError(f"duplicate panel counts in {n_list}")
    workers = check_int(workers, "workers", min_value=1)
    if workers > 1 and len(n_list) > 1:
        spec = _CurveSpec(contour.name, contour.params)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_convergence_row, [(spec, rhs, d, n) for n in n_list]))
    rows = []
    cache = {}

    def solution(n):
        if n not in cache:
            cache[n] = solve_dlp(contour, rhs, n, d)
        return cache[n]

    for n in n_list:
        rows.append((n, relative_error(solution(n), solution(2 * n))))
        cache = {k: v for k, v in cache.items() if 2 * n <= k}
    return rows


class _CurveSpec:
    """Picklable stand-in that rebuilds a built-in contour in a worker process."""

    def __init__(self, name, params):
        if name not in ("l1", "l2", "ellipse"):
            raise InvalidArgumentError("parallel convergence studies need a built-in curve")
        self.name = name
        self.params = dict(params)

    def __reduce__(self):
        return (make_curve, (self.name,) + ((self.params["omega"],) if "omega" in self.params
                                            else (None, self.params["a"], self.params["b"])))


def condition_of(contour, n, d):
    """Spectral condition number of the Gauss-Legendre Nystrom matrix."""
    return condition_number_2(assemble_matrix(Discretization.gauss(contour, n, d)))
