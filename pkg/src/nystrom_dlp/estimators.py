"""scikit-learn style front ends.

:class:`NystromSolver` fits a discretized solution on a contour and predicts
its values at arbitrary parameters. :class:`WedgeSigmaMin` is a transformer
mapping opening angles to the smallest singular value of the local corner
operator. :class:`CriticalAngleSweep` wraps the condition-number sweep. All
three support ``get_params``/``set_params`` and ``clone``.
"""

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from ._validation import check_int
from .dlp import get_rhs
from .localop import assemble_wedge
from .numerics import condition_number_2, singular_values
from .nystrom import Discretization, assemble, interpolate, solve_system
from .quadrature import gauss_legendre
from .sweep import SweepConfig, run_sweep


class NystromSolver(BaseEstimator):
    """Gauss-Legendre Nystrom solver for ``(I + V) x = f``.

    Parameters
    ----------
    n : int
        Number of panels; must be a multiple of the contour's corner count.
    d : int
        Points per panel.

    Attributes
    ----------
    discretization_ : Discretization
    solution_ : Solution
    nodes_ : ndarray of shape (n*d,)
        Parameters of the collocation points.
    values_ : ndarray of shape (n*d,)
        Solution values at ``nodes_``.
    """

    def __init__(self, n=64, d=16):
        self.n = n
        self.d = d

    def fit(self, contour, rhs="f1"):
        check_int(self.n, "n", min_value=1)
        check_int(self.d, "d", min_value=1, max_value=64)
        get_rhs(rhs)
        self.discretization_ = Discretization.gauss(contour, self.n, self.d)
        self.system_ = assemble(self.discretization_, rhs)
        self.solution_ = solve_system(self.system_)
        self.nodes_ = self.discretization_.target_params
        self.values_ = self.solution_.values
        return self

    def predict(self, s):
        """Nystrom interpolant at parameters ``s`` (1-d array-like)."""
        check_is_fitted(self, "solution_")
        s = check_array(np.atleast_1d(s), ensure_2d=False, dtype=float)
        return interpolate(self.solution_, s)

    def condition_number(self):
        check_is_fitted(self, "system_")
        return condition_number_2(self.system_.matrix)


class WedgeSigmaMin(TransformerMixin, BaseEstimator):
    """Map opening angles (radians, one per row) to ``sigma_min`` of the wedge section."""

    def __init__(self, d=16, N=64):
        self.d = d
        self.N = N

    def fit(self, X=None, y=None):
        self.rule_ = gauss_legendre(self.d)
        check_int(self.N, "N", min_value=1)
        return self

    def transform(self, X):
        check_is_fitted(self, "rule_")
        X = check_array(X, ensure_2d=False, dtype=float).reshape(-1)
        out = [singular_values(assemble_wedge(w, 0.0, self.rule_, N=self.N).matrix)[-1] for w in X]
        return np.asarray(out).reshape(-1, 1)


class CriticalAngleSweep(BaseEstimator):
    """Detect critical opening angles by a condition-number sweep.

    Parameters mirror :class:`~nystrom_dlp.sweep.SweepConfig` (angles in
    units of pi).

    Attributes
    ----------
    report_ : SweepReport
    critical_angles_ : ndarray
        Peak locations in units of pi.
    """

    def __init__(self, curve="l1", lo=0.1, hi=1.9, step=0.005, n=128, d=16,
                 kappa_threshold=1e16, width_floor=1e-6, max_rounds=40, workers=1):
        self.curve = curve
        self.lo = lo
        self.hi = hi
        self.step = step
        self.n = n
        self.d = d
        self.kappa_threshold = kappa_threshold
        self.width_floor = width_floor
        self.max_rounds = max_rounds
        self.workers = workers

    def fit(self, X=None, y=None):
        self.config_ = SweepConfig(**self.get_params())
        self.report_ = run_sweep(self.config_)
        self.critical_angles_ = np.array(self.report_.critical_angles)
        return self

    def predict(self, X):
        """Distance (units of pi) from each angle in ``X`` (radians) to the nearest critical angle."""
        check_is_fitted(self, "critical_angles_")
        X = check_array(X, ensure_2d=False, dtype=float).reshape(-1) / math.pi
        if self.critical_angles_.size == 0:
            return np.full(X.shape, np.inf)
        return np.min(np.abs(X[:, None] - self.critical_angles_[None, :]), axis=1)
