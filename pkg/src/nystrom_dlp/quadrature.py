"""Gauss-Legendre rules on [0, 1] and the composite panel rule.

The composite rule splits [0, 1] into ``n`` equal panels and applies the
``d``-point rule on each one::

    int_0^1 u(s) ds  ~  sum_l sum_p w_p u((l + eps_p) / n) / n
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_int
from .errors import InvalidArgumentError, NumericalFailureError

MAX_POINTS = 64
NEWTON_TOL = 1e-15
NEWTON_MAXITER = 100


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuadratureRule:
    """A symmetric rule on [0, 1] with ascending nodes.

    Parameters
    ----------
    nodes : array_like, shape (d,)
        Strictly increasing points in the open interval (0, 1).
    weights : array_like, shape (d,)
        Positive weights summing to one.
    """

    nodes: np.ndarray
    weights: np.ndarray
    d: int = field(init=False)

    def __post_init__(self):
        nodes = _readonly(self.nodes)
        weights = _readonly(self.weights)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise InvalidArgumentError("nodes and weights must be non-empty 1-d arrays of equal length")
        if not (np.all(nodes > 0.0) and np.all(nodes < 1.0)):
            raise InvalidArgumentError("nodes must lie in the open interval (0, 1)")
        if np.any(np.diff(nodes) <= 0.0):
            raise InvalidArgumentError("nodes must be strictly increasing")
        if np.any(weights <= 0.0):
            raise InvalidArgumentError("weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-14:
            raise InvalidArgumentError(f"weights must sum to 1, got {weights.sum()!r}")
        if np.max(np.abs(nodes + nodes[::-1] - 1.0)) > 1e-13 or np.max(np.abs(weights - weights[::-1])) > 1e-13:
            raise InvalidArgumentError("rule must be symmetric about 1/2")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "d", nodes.size)

    def reversed(self):
        """Return the rule with nodes ``1 - eps`` (re-sorted ascending)."""
        return QuadratureRule(1.0 - self.nodes[::-1], self.weights[::-1])

    def __eq__(self, other):
        if not isinstance(other, QuadratureRule):
            return NotImplemented
        return np.array_equal(self.nodes, other.nodes) and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.nodes.tobytes(), self.weights.tobytes()))


def _legendre_and_derivative(d, x):
    p_prev, p = 1.0, x
    for k in range(2, d + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = d * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(d):
    """Return the ``d``-point Gauss-Legendre rule mapped to [0, 1].

    Roots of the Legendre polynomial are found by Newton's method from the
    usual cosine initial guesses; only the positive half is computed and the
    other half is mirrored so the rule is symmetric by construction.

    Parameters
    ----------
    d : int
        Number of points, ``1 <= d <= 64``.

    Returns
    -------
    QuadratureRule
    """
    d = check_int(d, "d", min_value=1, max_value=MAX_POINTS)
    if d == 1:
        return QuadratureRule([0.5], [1.0])
    half = (d + 1) // 2
    x = np.empty(half)
    w = np.empty(half)
    for i in range(half):
        # i-th largest root
        xi = np.cos(np.pi * (i + 0.75) / (d + 0.5))
        for _ in range(NEWTON_MAXITER):
            p, dp = _legendre_and_derivative(d, xi)
            dx = p / dp
            xi -= dx
            if abs(dx) <= NEWTON_TOL:
                break
        else:
            raise NumericalFailureError(f"Newton iteration for root {i} of P_{d} did not converge")
        _, dp = _legendre_and_derivative(d, xi)
        x[i] = xi
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp)
    if d % 2:
        x[-1] = 0.0
    # x is descending and positive; build the ascending rule on [-1, 1]
    xs = np.concatenate([-x, x[::-1][d % 2:]])
    ws = np.concatenate([w, w[::-1][d % 2:]])
    nodes = 0.5 * (1.0 + xs)
    weights = 0.5 * ws
    weights = weights / weights.sum()
    return QuadratureRule(nodes, weights)


@dataclass(frozen=True)
class CompositeGrid:
    """Abscissae ``s_lp = (l + eps_p)/n`` of the composite rule, flattened l-major."""

    n: int
    rule: QuadratureRule

    def __post_init__(self):
        object.__setattr__(self, "n", check_int(self.n, "n", min_value=1))

    @property
    def abscissae(self):
        return ((np.arange(self.n)[:, None] + self.rule.nodes[None, :]) / self.n).ravel()

    @property
    def weights(self):
        """Composite weights ``w_p / n`` aligned with :attr:`abscissae`."""
        return np.tile(self.rule.weights, self.n) / self.n

    @property
    def panel_index(self):
        return np.repeat(np.arange(self.n), self.rule.d)

    def __len__(self):
        return self.n * self.rule.d


def composite_integrate(rule, n, f):
    """Integrate ``f`` over [0, 1] with the ``n``-panel composite rule.

    ``f`` is called once with the array of all ``n*d`` abscissae and must
    return an array of the same length.
    """
    grid = CompositeGrid(n, rule)
    values = np.asarray(f(grid.abscissae))
    if values.shape != (len(grid),):
        raise InvalidArgumentError(f"integrand returned shape {values.shape}, expected ({len(grid)},)")
    return np.sum(grid.weights * values)
