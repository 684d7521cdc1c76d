import math

import numpy as np
import pytest

from nystrom_dlp import Contour, composite_integrate, curve_ellipse, curve_l1, gauss_legendre, kernel_bracket, kernel_matrix
from nystrom_dlp.dlp import Regime, get_rhs, rhs_const2, rhs_f1, rhs_f2
from nystrom_dlp.errors import CornerEvaluationError, InvalidArgumentError

from oracles import naive_kernel_matrix

OMEGA = 0.3 * math.pi


def square_contour():
    verts = np.array([0, 1, 1 + 1j, 1j, 0])

    def g(s):
        s = np.asarray(s, dtype=float)
        k = np.minimum((4 * s).astype(int), 3)
        return verts[k] + (4 * s - k) * (verts[k + 1] - verts[k])

    def dg(s):
        k = np.minimum((4 * np.asarray(s, dtype=float)).astype(int), 3)
        return 4 * (verts[k + 1] - verts[k])

    return Contour(g, dg, lambda s: np.zeros(np.shape(s), dtype=complex), q=4)


def test_same_straight_edge_is_zero():
    c = square_contour()
    assert kernel_bracket(c, 0.05, 0.2).value == 0
    assert kernel_bracket(c, 0.6, 0.7).value == 0


def test_bracket_is_real():
    c = curve_l1(OMEGA)
    rng = np.random.default_rng(1)
    for s, t in rng.uniform(0.01, 0.99, (20, 2)):
        assert abs(kernel_bracket(c, s, t).value.imag) < 1e-15


def test_circle_kernel_is_constant_one():
    c = curve_ellipse(1, 1)
    s = np.linspace(0.013, 0.97, 9)
    k = kernel_matrix(c, s, s)
    np.testing.assert_allclose(k, 1.0, atol=1e-13)


def test_diagonal_limit_matches_numeric_limit_circle():
    c = curve_ellipse(1, 1)
    for s in (0.0, 0.1, 0.37, 0.8):
        on = kernel_bracket(c, s, s)
        assert on.regime is Regime.DIAGONAL_LIMIT
        near = kernel_bracket(c, s + 1e-5, s)
        assert near.regime is Regime.OFF_DIAGONAL
        assert abs(on.value - near.value) < 1e-6


@pytest.mark.parametrize("a,b", [(2, 1), (1, 3)])
def test_diagonal_limit_matches_symmetric_numeric_limit(a, b):
    # one-sided differences approach the limit only to O(h) off the circle
    c = curve_ellipse(a, b)
    for s in (0.0, 0.1, 0.37, 0.8):
        on = kernel_bracket(c, s, s).value
        near = 0.5 * (kernel_bracket(c, s + 1e-5, s).value + kernel_bracket(c, s - 1e-5, s).value)
        assert abs(on - near) < 1e-6


def test_two_term_formula_reevaluated():
    c = curve_l1(OMEGA)
    s, t = 0.3, 0.7
    tau, dtau, pt = c.gamma(s), c.dgamma(s), c.gamma(t)
    term1 = dtau / (tau - pt)
    term2 = np.conj(dtau) / np.conj(tau - pt)
    expected = (term1 - term2) / (2j * math.pi)
    assert abs(kernel_bracket(c, s, t).value - expected) < 1e-15


def test_kernel_matrix_matches_naive_loop():
    c = curve_l1(OMEGA)
    rule = gauss_legendre(4)
    n = 5
    s = ((np.arange(n)[:, None] + rule.nodes[None, :]) / n).ravel()
    w = np.tile(rule.weights, n) / n
    np.testing.assert_allclose(kernel_matrix(c, s, s, w), naive_kernel_matrix(c, s, s, w).real, atol=1e-13)
    assert np.max(np.abs(naive_kernel_matrix(c, s, s, w).imag)) < 1e-13


def test_weights_shape_checked():
    c = curve_ellipse(1, 1)
    with pytest.raises(InvalidArgumentError):
        kernel_matrix(c, [0.1, 0.2], [0.1], weights=[1.0])


@pytest.mark.parametrize("a,b", [(2, 1), (1, 1), (1, 0.4)])
def test_gauss_integral_on_ellipse(a, b):
    c = curve_ellipse(a, b)
    rng = np.random.default_rng(7)
    for t in rng.uniform(0, 1, 5):
        total = composite_integrate(gauss_legendre(8), 16, lambda s: kernel_matrix(c, s, [t])[0])
        assert abs(total - 1) < 1e-10


def test_kernel_continuous_across_diagonal():
    c = curve_ellipse(2, 1)
    s = 0.21
    diag = kernel_bracket(c, s, s).value
    errs = [abs(kernel_bracket(c, s + h, s).value - diag) for h in (1e-2, 1e-3, 1e-4)]
    # first-order approach to the limit
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-3


def test_bracket_at_corner_raises():
    with pytest.raises(CornerEvaluationError):
        kernel_bracket(curve_l1(OMEGA), 0.0, 0.5)


def test_rhs_f1():
    assert rhs_f1(1j) == -1j
    assert rhs_f1(2j) == -4j
    assert rhs_f1(0) == 0


def test_rhs_f2_branches():
    assert rhs_f2(-1 - 1j) == -1j
    assert rhs_f2(0) == 1
    assert rhs_f2(1j) == 0
    assert rhs_f2(2.0) == 1 + 2j


def test_rhs_vectorized():
    z = np.array([1j, -1 - 1j, 3.0])
    np.testing.assert_array_equal(rhs_f2(z), [0, -1j, 1 + 3j])
    np.testing.assert_array_equal(rhs_const2(z), [2, 2, 2])


def test_get_rhs():
    assert get_rhs("f1") is rhs_f1
    f = lambda z: z  # noqa: E731
    assert get_rhs(f) is f
    with pytest.raises(InvalidArgumentError):
        get_rhs("f3")
