import math

import numpy as np
import pytest

from nystrom_dlp import (
    Discretization,
    assemble,
    condition_of,
    convergence_study,
    curve_ellipse,
    curve_l1,
    curve_l2,
    gauss_legendre,
    interpolate,
    relative_error,
    solve_dlp,
    solve_system,
)
from nystrom_dlp.errors import CornerEvaluationError, InvalidArgumentError
from nystrom_dlp.nystrom import NystromSystem, Solution, assemble_matrix, l2_weights

OMEGA = 0.3 * math.pi


def rel_l2(sol, target):
    w = l2_weights(sol.disc)
    return math.sqrt(np.sum(w * np.abs(sol.values - target) ** 2) / np.sum(w * np.abs(target) ** 2))


def test_discretization_checks():
    with pytest.raises(InvalidArgumentError):
        Discretization.gauss(curve_l2(OMEGA), 5, 4)
    with pytest.raises(InvalidArgumentError):
        Discretization(curve_l1(OMEGA), gauss_legendre(4), 4, gauss_legendre(3))
    disc = Discretization.gauss(curve_l2(OMEGA), 6, 4)
    assert disc.size == 24
    assert disc.panel_node(disc.flat_index(2, 3)) == (2, 3)


def test_circle_diagonal_entries():
    disc = Discretization.gauss(curve_ellipse(1, 1), 2, 2)
    a = assemble_matrix(disc)
    w = gauss_legendre(2).weights
    expected = 1 + np.tile(w, 2) / 2 * (2 * math.pi) / (2 * math.pi)
    np.testing.assert_allclose(np.diag(a), expected, atol=1e-14)


def test_row_sums_are_one_on_circle():
    a = assemble_matrix(Discretization.gauss(curve_ellipse(1, 1), 16, 8))
    np.testing.assert_allclose((a - np.eye(a.shape[0])).sum(axis=1), 1.0, atol=1e-10)


def test_rhs_vector_f1():
    disc = Discretization.gauss(curve_l1(OMEGA), 32, 16)
    system = assemble(disc, "f1")
    t = disc.contour.gamma(disc.target_params)
    np.testing.assert_array_equal(system.rhs, -t * np.abs(t))


def test_circle_constant_solution():
    sol = solve_dlp(curve_ellipse(1, 1), "const2", 16, 8)
    np.testing.assert_allclose(sol.values, 1.0, atol=1e-10)


def test_l1_constant_solution_within_tolerance():
    sol = solve_dlp(curve_l1(OMEGA), "const2", 256, 16)
    assert rel_l2(sol, np.ones_like(sol.values)) <= 1e-2


def test_zero_kernel_returns_rhs():
    disc = Discretization.gauss(curve_ellipse(1, 1), 4, 2)
    g = np.arange(8) + 1j
    sol = solve_system(NystromSystem(disc, np.eye(8), g, lambda z: z))
    np.testing.assert_allclose(sol.values, g, atol=0)


def test_interpolate_reproduces_nodes():
    sol = solve_dlp(curve_l2(OMEGA), "f2", 8, 6)
    np.testing.assert_allclose(interpolate(sol, sol.disc.target_params), sol.values, atol=1e-9)


def test_interpolate_circle_constant():
    sol = solve_dlp(curve_ellipse(1, 1), "const2", 16, 8)
    assert abs(interpolate(sol, 0.123) - 1) < 1e-9


def test_interpolate_is_linear():
    sol = solve_dlp(curve_l1(OMEGA), "f1", 8, 4)
    doubled = Solution(sol.disc, 2 * sol.values, lambda z: 2 * sol.rhs_fn(z))
    s = np.linspace(0.01, 0.99, 17)
    np.testing.assert_array_equal(interpolate(doubled, s), 2 * interpolate(sol, s))


def test_interpolate_at_corner_raises():
    sol = solve_dlp(curve_l2(OMEGA), "f1", 4, 4)
    with pytest.raises(CornerEvaluationError):
        interpolate(sol, [0.3, 0.5])


def test_relative_error_identical_is_zero():
    contour = curve_l1(OMEGA)
    coarse = solve_dlp(contour, "f1", 8, 4)
    fine_disc = Discretization.gauss(contour, 16, 4)
    fine = Solution(fine_disc, interpolate(coarse, fine_disc.target_params), coarse.rhs_fn, "f1")
    assert relative_error(coarse, fine) == 0.0


def test_relative_error_checks():
    contour = curve_l1(OMEGA)
    a = solve_dlp(contour, "f1", 4, 4)
    with pytest.raises(InvalidArgumentError):
        relative_error(a, solve_dlp(contour, "f1", 12, 4))
    with pytest.raises(InvalidArgumentError):
        relative_error(a, solve_dlp(contour, "f2", 8, 4))
    with pytest.raises(InvalidArgumentError):
        relative_error(a, solve_dlp(curve_l1(0.4 * math.pi), "f1", 8, 4))


def within_factor(value, reference, factor=5.0):
    return reference / factor <= value <= reference * factor


def test_error_f1_l1_n32():
    [(n, e)] = convergence_study(curve_l1(OMEGA), "f1", 16, [32])
    assert within_factor(e, 2.5e-3)


def test_error_f2_l1_n32():
    [(n, e)] = convergence_study(curve_l1(OMEGA), "f2", 16, [32])
    assert within_factor(e, 1.5e-2)


@pytest.mark.xfail(
    strict=True,
    reason="the computed (f1, L2) errors sit about 8x above the published column; "
    "they match the published (f2, L2) column instead",
)
def test_error_f1_l2_n96():
    [(n, e)] = convergence_study(curve_l2(OMEGA), "f1", 16, [96])
    assert within_factor(e, 1.1e-3)


@pytest.mark.slow
def test_error_f2_l2_n256():
    [(n, e)] = convergence_study(curve_l2(OMEGA), "f2", 16, [256])
    assert within_factor(e, 7.3e-3)


def test_convergence_decreasing_f1_l1():
    rows = convergence_study(curve_l1(OMEGA), "f1", 16, [8, 16, 32])
    errs = [e for _, e in rows]
    assert errs[0] > errs[1] > errs[2]


def test_convergence_workers_match():
    contour = curve_l2(OMEGA)
    assert convergence_study(contour, "f2", 4, [4, 8], workers=2) == convergence_study(contour, "f2", 4, [4, 8])


def test_convergence_rejects_duplicates():
    with pytest.raises(InvalidArgumentError):
        convergence_study(curve_l1(OMEGA), "f1", 4, [8, 8])


def test_condition_circle_moderate():
    assert 1 < condition_of(curve_ellipse(1, 1), 16, 8) < 100


def test_condition_near_critical_angle_is_large():
    stable = condition_of(curve_l1(OMEGA), 128, 16)
    assert np.isfinite(stable) and stable < 1e3
    assert condition_of(curve_l1(0.25165 * math.pi), 128, 16) >= 1e3 * stable
