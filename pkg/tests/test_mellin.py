import math

import numpy as np
import pytest

from nystrom_dlp import fredholm_scan, k_omega, mellin_transform_check, n_omega, symbol_A
from nystrom_dlp.errors import InvalidArgumentError, PoleError
from nystrom_dlp.mellin import MellinLine, fredholm_profile, mellin_transform, offdiag_symbol, symbol_det

PI = math.pi
LINE = MellinLine()


def test_line_shift():
    assert LINE.shift == 0.5
    assert LINE.y(0.0) == 0.5j
    with pytest.raises(InvalidArgumentError):
        MellinLine(p=1.0)
    with pytest.raises(InvalidArgumentError):
        MellinLine(p=2.0, alpha=0.6)


def test_n_omega_values():
    assert abs(n_omega(PI / 2, 0.5j) - np.exp(-0.25j * PI)) < 1e-15
    assert abs(n_omega(PI, 0.5j) + 1j) < 1e-15


def test_n_omega_reflection_identity():
    # reflecting y -> -conj(y) swaps omega and 2 pi - omega
    rng = np.random.default_rng(11)
    for omega in (0.3 * PI, 0.9 * PI, 1.6 * PI):
        y = LINE.y(rng.uniform(-5, 5, 20))
        np.testing.assert_allclose(n_omega(omega, -np.conj(y)), -np.conj(n_omega(2 * PI - omega, y)), rtol=1e-13)
        np.testing.assert_allclose(offdiag_symbol(omega, -np.conj(y)), np.conj(offdiag_symbol(omega, y)), rtol=1e-13)


def test_offdiag_is_half_difference():
    y = LINE.y(np.linspace(-6, 6, 25))
    for omega in (0.2 * PI, 0.7 * PI, 1.3 * PI):
        half = (n_omega(omega, y) - n_omega(2 * PI - omega, y)) / 2
        np.testing.assert_allclose(offdiag_symbol(omega, y), half, rtol=0, atol=1e-13)


def test_pole():
    with pytest.raises(PoleError):
        n_omega(PI / 2, 0.0)


def test_symbol_at_pi_is_identity():
    for z in (-3.0, 0.0, 2.5):
        np.testing.assert_allclose(symbol_A(PI, LINE.y(z)).matrix, np.eye(2), atol=1e-15)


def test_symbol_at_half_pi():
    a = symbol_A(PI / 2, LINE.y(0.0))
    assert abs(a.offdiag - math.sqrt(0.5)) < 1e-15
    assert abs(a.det - 0.5) < 1e-12
    assert abs(a.det - np.linalg.det(a.matrix)) < 1e-15


def test_closed_form_det_matches_matrix():
    rng = np.random.default_rng(2)
    for omega, z in zip(rng.uniform(0.1, 1.9, 10) * PI, rng.uniform(-10, 10, 10)):
        y = LINE.y(z)
        assert abs(symbol_det(omega, y) - np.linalg.det(symbol_A(omega, y).matrix)) < 1e-12


def test_scan_flat_corner():
    value, _ = fredholm_scan(PI)
    assert value == pytest.approx(1.0, abs=1e-15)


def test_scan_right_angle():
    value, z = fredholm_scan(PI / 2)
    assert 0 < value <= 0.5 + 1e-12
    assert z == 0.0


@pytest.mark.parametrize("k", range(1, 20, 2))
def test_scan_positive(k):
    assert fredholm_scan(0.1 * k * PI)[0] > 0


def test_profile_shape():
    z, absdet = fredholm_profile(0.3 * PI, 10, 101)
    assert z.shape == absdet.shape == (101,)


def test_k_omega_values():
    assert np.all(k_omega(PI, np.array([0.1, 1.0, 7.0])) == pytest.approx(0, abs=1e-16))
    assert k_omega(PI / 2, 1.0) == pytest.approx(1 / (2 * PI), rel=1e-15)
    assert np.isrealobj(k_omega(0.3 * PI, np.linspace(0.1, 5, 7)))
    with pytest.raises(InvalidArgumentError):
        k_omega(PI / 2, 0.0)


def test_k_omega_matches_complex_form():
    # unsimplified complex difference of the two rational kernels
    z = np.linspace(0.05, 6, 40)
    for omega in (0.3 * PI, 1.2 * PI):
        e = np.exp(1j * omega)
        raw = (1 / (2j * PI)) * (1 / (1 - z * e) - 1 / (1 - z / e))
        np.testing.assert_allclose(k_omega(omega, z), raw.real, atol=1e-15)
        assert np.max(np.abs(raw.imag)) < 1e-15


def test_transform_flat_corner():
    assert mellin_transform_check(PI, [-1.0, 0.0, 2.0]) <= 1e-10


@pytest.mark.parametrize("omega", [PI / 2, 0.3 * PI])
def test_transform_matches_symbol(omega):
    assert mellin_transform_check(omega, [-2.0, -1.0, 0.0, 1.0, 2.0]) <= 1e-6


def test_transform_right_angle_value():
    assert abs(mellin_transform(PI / 2, 0.0) - math.sqrt(0.5)) < 1e-8
