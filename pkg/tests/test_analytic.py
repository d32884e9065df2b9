"""Closed-form curves: rejection lists, sinc transfer shapes, resolution."""

import numpy as np
import pytest

from emtest import (
    Aperture,
    Medium,
    PlaneWave,
    SphericalWave,
    apply_aperture,
    fundamental_for_radius,
    noise_to_signal,
    numeric_transfer,
    reject_freqs_cube_axis,
    reject_freqs_cube_diagonal,
    resolution,
    resolution_radius,
    sinc,
    spherical_em,
    transfer_cap,
    transfer_cube,
    transfer_hemisphere,
    transfer_sphere,
)
from emtest.errors import BadArgument, BadEdge, BadFrequency, BadGeometry, BadRadius


def test_reject_freqs_axis_values():
    assert reject_freqs_cube_axis(0.1, 340.0, 5) == pytest.approx(
        [1700.0, 5100.0, 8500.0], rel=1e-12
    )
    # halving the edge doubles the rejection frequency
    assert reject_freqs_cube_axis(0.05, 340.0, 1) == pytest.approx([3400.0], rel=1e-12)


def test_reject_freqs_axis_exact_odd_multiples():
    freqs = reject_freqs_cube_axis(0.013, 341.7, 9)
    odds = range(1, 10, 2)
    assert freqs == [freqs[0] * n for n in odds]


def test_reject_freqs_errors():
    with pytest.raises(BadArgument):
        reject_freqs_cube_axis(0.1, 340.0, 0)
    with pytest.raises(BadEdge):
        reject_freqs_cube_axis(-0.1, 340.0, 1)
    with pytest.raises(BadEdge):
        reject_freqs_cube_diagonal(0.0, 340.0, 1)


def test_reject_freqs_diagonal_values_and_scalings():
    diag = reject_freqs_cube_diagonal(0.1, 340.0, 1)
    assert diag == pytest.approx([340.0 / (np.sqrt(2) * 0.1)], rel=1e-12)
    axis = reject_freqs_cube_axis(0.1, 340.0, 7)
    diag7 = reject_freqs_cube_diagonal(0.1, 340.0, 7)
    for a, b in zip(axis, diag7):
        assert b / a == pytest.approx(np.sqrt(2), rel=1e-12)
    half = reject_freqs_cube_diagonal(0.2, 340.0, 7)
    for a, b in zip(diag7, half):
        assert b == pytest.approx(a / 2, rel=1e-12)


def test_transfer_sphere_reference_points():
    assert transfer_sphere(0.0, 0.1, 340.0) == 1.0
    assert abs(transfer_sphere(1700.0, 0.1, 340.0)) < 1e-15
    assert transfer_sphere(850.0, 0.1, 340.0) == pytest.approx(2 / np.pi, rel=1e-12)
    with pytest.raises(BadRadius):
        transfer_sphere(100.0, 0.0, 340.0)


def test_transfer_hemisphere_reference_points():
    assert transfer_hemisphere(0.0, 0.1, 340.0) == 1.0
    assert abs(transfer_hemisphere(3400.0, 0.1, 340.0)) < 1e-15
    assert transfer_hemisphere(1700.0, 0.1, 340.0) == pytest.approx(2 / np.pi, rel=1e-12)


def test_transfer_cap_far_source_full_angle_matches_sphere():
    r, c = 0.1, 340.0
    f = np.linspace(0.0, 2 * fundamental_for_radius(r, c), 181)
    cap = transfer_cap(f, r, 1000.0 * r, np.pi, c)
    assert np.max(np.abs(cap - transfer_sphere(f, r, c))) < 1e-3


def test_transfer_cap_far_source_half_angle_matches_half_hemisphere():
    r, c = 0.1, 340.0
    f = np.linspace(0.0, 2 * fundamental_for_radius(r, c), 181)
    cap = transfer_cap(f, r, 1000.0 * r, np.pi / 2, c)
    assert np.max(np.abs(cap - 0.5 * transfer_hemisphere(f, r, c))) < 1e-2


def test_transfer_cap_dc_is_area_fraction():
    for phi0 in (0.3, np.pi / 2, 2.2, np.pi):
        assert transfer_cap(0.0, 0.1, 10.0, phi0, 340.0) == pytest.approx(
            (1 - np.cos(phi0)) / 2, rel=1e-12
        )


def test_transfer_cap_against_numeric_aperture_oracle():
    # Brute-force oracle: shaded Fibonacci array driven by a spherical source
    # at the cap's facing distance.
    r, c = 0.1, 340.0
    medium = Medium(c)
    f = np.linspace(0.0, 2 * fundamental_for_radius(r, c), 61)
    for phi0 in (np.pi / 2, 1.0):
        R_src = 1000.0 * r
        g = apply_aperture(
            spherical_em(r, 4096), Aperture.cap((0, 0, 1.0), phi0)
        )
        stim = SphericalWave(source_pos=(0, 0, R_src), p_ref=1.0, f=1.0)
        numeric = numeric_transfer(g, stim, f, medium).values
        area = (1 - np.cos(phi0)) / 2
        analytic_normalized = transfer_cap(f, r, R_src, phi0, c) / area
        assert np.max(np.abs(numeric - analytic_normalized)) < 1e-2


def test_transfer_cap_validation():
    with pytest.raises(BadGeometry):
        transfer_cap(100.0, 0.1, 0.05, np.pi, 340.0)
    with pytest.raises(BadArgument):
        transfer_cap(100.0, 0.1, 1.0, 0.0, 340.0)


def test_transfer_cube_closed_form_matches_axis_and_diagonal_nulls():
    d, c = 0.1, 340.0
    assert transfer_cube(0.0, d, (1.0, 0, 0), c) == 1.0
    assert abs(transfer_cube(1700.0, d, (1.0, 0, 0), c)) < 1e-15
    diag = np.array([1.0, 1.0, 0]) / np.sqrt(2)
    f_diag = c / (np.sqrt(2) * d)
    assert abs(transfer_cube(f_diag, d, diag, c)) < 1e-12


def test_resolution_reference_points():
    assert resolution(0.0, 10000.0, 340.0) == 1.0
    assert abs(resolution(0.017, 10000.0, 340.0)) < 1e-14
    assert resolution(0.0085, 10000.0, 340.0) == pytest.approx(2 / np.pi, rel=1e-12)
    with pytest.raises(BadArgument):
        resolution(-0.1, 10000.0, 340.0)


def test_resolution_radius_values():
    assert resolution_radius(10000.0, 340.0) == pytest.approx(0.017, rel=1e-12)
    assert resolution_radius(1700.0, 340.0) == pytest.approx(0.1, rel=1e-12)
    assert resolution_radius(20000.0, 340.0) == pytest.approx(0.0085, rel=1e-12)
    with pytest.raises(BadFrequency):
        resolution_radius(0.0, 340.0)


def test_fundamental_for_radius_values():
    assert fundamental_for_radius(0.1, 340.0) == pytest.approx(1700.0, rel=1e-12)
    assert fundamental_for_radius(0.05, 340.0) == pytest.approx(3400.0, rel=1e-12)
    assert fundamental_for_radius(1.0, 340.0) == pytest.approx(170.0, rel=1e-12)
    with pytest.raises(BadRadius):
        fundamental_for_radius(-1.0, 340.0)


def test_noise_to_signal():
    r, c = 0.1, 340.0
    assert abs(noise_to_signal(10.0, fundamental_for_radius(r, c), r, c)) < 1e-14
    assert noise_to_signal(0.0, 500.0, r, c) == 0.0
    assert noise_to_signal(10.0, 850.0, r, c) == pytest.approx(20 / np.pi, rel=1e-12)
    with pytest.raises(BadArgument):
        noise_to_signal(-1.0, 100.0, r, c)


def test_transfer_equals_resolution_on_matched_arguments():
    # One sinc describes both curves: swapping the roles of r and e0 at a
    # common argument gives identical values.
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.uniform(1e-6, 0.5)
        f = rng.uniform(10.0, 20000.0)
        assert transfer_sphere(f, a, 340.0) == resolution(a, f, 340.0)


def test_sinc_parity_bounds_and_series_branch():
    x = np.linspace(-40.0, 40.0, 20001)
    vals = sinc(x)
    assert np.all(vals <= 1.0)
    assert np.all(vals >= -0.2173)
    assert np.allclose(vals, sinc(-x), atol=0)
    # series branch continuity around the cutover
    for x0 in (0.0, 1e-7, 9.9e-7, 1.1e-6):
        assert sinc(x0) == pytest.approx(1.0 - x0 * x0 / 6.0, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sign_changes_at_multiples_of_pi(n):
    r, c = 0.1, 340.0
    f_zero = c * n / (2 * r)
    eps = 1.0
    assert transfer_sphere(f_zero - eps, r, c) * transfer_sphere(f_zero + eps, r, c) < 0
    f = 10000.0
    e_zero = c * n / (2 * f)
    de = 1e-5
    assert resolution(e_zero - de, f, c) * resolution(e_zero + de, f, c) < 0
