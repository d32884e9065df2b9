"""Array constructions: cubic vertex frame, Fibonacci sphere, shading."""

import numpy as np
import pytest

from emtest import Aperture, apply_aperture, cubic_em, spherical_em, transformed
from emtest.errors import ApertureOnCube, BadEdge, BadRadius, TooFewMics


def _mic(g, mic_id):
    return next(m for m in g.mics if m.id == mic_id)


def test_cube_local_frame():
    g = cubic_em(0.1)
    m4 = _mic(g, 4).pos
    # M4 is the local origin; M1, M3, M8 sit on the local X, Y, Z axes.
    assert np.allclose(_mic(g, 1).pos - m4, [0.1, 0, 0], atol=1e-15)
    assert np.allclose(_mic(g, 3).pos - m4, [0, 0.1, 0], atol=1e-15)
    assert np.allclose(_mic(g, 8).pos - m4, [0, 0, 0.1], atol=1e-15)


def test_cube_face_diagonal_plane():
    # M1, M3, M5, M7 are coplanar with normal along the local (1,1,0)
    # face diagonal; this is the wavefront plane of the oblique rejection case.
    g = cubic_em(0.1)
    pts = np.array([_mic(g, i).pos for i in (1, 3, 5, 7)])
    normal = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
    projections = pts @ normal
    assert np.ptp(projections) < 1e-15


def test_cube_nearest_neighbor_distances_equal_edge():
    d = 0.37
    g = cubic_em(d)
    pos = g.positions
    dists = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=2)
    np.fill_diagonal(dists, np.inf)
    assert np.allclose(np.sort(dists, axis=1)[:, :3], d, rtol=1e-12)


def test_cube_center_of_mass_is_center():
    g = cubic_em(0.1, center=(1.0, -2.0, 0.5))
    assert np.allclose(g.positions.mean(axis=0), g.center, atol=1e-12)


def test_cube_circumradius_and_defaults():
    g = cubic_em(0.1)
    radii = np.linalg.norm(g.positions - g.center, axis=1)
    assert np.allclose(radii, 0.1 * np.sqrt(3) / 2, atol=1e-12)
    assert np.all(g.weights == 1.0)
    assert np.all(g.delays == 0.0)
    assert np.all(g.sensitivities == 1.0)
    assert np.all(g.active_mask)


def test_cube_orientation_rotates_frame():
    theta = 0.7
    rot = np.array([
        [np.cos(theta), -np.sin(theta), 0.0],
        [np.sin(theta), np.cos(theta), 0.0],
        [0.0, 0.0, 1.0],
    ])
    g = cubic_em(0.1, orientation=rot)
    m4 = _mic(g, 4).pos
    assert np.allclose(_mic(g, 1).pos - m4, rot @ [0.1, 0, 0], atol=1e-15)


def test_cubic_em_rejects_bad_edge():
    with pytest.raises(BadEdge):
        cubic_em(0.0)
    with pytest.raises(BadEdge):
        cubic_em(-1.0)


def test_sphere_radius_and_mean():
    g = spherical_em(0.1, 2048)
    radii = np.linalg.norm(g.positions - g.center, axis=1)
    assert np.max(np.abs(radii - 0.1)) < 1e-12
    assert np.linalg.norm(g.positions.mean(axis=0) - g.center) < 1e-3 * 0.1


def test_sphere_construction_errors():
    with pytest.raises(TooFewMics):
        spherical_em(0.1, 3)
    with pytest.raises(BadRadius):
        spherical_em(0.0, 16)


def test_fibonacci_uniformity_low_degree_harmonics():
    # Near-uniform sampling: discrete averages of spherical harmonics of
    # degree 1..4 stay small.
    try:
        from scipy.special import sph_harm_y

        def harm(l, m_, theta, phi):
            return sph_harm_y(l, m_, theta, phi)
    except ImportError:
        from scipy.special import sph_harm

        def harm(l, m_, theta, phi):
            return sph_harm(m_, l, phi, theta)

    for n in (256, 1024):
        g = spherical_em(1.0, n)
        unit = g.positions - g.center
        theta = np.arccos(np.clip(unit[:, 2], -1, 1))
        phi = np.arctan2(unit[:, 1], unit[:, 0])
        for l in range(1, 5):
            for m_ in range(-l, l + 1):
                avg = np.mean(harm(l, m_, theta, phi))
                assert abs(avg) < 0.05, (n, l, m_)


def test_aperture_full_activates_everything():
    g = spherical_em(0.1, 64)
    shaded = apply_aperture(g, Aperture.hemisphere((0, 0, 1.0)))
    restored = apply_aperture(shaded, Aperture.full())
    assert np.all(restored.active_mask)


def test_hemisphere_activates_half():
    n = 2048
    g = spherical_em(0.1, n)
    shaded = apply_aperture(g, Aperture.hemisphere((1.0, 0, 0)))
    count = shaded.active_mask.sum()
    assert abs(count - n / 2) <= 0.02 * n
    # active mics all face the aperture direction
    radial = shaded.positions[shaded.active_mask] - shaded.center
    assert np.all(radial @ np.array([1.0, 0, 0]) >= -1e-12)


def test_cap_full_angle_equals_full():
    g = spherical_em(0.1, 512)
    capped = apply_aperture(g, Aperture.cap((0, 1.0, 0), np.pi))
    assert np.all(capped.active_mask)


def test_aperture_on_cube_raises():
    g = cubic_em(0.1)
    with pytest.raises(ApertureOnCube):
        apply_aperture(g, Aperture.hemisphere((1.0, 0, 0)))


def test_aperture_preserves_weights_and_geometry():
    g = spherical_em(0.1, 128)
    shaded = apply_aperture(g, Aperture.cap((0, 0, 1.0), 0.7))
    assert np.allclose(shaded.positions, g.positions)
    assert np.allclose(shaded.weights, g.weights)
    assert shaded.size == g.size


def test_transformed_is_rigid():
    g = spherical_em(0.25, 64, center=(0.1, 0.0, -0.2))
    theta = 1.1
    rot = np.array([
        [1.0, 0.0, 0.0],
        [0.0, np.cos(theta), -np.sin(theta)],
        [0.0, np.sin(theta), np.cos(theta)],
    ])
    t = np.array([0.5, -1.0, 2.0])
    moved = transformed(g, rot, t)
    assert np.allclose(moved.center, rot @ g.center + t, atol=1e-12)
    radii = np.linalg.norm(moved.positions - moved.center, axis=1)
    assert np.allclose(radii, 0.25, atol=1e-9)
