"""Closed-form array response formulas.

All curves here are normalized, dimensionless and signed-real. The central
quantity is the sinc shape sin(x)/x: it describes both the frequency response
of the ideal spherical array to an external wave (argument 2*pi*f*r/c) and
its spatial resolution versus source offset (argument 2*pi*f*e0/c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadArgument,
    BadEdge,
    BadFrequency,
    BadGeometry,
    BadRadius,
)


@dataclass(frozen=True)
class TransferCurve:
    """A sampled transfer curve: frequencies in Hz, signed real values."""

    freqs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "freqs", np.asarray(self.freqs, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.freqs.shape != self.values.shape:
            raise BadArgument("freqs and values must have the same length")


def sinc(x):
    """sin(x)/x with the removable singularity expanded as 1 - x^2/6.

    The series branch is taken for x^2 < 1e-12, where it agrees with the
    ratio to full double precision. Even in x; scalar in, scalar out.
    """
    arr = np.asarray(x, dtype=float)
    small = arr * arr < 1e-12
    safe = np.where(small, 1.0, arr)
    out = np.where(small, 1.0 - arr * arr / 6.0, np.sin(safe) / safe)
    return float(out) if out.ndim == 0 else out


def reject_freqs_cube_axis(d: float, c: float, n_max: int) -> list:
    """Rejection frequencies c*n/(2d), n = 1, 3, 5, ..., n_max, for a cubic
    array and axis-incident plane waves.

    Returned values are exactly odd multiples of the first element.
    """
    if d <= 0:
        raise BadEdge(f"cube edge must be positive, got {d}")
    if c <= 0:
        raise BadArgument(f"sound speed must be positive, got {c}")
    if n_max < 1:
        raise BadArgument(f"n_max must be at least 1, got {n_max}")
    first = c / (2.0 * d)
    return [first * n for n in range(1, n_max + 1, 2)]


def reject_freqs_cube_diagonal(d: float, c: float, n_max: int) -> list:
    """Rejection frequencies c*n/(sqrt(2)*d) for wavefronts parallel to the
    face-diagonal plane (M1-M3-M7-M5) of the cubic array."""
    if d <= 0:
        raise BadEdge(f"cube edge must be positive, got {d}")
    if c <= 0:
        raise BadArgument(f"sound speed must be positive, got {c}")
    if n_max < 1:
        raise BadArgument(f"n_max must be at least 1, got {n_max}")
    first = c / (math.sqrt(2.0) * d)
    return [first * n for n in range(1, n_max + 1, 2)]


def transfer_sphere(f, r: float, c: float):
    """Full-sphere transfer function sin(2*pi*f*r/c)/(2*pi*f*r/c).

    Equals 1 at f = 0 and crosses zero at f = n*c/(2r).
    """
    if r <= 0:
        raise BadRadius(f"radius must be positive, got {r}")
    return sinc(2.0 * np.pi * np.asarray(f, dtype=float) * r / c)


def transfer_hemisphere(f, r: float, c: float):
    """Illuminated-hemisphere transfer function sin(pi*f*r/c)/(pi*f*r/c).

    The first zero sits at f = c/r, twice the full-sphere value.
    """
    if r <= 0:
        raise BadRadius(f"radius must be positive, got {r}")
    return sinc(np.pi * np.asarray(f, dtype=float) * r / c)


def transfer_cap(f, r: float, R_src: float, phi0: float, c: float):
    """Transfer function of a spherical array whose sensitive area is the cap
    of half-angle ``phi0`` facing a spherical source at distance ``R_src``.

    With alpha = r/R_src and B = sqrt(1 + alpha^2 - 2*alpha*cos(phi0)), the
    curve is

        ((1 - cos(phi0))/2) * sin(X)/X,   X = (pi*f*R_src/c) * (B - 1 + alpha),

    normalized so the zero-frequency value equals the active area fraction
    (1 - cos(phi0))/2. phi0 = pi reproduces transfer_sphere exactly; in the
    far-source limit with phi0 = pi/2 it tends to transfer_hemisphere / 2.
    """
    if r <= 0:
        raise BadRadius(f"radius must be positive, got {r}")
    if R_src <= r:
        raise BadGeometry(f"source distance {R_src} must exceed the radius {r}")
    if not 0 < phi0 <= np.pi:
        raise BadArgument(f"cap half-angle must lie in (0, pi], got {phi0}")
    alpha = r / R_src
    bracket = np.sqrt(1.0 + alpha * alpha - 2.0 * alpha * np.cos(phi0)) - 1.0 + alpha
    x = np.pi * np.asarray(f, dtype=float) * R_src / c * bracket
    area_fraction = (1.0 - np.cos(phi0)) / 2.0
    return area_fraction * sinc(x)


def transfer_cube(f, d: float, direction, c: float):
    """Exact transfer function of the 8-vertex cubic array for a plane wave.

    The vertex sum factorizes along the cube axes:
    R(f) = prod_k cos(pi*f*u_k*d/c) with u the unit propagation direction in
    the cube frame. Axis incidence gives cos(pi*f*d/c) (zeros at c*n/2d, odd
    n); face-diagonal incidence gives cos^2, with zeros at c*n/(sqrt(2)*d).
    """
    if d <= 0:
        raise BadEdge(f"cube edge must be positive, got {d}")
    u = np.asarray(direction, dtype=float)
    if u.shape != (3,) or abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise BadArgument("direction must be a unit 3-vector")
    f = np.asarray(f, dtype=float)
    out = np.ones_like(f)
    for comp in u:
        out = out * np.cos(np.pi * f * comp * d / c)
    return float(out) if out.ndim == 0 else out


def resolution(e0, f: float, c: float):
    """Spatial resolution function sin(2*pi*f*e0/c)/(2*pi*f*e0/c).

    ``e0`` is the offset of a spot source from the array center; the response
    is maximal at e0 = 0 and flips sign at every zero.
    """
    if np.any(np.asarray(e0) < 0):
        raise BadArgument("offset e0 must be nonnegative")
    if f <= 0:
        raise BadFrequency(f"frequency must be positive, got {f}")
    return sinc(2.0 * np.pi * f * np.asarray(e0, dtype=float) / c)


def resolution_radius(f: float, c: float) -> float:
    """Offset of the first zero of the resolution function: e0 = c/(2f)."""
    if f <= 0:
        raise BadFrequency(f"frequency must be positive, got {f}")
    return c / (2.0 * f)


def fundamental_for_radius(r: float, c: float) -> float:
    """Test fundamental placing the first rejection notch: f0 = c/(2r)."""
    if r <= 0:
        raise BadRadius(f"radius must be positive, got {r}")
    return c / (2.0 * r)


def noise_to_signal(a_h_over_a_put: float, f: float, r: float, c: float):
    """Noise-to-signal ratio of an external interferer versus a centered
    source: (Ah/Aput) * transfer_sphere(f, r, c)."""
    if a_h_over_a_put < 0:
        raise BadArgument("amplitude ratio must be nonnegative")
    return a_h_over_a_put * transfer_sphere(f, r, c)
