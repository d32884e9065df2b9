"""Harmonic acoustic sources and free-field pressure evaluation.

Sources are strictly monochromatic; multi-tone stimuli are represented as
lists of sources with harmonically related frequencies. The medium is ideal:
no absorption, no scattering, and microphones are assumed acoustically
transparent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import BadArgument, EvaluationAtSource, FrequencyMismatch

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Medium:
    """Propagation medium; only the sound speed matters here.

    Parameters
    ----------
    c : float
        Sound speed in m/s. Defaults to 343 (air at ~20 C).
    """

    c: float = 343.0

    def __post_init__(self):
        if self.c <= 0:
            raise BadArgument(f"sound speed must be positive, got {self.c}")


@dataclass(frozen=True)
class PlaneWave:
    """Monochromatic plane wave.

    ``direction`` is the unit propagation vector; ``phase0`` is the phase at
    the coordinate origin at t = 0, so the pressure field is
    ``p0 * cos(2*pi*f*(t - direction.x/c) + phase0)``.
    """

    p0: float
    f: float
    direction: np.ndarray
    phase0: float = 0.0

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        object.__setattr__(self, "direction", d)
        if d.shape != (3,):
            raise BadArgument("direction must be a 3-vector")
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise BadArgument("direction must be a unit vector (|d|=1 within 1e-12)")
        if self.f <= 0:
            raise BadArgument(f"frequency must be positive, got {self.f}")
        if self.p0 < 0:
            raise BadArgument(f"amplitude must be nonnegative, got {self.p0}")


@dataclass(frozen=True)
class SphericalWave:
    """Monochromatic spherical (spot-source) wave with 1/d spreading.

    The amplitude at distance d from ``source_pos`` is
    ``p_ref * ref_dist / d``; ``phase0`` is the source phase, so the field is
    ``(p_ref*ref_dist/d) * cos(2*pi*f*(t - d/c) + phase0)``.
    """

    source_pos: np.ndarray
    p_ref: float
    f: float
    ref_dist: float = 1.0
    phase0: float = 0.0

    def __post_init__(self):
        p = np.asarray(self.source_pos, dtype=float)
        object.__setattr__(self, "source_pos", p)
        if p.shape != (3,):
            raise BadArgument("source_pos must be a 3-vector")
        if self.ref_dist <= 0:
            raise BadArgument(f"ref_dist must be positive, got {self.ref_dist}")
        if self.f <= 0:
            raise BadArgument(f"frequency must be positive, got {self.f}")
        if self.p_ref < 0:
            raise BadArgument(f"amplitude must be nonnegative, got {self.p_ref}")


WaveSource = Union[PlaneWave, SphericalWave]

_DEFAULT_MEDIUM = Medium()


def plane_pressure(w: PlaneWave, x, t, medium: Medium = _DEFAULT_MEDIUM):
    """Pressure of a plane wave at point(s) ``x`` and time(s) ``t``, in Pa.

    ``x`` has shape (..., 3); ``t`` is a scalar or an array broadcastable
    against the leading shape of ``x``. The result follows numpy broadcasting.
    """
    x = np.asarray(x, dtype=float)
    travel = x @ w.direction / medium.c
    return w.p0 * np.cos(TWO_PI * w.f * (np.asarray(t) - travel) + w.phase0)


def spherical_pressure(w: SphericalWave, x, t, medium: Medium = _DEFAULT_MEDIUM):
    """Pressure of a spherical wave at ``x`` and ``t``, in Pa.

    Raises EvaluationAtSource if any evaluation point coincides with the
    source (distance below 1e-12 m).
    """
    x = np.asarray(x, dtype=float)
    d = np.linalg.norm(x - w.source_pos, axis=-1)
    if np.any(d < 1e-12):
        raise EvaluationAtSource("pressure requested within 1e-12 m of the source")
    amp = w.p_ref * w.ref_dist / d
    return amp * np.cos(TWO_PI * w.f * (np.asarray(t) - d / medium.c) + w.phase0)


def pressure(source: WaveSource, x, t, medium: Medium = _DEFAULT_MEDIUM):
    """Dispatch to plane_pressure / spherical_pressure by source type."""
    if isinstance(source, PlaneWave):
        return plane_pressure(source, x, t, medium)
    if isinstance(source, SphericalWave):
        return spherical_pressure(source, x, t, medium)
    raise BadArgument(f"unsupported source type {type(source).__name__}")


def phasor_at(source: WaveSource, x, f_expected: float, medium: Medium = _DEFAULT_MEDIUM):
    """Steady-state complex pressure phasor of ``source`` at point(s) ``x``.

    The convention is ``pressure(x, t) = Re(phasor * exp(i*2*pi*f*t))``. The
    source frequency must equal ``f_expected`` (within 1e-12 relative),
    otherwise FrequencyMismatch is raised. ``x`` has shape (..., 3) and the
    result has the leading shape of ``x``.
    """
    if abs(source.f - f_expected) > 1e-12 * max(abs(f_expected), 1.0):
        raise FrequencyMismatch(
            f"source frequency {source.f} Hz != analysis frequency {f_expected} Hz"
        )
    x = np.asarray(x, dtype=float)
    if isinstance(source, PlaneWave):
        amp = source.p0
        travel = x @ source.direction / medium.c
    elif isinstance(source, SphericalWave):
        d = np.linalg.norm(x - source.source_pos, axis=-1)
        if np.any(d < 1e-12):
            raise EvaluationAtSource("phasor requested within 1e-12 m of the source")
        amp = source.p_ref * source.ref_dist / d
        travel = d / medium.c
    else:
        raise BadArgument(f"unsupported source type {type(source).__name__}")
    return amp * np.exp(1j * (source.phase0 - TWO_PI * source.f * travel))


def superpose(sources: Iterable[WaveSource], x, t, medium: Medium = _DEFAULT_MEDIUM):
    """Total pressure of several sources at ``x`` and ``t`` (exact linearity).

    An empty source list yields 0.0.
    """
    total = 0.0
    for s in sources:
        total = total + pressure(s, x, t, medium)
    return total
