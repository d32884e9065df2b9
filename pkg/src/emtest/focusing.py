"""Virtual focusing and acoustic imaging from a single record.

Refocusing the array on an interior point applies, per microphone, the delay
tau = (r - D)/c + tau0 and the gain K = r/D, where D is the distance from the
microphone to the focus target (law of cosines in the angle psi between the
microphone radial and the focus axis, and the offset eta of the target from
the center). tau0 = eta/c is the minimal base delay keeping every tau
nonnegative. Microphones sharing the same psi receive identical parameters,
so the output is invariant under rigid rotation of the whole scene about the
focus axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import metrology
from .beamform import FD_TAPS, delay_and_sum
from .errors import (
    BadArgument,
    BadTau0,
    EmptyGrid,
    FocusOutsideSphere,
    ZeroField,
)
from .geometry import ArrayGeometry, transformed
from .recordio import AcousticRecord, _atomic_write_bytes, synth_record
from .wavefield import Medium


@dataclass(frozen=True)
class FocusSetting:
    """A virtual focus target relative to the array center.

    ``axis`` is the unit vector from the center toward the target (None when
    the target is the center itself); ``tau0`` is the base delay, at least
    eta/c so that all derived delays are nonnegative.
    """

    target: np.ndarray
    eta: float
    axis: Optional[np.ndarray]
    tau0: float


def focus_setting(center, target, c: float, tau0: Optional[float] = None) -> FocusSetting:
    """Build a FocusSetting for ``target`` seen from ``center``.

    tau0 defaults to eta/c, the smallest base delay guaranteeing positivity.
    """
    center = np.asarray(center, dtype=float)
    target = np.asarray(target, dtype=float)
    delta = target - center
    eta = float(np.linalg.norm(delta))
    if tau0 is None:
        tau0 = eta / c
    if tau0 < eta / c:
        raise BadTau0(f"tau0 = {tau0} s is below eta/c = {eta / c} s")
    axis = delta / eta if eta > 0 else None
    return FocusSetting(target=target, eta=eta, axis=axis, tau0=float(tau0))


def focus_params(psi, eta: float, r: float, c: float, tau0: float):
    """Per-microphone refocus delay and gain.

    Parameters
    ----------
    psi : float or array
        Angle(s) in [0, pi] between the microphone radial and the focus axis.
    eta : float
        Offset of the focus target from the center, 0 <= eta < r.
    r, c : float
        Array radius (m) and sound speed (m/s).
    tau0 : float
        Base delay, at least eta/c.

    Returns ``(tau, gain)`` with tau = (r - D)/c + tau0 and gain = r/D, where
    D = sqrt(r^2 + eta^2 - 2*r*eta*cos(psi)) is the microphone-to-target
    distance. Sub-epsilon negative tau from rounding at psi = pi is clamped
    to exactly 0.
    """
    psi_arr = np.asarray(psi, dtype=float)
    if np.any(psi_arr < 0) or np.any(psi_arr > np.pi + 1e-12):
        raise BadArgument("psi must lie in [0, pi]")
    if r <= 0 or c <= 0:
        raise BadArgument("radius and sound speed must be positive")
    if eta < 0:
        raise BadArgument("eta must be nonnegative")
    if eta >= r:
        raise FocusOutsideSphere(f"focus offset {eta} m is not inside radius {r} m")
    if tau0 < eta / c:
        raise BadTau0(f"tau0 = {tau0} s is below eta/c = {eta / c} s")
    dist = np.sqrt(r * r + eta * eta - 2.0 * r * eta * np.cos(psi_arr))
    tau = (r - dist) / c + tau0
    tau = np.where((tau < 0) & (tau > -1e-15), 0.0, tau)
    gain = r / dist
    if tau.ndim == 0:
        return float(tau), float(gain)
    return tau, gain


def virtual_focus(rec: AcousticRecord, target, medium: Optional[Medium] = None) -> np.ndarray:
    """Refocus a stored record on ``target`` and return the summed series.

    Each channel is delayed by its own tau (band-limited interpolation) and
    scaled by its gain before summation; the output length equals the record
    length. ``medium`` overrides the record's stored sound speed when given.
    """
    c = medium.c if medium is not None else rec.c
    setting = focus_setting(rec.center, target, c)
    if setting.eta >= rec.radius:
        raise FocusOutsideSphere(
            f"target offset {setting.eta} m is not inside radius {rec.radius} m"
        )
    radial = rec.mic_positions - rec.center
    if setting.axis is None:
        psi = np.zeros(rec.n_channels)
    else:
        unit = radial / np.linalg.norm(radial, axis=1, keepdims=True)
        psi = np.arccos(np.clip(unit @ setting.axis, -1.0, 1.0))
    tau, gain = focus_params(psi, setting.eta, rec.radius, c, setting.tau0)
    return delay_and_sum(rec.channels, tau, gain, rec.sample_rate)


def mechanical_refocus_oracle(
    g: ArrayGeometry,
    sources,
    target,
    sample_rate: float,
    duration: float,
    medium: Medium = Medium(),
) -> np.ndarray:
    """Ground-truth refocused output obtained by physically moving the array.

    The whole geometry is translated so its center lands on ``target``, a
    fresh record is synthesized there, and the channels are summed with the
    uniform base delay tau0 = |target - center|/c (matching the base delay
    virtual_focus uses, so the two outputs are directly comparable).
    """
    target = np.asarray(target, dtype=float)
    shift = target - g.center
    moved = transformed(g, translation=shift)
    rec = synth_record(moved, sources, sample_rate, duration, medium)
    tau0 = float(np.linalg.norm(shift)) / medium.c
    return delay_and_sum(
        rec.channels, np.full(rec.n_channels, tau0), np.ones(rec.n_channels), sample_rate
    )


@dataclass(frozen=True)
class ImageMap:
    """Normalized tone-amplitude map over a grid of virtual focus points."""

    grid_points: np.ndarray  # (N, 3) m
    values: np.ndarray  # (N,) in [0, 1], max = 1
    analysis_freq: float

    def __post_init__(self):
        object.__setattr__(self, "grid_points", np.asarray(self.grid_points, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if len(self.grid_points) != len(self.values):
            raise BadArgument("values length must equal grid length")

    @property
    def peak_point(self) -> np.ndarray:
        return self.grid_points[int(np.argmax(self.values))]


def image(
    rec: AcousticRecord,
    grid,
    analysis_freq: float,
    medium: Optional[Medium] = None,
) -> ImageMap:
    """Reconstruct an acoustic image from one record by virtual scanning.

    For every grid point the record is virtually focused there and the tone
    amplitude at ``analysis_freq`` is estimated over the steady-state part of
    the output (a fixed prefix covering the largest refocus delay plus the
    interpolator length is skipped, identically for all points). The map is
    normalized by its maximum; an all-zero field raises ZeroField.
    """
    pts = np.atleast_2d(np.asarray(grid, dtype=float))
    if pts.size == 0:
        raise EmptyGrid("focus grid must contain at least one point")
    if pts.shape[1] != 3:
        raise BadArgument("grid points must be 3-vectors")
    c = medium.c if medium is not None else rec.c
    offsets = np.linalg.norm(pts - rec.center, axis=1)
    if np.any(offsets >= rec.radius):
        raise FocusOutsideSphere("every grid point must lie strictly inside the sphere")

    max_tau = 2.0 * float(offsets.max()) / c
    skip = int(math.ceil(max_tau * rec.sample_rate)) + FD_TAPS
    amps = np.empty(len(pts))
    for i, p in enumerate(pts):
        v = virtual_focus(rec, p, medium)
        amps[i] = metrology.tone_estimate(v[skip:], rec.sample_rate, analysis_freq).amplitude
    peak = float(amps.max())
    if peak <= 0.0:
        raise ZeroField("cannot normalize an all-zero image")
    return ImageMap(pts, amps / peak, float(analysis_freq))


def write_image_csv(imap: ImageMap, path) -> None:
    """Write an image map as CSV rows x_m,y_m,z_m,value."""
    lines = ["x_m,y_m,z_m,value"]
    for p, v in zip(imap.grid_points, imap.values):
        lines.append(f"{float(p[0])!r},{float(p[1])!r},{float(p[2])!r},{float(v)!r}")
    _atomic_write_bytes(Path(path), ("\n".join(lines) + "\n").encode())


def write_image_pgm(imap: ImageMap, shape, path) -> None:
    """Write a planar image map as an 8-bit binary PGM (values scaled 0-255).

    ``shape`` is (n_rows, n_cols); values must be stored row-major in the
    map, as produced by the CLI's planar grids.
    """
    rows, cols = shape
    if rows * cols != len(imap.values):
        raise BadArgument("shape does not match the number of grid points")
    pixels = np.rint(imap.values * 255.0).astype(np.uint8).reshape(rows, cols)
    header = f"P5\n{cols} {rows}\n255\n".encode()
    _atomic_write_bytes(Path(path), header + pixels.tobytes())
