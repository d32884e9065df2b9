"""Enclosing-microphone array geometries and aperture shading.

Two constructions are provided: the 8-microphone cubic array with the
product under test at the cube center, and the n-microphone spherical array
sampled on a Fibonacci lattice (deterministic, near-uniform). Shading
restricts the sensitive region to a hemisphere or a cap by deactivating
microphones; inactive microphones contribute nothing to any summed output.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    ApertureOnCube,
    BadArgument,
    BadEdge,
    BadRadius,
    NoActiveMics,
    TooFewMics,
)

_IDENTITY = np.eye(3)

# Vertex numbering of the cubic array, in local cube coordinates {0, d}^3.
# M4 sits at the local origin and M1, M3, M8 lie on the local X, Y, Z axes.
# The remaining labels follow the usual bottom-face / top-face convention,
# which puts M1, M3, M5, M7 in the plane x + y = d (the face-diagonal plane
# used for the oblique-incidence rejection analysis).
_CUBE_VERTICES = {
    1: (1, 0, 0),
    2: (1, 1, 0),
    3: (0, 1, 0),
    4: (0, 0, 0),
    5: (1, 0, 1),
    6: (1, 1, 1),
    7: (0, 1, 1),
    8: (0, 0, 1),
}


@dataclass(frozen=True)
class Microphone:
    """One array element: position plus per-channel processing parameters."""

    id: int
    pos: np.ndarray  # (3,) m
    weight: float = 1.0
    delay: float = 0.0  # s
    sensitivity: float = 1.0  # V/Pa
    active: bool = True

    def __post_init__(self):
        p = np.asarray(self.pos, dtype=float)
        object.__setattr__(self, "pos", p)
        if p.shape != (3,):
            raise BadArgument("microphone position must be a 3-vector")
        if self.sensitivity <= 0:
            raise BadArgument("sensitivity must be positive")
        if not np.isfinite(self.weight):
            raise BadArgument("weight must be finite")
        if self.delay < 0:
            raise BadArgument("delay must be nonnegative")


@dataclass(frozen=True)
class ArrayGeometry:
    """An enclosing-microphone array: elements, center, kind and size.

    ``kind`` is ``"cube"`` (``size`` = edge length d, 8 microphones at the
    vertices) or ``"sphere"`` (``size`` = radius r). Geometries are immutable;
    derived variants (shaded, transformed) are new instances.
    """

    mics: tuple
    center: np.ndarray
    kind: str
    size: float
    orientation: np.ndarray = field(default_factory=lambda: _IDENTITY.copy())

    def __post_init__(self):
        object.__setattr__(self, "mics", tuple(self.mics))
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "orientation", np.asarray(self.orientation, dtype=float))
        if self.kind not in ("cube", "sphere"):
            raise BadArgument(f"kind must be 'cube' or 'sphere', got {self.kind!r}")
        if self.size <= 0:
            raise (BadEdge if self.kind == "cube" else BadRadius)(
                f"{self.kind} size must be positive"
            )
        radii = np.linalg.norm(self.positions - self.center, axis=1)
        if self.kind == "cube":
            if len(self.mics) != 8:
                raise BadArgument("a cubic array has exactly 8 microphones")
            if np.any(np.abs(radii - self.size * np.sqrt(3) / 2) > 1e-12):
                raise BadArgument("cube vertices must sit at d*sqrt(3)/2 from the center")
        else:
            if np.any(np.abs(radii - self.size) > 1e-9):
                raise BadArgument("sphere microphones must sit at radius r from the center")
        if not np.any(self.active_mask):
            raise NoActiveMics("array has no active microphone")

    # -- convenience array views -------------------------------------------

    @property
    def n_mics(self) -> int:
        return len(self.mics)

    @property
    def positions(self) -> np.ndarray:
        return np.array([m.pos for m in self.mics])

    @property
    def weights(self) -> np.ndarray:
        return np.array([m.weight for m in self.mics])

    @property
    def delays(self) -> np.ndarray:
        return np.array([m.delay for m in self.mics])

    @property
    def sensitivities(self) -> np.ndarray:
        return np.array([m.sensitivity for m in self.mics])

    @property
    def active_mask(self) -> np.ndarray:
        return np.array([m.active for m in self.mics], dtype=bool)

    @property
    def enclosing_radius(self) -> float:
        """Distance from the center to every microphone (circumradius)."""
        return self.size if self.kind == "sphere" else self.size * float(np.sqrt(3)) / 2


@dataclass(frozen=True)
class Aperture:
    """Sensitive-region mask: full sphere, hemisphere, or cap of half-angle phi0.

    ``direction`` points from the array center toward the middle of the
    sensitive region (for shading experiments: toward the external source).
    """

    mode: str  # "full" | "hemisphere" | "cap"
    direction: Optional[np.ndarray] = None
    half_angle: Optional[float] = None

    def __post_init__(self):
        if self.mode not in ("full", "hemisphere", "cap"):
            raise BadArgument(f"unknown aperture mode {self.mode!r}")
        if self.mode == "full":
            return
        d = np.asarray(self.direction, dtype=float)
        object.__setattr__(self, "direction", d)
        if d.shape != (3,) or abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise BadArgument("aperture direction must be a unit 3-vector")
        if self.mode == "hemisphere":
            object.__setattr__(self, "half_angle", float(np.pi / 2))
        else:
            if self.half_angle is None or not 0 < self.half_angle <= np.pi:
                raise BadArgument("cap half-angle must lie in (0, pi]")

    @staticmethod
    def full() -> "Aperture":
        return Aperture("full")

    @staticmethod
    def hemisphere(direction) -> "Aperture":
        return Aperture("hemisphere", direction)

    @staticmethod
    def cap(direction, half_angle: float) -> "Aperture":
        return Aperture("cap", direction, half_angle)


def cubic_em(d: float, center=(0.0, 0.0, 0.0), orientation=None) -> ArrayGeometry:
    """Cubic array of edge ``d``: 8 unit-weight microphones at the vertices.

    Local coordinates put vertex M4 at the local origin with M1, M3, M8 on
    the local axes; the cube is then rotated by ``orientation`` and shifted
    so its center lands on ``center``.
    """
    if d <= 0:
        raise BadEdge(f"cube edge must be positive, got {d}")
    rot = _IDENTITY if orientation is None else np.asarray(orientation, dtype=float)
    if rot.shape != (3, 3) or not np.allclose(rot @ rot.T, _IDENTITY, atol=1e-9):
        raise BadArgument("orientation must be a 3x3 rotation matrix")
    center = np.asarray(center, dtype=float)
    half = d / 2.0
    mics = []
    for mic_id in sorted(_CUBE_VERTICES):
        local = np.asarray(_CUBE_VERTICES[mic_id], dtype=float) * d
        pos = rot @ (local - half) + center
        mics.append(Microphone(id=mic_id, pos=pos))
    return ArrayGeometry(tuple(mics), center, "cube", d, rot)


def spherical_em(r: float, n_mics: int, center=(0.0, 0.0, 0.0)) -> ArrayGeometry:
    """Spherical array of ``n_mics`` unit-weight microphones of radius ``r``.

    Points follow the Fibonacci lattice: point k of N has
    z_k = 1 - (2k+1)/N and azimuth 2*pi*k*(1 - 1/golden_ratio), giving a
    deterministic near-uniform covering for any N.
    """
    if r <= 0:
        raise BadRadius(f"sphere radius must be positive, got {r}")
    if n_mics < 4:
        raise TooFewMics(f"spherical arrays need at least 4 microphones, got {n_mics}")
    center = np.asarray(center, dtype=float)
    k = np.arange(n_mics)
    z = 1.0 - (2.0 * k + 1.0) / n_mics
    golden = (1.0 + np.sqrt(5.0)) / 2.0
    azimuth = 2.0 * np.pi * k * (1.0 - 1.0 / golden)
    rho = np.sqrt(1.0 - z * z)
    pts = np.stack([rho * np.cos(azimuth), rho * np.sin(azimuth), z], axis=1)
    mics = tuple(
        Microphone(id=int(i), pos=center + r * pts[i]) for i in range(n_mics)
    )
    return ArrayGeometry(mics, center, "sphere", r)


def apply_aperture(g: ArrayGeometry, aperture: Aperture) -> ArrayGeometry:
    """Return a copy of ``g`` with the aperture's activity mask applied.

    A microphone stays active iff the angle between its radial direction and
    the aperture direction is at most the half-angle. Hemisphere/cap shading
    is only defined for spherical arrays.
    """
    if aperture.mode == "full":
        mics = tuple(dataclasses.replace(m, active=True) for m in g.mics)
        return dataclasses.replace(g, mics=mics)
    if g.kind != "sphere":
        raise ApertureOnCube("hemisphere/cap shading requires a spherical array")
    radial = g.positions - g.center
    radial /= np.linalg.norm(radial, axis=1, keepdims=True)
    angles = np.arccos(np.clip(radial @ aperture.direction, -1.0, 1.0))
    keep = angles <= aperture.half_angle
    if not np.any(keep):
        raise NoActiveMics("aperture deactivates every microphone")
    mics = tuple(
        dataclasses.replace(m, active=bool(k)) for m, k in zip(g.mics, keep)
    )
    return dataclasses.replace(g, mics=mics)


def transformed(g: ArrayGeometry, rotation=None, translation=(0.0, 0.0, 0.0)) -> ArrayGeometry:
    """Rigidly move a geometry: positions become ``R @ pos + T``.

    Rotation is about the coordinate origin, matching the convention used for
    transforming sources alongside the array.
    """
    rot = _IDENTITY if rotation is None else np.asarray(rotation, dtype=float)
    if rot.shape != (3, 3) or not np.allclose(rot @ rot.T, _IDENTITY, atol=1e-9):
        raise BadArgument("rotation must be a 3x3 rotation matrix")
    t = np.asarray(translation, dtype=float)
    mics = tuple(dataclasses.replace(m, pos=rot @ m.pos + t) for m in g.mics)
    return dataclasses.replace(
        g, mics=mics, center=rot @ g.center + t, orientation=rot @ g.orientation
    )
