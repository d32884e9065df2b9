"""Acoustic records: synthesis and bit-exact persistence.

A record is the set of simultaneously acquired per-microphone sample streams
plus the acquisition metadata needed to refocus it later. On disk a record is
a directory holding ``manifest.json`` and ``samples.bin``:

* ``manifest.json`` keys: ``version`` (1), ``sample_rate_hz``, ``c_m_per_s``,
  ``center_m`` ([x, y, z]), ``radius_m``, ``mics`` (list of ``{"id", "pos_m",
  "sensitivity_v_per_pa"}``), ``num_samples``, ``sample_format`` ("f64le"),
  ``layout`` ("channel-major"), ``data_file`` ("samples.bin").
* ``samples.bin``: raw IEEE-754 64-bit little-endian samples, channel-major
  (all samples of mic 0, then mic 1, ...).

Loading a saved record reproduces it bit for bit; any structural violation
raises before a partial record can escape.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadArgument,
    BadDuration,
    ChannelMismatch,
    FormatViolation,
    IoFailure,
    UndersampledStimulus,
)
from .geometry import ArrayGeometry
from .wavefield import Medium, WaveSource, superpose

MANIFEST_NAME = "manifest.json"
DATA_NAME = "samples.bin"


@dataclass(frozen=True)
class AcousticRecord:
    """Per-microphone sample streams plus acquisition metadata."""

    sample_rate: float
    c: float
    center: np.ndarray
    radius: float
    mic_ids: np.ndarray
    mic_positions: np.ndarray
    sensitivities: np.ndarray
    channels: np.ndarray  # (n_mics, n_samples) V

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        object.__setattr__(self, "mic_ids", np.asarray(self.mic_ids, dtype=int))
        object.__setattr__(
            self, "mic_positions", np.asarray(self.mic_positions, dtype=float)
        )
        object.__setattr__(
            self, "sensitivities", np.asarray(self.sensitivities, dtype=float)
        )
        object.__setattr__(self, "channels", np.asarray(self.channels, dtype=float))
        if self.sample_rate <= 0:
            raise BadArgument("sample rate must be positive")
        if self.channels.ndim != 2 or self.channels.shape[0] < 1:
            raise BadArgument("channels must be a (n_mics >= 1, n_samples) array")
        n = self.channels.shape[0]
        if self.mic_positions.shape != (n, 3):
            raise ChannelMismatch("channel count must equal microphone count")
        if self.mic_ids.shape != (n,) or self.sensitivities.shape != (n,):
            raise ChannelMismatch("per-mic metadata must match channel count")

    @property
    def n_channels(self) -> int:
        return self.channels.shape[0]

    @property
    def num_samples(self) -> int:
        return self.channels.shape[1]

    @property
    def duration(self) -> float:
        return self.num_samples / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.num_samples) / self.sample_rate


def synth_record(
    g: ArrayGeometry,
    sources,
    sample_rate: float,
    duration: float,
    medium: Medium = Medium(),
) -> AcousticRecord:
    """Sample the field of ``sources`` at every microphone simultaneously.

    channel_i[k] = sensitivity_i * total pressure at pos_i at time k/fs. All
    microphones are captured regardless of their active flag; shading masks
    apply at summation time, not at acquisition. The sample rate must be at
    least 16x the highest source frequency so that downstream fractional
    delays have oversampling headroom.
    """
    if duration <= 0:
        raise BadDuration(f"duration must be positive, got {duration}")
    if sample_rate <= 0:
        raise BadArgument("sample rate must be positive")
    sources = list(sources)
    if sources:
        f_top = max(s.f for s in sources)
        if sample_rate < 16.0 * f_top:
            raise UndersampledStimulus(
                f"sample rate {sample_rate} Hz < 16x top stimulus frequency {f_top} Hz"
            )
    n_samples = int(round(sample_rate * duration))
    if n_samples < 1:
        raise BadDuration("duration shorter than one sample period")
    t = np.arange(n_samples) / sample_rate
    pos = g.positions
    field = superpose(sources, pos[:, None, :], t, medium)
    if np.isscalar(field) or np.ndim(field) == 0:  # empty source list
        channels = np.zeros((g.n_mics, n_samples))
    else:
        channels = np.broadcast_to(field, (g.n_mics, n_samples)).copy()
    channels *= g.sensitivities[:, None]
    return AcousticRecord(
        sample_rate=float(sample_rate),
        c=medium.c,
        center=g.center,
        radius=g.enclosing_radius,
        mic_ids=np.array([m.id for m in g.mics]),
        mic_positions=pos,
        sensitivities=g.sensitivities,
        channels=channels,
    )


def _atomic_write_bytes(path: Path, payload: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_record(rec: AcousticRecord, path) -> None:
    """Write ``rec`` under directory ``path`` (created if needed)."""
    root = Path(path)
    try:
        root.mkdir(parents=True, exist_ok=True)
        manifest = {
            "version": 1,
            "sample_rate_hz": rec.sample_rate,
            "c_m_per_s": rec.c,
            "center_m": [float(v) for v in rec.center],
            "radius_m": float(rec.radius),
            "mics": [
                {
                    "id": int(rec.mic_ids[i]),
                    "pos_m": [float(v) for v in rec.mic_positions[i]],
                    "sensitivity_v_per_pa": float(rec.sensitivities[i]),
                }
                for i in range(rec.n_channels)
            ],
            "num_samples": int(rec.num_samples),
            "sample_format": "f64le",
            "layout": "channel-major",
            "data_file": DATA_NAME,
        }
        _atomic_write_bytes(
            root / MANIFEST_NAME, (json.dumps(manifest, indent=2) + "\n").encode()
        )
        _atomic_write_bytes(
            root / DATA_NAME, np.ascontiguousarray(rec.channels, dtype="<f8").tobytes()
        )
    except OSError as exc:
        raise IoFailure(f"cannot write record to {root}: {exc}") from exc


def _require(manifest: dict, key: str, kinds) -> object:
    if key not in manifest:
        raise FormatViolation(f"manifest is missing key {key!r}")
    value = manifest[key]
    if not isinstance(value, kinds):
        raise FormatViolation(f"manifest key {key!r} has the wrong type")
    return value


def load_record(path) -> AcousticRecord:
    """Load a record directory written by save_record, bit-identically.

    Raises IoFailure when files cannot be read and FormatViolation when their
    contents violate the documented format (bad magic values, length
    mismatches, truncated data). No partial record is ever returned.
    """
    root = Path(path)
    try:
        raw = (root / MANIFEST_NAME).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read manifest from {root}: {exc}") from exc
    try:
        manifest = json.loads(raw)
    except ValueError as exc:
        raise FormatViolation(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(manifest, dict):
        raise FormatViolation("manifest must be a JSON object")

    if _require(manifest, "version", int) != 1:
        raise FormatViolation(f"unsupported record version {manifest['version']!r}")
    if _require(manifest, "sample_format", str) != "f64le":
        raise FormatViolation(
            f"unsupported sample_format {manifest['sample_format']!r}"
        )
    if _require(manifest, "layout", str) != "channel-major":
        raise FormatViolation(f"unsupported layout {manifest['layout']!r}")
    sample_rate = float(_require(manifest, "sample_rate_hz", (int, float)))
    c = float(_require(manifest, "c_m_per_s", (int, float)))
    center = _require(manifest, "center_m", list)
    radius = float(_require(manifest, "radius_m", (int, float)))
    num_samples = _require(manifest, "num_samples", int)
    data_file = _require(manifest, "data_file", str)
    mics = _require(manifest, "mics", list)
    if len(center) != 3:
        raise FormatViolation("center_m must have exactly 3 components")
    if num_samples < 0 or not mics:
        raise FormatViolation("record must hold at least one mic and num_samples >= 0")

    ids, positions, sens = [], [], []
    for entry in mics:
        if not isinstance(entry, dict):
            raise FormatViolation("each mics[] entry must be an object")
        ids.append(_require(entry, "id", int))
        pos = _require(entry, "pos_m", list)
        if len(pos) != 3:
            raise FormatViolation("mic pos_m must have exactly 3 components")
        positions.append([float(v) for v in pos])
        sens.append(float(_require(entry, "sensitivity_v_per_pa", (int, float))))

    try:
        payload = (root / data_file).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read sample data from {root}: {exc}") from exc
    expected = 8 * len(mics) * num_samples
    if len(payload) != expected:
        raise FormatViolation(
            f"sample data holds {len(payload)} bytes, expected {expected}"
        )
    channels = np.frombuffer(payload, dtype="<f8").reshape(len(mics), num_samples)
    try:
        return AcousticRecord(
            sample_rate=sample_rate,
            c=c,
            center=np.array([float(v) for v in center]),
            radius=radius,
            mic_ids=np.array(ids),
            mic_positions=np.array(positions),
            sensitivities=np.array(sens),
            channels=channels.copy(),
        )
    except (BadArgument, ChannelMismatch) as exc:
        raise FormatViolation(f"inconsistent record metadata: {exc}") from exc
