"""Tone estimation, THD, and the distortion-in-noise experiment harness.

Tone amplitudes come from a single-bin discrete Fourier projection over a
rectangular window truncated to a whole number of tone periods, which is
exact (no leakage) whenever every tone in the series sits on a window bin.
THD is the RMS of the harmonic amplitudes over the fundamental amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import beamform
from .errors import (
    BadArgument,
    NyquistViolation,
    WindowTooShort,
    ZeroFundamental,
)
from .geometry import spherical_em
from .recordio import synth_record
from .wavefield import Medium, PlaneWave, SphericalWave

MIN_PERIODS = 8


@dataclass(frozen=True)
class ToneEstimate:
    """Amplitude (V) and phase (rad) of one tone."""

    freq: float
    amplitude: float
    phase: float


@dataclass(frozen=True)
class ThdReport:
    """Fundamental and harmonic estimates plus the distortion ratio."""

    fundamental: ToneEstimate
    harmonics: tuple
    thd: float


def tone_estimate(series, sample_rate: float, f: float) -> ToneEstimate:
    """Estimate the amplitude and phase of the tone at ``f`` in ``series``.

    The window is the longest prefix covering a whole number of periods of
    ``f``; at least 8 periods must fit or WindowTooShort is raised. For tones
    whose frequencies are integer multiples of sample_rate/window_length the
    projection is exact.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise BadArgument("series must be 1-D")
    if f <= 0:
        raise BadArgument(f"probe frequency must be positive, got {f}")
    periods = math.floor(len(x) * f / sample_rate)
    if periods < MIN_PERIODS:
        raise WindowTooShort(
            f"series holds {periods} whole periods of {f} Hz, need {MIN_PERIODS}"
        )
    n_win = min(int(round(periods * sample_rate / f)), len(x))
    k = np.arange(n_win)
    probe = np.exp(-2j * np.pi * f * k / sample_rate)
    coeff = 2.0 / n_win * (x[:n_win] @ probe)
    return ToneEstimate(freq=float(f), amplitude=float(abs(coeff)), phase=float(np.angle(coeff)))


def thd(series, sample_rate: float, f0: float, k_max: int = 5) -> ThdReport:
    """Total harmonic distortion of ``series`` for fundamental ``f0``.

    thd = sqrt(sum_{k=2..k_max} A_k^2) / A_1 with single-bin amplitude
    estimates. Raises NyquistViolation when k_max*f0 reaches sample_rate/2
    and ZeroFundamental when A_1 < 1e-12.
    """
    if k_max < 2:
        raise BadArgument(f"k_max must be at least 2, got {k_max}")
    if k_max * f0 >= sample_rate / 2.0:
        raise NyquistViolation(
            f"harmonic {k_max}*{f0} Hz reaches Nyquist ({sample_rate / 2} Hz)"
        )
    fundamental = tone_estimate(series, sample_rate, f0)
    if fundamental.amplitude < 1e-12:
        raise ZeroFundamental("fundamental amplitude below 1e-12")
    harmonics = tuple(
        tone_estimate(series, sample_rate, k * f0) for k in range(2, k_max + 1)
    )
    ratio = math.sqrt(sum(h.amplitude**2 for h in harmonics)) / fundamental.amplitude
    return ThdReport(fundamental=fundamental, harmonics=harmonics, thd=ratio)


@dataclass(frozen=True)
class DistortionReport:
    """Outcome of the distortion-in-noise comparison experiment."""

    thd_truth: float
    thd_single_mic: float
    thd_em: float
    suppression_db: Optional[float]
    f0_hz: float
    n_mics: int

    def to_json_dict(self) -> dict:
        return {
            "thd_truth": self.thd_truth,
            "thd_single_mic": self.thd_single_mic,
            "thd_em": self.thd_em,
            "suppression_db": self.suppression_db,
            "f0_hz": self.f0_hz,
            "n_mics": self.n_mics,
        }


_DEFAULT_INTERFERER_DIRECTION = (1.0, 1.0, 1.0)


def distortion_experiment(
    r: float,
    n_mics: int,
    put_harmonic_levels: Sequence[float],
    interferer_ratio: float,
    medium: Medium = Medium(),
    *,
    interferer_direction=_DEFAULT_INTERFERER_DIRECTION,
    interferer_odd_orders: Sequence[int] = (),
    reference_mic: int = 0,
) -> DistortionReport:
    """Compare THD estimates with and without spatial interference rejection.

    A spherical array of ``n_mics`` microphones of radius ``r`` records a
    centered source at the notch fundamental f0 = c/2r with relative harmonic
    amplitudes ``put_harmonic_levels`` (orders 2, 3, ...), plus an external
    plane-wave interferer whose surface pressure is ``interferer_ratio``
    times the source's; ``interferer_odd_orders`` adds equal-amplitude
    interferers at the listed odd harmonics. The report contains the THD seen
    by one reference microphone, the THD of the full beamformed output, the
    analytic ground truth, and the f0 interference suppression of the array
    relative to the single microphone, in dB (None when the interferer is
    off). The suppression is isolated with an interferer-only record, which
    is exact by linearity.

    The sample rate and duration are chosen so every tone falls on an
    analysis bin: fs = max(64, 16*(top order)) * f0 over 32 fundamental
    periods.
    """
    if interferer_ratio < 0:
        raise BadArgument("interferer ratio must be nonnegative")
    levels = [float(v) for v in put_harmonic_levels]
    if any(v < 0 for v in levels):
        raise BadArgument("harmonic levels must be nonnegative")
    if any(order % 2 == 0 or order < 3 for order in interferer_odd_orders):
        raise BadArgument("interferer harmonic orders must be odd and >= 3")

    c = medium.c
    f0 = c / (2.0 * r)
    top_order = max([1 + len(levels), *interferer_odd_orders, 2])
    fs = max(64, 16 * top_order) * f0
    duration = 32.0 / f0

    g = spherical_em(r, n_mics)
    direction = np.asarray(interferer_direction, dtype=float)
    direction = direction / np.linalg.norm(direction)

    put_sources = [SphericalWave(source_pos=g.center, p_ref=1.0, f=f0, ref_dist=r)]
    for order, level in enumerate(levels, start=2):
        put_sources.append(
            SphericalWave(source_pos=g.center, p_ref=level, f=order * f0, ref_dist=r)
        )
    interferers = []
    if interferer_ratio > 0:
        interferers.append(PlaneWave(p0=interferer_ratio, f=f0, direction=direction))
        for order in interferer_odd_orders:
            interferers.append(
                PlaneWave(p0=interferer_ratio, f=order * f0, direction=direction)
            )

    k_max = max(2, 1 + len(levels))
    rec = synth_record(g, put_sources + interferers, fs, duration, medium)
    em_output = beamform.time_output(g, rec)
    thd_em = thd(em_output, fs, f0, k_max).thd
    thd_single = thd(rec.channels[reference_mic], fs, f0, k_max).thd
    thd_truth = math.sqrt(sum(v * v for v in levels))

    suppression_db: Optional[float] = None
    if interferers:
        rec_int = synth_record(g, interferers, fs, duration, medium)
        single_amp = tone_estimate(rec_int.channels[reference_mic], fs, f0).amplitude
        em_amp = tone_estimate(beamform.time_output(g, rec_int), fs, f0).amplitude
        total_gain = float(np.sum((g.weights * g.sensitivities)[g.active_mask]))
        normalized_em = em_amp / total_gain
        if normalized_em == 0.0:
            suppression_db = math.inf
        else:
            suppression_db = 20.0 * math.log10(single_amp / normalized_em)

    return DistortionReport(
        thd_truth=thd_truth,
        thd_single_mic=thd_single,
        thd_em=thd_em,
        suppression_db=suppression_db,
        f0_hz=f0,
        n_mics=n_mics,
    )
