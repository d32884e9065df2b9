"""Discrete delay-weight-sum engine.

Steady-state responses are computed by exact phasor rotation (no
interpolation error); sampled-series processing applies per-channel
fractional delays with a 16-tap Blackman-windowed sinc interpolator, which
assumes at least 16 samples per period at the highest analysis frequency.
The microphone sums are evaluated with numpy reductions over arrays ordered
by ascending microphone id, so results are reproducible run to run.
"""

from __future__ import annotations

import numpy as np

from .errors import BadArgument, ChannelMismatch, EmptyGrid, NoActiveMics
from .geometry import ArrayGeometry
from .analytic import TransferCurve
from .wavefield import (
    Medium,
    PlaneWave,
    SphericalWave,
    WaveSource,
    phasor_at,
)

TWO_PI = 2.0 * np.pi

FD_TAPS = 16
_FD_HALF = FD_TAPS // 2


def steady_response(
    g: ArrayGeometry, source: WaveSource, f: float, medium: Medium = Medium()
) -> complex:
    """Complex steady-state array output phasor at frequency ``f``.

    Sum over active microphones of weight * sensitivity * source phasor at
    the microphone, rotated by the channel delay: exp(-i*2*pi*f*delay).
    """
    mask = g.active_mask
    if not np.any(mask):
        raise NoActiveMics("array has no active microphone")
    pos = g.positions[mask]
    gains = (g.weights * g.sensitivities)[mask]
    delays = g.delays[mask]
    ph = phasor_at(source, pos, f, medium)
    return complex(np.sum(gains * ph * np.exp(-1j * TWO_PI * f * delays)))


def _stimulus_terms(stimulus: WaveSource, points: np.ndarray, c: float):
    """Per-point amplitude and travel time (s) of a stimulus template.

    The template's frequency field is ignored by callers that sweep f; only
    geometry-dependent quantities are produced here.
    """
    if isinstance(stimulus, PlaneWave):
        amp = np.full(len(points), stimulus.p0)
        travel = points @ stimulus.direction / c
    elif isinstance(stimulus, SphericalWave):
        d = np.linalg.norm(points - stimulus.source_pos, axis=-1)
        amp = stimulus.p_ref * stimulus.ref_dist / d
        travel = d / c
    else:
        raise BadArgument(f"unsupported stimulus type {type(stimulus).__name__}")
    return amp, travel


def numeric_transfer(
    g: ArrayGeometry,
    stimulus: WaveSource,
    f_grid,
    medium: Medium = Medium(),
) -> TransferCurve:
    """Numeric transfer curve of the array for a swept-frequency stimulus.

    ``stimulus`` is a template source (plane wave giving the propagation
    direction, or spherical wave giving the source position); its frequency
    field is ignored and the amplitude/phase fields are used as-is at every
    grid frequency.

    The returned values are signed and dimensionless: at each frequency the
    response phasor is demodulated by the stimulus phase at the active-area
    centroid of the array (which is the array center for a full sphere and
    tracks the mean depth of the sensitive cap under shading, making the
    curve real up to discretization), then divided by the zero-frequency
    response so the DC gain is exactly 1.
    """
    f = np.asarray(f_grid, dtype=float)
    if f.ndim != 1 or f.size == 0:
        raise EmptyGrid("frequency grid must be a nonempty 1-D array")
    if np.any(np.diff(f) <= 0):
        raise BadArgument("frequency grid must be strictly ascending")
    if f[0] < 0:
        raise BadArgument("frequencies must be nonnegative")
    mask = g.active_mask
    if not np.any(mask):
        raise NoActiveMics("array has no active microphone")

    pos = g.positions[mask]
    gains = (g.weights * g.sensitivities)[mask]
    delays = g.delays[mask]
    amp, travel = _stimulus_terms(stimulus, pos, medium.c)

    centroid = gains @ pos / gains.sum()
    _, travel_ref = _stimulus_terms(stimulus, centroid[None, :], medium.c)

    # phase_i(f) = phase0 - 2*pi*f*(travel_i + delay_i); the common phase0
    # cancels against the reference, so it is omitted on both sides.
    phases = -TWO_PI * f[:, None] * (travel + delays)[None, :]
    resp = np.exp(1j * phases) @ (gains * amp)
    ref = np.exp(-1j * TWO_PI * f * travel_ref[0])
    values = np.real(resp * np.conj(ref))

    dc = float(np.sum(gains * amp))
    return TransferCurve(f, values / dc)


def blackman_sinc_taps(frac) -> np.ndarray:
    """Fractional-delay filter taps for fractional parts ``frac`` in [0, 1).

    Returns shape (len(frac), 16): a sinc kernel evaluated at offsets
    j + frac for j = -8..7, weighted by a Blackman window over [-8, 8].
    Integer delays (frac = 0) reduce to an exact unit tap.
    """
    frac = np.atleast_1d(np.asarray(frac, dtype=float))
    j = np.arange(-_FD_HALF, _FD_HALF)
    u = j[None, :] + frac[:, None]
    window = (
        0.42
        + 0.5 * np.cos(np.pi * u / _FD_HALF)
        + 0.08 * np.cos(2.0 * np.pi * u / _FD_HALF)
    )
    taps = np.sinc(u) * window
    # integer delays must be a bit-exact passthrough
    exact = frac == 0.0
    taps[exact] = 0.0
    taps[exact, _FD_HALF] = 1.0
    return taps


def delay_and_sum(channels, delays_s, gains, sample_rate: float) -> np.ndarray:
    """Delay each channel (band-limited interpolation), scale, and sum.

    Parameters
    ----------
    channels : (n, T) array
        One row per channel, uniform sample rate.
    delays_s : (n,) array
        Nonnegative per-channel delays in seconds.
    gains : (n,) array
        Per-channel multipliers.
    sample_rate : float
        Samples per second.

    Returns the summed series with the same length T; samples shifted in
    from beyond the ends of a channel are taken as zero.
    """
    x = np.asarray(channels, dtype=float)
    if x.ndim != 2:
        raise BadArgument("channels must be a 2-D (n_channels, n_samples) array")
    n, t_len = x.shape
    delays = np.broadcast_to(np.asarray(delays_s, dtype=float), (n,))
    gains = np.broadcast_to(np.asarray(gains, dtype=float), (n,))
    if np.any(delays < 0):
        raise BadArgument("delays must be nonnegative")
    if n == 0 or t_len == 0:
        return np.zeros(t_len)

    d_samples = delays * sample_rate
    n0 = np.floor(d_samples).astype(int)
    frac = d_samples - n0
    taps = blackman_sinc_taps(frac) * gains[:, None]  # (n, 16)

    # Regroup per-channel kernels on a common shift axis m = n0 - j so the
    # channel reduction becomes one matrix product: v[k] = sum_m P[m, k - m],
    # P = G^T X. This is algebraically identical to delaying each channel
    # with its own windowed-sinc filter and summing.
    j = np.arange(-_FD_HALF, _FD_HALF)
    m_lo = int(n0.min()) - _FD_HALF + 1
    m_hi = int(n0.max()) + _FD_HALF
    kernel = np.zeros((n, m_hi - m_lo + 1))
    rows = np.repeat(np.arange(n), FD_TAPS)
    cols = (n0[:, None] - j[None, :] - m_lo).ravel()
    kernel[rows, cols] = taps.ravel()

    shifted_sums = kernel.T @ x  # (n_shifts, T)
    out = np.zeros(t_len)
    for offset, row in zip(range(m_lo, m_hi + 1), shifted_sums):
        if offset >= 0:
            if offset < t_len:
                out[offset:] += row[: t_len - offset]
        else:
            if -offset < t_len:
                out[: t_len + offset] += row[-offset:]
    return out


def time_output(g: ArrayGeometry, rec) -> np.ndarray:
    """Sampled tester output: weighted, per-channel-delayed sum of a record.

    Only active microphones contribute. Channel sensitivities are not applied
    here; they are already part of the acquired record.
    """
    if rec.n_channels != g.n_mics:
        raise ChannelMismatch(
            f"record has {rec.n_channels} channels, array has {g.n_mics} microphones"
        )
    mask = g.active_mask
    return delay_and_sum(
        rec.channels[mask], g.delays[mask], g.weights[mask], rec.sample_rate
    )
