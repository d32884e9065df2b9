"""Enclosing-microphone array simulation toolkit.

A product under test sits at the center of a microphone array that fully
surrounds it (cube or sphere). Delay-weight-sum processing of the array
channels rejects external interference at predictable notch frequencies,
enables distortion measurement in noisy surroundings, and — from a single
multichannel record — supports virtual refocusing and acoustic imaging
without mechanical scanning.
"""

from .analytic import (
    TransferCurve,
    fundamental_for_radius,
    noise_to_signal,
    reject_freqs_cube_axis,
    reject_freqs_cube_diagonal,
    resolution,
    resolution_radius,
    sinc,
    transfer_cap,
    transfer_cube,
    transfer_hemisphere,
    transfer_sphere,
)
from .beamform import delay_and_sum, numeric_transfer, steady_response, time_output
from .focusing import (
    FocusSetting,
    ImageMap,
    focus_params,
    focus_setting,
    image,
    mechanical_refocus_oracle,
    virtual_focus,
    write_image_csv,
    write_image_pgm,
)
from .geometry import (
    Aperture,
    ArrayGeometry,
    Microphone,
    apply_aperture,
    cubic_em,
    spherical_em,
    transformed,
)
from .metrology import (
    DistortionReport,
    ThdReport,
    ToneEstimate,
    distortion_experiment,
    thd,
    tone_estimate,
)
from .recordio import AcousticRecord, load_record, save_record, synth_record
from .wavefield import (
    Medium,
    PlaneWave,
    SphericalWave,
    phasor_at,
    plane_pressure,
    pressure,
    spherical_pressure,
    superpose,
)

__version__ = "0.1.0"

__all__ = [
    "AcousticRecord",
    "Aperture",
    "ArrayGeometry",
    "DistortionReport",
    "FocusSetting",
    "ImageMap",
    "Medium",
    "Microphone",
    "PlaneWave",
    "SphericalWave",
    "ThdReport",
    "ToneEstimate",
    "TransferCurve",
    "apply_aperture",
    "cubic_em",
    "delay_and_sum",
    "distortion_experiment",
    "focus_params",
    "focus_setting",
    "fundamental_for_radius",
    "image",
    "load_record",
    "mechanical_refocus_oracle",
    "noise_to_signal",
    "numeric_transfer",
    "phasor_at",
    "plane_pressure",
    "pressure",
    "reject_freqs_cube_axis",
    "reject_freqs_cube_diagonal",
    "resolution",
    "resolution_radius",
    "save_record",
    "sinc",
    "spherical_em",
    "spherical_pressure",
    "steady_response",
    "superpose",
    "synth_record",
    "thd",
    "time_output",
    "tone_estimate",
    "transfer_cap",
    "transfer_cube",
    "transfer_hemisphere",
    "transfer_sphere",
    "transformed",
    "virtual_focus",
    "write_image_csv",
    "write_image_pgm",
]
