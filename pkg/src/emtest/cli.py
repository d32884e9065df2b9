"""Command-line front end.

Every capability is exposed as a subcommand emitting CSV/JSON/PGM artifacts
for external plotting. Exit codes: 0 success, 2 argument errors, 3 file or
format errors, 4 numerical-domain errors. Output files are written
atomically and identical invocations produce byte-identical outputs.

Scene files (JSON) describe a geometry plus sources::

    {"c_m_per_s": 340.0,
     "geometry": {"kind": "sphere", "r_m": 0.1, "n_mics": 2048,
                  "center_m": [0, 0, 0]},
     "sources": [
       {"kind": "plane", "p0_pa": 1.0, "f_hz": 1700.0,
        "direction": [1, 0, 0], "phase0_rad": 0.0},
       {"kind": "spherical", "pos_m": [0, 0, 0], "p_ref_pa": 1.0,
        "ref_dist_m": 0.1, "f_hz": 1700.0, "phase0_rad": 0.0}]}

Cubic geometries use ``"kind": "cube"`` with ``"d_m"`` instead of ``r_m`` /
``n_mics``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import analytic, beamform, focusing, metrology, recordio
from .errors import DomainError, EmError, FileError, FormatViolation, IoFailure
from .geometry import Aperture, apply_aperture, cubic_em, spherical_em
from .wavefield import Medium, PlaneWave, SphericalWave

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FILE = 3
EXIT_DOMAIN = 4


def _vector(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected 'x,y,z', got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _plane(text: str):
    try:
        axis, offset = text.split("=")
        axis = axis.strip().lower()
        if axis not in ("x", "y", "z"):
            raise ValueError
        return axis, float(offset)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 'x=<m>', 'y=<m>' or 'z=<m>', got {text!r}"
        ) from None


def _levels(text: str):
    text = text.strip()
    if not text:
        return []
    try:
        return [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write_text(path, text: str) -> None:
    try:
        recordio._atomic_write_bytes(Path(path), text.encode())
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emtest",
        description="Enclosing-microphone array simulation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transfer", help="analytic + numeric transfer curves")
    p.add_argument("--shape", choices=["sphere", "cube"], required=True)
    p.add_argument("--aperture", choices=["full", "hemisphere", "cap"], default="full")
    p.add_argument("--phi0", type=float, help="cap half-angle, rad")
    p.add_argument("--r", type=float, help="sphere radius, m")
    p.add_argument("--d", type=float, help="cube edge, m")
    p.add_argument("--c", type=float, default=343.0)
    p.add_argument("--n-mics", type=int, default=2048)
    p.add_argument("--direction", type=_vector, default="1,0,0",
                   help="plane-wave propagation direction x,y,z")
    p.add_argument("--f-min", type=float, default=0.0)
    p.add_argument("--f-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--out", required=True)

    p = sub.add_parser("reject-freqs", help="cubic-array rejection frequencies")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--c", type=float, default=343.0)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--incidence", choices=["axis", "diagonal"], default="axis")

    p = sub.add_parser("resolution", help="spatial resolution curve and radius")
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--c", type=float, default=343.0)
    p.add_argument("--e0-max", type=float, help="sweep limit, m (default: 4 zeros)")
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--out", required=True)

    p = sub.add_parser("synth", help="synthesize an acoustic record from a scene")
    p.add_argument("--scene", required=True)
    p.add_argument("--sample-rate", type=float, required=True)
    p.add_argument("--duration", type=float, required=True)
    p.add_argument("--out-record", required=True)

    p = sub.add_parser("thd", help="distortion experiment or record analysis")
    p.add_argument("--record", help="analyze an existing record directory")
    p.add_argument("--f0", type=float, help="fundamental, Hz (record mode)")
    p.add_argument("--r", type=float, help="sphere radius, m (experiment mode)")
    p.add_argument("--n-mics", type=int)
    p.add_argument("--interferer-ratio", type=float)
    p.add_argument("--harmonics", type=_levels, default="0.01,0.01",
                   help="relative amplitudes of harmonics 2,3,...")
    p.add_argument("--c", type=float, default=343.0)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--out-json")

    p = sub.add_parser("focus", help="virtually focus a record at one point")
    p.add_argument("--record", required=True)
    p.add_argument("--target", type=_vector, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("image", help="reconstruct an image map from a record")
    p.add_argument("--record", required=True)
    p.add_argument("--plane", type=_plane, required=True,
                   help="grid plane, e.g. z=0")
    p.add_argument("--extent", type=float, required=True,
                   help="grid half-width around the center, m")
    p.add_argument("--resolution", type=float, required=True, help="grid step, m")
    p.add_argument("--freq", type=float, required=True)
    p.add_argument("--out-pgm")
    p.add_argument("--out-csv")
    return parser


def _cmd_transfer(args) -> int:
    medium = Medium(args.c)
    if args.shape == "sphere":
        if args.r is None:
            raise DomainError("--r is required for --shape sphere")
        g = spherical_em(args.r, args.n_mics)
        size = args.r
    else:
        if args.d is None:
            raise DomainError("--d is required for --shape cube")
        g = cubic_em(args.d)
        size = args.d
    direction = args.direction / np.linalg.norm(args.direction)

    if args.aperture != "full":
        toward_source = -direction
        if args.aperture == "hemisphere":
            g = apply_aperture(g, Aperture.hemisphere(toward_source))
        else:
            if args.phi0 is None:
                raise DomainError("--phi0 is required for --aperture cap")
            g = apply_aperture(g, Aperture.cap(toward_source, args.phi0))

    freqs = np.linspace(args.f_min, args.f_max, args.steps)
    stimulus = PlaneWave(p0=1.0, f=1.0, direction=direction)
    numeric = beamform.numeric_transfer(g, stimulus, freqs, medium).values

    if args.shape == "cube":
        ana = analytic.transfer_cube(freqs, size, direction, args.c)
    elif args.aperture == "full":
        ana = analytic.transfer_sphere(freqs, size, args.c)
    elif args.aperture == "hemisphere":
        ana = analytic.transfer_hemisphere(freqs, size, args.c)
    else:
        # Far-source cap curve, rescaled to DC = 1 to match the numeric
        # normalization.
        raw = analytic.transfer_cap(freqs, size, 1000.0 * size, args.phi0, args.c)
        ana = raw / ((1.0 - np.cos(args.phi0)) / 2.0)

    _write_text(args.out, _csv(
        ["frequency_hz", "analytic", "numeric"], zip(freqs, ana, numeric)
    ))
    return EXIT_OK


def _cmd_reject_freqs(args) -> int:
    if args.incidence == "axis":
        freqs = analytic.reject_freqs_cube_axis(args.d, args.c, args.n_max)
    else:
        freqs = analytic.reject_freqs_cube_diagonal(args.d, args.c, args.n_max)
    sys.stdout.write(_csv(
        ["n", "frequency_hz"],
        zip(range(1, args.n_max + 1, 2), freqs),
    ))
    return EXIT_OK


def _cmd_resolution(args) -> int:
    radius = analytic.resolution_radius(args.f, args.c)
    e0_max = args.e0_max if args.e0_max is not None else 4.0 * radius
    offsets = np.linspace(0.0, e0_max, args.steps)
    values = analytic.resolution(offsets, args.f, args.c)
    _write_text(args.out, _csv(["e0_m", "response"], zip(offsets, values)))
    sys.stdout.write(f"resolution_radius_m={radius!r}\n")
    return EXIT_OK


def _load_scene(path):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read scene {path}: {exc}") from exc
    try:
        scene = json.loads(raw)
    except ValueError as exc:
        raise FormatViolation(f"scene is not valid JSON: {exc}") from exc
    try:
        medium = Medium(float(scene["c_m_per_s"]))
        geo = scene["geometry"]
        center = geo.get("center_m", [0.0, 0.0, 0.0])
        if geo["kind"] == "sphere":
            g = spherical_em(float(geo["r_m"]), int(geo["n_mics"]), center)
        elif geo["kind"] == "cube":
            g = cubic_em(float(geo["d_m"]), center)
        else:
            raise FormatViolation(f"unknown geometry kind {geo['kind']!r}")
        sources = []
        for s in scene["sources"]:
            if s["kind"] == "plane":
                sources.append(PlaneWave(
                    p0=float(s["p0_pa"]), f=float(s["f_hz"]),
                    direction=s["direction"],
                    phase0=float(s.get("phase0_rad", 0.0)),
                ))
            elif s["kind"] == "spherical":
                sources.append(SphericalWave(
                    source_pos=s["pos_m"], p_ref=float(s["p_ref_pa"]),
                    f=float(s["f_hz"]), ref_dist=float(s.get("ref_dist_m", 1.0)),
                    phase0=float(s.get("phase0_rad", 0.0)),
                ))
            else:
                raise FormatViolation(f"unknown source kind {s['kind']!r}")
        return g, sources, medium
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatViolation(f"malformed scene file: {exc!r}") from exc


def _cmd_synth(args) -> int:
    g, sources, medium = _load_scene(args.scene)
    rec = recordio.synth_record(g, sources, args.sample_rate, args.duration, medium)
    recordio.save_record(rec, args.out_record)
    sys.stdout.write(
        f"wrote {args.out_record}: {rec.n_channels} channels x {rec.num_samples} samples\n"
    )
    return EXIT_OK


def _cmd_thd(args) -> int:
    if args.record is not None:
        if args.f0 is None:
            raise DomainError("--f0 is required when analyzing a record")
        rec = recordio.load_record(args.record)
        summed = rec.channels.sum(axis=0)
        report = metrology.thd(summed, rec.sample_rate, args.f0, args.k_max)
        single = metrology.thd(rec.channels[0], rec.sample_rate, args.f0, args.k_max)
        payload = {
            "thd_truth": None,
            "thd_single_mic": single.thd,
            "thd_em": report.thd,
            "suppression_db": None,
            "f0_hz": args.f0,
            "n_mics": rec.n_channels,
        }
    else:
        missing = [
            flag for flag, val in (
                ("--r", args.r), ("--n-mics", args.n_mics),
                ("--interferer-ratio", args.interferer_ratio),
            ) if val is None
        ]
        if missing:
            raise DomainError(f"experiment mode needs {', '.join(missing)}")
        report = metrology.distortion_experiment(
            args.r, args.n_mics, args.harmonics, args.interferer_ratio,
            Medium(args.c),
        )
        payload = report.to_json_dict()
    text = json.dumps(payload, indent=2) + "\n"
    if args.out_json:
        _write_text(args.out_json, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_focus(args) -> int:
    rec = recordio.load_record(args.record)
    v = focusing.virtual_focus(rec, args.target)
    _write_text(args.out, _csv(["t_s", "v"], zip(rec.times, v)))
    return EXIT_OK


def _cmd_image(args) -> int:
    if args.out_pgm is None and args.out_csv is None:
        raise DomainError("at least one of --out-pgm / --out-csv is required")
    rec = recordio.load_record(args.record)
    axis, offset = args.plane
    fixed = "xyz".index(axis)
    free = [i for i in range(3) if i != fixed]
    steps = int(np.floor(2.0 * args.extent / args.resolution)) + 1
    coords = [rec.center[i] - args.extent + args.resolution * np.arange(steps)
              for i in free]
    # Row-major over the grid: rows sweep the second free axis, columns the
    # first (so a z=0 plane has x along columns and y along rows).
    pts = np.empty((steps * steps, 3))
    pts[:, fixed] = offset
    rows_axis, cols_axis = coords[1], coords[0]
    pts[:, free[1]] = np.repeat(rows_axis, steps)
    pts[:, free[0]] = np.tile(cols_axis, steps)
    imap = focusing.image(rec, pts, args.freq)
    if args.out_pgm:
        focusing.write_image_pgm(imap, (steps, steps), args.out_pgm)
    if args.out_csv:
        focusing.write_image_csv(imap, args.out_csv)
    return EXIT_OK


_HANDLERS = {
    "transfer": _cmd_transfer,
    "reject-freqs": _cmd_reject_freqs,
    "resolution": _cmd_resolution,
    "synth": _cmd_synth,
    "thd": _cmd_thd,
    "focus": _cmd_focus,
    "image": _cmd_image,
}


def run(argv) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except FileError as exc:
        sys.stderr.write(f"emtest: file error: {exc}\n")
        return EXIT_FILE
    except DomainError as exc:
        sys.stderr.write(f"emtest: {exc}\n")
        return EXIT_DOMAIN
    except EmError as exc:
        sys.stderr.write(f"emtest: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
