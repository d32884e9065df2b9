"""Command-line contract: file formats, determinism, exit codes."""

import json

import numpy as np
import pytest

from emtest.cli import run

SCENE = {
    "c_m_per_s": 340.0,
    "geometry": {"kind": "sphere", "r_m": 0.1, "n_mics": 256, "center_m": [0, 0, 0]},
    "sources": [
        {"kind": "spherical", "pos_m": [0.01, 0.0, 0.0], "p_ref_pa": 1.0,
         "ref_dist_m": 1.0, "f_hz": 10000.0, "phase0_rad": 0.0}
    ],
}


def _write_scene(tmp_path, scene=SCENE):
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(scene))
    return path


def test_transfer_csv_contract_and_determinism(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["transfer", "--shape", "sphere", "--r", "0.1", "--c", "340",
            "--n-mics", "256", "--f-min", "0", "--f-max", "5000",
            "--steps", "50", "--out"]
    assert run(argv + [str(out1)]) == 0
    assert run(argv + [str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().strip().split("\n")
    assert lines[0] == "frequency_hz,analytic,numeric"
    assert len(lines) == 51
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 1.0
    assert float(first[2]) == pytest.approx(1.0, abs=1e-9)


def test_transfer_cube_and_apertures(tmp_path):
    out = tmp_path / "cube.csv"
    assert run(["transfer", "--shape", "cube", "--d", "0.1", "--c", "340",
                "--f-max", "4000", "--steps", "20", "--out", str(out)]) == 0
    rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
    ana = np.array([float(r[1]) for r in rows])
    num = np.array([float(r[2]) for r in rows])
    assert np.max(np.abs(ana - num)) < 1e-9  # 8 mics: closed form is exact

    out2 = tmp_path / "hemi.csv"
    assert run(["transfer", "--shape", "sphere", "--r", "0.1", "--c", "340",
                "--n-mics", "512", "--aperture", "hemisphere",
                "--f-max", "5000", "--steps", "20", "--out", str(out2)]) == 0
    out3 = tmp_path / "cap.csv"
    assert run(["transfer", "--shape", "sphere", "--r", "0.1", "--c", "340",
                "--n-mics", "512", "--aperture", "cap", "--phi0", "1.0",
                "--f-max", "5000", "--steps", "20", "--out", str(out3)]) == 0


def test_transfer_unknown_shape_exits_2(tmp_path, capsys):
    code = run(["transfer", "--shape", "dodecahedron", "--f-max", "100",
                "--out", str(tmp_path / "x.csv")])
    assert code == 2
    err = capsys.readouterr().err
    assert "sphere" in err and "cube" in err


def test_unknown_flag_rejected(tmp_path):
    assert run(["reject-freqs", "--d", "0.1", "--frobnicate"]) == 2


def test_reject_freqs_stdout(capsys):
    assert run(["reject-freqs", "--d", "0.1", "--c", "340", "--n-max", "5"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == "n,frequency_hz"
    freqs = [float(line.split(",")[1]) for line in out[1:]]
    assert freqs == pytest.approx([1700.0, 5100.0, 8500.0], rel=1e-12)
    assert run(["reject-freqs", "--d", "0.1", "--c", "340", "--n-max", "1",
                "--incidence", "diagonal"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert float(out[1].split(",")[1]) == pytest.approx(2404.163056, rel=1e-9)


def test_resolution_csv_and_radius(tmp_path, capsys):
    out = tmp_path / "res.csv"
    assert run(["resolution", "--f", "10000", "--c", "340", "--steps", "35",
                "--out", str(out)]) == 0
    assert "resolution_radius_m=0.017" in capsys.readouterr().out
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "e0_m,response"
    assert len(lines) == 36


def test_synth_focus_image_pipeline(tmp_path, capsys):
    scene = _write_scene(tmp_path)
    rec_dir = tmp_path / "rec"
    assert run(["synth", "--scene", str(scene), "--sample-rate", "320000",
                "--duration", "0.0015", "--out-record", str(rec_dir)]) == 0
    capsys.readouterr()

    # the record is self-contained: the scene file is no longer needed
    scene.unlink()

    focus_csv = tmp_path / "v.csv"
    assert run(["focus", "--record", str(rec_dir), "--target", "0.01,0,0",
                "--out", str(focus_csv)]) == 0
    lines = focus_csv.read_text().strip().split("\n")
    assert lines[0] == "t_s,v"
    assert len(lines) == 481

    pgm = tmp_path / "map.pgm"
    csv = tmp_path / "map.csv"
    assert run(["image", "--record", str(rec_dir), "--plane", "z=0",
                "--extent", "0.016", "--resolution", "0.004", "--freq", "10000",
                "--out-pgm", str(pgm), "--out-csv", str(csv)]) == 0
    payload = pgm.read_bytes()
    assert payload.startswith(b"P5\n9 9\n255\n")
    pixels = np.frombuffer(payload.split(b"255\n", 1)[1], dtype=np.uint8)
    assert pixels.size == 81
    assert pixels.max() == 255

    rows = [line.split(",") for line in csv.read_text().strip().split("\n")[1:]]
    values = np.array([float(r[3]) for r in rows])
    points = np.array([[float(r[0]), float(r[1]), float(r[2])] for r in rows])
    best = points[np.argmax(values)]
    assert abs(best[0] - 0.012) <= 0.004 + 1e-12  # near the true source x=0.01


def test_missing_record_exits_3(tmp_path):
    assert run(["focus", "--record", str(tmp_path / "nope"), "--target",
                "0,0,0", "--out", str(tmp_path / "v.csv")]) == 3
    assert run(["image", "--record", str(tmp_path / "nope"), "--plane", "z=0",
                "--extent", "0.01", "--resolution", "0.005", "--freq", "1000",
                "--out-csv", str(tmp_path / "m.csv")]) == 3


def test_malformed_scene_exits_3(tmp_path):
    bad = tmp_path / "scene.json"
    bad.write_text("{broken")
    assert run(["synth", "--scene", str(bad), "--sample-rate", "48000",
                "--duration", "0.01", "--out-record", str(tmp_path / "rec")]) == 3
    bad.write_text(json.dumps({"c_m_per_s": 340.0}))
    assert run(["synth", "--scene", str(bad), "--sample-rate", "48000",
                "--duration", "0.01", "--out-record", str(tmp_path / "rec")]) == 3


def test_focus_outside_sphere_exits_4(tmp_path, capsys):
    scene = _write_scene(tmp_path)
    rec_dir = tmp_path / "rec"
    assert run(["synth", "--scene", str(scene), "--sample-rate", "320000",
                "--duration", "0.0015", "--out-record", str(rec_dir)]) == 0
    capsys.readouterr()
    assert run(["focus", "--record", str(rec_dir), "--target", "0.5,0,0",
                "--out", str(tmp_path / "v.csv")]) == 4


def test_thd_experiment_json(tmp_path):
    out = tmp_path / "report.json"
    assert run(["thd", "--r", "0.1", "--n-mics", "256", "--interferer-ratio",
                "10", "--harmonics", "0.01,0.01", "--c", "340",
                "--out-json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {
        "thd_truth", "thd_single_mic", "thd_em", "suppression_db",
        "f0_hz", "n_mics",
    }
    assert payload["f0_hz"] == pytest.approx(1700.0)
    assert payload["n_mics"] == 256
    assert payload["suppression_db"] > 40


def test_thd_record_mode(tmp_path, capsys):
    scene = {
        "c_m_per_s": 340.0,
        "geometry": {"kind": "sphere", "r_m": 0.1, "n_mics": 64},
        "sources": [
            {"kind": "spherical", "pos_m": [0, 0, 0], "p_ref_pa": 1.0,
             "ref_dist_m": 0.1, "f_hz": 1700.0},
            {"kind": "spherical", "pos_m": [0, 0, 0], "p_ref_pa": 0.02,
             "ref_dist_m": 0.1, "f_hz": 3400.0},
        ],
    }
    path = _write_scene(tmp_path, scene)
    rec_dir = tmp_path / "rec"
    assert run(["synth", "--scene", str(path), "--sample-rate", "108800",
                "--duration", "0.01882352941176470", "--out-record",
                str(rec_dir)]) == 0
    capsys.readouterr()
    assert run(["thd", "--record", str(rec_dir), "--f0", "1700",
                "--k-max", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["thd_em"] == pytest.approx(0.02, rel=1e-3)
    assert payload["thd_truth"] is None
