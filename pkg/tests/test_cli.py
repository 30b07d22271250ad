"""End-to-end tests of the command-line interface."""

import json
import subprocess
import sys

import numpy as np
import pytest

import tpslab as tl
from tpslab import serialization as ser
from tpslab.cli import run


def write_bell(tmp_path, name="bell.json"):
    path = tmp_path / name
    ser.dump_json(path, ser.pure_state_to_dict(tl.bell_state("phi+")))
    return path


def write_tms(tmp_path, r=1.0, name="tms.json"):
    path = tmp_path / name
    ser.dump_json(path, ser.gaussian_state_to_dict(tl.two_mode_squeezed(r)))
    return path


class TestTailorCommand:
    def test_bell_to_separable(self, tmp_path, capsys):
        state = write_bell(tmp_path)
        out = tmp_path / "frame.json"
        code = run(
            ["tailor", "--state", str(state), "--factors", "2,2", "--target", "1,0", "--out", str(out)]
        )
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("entropy_nats=")
        assert abs(float(lines[0].split("=")[1])) < 1e-10
        frame = ser.frame_from_dict(ser.load_json(out))
        assert tl.entanglement_entropy(tl.bell_state("phi+"), frame) < 1e-10

    def test_bits_flag(self, tmp_path, capsys):
        state = write_bell(tmp_path)
        out = tmp_path / "frame.json"
        code = run(
            [
                "tailor", "--state", str(state), "--factors", "2,2",
                "--target", "0.5,0.5", "--out", str(out), "--bits",
            ]
        )
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert abs(float(lines[0].split("=")[1]) - np.log(2)) < 1e-10
        assert abs(float(lines[1].split("=")[1]) - 1.0) < 1e-10

    def test_missing_flag_is_usage_error(self, tmp_path, capsys):
        code = run(["tailor", "--factors", "2,2", "--target", "1,0", "--out", "x.json"])
        assert code == 2

    def test_bad_target_is_computation_error(self, tmp_path, capsys):
        state = write_bell(tmp_path)
        out = tmp_path / "frame.json"
        code = run(
            ["tailor", "--state", str(state), "--factors", "2,2", "--target", "0.9,0.2", "--out", str(out)]
        )
        assert code == 1
        err = capsys.readouterr().err.strip()
        payload = json.loads(err)
        assert payload["error"] == "ValueError"
        assert not out.exists()  # never a partial output file


class TestZanardiCommand:
    def test_frame_report(self, tmp_path, capsys):
        state = write_bell(tmp_path)
        frame_path = tmp_path / "frame.json"
        run(["tailor", "--state", str(state), "--factors", "2,2", "--target", "1,0", "--out", str(frame_path)])
        capsys.readouterr()
        code = run(["zanardi", "--frame", str(frame_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "independence=true" in out
        assert "completeness=true" in out
        assert "local_accessibility=not assessed" in out

    def test_random_mode_is_seed_deterministic(self, tmp_path, capsys):
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        argv = ["zanardi", "--random-frames", "3", "--dim", "4", "--factors", "2,2", "--seed", "11"]
        assert run(argv + ["--out", str(first)]) == 0
        assert run(argv + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        out = capsys.readouterr().out
        assert "failures=0" in out

    def test_requires_exactly_one_mode(self, capsys):
        assert run(["zanardi"]) == 1


class TestGaussianCommand:
    def test_williamson_vacuum(self, tmp_path, capsys):
        path = tmp_path / "vacuum.json"
        ser.dump_json(path, ser.gaussian_state_to_dict(tl.vacuum_state(2)))
        code = run(["gaussian", "williamson", "--in", str(path)])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "nu=1,1"
        assert lines[1].startswith("S[0]=") and lines[4].startswith("S[3]=")
        assert float(lines[5].split("=")[1]) < 1e-10
        assert float(lines[6].split("=")[1]) < 1e-10

    def test_williamson_writes_transform(self, tmp_path, capsys):
        path = write_tms(tmp_path)
        out = tmp_path / "transform.json"
        assert run(["gaussian", "williamson", "--in", str(path), "--out", str(out)]) == 0
        payload = ser.load_json(out)
        s = np.asarray(payload["S"])
        state = tl.two_mode_squeezed(1.0)
        normal = s @ state.cov.sigma @ s.T
        np.testing.assert_allclose(normal, np.eye(4), atol=1e-8)

    def test_entangle_two_mode_squeezed(self, tmp_path, capsys):
        path = write_tms(tmp_path, r=1.0)
        assert run(["gaussian", "entangle", "--in", str(path), "--partition", "1"]) == 0
        value = float(capsys.readouterr().out.splitlines()[0].split("=")[1])
        assert abs(value - tl.thermal_entropy(np.cosh(2.0))) < 1e-10

    def test_entangle_mixed_state_fails_cleanly(self, tmp_path, capsys):
        path = tmp_path / "thermal.json"
        ser.dump_json(
            path, {"n_modes": 2, "sigma": (1.5 * np.eye(4)).tolist(), "mean": [0.0] * 4}
        )
        code = run(["gaussian", "entangle", "--in", str(path), "--partition", "1"])
        assert code == 1
        payload = json.loads(capsys.readouterr().err.strip())
        assert "log_negativity" in payload["message"]

    def test_invalid_covariance_gives_exit_1(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        ser.dump_json(path, {"n_modes": 1, "sigma": [[0.1, 0.0], [0.0, 0.1]], "mean": [0.0, 0.0]})
        code = run(["gaussian", "williamson", "--in", str(path)])
        assert code == 1
        payload = json.loads(capsys.readouterr().err.strip())
        assert payload["error"] == "InvalidCovarianceError"


class TestTwobodyCommand:
    def test_sweep_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = run(
            ["twobody", "sweep", "--m1", "1", "--m2", "1", "--omega", "1", "--kappa", "0:4:1", "--out", str(out)]
        )
        assert code == 0
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "kappa,interparticle_entropy,internal_external_entropy"
        assert len(lines) == 6
        first = lines[1].split(",")
        assert float(first[0]) == 0.0
        assert float(first[1]) == 0.0
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_sweep_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["twobody", "sweep", "--m1", "1", "--m2", "2", "--omega", "1.5", "--kappa", "0:2:0.5"]
        assert run(argv + ["--out", str(a)]) == 0
        assert run(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_thread_cap_respected(self, tmp_path, monkeypatch):
        monkeypatch.setenv("TPSLAB_THREADS", "1")
        out = tmp_path / "sweep.csv"
        assert run(
            ["twobody", "sweep", "--m1", "1", "--m2", "1", "--omega", "1", "--kappa", "0:1:0.5", "--out", str(out)]
        ) == 0
        assert len(out.read_text().splitlines()) == 4


class TestScatterCommand:
    def test_history_csv(self, tmp_path):
        out = tmp_path / "history.csv"
        code = run(
            [
                "scatter", "--sites", "12", "--hop", "1", "--g", "2",
                "--ka", "1.5708", "--kb", "-1.5708", "--times", "0:3:1", "--out", str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,entropy_nats"
        assert len(lines) == 5
        assert float(lines[1].split(",")[1]) < 1e-10

    def test_default_time_grid(self, tmp_path):
        out = tmp_path / "history.csv"
        code = run(
            [
                "scatter", "--sites", "12", "--hop", "1", "--g", "1",
                "--ka", "1.5708", "--kb", "-1.5708", "--out", str(out),
            ]
        )
        assert code == 0
        assert len(out.read_text().splitlines()) == 62

    def test_unknown_flag_is_usage_error(self, tmp_path):
        code = run(["scatter", "--sites", "12", "--bogus", "1"])
        assert code == 2


class TestConsoleEntryPoint:
    def test_installed_script_runs(self, tmp_path):
        state = write_bell(tmp_path)
        out = tmp_path / "frame.json"
        proc = subprocess.run(
            [
                sys.executable, "-m", "tpslab.cli",
                "tailor", "--state", str(state), "--factors", "2,2",
                "--target", "0.5,0.5", "--out", str(out),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("entropy_nats=")

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tpslab.cli", "no-such-command"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
