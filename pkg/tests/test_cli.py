import json

import numpy as np
import pytest

from reachctl import ControlSchedule, StateVector
from reachctl.cli import run
from reachctl.fileio import save_schedule, save_state, save_system


@pytest.fixture
def su2_files(tmp_path, su2_system, basis_state):
    sys_path = tmp_path / "system.json"
    state_path = tmp_path / "state.json"
    save_system(su2_system, sys_path)
    save_state(basis_state, state_path)
    return str(sys_path), str(state_path)


@pytest.fixture
def torus_files(tmp_path, torus_system, plus_state):
    sys_path = tmp_path / "torus.json"
    state_path = tmp_path / "plus.json"
    save_system(torus_system, sys_path)
    save_state(plus_state, state_path)
    return str(sys_path), str(state_path)


def read_report(path):
    with open(path) as fh:
        return json.load(fh)


class TestAnalyze:
    def test_su2(self, su2_files, tmp_path):
        sys_path, state_path = su2_files
        out = str(tmp_path / "report.json")
        code = run(["analyze", "--system", sys_path, "--state", state_path, "--out", out])
        assert code == 0
        report = read_report(out)
        assert report["command"] == "analyze"
        assert report["tool_version"]
        assert len(report["inputs_digest"]) == 64
        assert report["result"]["verdict"] == "OPERATOR_CONTROLLABLE"
        assert report["result"]["algebra_dim"] == 3

    def test_torus_restricted(self, torus_files, tmp_path):
        sys_path, state_path = torus_files
        out = str(tmp_path / "report.json")
        code = run(["analyze", "--system", sys_path, "--state", state_path, "--out", out])
        assert code == 0
        result = read_report(out)["result"]
        assert result["verdict"] == "RESTRICTED"
        assert result["orbit_dim"] == 1
        assert result["conserved_moduli"] == [[0], [1]]

    def test_stdout_default(self, su2_files, capsys):
        sys_path, state_path = su2_files
        assert run(["analyze", "--system", sys_path, "--state", state_path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "analyze"

    def test_missing_file_exits_1(self, su2_files, tmp_path, capsys):
        sys_path, _ = su2_files
        code = run(["analyze", "--system", sys_path, "--state", str(tmp_path / "ghost.json")])
        assert code == 1
        assert "ghost.json" in capsys.readouterr().err


class TestSimulate:
    def test_pure_drift_reports_energy(self, su2_files, tmp_path):
        sys_path, state_path = su2_files
        controls = tmp_path / "controls.json"
        save_schedule(ControlSchedule.constant(0.0, 2.0, 4), controls)
        out = str(tmp_path / "report.json")
        code = run(["simulate", "--system", sys_path, "--state", state_path,
                    "--controls", str(controls), "--out", out])
        assert code == 0
        result = read_report(out)["result"]
        assert result["max_norm_drift"] <= 1e-10
        assert result["max_hamiltonian_drift"] <= 1e-9
        assert result["final_time"] == pytest.approx(2.0)

    def test_driven_energy_is_null(self, su2_files, tmp_path):
        sys_path, state_path = su2_files
        controls = tmp_path / "controls.json"
        save_schedule(ControlSchedule.constant(0.7, 1.0, 2), controls)
        out = str(tmp_path / "report.json")
        run(["simulate", "--system", sys_path, "--state", state_path,
             "--controls", str(controls), "--out", out])
        assert read_report(out)["result"]["max_hamiltonian_drift"] is None

    def test_negative_duration_diagnostic(self, su2_files, tmp_path, capsys):
        sys_path, state_path = su2_files
        controls = tmp_path / "controls.json"
        controls.write_text(json.dumps(
            {"segments": [{"duration": 1.0, "value": 0.0}, {"duration": -1.0, "value": 0.0}]}
        ))
        code = run(["simulate", "--system", sys_path, "--state", state_path,
                    "--controls", str(controls)])
        assert code == 1
        assert "segment 1" in capsys.readouterr().err


class TestSteer:
    def test_converging_run_exits_0(self, su2_files, tmp_path):
        sys_path, from_path = su2_files
        to_path = tmp_path / "target.json"
        save_state(StateVector(np.array([0.0, 1.0], dtype=complex)), to_path)
        out = str(tmp_path / "cert.json")
        code = run(["steer", "--system", sys_path, "--from", from_path, "--to", str(to_path),
                    "--restarts", "4", "--seed", "0", "--out", out])
        assert code == 0
        result = read_report(out)["result"]
        assert result["converged"] is True
        assert result["achieved_distance"] <= 1e-6
        assert len(result["schedule"]["segments"]) == 20

    def test_non_convergence_exits_2(self, torus_files, tmp_path):
        sys_path, from_path = torus_files
        to_path = tmp_path / "offorbit.json"
        save_state(StateVector(np.array([1.0, 0.0], dtype=complex)), to_path)
        out = str(tmp_path / "cert.json")
        code = run(["steer", "--system", sys_path, "--from", from_path, "--to", str(to_path),
                    "--restarts", "2", "--out", out])
        assert code == 2
        result = read_report(out)["result"]
        assert result["converged"] is False
        # conservation keeps the distance above the moduli mismatch floor
        assert result["achieved_distance"] >= (1.0 - 1.0 / np.sqrt(2.0)) - 1e-12

    def test_projective_flag(self, su2_files, tmp_path):
        sys_path, from_path = su2_files
        to_path = tmp_path / "target.json"
        save_state(StateVector(np.array([0.0, 1.0], dtype=complex)), to_path)
        code = run(["steer", "--system", sys_path, "--from", from_path, "--to", str(to_path),
                    "--restarts", "2", "--projective", "--out", str(tmp_path / "c.json")])
        assert code == 0


class TestRecurrence:
    def test_found_return(self, torus_files, tmp_path):
        sys_path, state_path = torus_files
        out = str(tmp_path / "rec.json")
        code = run(["recurrence", "--system", sys_path, "--state", state_path,
                    "--tol", "0.05", "--tmax", "450", "--out", out])
        assert code == 0
        result = read_report(out)["result"]
        assert result["found"] is True
        assert result["return_time"] <= 140.0 * np.pi

    def test_absence_is_explicit(self, torus_files, tmp_path):
        sys_path, state_path = torus_files
        out = str(tmp_path / "rec.json")
        code = run(["recurrence", "--system", sys_path, "--state", state_path,
                    "--tol", "1e-9", "--tmax", "5", "--out", out])
        assert code == 0
        result = read_report(out)["result"]
        assert result["found"] is False
        assert result["return_time"] is None


class TestVerify:
    def test_su2_passes(self, su2_files, tmp_path):
        sys_path, state_path = su2_files
        out = str(tmp_path / "verify.json")
        code = run(["verify", "--system", sys_path, "--state", state_path,
                    "--samples", "4", "--word-length", "4", "--seed", "7", "--out", out])
        assert code == 0
        result = read_report(out)["result"]
        assert result["verdict"] == "PASS"
        assert result["n_converged"] == 4
        assert len(result["samples"]) == 4

    def test_repeat_runs_byte_identical(self, su2_files, tmp_path):
        sys_path, state_path = su2_files
        out1 = tmp_path / "v1.json"
        out2 = tmp_path / "v2.json"
        args = ["verify", "--system", sys_path, "--state", state_path,
                "--samples", "3", "--word-length", "4", "--seed", "5"]
        assert run(args + ["--out", str(out1)]) == 0
        assert run(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_threaded_run_matches_bytes(self, su2_files, tmp_path, monkeypatch):
        sys_path, state_path = su2_files
        args = ["verify", "--system", sys_path, "--state", state_path,
                "--samples", "3", "--word-length", "4", "--seed", "5"]
        out1 = tmp_path / "seq.json"
        out2 = tmp_path / "par.json"
        assert run(args + ["--out", str(out1)]) == 0
        monkeypatch.setenv("REACHCTL_THREADS", "3")
        assert run(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_invalid_thread_env_exits_1(self, su2_files, monkeypatch, capsys):
        sys_path, state_path = su2_files
        monkeypatch.setenv("REACHCTL_THREADS", "zero")
        code = run(["verify", "--system", sys_path, "--state", state_path, "--samples", "2"])
        assert code == 1
        assert "REACHCTL_THREADS" in capsys.readouterr().err


class TestArgumentHandling:
    def test_unknown_subcommand_exits_1(self, capsys):
        assert run(["explode"]) == 1
        capsys.readouterr()

    def test_unknown_flag_exits_1(self, su2_files, capsys):
        sys_path, state_path = su2_files
        assert run(["analyze", "--system", sys_path, "--state", state_path, "--wat"]) == 1
        capsys.readouterr()

    def test_help_exits_0(self, capsys):
        assert run(["--help"]) == 0
        assert "analyze" in capsys.readouterr().out

    def test_non_skew_input_cites_entry(self, tmp_path, capsys):
        doc = {
            "n": 2,
            "A": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
            "B": [[[0.0, 0.0], [0.0, 1.0]], [[0.0, 1.0], [0.0, 0.0]]],
        }
        sys_path = tmp_path / "sys.json"
        sys_path.write_text(json.dumps(doc))
        state_path = tmp_path / "state.json"
        state_path.write_text(json.dumps({"n": 2, "c": [[1.0, 0.0], [0.0, 0.0]]}))
        code = run(["analyze", "--system", str(sys_path), "--state", str(state_path)])
        assert code == 1
        err = capsys.readouterr().err
        assert "not skew-Hermitian" in err
        assert "entry" in err


class TestReportRoundTrip:
    def test_serialize_parse_serialize(self, su2_files, tmp_path):
        from reachctl.fileio import render

        sys_path, state_path = su2_files
        out = tmp_path / "report.json"
        run(["analyze", "--system", sys_path, "--state", state_path, "--out", str(out)])
        text = out.read_text()
        assert render(json.loads(text)) == text
