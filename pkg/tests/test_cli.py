"""Command-line interface: exit codes, schema, determinism, artifacts."""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "reinhardt_lab.cli"]


def run(*args, env=None):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, timeout=300, env=env
    )


def run_json(*args):
    p = run(*args)
    assert p.stdout, p.stderr
    return p, json.loads(p.stdout)


class TestExitCodes:
    def test_check_ok(self):
        p = run("check", "nonconvex-model")
        assert p.returncode == 0

    def test_check_violation_on_unbounded(self):
        p = run("check", "unbounded-sheet")
        assert p.returncode == 2

    def test_check_unresolved(self):
        p = run("check", "shell")
        assert p.returncode == 2

    def test_classify_model(self):
        p = run("classify", "nonconvex-model")
        assert p.returncode == 0

    def test_classify_not_model(self, tmp_path):
        f = tmp_path / "x.spec"
        f.write_text("n = 2\nQ = u1 + u2^2 + u2^3\n")
        p = run("classify", str(f))
        assert p.returncode == 3

    def test_classify_unknown(self, tmp_path):
        f = tmp_path / "u.spec"
        f.write_text("n = 2\nQ = u1^2 - 4*u1 + 4*u2\n")
        p = run("classify", str(f))
        assert p.returncode == 4

    def test_missing_file_errors(self):
        p = run("classify", "/nonexistent/q.spec")
        assert p.returncode == 1
        assert p.stderr.strip()

    def test_bad_band_rejected(self):
        p = run("levi", "nonconvex-model", "--point", "1,0,0", "--band", "0.5")
        assert p.returncode == 1


class TestSchemas:
    def test_classify_payload(self):
        _, d = run_json("classify", "nonconvex-model")
        assert d["schema_version"] == 1
        assert d["verdict"] == "model"
        assert d["model"]["m"] == [2, 2]
        assert d["model"]["cross"] == {"1,1": "-1/1"}
        assert d["canonical"]["kind"] == "model"
        assert d["slice_checks"] == {"1": True, "2": True}

    def test_check_payload(self):
        _, d = run_json("check", "nonconvex-model")
        assert d["status"] == "ok"
        assert d["boundedness"]["kind"] == "bounded_certified"
        assert d["regularity"]["failures"] == []

    def test_symmetries_payload(self):
        _, d = run_json("symmetries", "nonconvex-model", "--entry-bound", "2")
        assert d["count"] == 2
        mats = {tuple(tuple(r) for r in m["matrix"]) for m in d["maps"]}
        assert ((1, 0, 0), (0, 1, 0), (0, 0, 1)) in mats
        assert ((1, 0, 0), (0, 0, 1), (0, 1, 0)) in mats

    def test_levi_payload(self):
        _, d = run_json(
            "levi", "nonconvex-model", "--point", "0.7071067811865476,0,0.8408964152537145"
        )
        assert d["levi"]["verdict"] == "indefinite"
        eigs = d["levi"]["eigenvalues"]
        assert eigs[0] == pytest.approx(-(2**-0.5), abs=1e-9)
        assert eigs[1] == pytest.approx(4 * 2**0.5, abs=1e-9)

    def test_type_payload(self):
        _, d = run_json("type", "infinite-type-channel", "--point", "1,0", "--degree-bound", "1")
        assert d["probe"]["infinite"] is True
        assert d["probe"]["order"] == "infinite"

    def test_orbit_csv_shape(self):
        p = run("orbit", "nonconvex-model", "--count", "5")
        lines = p.stdout.strip().splitlines()
        assert lines[0] == "i,a_i,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3,boundary_distance"
        assert len(lines) == 6

    def test_orbit_json_format(self):
        p = run("orbit", "nonconvex-model", "--count", "5", "--format", "json")
        d = json.loads(p.stdout)
        assert len(d["orbit"]["points"]) == 5


class TestDeterminism:
    def test_same_seed_same_bytes(self):
        a = run("report", "nonconvex-model", "--seed", "11", "--format", "json")
        b = run("report", "nonconvex-model", "--seed", "11", "--format", "json")
        assert a.stdout == b.stdout

    def test_env_seed_respected(self, tmp_path):
        import os

        env = dict(os.environ, REINHARDT_LAB_SEED="99")
        a = run("symmetries", "nonconvex-model", env=env)
        b = run("symmetries", "nonconvex-model", "--seed", "99")
        assert a.stdout == b.stdout


class TestReportArtifacts:
    def test_single_report_directory(self, tmp_path):
        out = tmp_path / "rep"
        p = run("report", "nonconvex-model", "--out", str(out), "--seed", "5")
        assert p.returncode == 0
        assert (out / "report.json").exists()
        assert (out / "orbit.csv").exists()
        for fig in ("orbit.png", "levi.png", "log_image.png"):
            path = out / fig
            assert path.exists()
            assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        d = json.loads((out / "report.json").read_text())
        assert d["schema_version"] == 1
        assert d["classification"]["verdict"] == "model"

    def test_batch_report(self, tmp_path):
        src = tmp_path / "specs"
        src.mkdir()
        (src / "a.spec").write_text("name = a\nn = 2\nQ = u1 + u2\n")
        (src / "b.spec").write_text("name = b\nn = 1\nQ = u1\n")
        out = tmp_path / "batch"
        p = run("report", str(src), "--out", str(out), "--seed", "1")
        assert p.returncode == 0
        d = json.loads((out / "report.json").read_text())
        assert set(d["entries"]) == {"a", "b"}
        assert (out / "a" / "orbit.csv").exists()
        assert (out / "b" / "orbit.csv").exists()

    def test_out_file_written_atomically(self, tmp_path):
        out = tmp_path / "c.json"
        p = run("classify", "nonconvex-model", "--out", str(out))
        assert p.returncode == 0
        assert json.loads(out.read_text())["verdict"] == "model"
        leftovers = [f for f in tmp_path.iterdir() if f.name != "c.json"]
        assert leftovers == []
