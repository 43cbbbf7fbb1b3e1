import json
from pathlib import Path

from click.testing import CliRunner

from symred.cli import main

JOBS = Path(__file__).resolve().parents[1] / "jobs"


def _invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_run_water_job(tmp_path):
    result = _invoke("run", str(JOBS / "water_gf.json"),
                     "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    assert "A1:2" in result.output and "B1:1" in result.output
    for name in ("blocks.txt", "spectrum.csv", "timing.csv"):
        assert (tmp_path / name).exists()


def test_run_d4_job(tmp_path):
    result = _invoke("run", str(JOBS / "d4_ring.json"),
                     "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    spectrum = (tmp_path / "spectrum.csv").read_text()
    reals = sorted(float(line.split(",")[0])
                   for line in spectrum.splitlines()[1:])
    assert reals == [7.0, 9.0, 9.0, 15.0]


def test_check_reports_prevision():
    result = _invoke("check", str(JOBS / "laplacian10.json"))
    assert result.exit_code == 0, result.output
    assert "job ok" in result.output
    assert "degree: 100" in result.output


def test_bench_writes_timings(tmp_path):
    result = _invoke("bench", str(JOBS / "laplacian10.json"),
                     "--sizes", "6", "--runs", "2",
                     "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "timing.csv").read_text().splitlines()
    assert lines[0] == "size,run,T_p,T_b,T_s,T_f,speedup"
    assert any(",mean," in ln for ln in lines)
    assert "Speedup" in result.output


def test_missing_job_file_is_input_error(tmp_path):
    result = _invoke("run", str(tmp_path / "missing.json"))
    assert result.exit_code == 2


def test_malformed_job_is_input_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"version": 99}))
    result = _invoke("run", str(path))
    assert result.exit_code == 2


def test_non_equivariant_operator_is_math_error(tmp_path):
    doc = {
        "version": 1,
        "backend": "exact",
        "group": {"generators": ["(1,2)"]},
        "representation": {"source": "natural"},
        "irreps": {"source": "catalog",
                   "family": {"kind": "cyclic", "n": 2}},
        "operator": {"source": "inline", "matrix": [[1, 2], [3, 4]]},
    }
    path = tmp_path / "bad_operator.json"
    path.write_text(json.dumps(doc))
    result = _invoke("run", str(path), "--out", str(tmp_path / "out"))
    assert result.exit_code == 1


def test_no_equivariance_check_flag_skips_gate(tmp_path):
    doc = {
        "version": 1,
        "backend": "exact",
        "group": {"generators": ["(1,2)"]},
        "representation": {"source": "natural"},
        "irreps": {"source": "catalog",
                   "family": {"kind": "cyclic", "n": 2}},
        "operator": {"source": "inline", "matrix": [[1, 1], [1, 1]]},
    }
    path = tmp_path / "job.json"
    path.write_text(json.dumps(doc))
    result = _invoke("run", str(path), "--no-equivariance-check",
                     "--out", str(tmp_path / "out"))
    assert result.exit_code == 0, result.output
