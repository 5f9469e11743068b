import io
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from braidjones.braid import parse_braid
from braidjones.cli import (
    CSV_COLUMNS,
    default_grid,
    emit_csv,
    preset,
    run_sweep,
)
from braidjones.nmr import MeasurementPrecision

SRC = str(Path(__file__).resolve().parents[1] / "src")


def run_cli(*args):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "braidjones", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_presets():
    trefoil = preset("trefoil")
    assert len(trefoil.letters) == 3
    assert sum(g.sign for g in trefoil.letters) == 3
    figure8 = preset("figure8")
    assert len(figure8.letters) == 4
    borromean = preset("borromean")
    assert len(borromean.letters) == 6
    assert sum(g.sign for g in borromean.letters) == 0
    with pytest.raises(ValueError, match="borromean, figure8, trefoil"):
        preset("unknot")


def test_run_sweep_exact_mode():
    records = run_sweep(preset("trefoil"), default_grid(), with_oracle=True)
    assert len(records) == 31
    for r in records:
        assert abs(r.trace_exact - r.trace_nmr) <= 1e-10
        assert abs(r.bracket - r.bracket_oracle) <= 1e-9
        assert r.eq9_bound == 0.0


def test_run_sweep_identity_braid_point():
    records = run_sweep(parse_braid("", 3), [0.0])
    assert abs(records[0].trace_exact - 2.0) < 1e-12
    assert abs(records[0].bracket - 4.0) < 1e-12
    assert records[0].bracket_oracle is None


def test_run_sweep_figure8_at_zero():
    records = run_sweep(preset("figure8"), [0.0])
    assert records[0].jones == records[0].bracket


def test_run_sweep_rejects_inadmissible_angle():
    with pytest.raises(ValueError, match="45.0"):
        run_sweep(preset("trefoil"), [0.0, 45.0])


def test_run_sweep_rejects_wrong_strand_count():
    with pytest.raises(ValueError, match="3-strand"):
        run_sweep(parse_braid("s1", 2), [0.0])


def test_run_sweep_deterministic_with_noise():
    prec = MeasurementPrecision(epsilon=1e-3, alpha1=1.0, seed=9)
    first = run_sweep(preset("figure8"), default_grid(), prec)
    second = run_sweep(preset("figure8"), default_grid(), prec)
    assert first == second
    for r in first:
        assert abs(r.trace_exact - r.trace_nmr) <= r.eq9_bound


def test_emit_csv_shape_and_determinism():
    records = run_sweep(preset("trefoil"), default_grid(), with_oracle=True)
    buf = io.StringIO()
    emit_csv(records, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 32
    assert lines[0] == CSV_COLUMNS
    assert all(len(line.split(",")) == 20 for line in lines)
    buf2 = io.StringIO()
    emit_csv(records, buf2)
    assert buf.getvalue() == buf2.getvalue()


def test_emit_csv_empty_and_oracle_free():
    buf = io.StringIO()
    emit_csv([], buf)
    assert buf.getvalue() == CSV_COLUMNS + "\n"
    records = run_sweep(preset("trefoil"), [0.0])
    buf = io.StringIO()
    emit_csv(records, buf)
    row = buf.getvalue().splitlines()[1].split(",")
    assert row[11] == "" and row[12] == ""


def test_cli_sweep_end_to_end(tmp_path):
    out = tmp_path / "sweep.csv"
    result = run_cli(
        "sweep", "--preset", "trefoil", "--oracle", "--epsilon", "0",
        "--out", str(out),
    )
    assert result.returncode == 0, result.stderr
    first = out.read_bytes()
    assert len(first.splitlines()) == 32
    result = run_cli(
        "sweep", "--preset", "trefoil", "--oracle", "--epsilon", "0",
        "--out", str(out),
    )
    assert result.returncode == 0
    assert out.read_bytes() == first


def test_cli_sweep_corrupted_tolerance_fails(tmp_path):
    out = tmp_path / "sweep.csv"
    result = run_cli(
        "sweep", "--preset", "trefoil", "--oracle", "--epsilon", "0",
        "--oracle-tol", "1e-30", "--out", str(out),
    )
    assert result.returncode == 1
    assert "FAIL" in result.stderr


def test_cli_sweep_noise_deterministic(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ("sweep", "--preset", "borromean", "--epsilon", "1e-3", "--seed", "7")
    assert run_cli(*args, "--out", str(out1)).returncode == 0
    assert run_cli(*args, "--out", str(out2)).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_sweep_stdout():
    result = run_cli("sweep", "--preset", "trefoil", "--theta-max-deg", "2")
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert len(lines) == 4
    assert lines[0] == CSV_COLUMNS


def test_cli_angles():
    result = run_cli("angles", "--theta-deg", "0", "--which", "2")
    assert result.returncode == 0
    values = dict(line.split("=") for line in result.stdout.splitlines())
    assert abs(float(values["alpha"]) - math.pi / 2) < 1e-12
    assert abs(float(values["beta"]) - math.pi / 2) < 1e-12
    assert abs(float(values["gamma"]) - 2 * math.pi / 3) < 1e-12


def test_cli_compile():
    result = run_cli("compile", "--theta-deg", "15", "--which", "2")
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert lines[-1].startswith("fidelity=")
    assert float(lines[-1].split("=")[1]) >= 1.0 - 1e-10
    kinds = {line.split()[0] for line in lines[:-1]}
    assert kinds == {"ROT", "COUPLE", "PHASE"}


def test_cli_compile_inverse():
    result = run_cli("compile", "--theta-deg", "10", "--which", "1", "--inverse")
    assert result.returncode == 0
    assert float(result.stdout.splitlines()[-1].split("=")[1]) >= 1.0 - 1e-10


def test_cli_rejects_inadmissible_sweep():
    result = run_cli("sweep", "--preset", "trefoil", "--theta-max-deg", "45")
    assert result.returncode == 2
    assert "admissible" in result.stderr
