import json
import subprocess
import sys

import pytest

from pso_hyper.cli import main, trace_paths


def test_affv_prints_value(capsys):
    assert main(["affv", "--function", "f1", "--points", "1024"]) == 0
    out = capsys.readouterr().out.strip()
    assert abs(float(out) - 1 / 12) <= 1e-6
    assert out == format(float(out), ".17g")


def test_affv_f3_default_target_is_printed_line(capsys):
    main(["affv", "--function", "f3", "--points", "256"])
    default = float(capsys.readouterr().out)
    main(["affv", "--function", "f3", "--x", "0.5", "--y", "0.25", "--points", "256"])
    assert float(capsys.readouterr().out) == default


def test_run_writes_csv_and_chart(tmp_path, capsys):
    out, chart = tmp_path / "run.csv", tmp_path / "run.svg"
    code = main(["run", "--function", "f2", "--particles", "2", "--epochs", "20",
                 "--strategy", "sequential", "--alpha", "0.5", "--c1", "1", "--c2", "1",
                 "--seed", "1", "--runs", "1", "--out", str(out), "--chart", str(chart)])
    assert code == 0
    assert out.exists() and chart.exists()
    summary = json.loads(capsys.readouterr().out)
    assert summary["runs"] == 1


def test_run_multiple_runs_one_file_each(tmp_path, capsys):
    out = tmp_path / "many.csv"
    assert main(["run", "--function", "f1", "--runs", "3", "--out", str(out)]) == 0
    assert all(p.exists() for p in trace_paths(out, 3))
    assert not out.exists()


def test_run_is_byte_identical(tmp_path):
    args = ["run", "--function", "f3", "--strategy", "cyclic", "--seed", "77"]
    main(args + ["--out", str(tmp_path / "a.csv")])
    main(args + ["--out", str(tmp_path / "b.csv")])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_compare_reports_each_strategy(capsys):
    assert main(["compare", "--function", "f1", "--runs", "5", "--strategies", "sequential,fixed,cyclic"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [r["strategy"] for r in report] == ["sequential", "fixed", "cyclic"]


def test_oracle_prints_max_deviation(capsys):
    assert main(["oracle", "--function", "f2", "--pivot", "c2", "--step", "0.001", "--seed", "3", "--cases", "20"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 22
    assert float(lines[-1].split("\t")[1]) <= 1e-3


def test_invalid_weight_is_config_error(tmp_path, capsys):
    code = main(["run", "--function", "f1", "--alpha", "1.5", "--out", str(tmp_path / "x.csv")])
    assert code != 0
    captured = capsys.readouterr()
    assert "alpha" in captured.err and captured.out == ""


def test_io_error_exit_code(tmp_path, capsys):
    code = main(["run", "--function", "f1", "--out", str(tmp_path / "no" / "x.csv")])
    assert code != 0
    assert "no" in capsys.readouterr().err


def test_bad_flag_rejected():
    with pytest.raises(SystemExit) as info:
        main(["run", "--function", "f4", "--out", "x.csv"])
    assert info.value.code != 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "pso_hyper", "affv", "--function", "f2", "--points", "64"],
        capture_output=True, text=True, check=True,
    )
    assert abs(float(proc.stdout) - 7 / 6) < 1e-4
