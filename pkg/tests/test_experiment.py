import csv
import re

import pytest

from pso_hyper import ConfigurationError, FitnessSpec, Hyperparameters, SolveStrategy
from pso_hyper.experiment import (
    CSV_COLUMNS,
    RunConfig,
    compare_strategies,
    emit_chart,
    emit_csv,
    run_experiment,
    run_single,
    summarize_csv,
    summarize_traces,
)

from conftest import FUNCTIONS

DEFAULTS = Hyperparameters(0.5, 1.0, 1.0)
SEQUENTIAL = SolveStrategy("sequential", DEFAULTS)
FIXED = SolveStrategy("fixed", DEFAULTS)
ZERO = SolveStrategy("fixed", Hyperparameters(0.0, 0.0, 0.0))


def test_f1_sequential_seed_one_converges():
    trace = run_single(RunConfig(FUNCTIONS["f1"], 2, 20, SEQUENTIAL, seed=1))
    assert trace.final_gbest <= 1e-6
    assert len(trace.epochs) == 21


def test_zero_weights_single_epoch_is_initial_state():
    trace = run_single(RunConfig(FUNCTIONS["f2"], 2, 1, ZERO, seed=9))
    start, after = trace.epochs
    assert [p.position for p in start.particles] == [p.position for p in after.particles]
    assert start.global_best_fitness == after.global_best_fitness


def test_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig(FUNCTIONS["f1"], epochs=0)
    with pytest.raises(ConfigurationError):
        RunConfig(FUNCTIONS["f1"], n_particles=0)
    with pytest.raises(ConfigurationError):
        RunConfig(FUNCTIONS["f1"], seed=-1)


def test_seed_set_pairing(fitness):
    a = run_experiment(RunConfig(fitness, 2, 5, SEQUENTIAL, seed=17, n_runs=4))
    b = run_experiment(RunConfig(fitness, 2, 5, FIXED, seed=17, n_runs=4))
    for ta, tb in zip(a, b):
        assert ta.seed == tb.seed
        assert ta.epochs[0] == tb.epochs[0]


def test_gbest_curve_non_increasing(fitness):
    for mode in ("sequential", "fixed", "cyclic", "c1"):
        for t in run_experiment(RunConfig(fitness, 3, 20, SolveStrategy(mode, DEFAULTS), seed=3, n_runs=10)):
            curve = t.gbest_curve
            assert all(b <= a for a, b in zip(curve, curve[1:]))


def test_compare_single_strategy_entry():
    report = compare_strategies(RunConfig(FUNCTIONS["f1"], epochs=5), [SEQUENTIAL], 3)
    assert list(report) == ["sequential"]


def test_single_run_statistics_collapse():
    s = compare_strategies(RunConfig(FUNCTIONS["f2"], epochs=3), [FIXED], 1)["fixed"]
    assert s.median == s.mean == s.min == s.max


def test_sequential_beats_fixed_on_f1():
    report = compare_strategies(RunConfig(FUNCTIONS["f1"], seed=1), [SEQUENTIAL, FIXED], 100)
    assert report["sequential"].success_rate >= 0.95
    assert report["fixed"].success_rate < report["sequential"].success_rate


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_csv_single_row(tmp_path):
    trace = run_single(RunConfig(FUNCTIONS["f1"], 1, 1, SEQUENTIAL, seed=2))
    trace.epochs = trace.epochs[:1]
    out = tmp_path / "t.csv"
    emit_csv(trace, out)
    text = out.read_bytes()
    assert text.count(b"\n") == 2 and b"\r" not in text
    assert tuple(_rows(out)[0]) == CSV_COLUMNS


def test_csv_two_dimensional_rows_fully_populated(tmp_path):
    out = tmp_path / "t.csv"
    emit_csv(run_single(RunConfig(FUNCTIONS["f3"], 2, 3, SEQUENTIAL, seed=4)), out)
    rows = _rows(out)[1:]
    updated = [r for r in rows if r[0] != "0"]
    assert updated and all(len(r) == 14 and all(r) for r in updated)
    # the initial swarm has no applied weights
    assert all(r[8:] == [""] * 6 for r in rows if r[0] == "0")


def test_csv_one_dimensional_leaves_second_axis_empty(tmp_path):
    out = tmp_path / "t.csv"
    emit_csv(run_single(RunConfig(FUNCTIONS["f1"], 2, 2, SEQUENTIAL, seed=4)), out)
    for r in _rows(out)[1:]:
        assert r[5] == "" and r[7] == ""


def test_csv_reals_round_trip(tmp_path):
    trace = run_single(RunConfig(FUNCTIONS["f2"], 2, 4, FIXED, seed=11))
    out = tmp_path / "t.csv"
    emit_csv(trace, out)
    rows = _rows(out)[1:]
    for row, (e, i) in zip(rows, [(e, i) for e in trace.epochs for i in range(2)]):
        p = e.particles[i]
        assert float(row[2]) == p.fitness
        assert (float(row[4]), float(row[5])) == p.position
        assert (float(row[6]), float(row[7])) == p.velocity


def test_summary_reproducible_from_csv(tmp_path):
    traces = run_experiment(RunConfig(FUNCTIONS["f2"], 2, 20, FIXED, seed=5, n_runs=12))
    paths = []
    for k, t in enumerate(traces):
        paths.append(tmp_path / f"r{k}.csv")
        emit_csv(t, paths[-1])
    assert summarize_csv("fixed", paths) == summarize_traces("fixed", traces)


def test_csv_io_error_names_path(tmp_path):
    trace = run_single(RunConfig(FUNCTIONS["f1"], 1, 1, SEQUENTIAL))
    bad = tmp_path / "missing" / "t.csv"
    with pytest.raises(OSError, match="missing"):
        emit_csv(trace, bad)


def test_chart_flat_trace(tmp_path):
    trace = run_single(RunConfig(FUNCTIONS["f1"], 2, 5, ZERO, seed=1))
    out = tmp_path / "c.svg"
    emit_chart([trace], ["still"], out)
    svg = out.read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 1
    points = re.search(r'points="([^"]+)"', svg).group(1).split()
    assert len({p.split(",")[1] for p in points}) == 1


def test_chart_two_traces(tmp_path):
    cfg = RunConfig(FUNCTIONS["f3"], seed=2)
    traces = [run_single(cfg), run_single(RunConfig(cfg.fitness, strategy=FIXED, seed=2))]
    out = tmp_path / "c.svg"
    emit_chart(traces, ["sequential", "fixed <default>"], out)
    svg = out.read_text()
    assert svg.count("<polyline") == 2
    assert svg.count('class="legend"') == 2
    assert "fixed &lt;default&gt;" in svg


def test_chart_rejects_empty(tmp_path):
    out = tmp_path / "c.svg"
    with pytest.raises(ConfigurationError):
        emit_chart([], [], out)
    assert not out.exists()
