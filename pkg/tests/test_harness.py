import json
import math

import numpy as np
import pytest

from trochoid_search.core import Bounds, Candidate
from trochoid_search.harness import (
    PAPER_SUITE,
    ExperimentConfig,
    StatsSummary,
    child_seed,
    emit_table,
    emit_trace,
    paper_tso_config,
    run_experiment,
    run_named,
    write_outputs,
)
from trochoid_search.tso import RunResult, TsoConfig, tso_run

SMALL = TsoConfig(dim=3, pop_size=5, eval_budget=400)


def test_stats_degenerate():
    s = StatsSummary.from_values([0, 0, 0])
    assert (s.mean, s.std, s.min, s.max) == (0, 0, 0, 0)


def test_stats_sample_std():
    s = StatsSummary.from_values([1, 2, 3])
    assert (s.mean, s.std, s.min, s.max) == (2, 1, 1, 3)


def test_stats_single_run_and_clamp():
    s = StatsSummary.from_values([0.7])
    assert (s.mean, s.std, s.min, s.max) == (0.7, 0.0, 0.7, 0.7)
    s = StatsSummary.from_values([0.1] * 3)
    assert s.min <= s.mean <= s.max
    with pytest.raises(ValueError):
        StatsSummary.from_values([])


def test_child_seed_pure_and_distinct():
    assert child_seed(1, "sphere", 0) == child_seed(1, "sphere", 0)
    seeds = {child_seed(1, f, r) for f in PAPER_SUITE for r in range(5)}
    assert len(seeds) == len(PAPER_SUITE) * 5
    assert child_seed(2, "sphere", 0) != child_seed(1, "sphere", 0)


def test_experiment_permutation_invariant_and_deterministic():
    a = run_experiment(ExperimentConfig(SMALL, ["sphere", "shifted:griewank"], 3, 42))
    b = run_experiment(ExperimentConfig(SMALL, ["shifted:griewank", "sphere"], 3, 42))
    assert list(a) == ["sphere", "shifted:griewank"]
    for name in a:
        assert a[name].stats == b[name].stats
        assert [r.trace for r in a[name].runs] == [r.trace for r in b[name].runs]


def test_experiment_shift_per_run():
    res = run_experiment(ExperimentConfig(SMALL, ["shifted:sphere"], 3, 5))
    shifts = [r.shift for r in res["shifted:sphere"].runs]
    assert all(s is not None and s.shape == (3,) for s in shifts)
    assert not np.array_equal(shifts[0], shifts[1])


def test_experiment_stats_match_runs():
    res = run_experiment(ExperimentConfig(SMALL, ["rastrigin"], 4, 9))
    fr = res["rastrigin"]
    finals = fr.finals
    assert fr.stats.mean == pytest.approx(math.fsum(finals) / 4, rel=1e-12)
    assert fr.stats.min == min(finals) and fr.stats.max == max(finals)


def test_single_run_summary():
    res = run_experiment(ExperimentConfig(SMALL, ["sphere"], 1, 0))
    s = res["sphere"].stats
    assert s.mean == s.min == s.max == res["sphere"].runs[0].best_fitness and s.std == 0


def test_unknown_function_fails_before_running():
    with pytest.raises(KeyError):
        ExperimentConfig(SMALL, ["sphere", "nope"], 2, 0)
    with pytest.raises(KeyError):
        run_named("shifted:nope", SMALL)


def test_parallel_matches_serial():
    cfg = ExperimentConfig(SMALL, ["sphere", "griewank"], 2, 3)
    a = run_experiment(cfg, jobs=1)
    b = run_experiment(cfg, jobs=2)
    for name in a:
        assert [r.trace for r in a[name].runs] == [r.trace for r in b[name].runs]


def test_emit_table_csv_zero_row():
    out = emit_table({"sphere": StatsSummary(0, 0, 0, 0)}, "csv")
    assert out.splitlines() == ["function,mean,std,min,max", "sphere,0,0,0,0"]


def test_emit_table_scientific():
    out = emit_table({"sphere": StatsSummary(2.4918e-80, 4.1603e-80, 7.3549e-82, 2.1542e-79)}, "csv")
    assert out.splitlines()[1] == "sphere,2.4918e-80,4.1603e-80,7.3549e-82,2.1542e-79"
    text = emit_table({"sphere": StatsSummary(2.4918e-80, 0, 0, 1.0)}, "text")
    assert "2.4918e-80" in text and text.startswith("function")


def test_emit_table_json_round_trip():
    stats = {"a": StatsSummary(1 / 3, 2 / 7, 1e-300, 12345.678901234), "b": StatsSummary(0, 0, 0, 0)}
    back = json.loads(emit_table(stats, "json"))
    assert {k: StatsSummary(**v) for k, v in back.items()} == stats


def test_emit_table_errors():
    with pytest.raises(ValueError):
        emit_table({}, "csv")
    with pytest.raises(ValueError):
        emit_table({"a": StatsSummary(0, 0, 0, 0)}, "xml")


def test_emit_trace():
    r = RunResult(Candidate(np.zeros(2), 1.5), 10, [(1, 3.0), (4, 1.5), (10, 1.5)])
    assert emit_trace(r) == "evals,best_fitness\n1,3\n4,1.5\n10,1.5\n"


def test_emit_trace_flat_run_has_two_rows():
    res = tso_run(TsoConfig(dim=2, pop_size=3, eval_budget=50, seed=1), lambda x: 1.0, bounds=Bounds(0, 1))
    rows = emit_trace(res).splitlines()[1:]
    assert len(rows) == 2 and rows[0].startswith("1,") and rows[1].startswith("50,")


def test_emit_trace_reproducible():
    cfg = TsoConfig(dim=4, pop_size=6, eval_budget=2000, seed=8)
    a = emit_trace(run_named("shifted:rastrigin", cfg))
    b = emit_trace(run_named("shifted:rastrigin", cfg))
    assert a == b
    evals = [int(line.split(",")[0]) for line in a.splitlines()[1:]]
    assert evals == sorted(set(evals))


def test_write_outputs(tmp_path):
    cfg = ExperimentConfig(SMALL, ["sphere", "shifted:sphere"], 2, 1)
    res = run_experiment(cfg)
    write_outputs(res, cfg, tmp_path)
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "metadata.json" in names
    assert "shifted_sphere_summary.csv" in names and "sphere_run1_trace.csv" in names
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["runs"]["shifted:sphere"][0]["shift"] is not None
    assert meta["runs"]["sphere"][0]["shift"] is None
    assert meta["bounds"]["shifted:sphere"] == [-100.0, 100.0]
    assert meta["tso"]["variant"] == "code"
    assert "numpy" in meta["build"]


def test_paper_preset():
    cfg = paper_tso_config(escape=True)
    assert (cfg.dim, cfg.pop_size, cfg.eval_budget) == (30, 50, 300000)
    assert cfg.escape_enabled and cfg.shared_repair
