"""
Benchmark tables
================

Mean, standard deviation, min and max of the final fitness over several runs
for the eight-function suite. This is what ``tso bench --suite paper`` does,
with fewer runs and a smaller budget so it finishes in seconds.
"""

from trochoid_search import PAPER_SUITE, ExperimentConfig, emit_table, paper_tso_config, run_experiment

###############################################################################
# Per-run seeds derive from the master seed, the function name and the run
# index, so adding or reordering functions leaves existing runs unchanged.
cfg = ExperimentConfig(paper_tso_config(dim=10, eval_budget=50000), PAPER_SUITE, n_runs=5, master_seed=0)
results = run_experiment(cfg)
print(emit_table(results, "text"))

###############################################################################
# CSV and JSON renderings of the same table.
print(emit_table({"sphere": results["sphere"]}, "csv"))
print(emit_table({"sphere": results["sphere"]}, "json"))
