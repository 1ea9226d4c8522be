"""Trochoid Search Optimization for box-constrained continuous minimization."""

__version__ = "0.1.0"

from .benchmarks import (
    REGISTRY,
    Objective,
    ShiftedObjective,
    griewank,
    make_shift,
    rastrigin,
    resolve,
    rosenbrock,
    shifted,
    sphere,
)
from .core import Bounds, Candidate, RandomStream, ScriptedStream, repair, uniform_init
from .trochoid import TrochoidKind, TrochoidSpec, classify, trochoid_points
from .tso import (
    MoveParams,
    RunResult,
    TsoConfig,
    Variant,
    escape_move,
    global_move,
    global_step_size,
    local_move,
    local_step_size,
    perturb_candidate,
    sample_theta,
    tso_run,
)
from .harness import (
    PAPER_SUITE,
    ExperimentConfig,
    FunctionResult,
    StatsSummary,
    emit_table,
    emit_trace,
    paper_tso_config,
    run_experiment,
    run_named,
)
