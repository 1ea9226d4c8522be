"""Multi-run experiments, summary statistics and result files."""

from __future__ import annotations

import io
import json
import os
import platform
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .benchmarks import SHIFT_PREFIX, SHIFTED_BOUNDS, resolve
from .core import RandomStream
from .tso import RunResult, TsoConfig, tso_run

__all__ = [
    "PAPER_SUITE",
    "paper_tso_config",
    "ExperimentConfig",
    "StatsSummary",
    "FunctionResult",
    "child_seed",
    "run_named",
    "run_experiment",
    "emit_table",
    "emit_trace",
    "write_outputs",
    "file_stem",
    "format_number",
]

PAPER_SUITE = (
    "sphere", "shifted:sphere",
    "rosenbrock", "shifted:rosenbrock",
    "rastrigin", "shifted:rastrigin",
    "griewank", "shifted:griewank",
)


def paper_tso_config(escape: bool = False, **overrides) -> TsoConfig:
    """Full-scale benchmark protocol used by ``tso bench --suite paper``.

    Dimension 30, population 50, 10000 * dim evaluations, and the reference
    code's shared-draw repair. That repair sends a fully out-of-box point to
    the diagonal, which is what lets the escape flights land near the
    minimizers of the unshifted functions.
    """
    params = dict(dim=30, pop_size=50, eval_budget=300000, escape_enabled=escape, shared_repair=True)
    params.update(overrides)
    return TsoConfig(**params)


def format_number(v: float) -> str:
    """Shortest round-tripping text for ``v``, integral values without ``.0``."""
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def child_seed(master_seed: int, function: str, run: int) -> int:
    """64-bit seed for run ``run`` of ``function``, independent of list order."""
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(zlib.crc32(function.encode()), int(run)))
    return int(seq.generate_state(1, np.uint64)[0])


def run_named(name: str, cfg: TsoConfig) -> RunResult:
    """One seeded run on a registry function.

    The stream seeded with ``cfg.seed`` first draws the shift (shifted
    functions only) and then drives the run.
    """
    base = name[len(SHIFT_PREFIX):] if name.startswith(SHIFT_PREFIX) else name
    resolve(base)  # unknown names fail before any draw
    rng = RandomStream(cfg.seed)
    objective = resolve(name, cfg.dim, rng)
    return tso_run(cfg, objective, rng)


@dataclass(frozen=True)
class ExperimentConfig:
    tso: TsoConfig
    function_names: tuple[str, ...]
    n_runs: int = 30
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "function_names", tuple(self.function_names))
        if self.n_runs < 1:
            raise ValueError(f"n_runs must be >= 1, got {self.n_runs}")
        if not self.function_names:
            raise ValueError("no functions given")
        for name in self.function_names:
            resolve(name[len(SHIFT_PREFIX):] if name.startswith(SHIFT_PREFIX) else name)


@dataclass(frozen=True)
class StatsSummary:
    mean: float
    std: float
    min: float
    max: float

    @classmethod
    def from_values(cls, values) -> "StatsSummary":
        """Sample statistics (``n - 1`` denominator; std is 0 for one value)."""
        v = np.asarray(values, dtype=float)
        if v.size == 0:
            raise ValueError("no values to summarize")
        lo, hi = float(v.min()), float(v.max())
        # rounding in the sum can push the mean a hair outside [min, max]
        mean = min(max(float(v.mean()), lo), hi)
        std = float(v.std(ddof=1)) if v.size > 1 else 0.0
        return cls(mean, std, lo, hi)

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "min": self.min, "max": self.max}


@dataclass
class FunctionResult:
    stats: StatsSummary
    runs: list[RunResult] = field(default_factory=list)

    @property
    def finals(self) -> list[float]:
        return [r.best_fitness for r in self.runs]


def _one(job):
    name, cfg = job
    return run_named(name, cfg)


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> dict[str, FunctionResult]:
    """Run every function ``n_runs`` times and summarize the final fitnesses.

    Results come back keyed and ordered by function, runs in index order,
    whatever ``jobs`` is.
    """
    work = [(name, cfg.tso.with_(seed=child_seed(cfg.master_seed, name, r)))
            for name in cfg.function_names for r in range(cfg.n_runs)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(_one, work, chunksize=1))
    else:
        runs = [_one(w) for w in work]
    out = {}
    for f, name in enumerate(cfg.function_names):
        chunk = runs[f * cfg.n_runs:(f + 1) * cfg.n_runs]
        out[name] = FunctionResult(StatsSummary.from_values([r.best_fitness for r in chunk]), chunk)
    return out


def _sci(v: float) -> str:
    return "0" if v == 0 else f"{v:.4e}"


def _stats_of(item):
    return item.stats if isinstance(item, FunctionResult) else item


def emit_table(results: dict, fmt: str = "text") -> str:
    """Render per-function mean/std/min/max as ``text``, ``csv`` or ``json``.

    ``results`` maps function names to :class:`FunctionResult` or
    :class:`StatsSummary`. Text and csv use 5 significant digits in
    scientific notation with exact zeros printed as ``0``; json keeps full
    precision so it parses back to the same numbers.
    """
    if not results:
        raise ValueError("nothing to emit")
    rows = [(name, _stats_of(item)) for name, item in results.items()]
    if fmt == "json":
        return json.dumps({name: s.as_dict() for name, s in rows}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("function,mean,std,min,max\n")
        for name, s in rows:
            buf.write(",".join([name, _sci(s.mean), _sci(s.std), _sci(s.min), _sci(s.max)]) + "\n")
        return buf.getvalue()
    if fmt == "text":
        width = max(len("function"), *(len(n) for n, _ in rows))
        lines = [f"{'function':<{width}}  {'mean':>11}  {'std':>11}  {'min':>11}  {'max':>11}"]
        for name, s in rows:
            cells = "  ".join(f"{_sci(v):>11}" for v in (s.mean, s.std, s.min, s.max))
            lines.append(f"{name:<{width}}  {cells}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def emit_trace(result: RunResult) -> str:
    """CSV ``evals,best_fitness`` with one row per trace entry."""
    lines = ["evals,best_fitness"]
    lines += [f"{e},{format_number(f)}" for e, f in result.trace]
    return "\n".join(lines) + "\n"


def file_stem(name: str) -> str:
    """Filesystem-safe form of a registry name (``shifted:sphere`` -> ``shifted_sphere``)."""
    return name.replace(":", "_")


def _build_id() -> dict:
    return {
        "package": __version__,
        "numpy": np.__version__,
        "python": platform.python_version(),
        "platform": platform.platform(),
    }


def write_outputs(results: dict[str, FunctionResult], cfg: ExperimentConfig, outdir) -> list[Path]:
    """Write summaries, per-run traces and ``metadata.json`` under ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    def put(path: Path, text: str):
        path.write_text(text)
        written.append(path)

    runs_meta = {}
    for name, fr in results.items():
        stem = file_stem(name)
        put(outdir / f"{stem}_summary.csv", emit_table({name: fr}, "csv"))
        put(outdir / f"{stem}_summary.json", emit_table({name: fr}, "json"))
        runs_meta[name] = []
        for r, run in enumerate(fr.runs):
            put(outdir / f"{stem}_run{r}_trace.csv", emit_trace(run))
            runs_meta[name].append({
                "run": r,
                "seed": run.seed,
                "best_fitness": run.best_fitness,
                "evals_used": run.evals_used,
                "shift": None if run.shift is None else [float(v) for v in run.shift],
            })
    meta = {
        "tso": cfg.tso.to_dict(),
        "functions": list(cfg.function_names),
        "n_runs": cfg.n_runs,
        "master_seed": cfg.master_seed,
        "bounds": {name: _bounds_of(name) for name in cfg.function_names},
        "runs": runs_meta,
        "build": _build_id(),
    }
    put(outdir / "metadata.json", json.dumps(meta, indent=2) + "\n")
    return written


def _bounds_of(name: str) -> list[float]:
    b = SHIFTED_BOUNDS if name.startswith(SHIFT_PREFIX) else resolve(name).default_bounds
    return [b.lower, b.upper]


def default_jobs() -> int:
    return os.cpu_count() or 1
