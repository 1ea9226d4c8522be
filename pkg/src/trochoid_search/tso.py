"""Trochoid Search Optimization engine.

Each candidate is perturbed coordinate by coordinate: with probability ``pm``
a coordinate ``i`` fires, a partner coordinate ``k`` is picked at random and
both are moved along a trochoid, either anchored at the incumbent (global
move, chosen with probability ``p_switch``) or at the candidate itself (local
move). An optional escape step adds rare tangent flights or drifts relative to
the incumbent. Out-of-box coordinates are resampled, the trial is evaluated
and it replaces its parent only when strictly better.

Draw order (part of the determinism contract, per fired coordinate ``i``):

    gate u, k (one uniform), theta (one normal), switch u,
    step-size draws (global: selector u [+ sign u]; local: sign u),
    B draw(s) (CODE: one for the i-term then one for the k-term; TEXT: one)

then, per candidate, the optional escape draws and the repair draws.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import _jit
from .core import Bounds, Candidate, RandomStream, repair, uniform_init

__all__ = [
    "Variant",
    "TsoConfig",
    "MoveParams",
    "RunResult",
    "sample_theta",
    "global_step_size",
    "local_step_size",
    "global_move",
    "local_move",
    "escape_move",
    "perturb_candidate",
    "tso_run",
]


class Variant(str, enum.Enum):
    """Which form of the move equations to use.

    CODE follows the reference MATLAB listing, TEXT the equations as printed
    in prose (terms swapped between i and k, one shared B, ln(itr + 10)).
    """

    CODE = "code"
    TEXT = "text"


@dataclass(frozen=True)
class TsoConfig:
    pop_size: int = 50
    dim: int = 30
    eval_budget: int | None = None  # None -> 10000 * dim
    pm: float = 0.05
    p_switch: float = 0.9
    p_escape: float = 0.1
    escape_enabled: bool = False
    p_dist_step: float = 0.8
    b_scale: float = 10.0
    log_offset_global: float | None = None  # None -> 1 (CODE) or 10 (TEXT)
    variant: Variant = Variant.CODE
    shared_repair: bool = False
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.eval_budget is None:
            object.__setattr__(self, "eval_budget", 10000 * self.dim)
        if self.log_offset_global is None:
            object.__setattr__(self, "log_offset_global", 1.0 if self.variant is Variant.CODE else 10.0)
        self.validate()

    def validate(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.pop_size < 1:
            raise ValueError(f"pop_size must be >= 1, got {self.pop_size}")
        if self.eval_budget < 1:
            raise ValueError(f"eval_budget must be >= 1, got {self.eval_budget}")
        for name in ("pm", "p_switch", "p_escape", "p_dist_step"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be a probability, got {v}")
        if self.b_scale < 0:
            raise ValueError(f"b_scale must be >= 0, got {self.b_scale}")
        # smallest itr is 1, the log must stay positive there
        if 1 + self.log_offset_global <= 1:
            raise ValueError(f"log_offset_global must be > 0, got {self.log_offset_global}")

    def with_(self, **changes) -> "TsoConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["variant"] = self.variant.value
        return d


@dataclass(frozen=True)
class MoveParams:
    theta: float
    r: float
    b1: float
    b2: float


@dataclass
class RunResult:
    """Outcome of one run.

    ``trace`` holds ``(evals, best_fitness)`` at the initial incumbent, at
    every strict improvement, and a closing entry for the final state when
    evaluations were spent after the last improvement.
    """

    best: Candidate
    evals_used: int
    trace: list[tuple[int, float]] = field(default_factory=list)
    seed: int | None = None
    shift: np.ndarray | None = None
    infeasible_evals: int = 0  # evaluated points outside the box; 0 unless repair is broken

    @property
    def best_fitness(self) -> float:
        return self.best.fitness

    @property
    def improvements(self) -> list[tuple[int, float]]:
        """Trace without the closing final-state entry."""
        if len(self.trace) >= 2 and self.trace[-1][1] == self.trace[-2][1]:
            return self.trace[:-1]
        return list(self.trace)


def sample_theta(rng) -> float:
    """Trochoid angle: a standard normal scaled by pi/2."""
    return rng.normal() * (math.pi / 2.0)


def global_step_size(itr: int, itr_max: int, dist: float, rng, *,
                     p_dist_step: float = 0.8, log_offset: float = 1.0) -> float:
    """Step size for the global move.

    With probability ``p_dist_step`` the signed distance-based step
    ``0.5 (1 - 2u) dist / ln(itr + log_offset)``; otherwise the deterministic
    decay ``(1 - itr/itr_max) ** (2 itr/itr_max)`` in [0, 1].
    """
    if itr + log_offset <= 1:
        raise ValueError(f"ln(itr + log_offset) must be positive (itr={itr}, offset={log_offset})")
    if rng.uniform() < p_dist_step:
        return _jit.dist_step(rng.uniform(), float(dist), itr, float(log_offset))
    return _jit.decay_step(itr, itr_max)


def local_step_size(itr: int, x_norm: float, rng) -> float:
    """Signed local step ``0.05 (1 - 2u) |x| / ln(itr + 1)``."""
    if itr < 1:
        raise ValueError(f"itr must be >= 1, got {itr}")
    return _jit.local_step(rng.uniform(), float(x_norm), itr)


def _check_index(x, *idx):
    n = len(x)
    for j in idx:
        if not 0 <= j < n:
            raise IndexError(f"index {j} out of range for dimension {n}")


def global_move(x, best, i: int, k: int, params: MoveParams, variant=Variant.CODE) -> np.ndarray:
    """Move coordinates ``i`` and ``k`` of ``x`` onto a trochoid around ``best``.

    Other coordinates are copied from ``x``. When ``i == k`` the k-write wins.
    """
    _check_index(x, i, k)
    out = np.array(x, dtype=float)
    _jit.apply_move(out, np.ascontiguousarray(best, dtype=float), i, k, params.theta, params.r,
                    params.b1, params.b2, Variant(variant) is Variant.CODE)
    return out


def local_move(x, i: int, k: int, params: MoveParams, variant=Variant.CODE) -> np.ndarray:
    """Like :func:`global_move` but anchored at ``x`` itself.

    Writes are sequential, so with ``i == k`` both increments land on the
    same coordinate.
    """
    _check_index(x, i, k)
    out = np.array(x, dtype=float)
    _jit.apply_move(out, out, i, k, params.theta, params.r, params.b1, params.b2,
                    Variant(variant) is Variant.CODE)
    return out


def escape_move(x, best, itr: int, itr_max: int, bounds: Bounds, rng) -> np.ndarray:
    """Tangent flight early in the run, drift relative to ``best`` otherwise.

    Tangent branch (first half of the run, probability 1/2): every coordinate
    moves by ``tan(u pi) (ub - lb)`` with one shared ``u``, redrawn when it
    sits within 1e-12 of 1/2. Drift branch: ``x + step (x - v (best - x))``
    with ``step = 15 (1 - 2u) / ln(1 + itr)``. The result may leave the box;
    callers repair it.
    """
    x = np.array(x, dtype=float)
    if rng.uniform() <= 0.5 and itr <= 0.5 * itr_max:
        u = rng.uniform()
        while abs(u - 0.5) < _jit.TAN_GUARD:
            u = rng.uniform()
        _jit.escape_tan(x, u, bounds.width)
        return x
    step = _jit.drift_step(rng.uniform(), itr)
    _jit.escape_drift(x, np.ascontiguousarray(best, dtype=float), step, rng.uniform())
    return x


def perturb_candidate(x: Candidate, best, cfg: TsoConfig, itr: int, rng,
                      bounds: Bounds, itr_max: int | None = None) -> np.ndarray:
    """Build one repaired trial position from ``x``.

    Every coordinate ``i`` passes a ``pm`` gate; on a hit a partner ``k`` and
    an angle are drawn and the global or local trochoid move is applied to
    the working copy, so later coordinates see earlier edits. Distances and
    norms are taken on the working copy. Then the optional escape step, then
    repair. ``itr_max`` defaults to ``cfg.eval_budget``.
    """
    itr_max = cfg.eval_budget if itr_max is None else itr_max
    best = np.ascontiguousarray(best, dtype=float)
    x1 = np.array(x.position, dtype=float)
    dim = x1.size
    code = cfg.variant is Variant.CODE
    for i in range(dim):
        if rng.uniform() > cfg.pm:
            continue
        k = rng.randint(dim)
        theta = sample_theta(rng)
        if rng.uniform() < cfg.p_switch:
            r = global_step_size(itr, itr_max, _jit.norm_diff(best, x1), rng,
                                 p_dist_step=cfg.p_dist_step, log_offset=cfg.log_offset_global)
            anchor = best
        else:
            r = local_step_size(itr, _jit.norm(x1), rng)
            anchor = x1
        b1 = cfg.b_scale * rng.uniform()
        b2 = cfg.b_scale * rng.uniform() if code else b1
        _jit.apply_move(x1, anchor, i, k, theta, r, b1, b2, code)
    if cfg.escape_enabled and rng.uniform() <= cfg.p_escape:
        x1 = escape_move(x1, best, itr, itr_max, bounds, rng)
    return repair(x1, bounds, rng, shared=cfg.shared_repair)


def _resolve_bounds(objective, bounds):
    if bounds is None:
        bounds = getattr(objective, "default_bounds", None)
        if bounds is None:
            raise ValueError("bounds are required for objectives without default_bounds")
    return bounds


def _check_objective(cfg, objective):
    min_dim = getattr(objective, "min_dim", 1)
    if cfg.dim < min_dim:
        raise ValueError(f"{getattr(objective, 'name', 'objective')} needs dim >= {min_dim}, got {cfg.dim}")
    shift = getattr(objective, "shift", None)
    if shift is not None and len(shift) != cfg.dim:
        raise ValueError(f"objective shift has length {len(shift)}, config dim is {cfg.dim}")
    return shift


def tso_run(cfg: TsoConfig, objective, rng=None, bounds: Bounds | None = None,
            engine: str = "auto") -> RunResult:
    """Minimize ``objective`` over the box with a fixed evaluation budget.

    ``objective`` is any callable on a length-``cfg.dim`` vector; registry
    objectives also supply default bounds. ``rng`` defaults to a
    :class:`RandomStream` seeded from ``cfg.seed``.

    ``engine`` picks the driver: ``"python"`` runs the operators above one by
    one, ``"compiled"`` runs the whole loop in numba (registry objectives and
    :class:`RandomStream` only), ``"auto"`` takes the compiled loop whenever
    it can. Both produce identical results for the same seed.

    The budget is checked before every evaluation, so ``evals_used`` equals
    ``cfg.eval_budget`` exactly. The iteration index fed to the step-size
    schedules is the evaluation count so far.
    """
    cfg.validate()
    bounds = _resolve_bounds(objective, bounds)
    shift = _check_objective(cfg, objective)
    if rng is None:
        rng = RandomStream(cfg.seed)
    compiled_ok = getattr(objective, "kind", None) is not None and isinstance(rng, RandomStream)
    if engine == "compiled" and not compiled_ok:
        raise ValueError("the compiled engine needs a registry objective and a RandomStream")
    if engine not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "compiled" or (engine == "auto" and compiled_ok):
        return _run_compiled(cfg, objective, rng, bounds, shift)
    return _run_python(cfg, objective, rng, bounds, shift)


def _finish_trace(trace, evals, best_fit):
    if trace[-1][0] != evals:
        trace.append((evals, best_fit))
    return trace


def _run_python(cfg, objective, rng, bounds, shift) -> RunResult:
    evaluate = getattr(objective, "evaluate", objective)
    budget = cfg.eval_budget
    pop = [Candidate(uniform_init(bounds, cfg.dim, rng)) for _ in range(cfg.pop_size)]
    best_pos = uniform_init(bounds, cfg.dim, rng)
    best_fit = float(evaluate(best_pos))
    evals = 1
    trace = [(evals, best_fit)]
    infeasible = 0
    while evals < budget:
        for cand in pop:
            if evals >= budget:
                break
            trial = perturb_candidate(cand, best_pos, cfg, evals, rng, bounds, budget)
            if not bounds.contains(trial):
                infeasible += 1
            val = float(evaluate(trial))
            evals += 1
            if val < cand.fitness:
                cand.position = trial
                cand.fitness = val
                if val < best_fit:
                    best_pos, best_fit = trial, val
                    trace.append((evals, val))
    return RunResult(Candidate(best_pos.copy(), best_fit), evals, _finish_trace(trace, evals, best_fit),
                     seed=getattr(rng, "seed", None), shift=None if shift is None else np.array(shift),
                     infeasible_evals=infeasible)


def _run_compiled(cfg, objective, rng, bounds, shift) -> RunResult:
    shift_arr = np.zeros(cfg.dim) if shift is None else np.ascontiguousarray(shift, dtype=float)
    best, best_fit, evals, te, tf, infeasible = _jit.run_kernel(
        rng.generator, objective.kind, shift_arr,
        float(bounds.lower), float(bounds.upper), float(np.nextafter(bounds.upper, bounds.lower)),
        cfg.pop_size, cfg.dim, cfg.eval_budget, float(cfg.pm), float(cfg.p_switch),
        float(cfg.p_escape), bool(cfg.escape_enabled), float(cfg.p_dist_step), float(cfg.b_scale),
        float(cfg.log_offset_global), cfg.variant is Variant.CODE, bool(cfg.shared_repair))
    trace = [(int(e), float(f)) for e, f in zip(te, tf)]
    return RunResult(Candidate(best, float(best_fit)), int(evals), _finish_trace(trace, int(evals), float(best_fit)),
                     seed=rng.seed, shift=None if shift is None else np.array(shift),
                     infeasible_evals=int(infeasible))
