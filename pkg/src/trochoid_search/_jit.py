"""Compiled arithmetic shared by the Python operators and the compiled run loop.

Every formula that touches floating point lives here exactly once, so the
pure-Python driver in :mod:`trochoid_search.tso` and :func:`run_kernel`
produce bit-identical trajectories for the same seed. Random draws are never
made in the formula helpers; callers draw and pass the values in.
"""

import math

import numpy as np
from numba import njit

SPHERE, ROSENBROCK, RASTRIGIN, GRIEWANK = 0, 1, 2, 3
TAN_GUARD = 1e-12


@njit(cache=True)
def sphere(x):
    s = 0.0
    for v in x:
        s += v * v
    return s


@njit(cache=True)
def rosenbrock(x):
    s = 0.0
    for j in range(x.size - 1):
        a = x[j + 1] - x[j] * x[j]
        b = x[j] - 1.0
        s += 100.0 * a * a + b * b
    return s


@njit(cache=True)
def rastrigin(x):
    s = 0.0
    for v in x:
        # (v^2 - 10 cos) + 10 is exactly 0 once cos rounds to 1
        s += (v * v - 10.0 * math.cos(2.0 * math.pi * v)) + 10.0
    return s


@njit(cache=True)
def griewank(x):
    s = 0.0
    p = 1.0
    for j in range(x.size):
        s += x[j] * x[j]
        p *= math.cos(x[j] / math.sqrt(j + 1.0))
    return s / 4000.0 - p + 1.0


@njit(cache=True)
def evaluate(kind, x):
    if kind == SPHERE:
        return sphere(x)
    if kind == ROSENBROCK:
        return rosenbrock(x)
    if kind == RASTRIGIN:
        return rastrigin(x)
    return griewank(x)


@njit(cache=True)
def norm(x):
    return math.sqrt(sphere(x))


@njit(cache=True)
def norm_diff(a, b):
    s = 0.0
    for j in range(a.size):
        d = a[j] - b[j]
        s += d * d
    return math.sqrt(s)


@njit(cache=True)
def sin_cos(theta):
    return math.sin(theta), math.cos(theta)


@njit(cache=True)
def dist_step(u, dist, itr, log_offset):
    return 0.5 * (1.0 - 2.0 * u) * dist / math.log(itr + log_offset)


@njit(cache=True)
def decay_step(itr, itr_max):
    frac = itr / itr_max
    return (1.0 - frac) ** (2.0 * frac)


@njit(cache=True)
def local_step(u, x_norm, itr):
    return 0.05 * (1.0 - 2.0 * u) * x_norm / math.log(itr + 1.0)


@njit(cache=True)
def apply_move(out, base, i, k, theta, r, b1, b2, code):
    """Sequential trochoid writes to ``out[i]`` then ``out[k]``.

    ``base`` may be ``out`` itself (local move).
    """
    s, c = sin_cos(theta)
    if code:
        out[i] = base[i] + r * (theta - b1 * s)
        out[k] = base[k] + r * (1.0 - b2 * c)
    else:
        out[i] = base[i] + r * (1.0 - b1 * s)
        out[k] = base[k] + r * (theta - b1 * c)


@njit(cache=True)
def escape_tan(x, u, width):
    t = math.tan(u * math.pi) * width
    for j in range(x.size):
        x[j] = x[j] + t


@njit(cache=True)
def drift_step(u, itr):
    return 15.0 * (1.0 - 2.0 * u) / math.log(1.0 + itr)


@njit(cache=True)
def escape_drift(x, best, step, v):
    for j in range(x.size):
        x[j] = x[j] + step * (x[j] - v * (best[j] - x[j]))


@njit(cache=True)
def _init_point(gen, out, lb, width, ub_open):
    for j in range(out.size):
        out[j] = min(lb + gen.random() * width, ub_open)


@njit(cache=True)
def _repair(gen, x, lb, ub, width, shared):
    if shared:
        low = lb + gen.random() * width
        high = lb + gen.random() * width
        for j in range(x.size):
            v = x[j]
            if v < lb or v != v:
                x[j] = low
            elif v > ub:
                x[j] = high
        return
    for j in range(x.size):
        v = x[j]
        if v < lb or v > ub or v != v:
            x[j] = lb + gen.random() * width


@njit(cache=True)
def _objective(kind, x, shift, z):
    for j in range(x.size):
        z[j] = x[j] - shift[j]
    return evaluate(kind, z)


@njit(cache=True)
def run_kernel(gen, kind, shift, lb, ub, ub_open, pop_size, dim, budget, pm, p_switch,
               p_escape, escape_enabled, p_dist_step, b_scale, log_offset, code, shared_repair):
    """Whole run with the same draw order as the Python driver.

    Returns ``(best, best_fit, evals, trace_evals, trace_fit, infeasible)``
    where ``infeasible`` counts evaluated points outside the box.
    """
    width = ub - lb
    pop = np.empty((pop_size, dim))
    fit = np.full(pop_size, np.inf)
    for j in range(pop_size):
        _init_point(gen, pop[j], lb, width, ub_open)
    best = np.empty(dim)
    _init_point(gen, best, lb, width, ub_open)
    z = np.empty(dim)
    best_fit = _objective(kind, best, shift, z)
    evals = 1
    trace_e = np.empty(budget + 1, np.int64)
    trace_f = np.empty(budget + 1)
    trace_e[0] = evals
    trace_f[0] = best_fit
    n_trace = 1
    infeasible = 0
    x1 = np.empty(dim)
    half_pi = math.pi / 2.0

    while evals < budget:
        for j in range(pop_size):
            if evals >= budget:
                break
            itr = evals
            x1[:] = pop[j]
            for i in range(dim):
                if gen.random() <= pm:
                    k = min(int(gen.random() * dim), dim - 1)
                    theta = gen.standard_normal() * half_pi
                    if gen.random() < p_switch:
                        if gen.random() < p_dist_step:
                            u = gen.random()
                            r = dist_step(u, norm_diff(best, x1), itr, log_offset)
                        else:
                            r = decay_step(itr, budget)
                        b1 = b_scale * gen.random()
                        b2 = b_scale * gen.random() if code else b1
                        apply_move(x1, best, i, k, theta, r, b1, b2, code)
                    else:
                        u = gen.random()
                        r = local_step(u, norm(x1), itr)
                        b1 = b_scale * gen.random()
                        b2 = b_scale * gen.random() if code else b1
                        apply_move(x1, x1, i, k, theta, r, b1, b2, code)
            if escape_enabled and gen.random() <= p_escape:
                if gen.random() <= 0.5 and itr <= 0.5 * budget:
                    u = gen.random()
                    while abs(u - 0.5) < TAN_GUARD:
                        u = gen.random()
                    escape_tan(x1, u, width)
                else:
                    step = drift_step(gen.random(), itr)
                    v = gen.random()
                    escape_drift(x1, best, step, v)
            _repair(gen, x1, lb, ub, width, shared_repair)
            for v in x1:
                if not (lb <= v <= ub):
                    infeasible += 1
                    break
            val = _objective(kind, x1, shift, z)
            evals += 1
            if val < fit[j]:
                pop[j, :] = x1
                fit[j] = val
                if val < best_fit:
                    best[:] = x1
                    best_fit = val
                    trace_e[n_trace] = evals
                    trace_f[n_trace] = val
                    n_trace += 1
    return best, best_fit, evals, trace_e[:n_trace].copy(), trace_f[:n_trace].copy(), infeasible
