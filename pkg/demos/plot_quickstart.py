"""
Minimizing a benchmark function
===============================

A single seeded run on the 10-dimensional sphere, then the same run again to
show that a seed pins the whole trajectory.
"""

import numpy as np

from trochoid_search import TsoConfig, resolve, tso_run

###############################################################################
# A config is a frozen dataclass. The evaluation budget defaults to
# ``10000 * dim``; here we ask for a smaller one.
cfg = TsoConfig(dim=10, pop_size=30, eval_budget=20000, seed=42)
sphere = resolve("sphere")
result = tso_run(cfg, sphere)
print(f"best fitness {result.best_fitness:.3e} after {result.evals_used} evaluations")

###############################################################################
# The trace lists ``(evaluations, best fitness)`` at every improvement.
for evals, fit in result.improvements[::max(1, len(result.improvements) // 8)]:
    print(f"{evals:>7d}  {fit:.3e}")

###############################################################################
# Same seed, same answer, bit for bit.
again = tso_run(cfg, sphere)
print("identical:", np.array_equal(result.best.position, again.best.position))

###############################################################################
# Any callable works as an objective; pass the box explicitly.
from trochoid_search import Bounds


def ellipsoid(x):
    return float(np.sum(np.arange(1, x.size + 1) * x**2))


res = tso_run(TsoConfig(dim=5, pop_size=20, eval_budget=5000, seed=1), ellipsoid, bounds=Bounds(-10, 10))
print(f"ellipsoid: {res.best_fitness:.3e}")
