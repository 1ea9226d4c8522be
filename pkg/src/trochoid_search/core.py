"""Shared domain types, the seeded random stream, initialization and repair."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Bounds",
    "Candidate",
    "RandomStream",
    "ScriptedStream",
    "uniform_init",
    "repair",
]

@dataclass(frozen=True)
class Bounds:
    """Scalar box constraint ``[lower, upper]`` shared by every dimension."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("bounds must be finite")
        if not self.lower < self.upper:
            raise ValueError(f"lower ({self.lower}) must be < upper ({self.upper})")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all((x >= self.lower) & (x <= self.upper)))


@dataclass
class Candidate:
    position: np.ndarray
    fitness: float = math.inf


class RandomStream:
    """Seeded source of uniform and standard-normal draws.

    Wraps a PCG64 ``numpy.random.Generator`` and draws from it in call order,
    so the compiled run loop can consume the very same generator and stay
    draw-for-draw identical with the Python operators. Integer draws are
    derived from one uniform.

    The same seed yields the same sequence on the same platform and numpy
    build.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self) -> float:
        """One draw from [0, 1)."""
        return self.generator.random()

    def normal(self) -> float:
        """One standard normal draw."""
        return self.generator.standard_normal()

    def randint(self, n: int) -> int:
        """Uniform integer in ``0..n-1`` built from one uniform draw."""
        return min(int(self.generator.random() * n), n - 1)

    def uniforms(self, n: int) -> np.ndarray:
        """``n`` consecutive uniform draws, same values as ``n`` calls to :meth:`uniform`."""
        return self.generator.random(n)


class ScriptedStream:
    """Stream that replays recorded draws, for pinning operator behaviour in tests.

    Raises ``IndexError`` when a recorded sequence runs out, so a test fails
    loudly if an operation consumes more draws than expected.
    """

    def __init__(self, u=(), z=(), seed: int = 0):
        self._u = [float(v) for v in u]
        self._z = [float(v) for v in z]
        self.seed = seed

    def uniform(self) -> float:
        return self._u.pop(0)

    def normal(self) -> float:
        return self._z.pop(0)

    def randint(self, n: int) -> int:
        return min(int(self.uniform() * n), n - 1)

    def uniforms(self, n: int) -> np.ndarray:
        return np.array([self.uniform() for _ in range(n)])

    @property
    def remaining(self) -> tuple[int, int]:
        return len(self._u), len(self._z)


def uniform_init(bounds: Bounds, dim: int, rng) -> np.ndarray:
    """Uniform random point in the box: ``lb + u * (ub - lb)`` per component."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    u = rng.uniforms(dim)
    x = bounds.lower + u * bounds.width
    # lb + u*(ub-lb) can round up to ub for u just below 1
    return np.minimum(x, np.nextafter(bounds.upper, bounds.lower))


def repair(x, bounds: Bounds, rng, shared: bool = False) -> np.ndarray:
    """Resample out-of-box components uniformly inside the box.

    By default violating components are visited in index order and each
    takes its own uniform draw. With ``shared=True`` the reference MATLAB
    behaviour is reproduced instead: one draw is made for all components
    below the box and one for all components above it (both draws are always
    consumed). NaN components count as below. Feasible components (the
    closed interval) are never touched.
    """
    x = np.array(x, dtype=float)
    if shared:
        low = (x < bounds.lower) | np.isnan(x)
        high = x > bounds.upper
        x[low] = bounds.lower + rng.uniform() * bounds.width
        x[high] = bounds.lower + rng.uniform() * bounds.width
        return x
    bad = np.flatnonzero((x < bounds.lower) | (x > bounds.upper) | np.isnan(x))
    for idx in bad:
        x[idx] = bounds.lower + rng.uniform() * bounds.width
    return x
