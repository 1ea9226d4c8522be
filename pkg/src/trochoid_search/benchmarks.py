"""Benchmark objectives (Sphere, Rosenbrock, Rastrigin, Griewank) and shifting.

All four have global minimum value 0, at the origin except Rosenbrock
(all ones). Shifted variants translate the minimizer to a random vector.

Registry names are ``sphere``, ``rosenbrock``, ``rastrigin``, ``griewank`` and
the ``shifted:<name>`` forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _jit
from .core import Bounds

__all__ = [
    "Objective",
    "ShiftedObjective",
    "sphere",
    "rosenbrock",
    "rastrigin",
    "griewank",
    "make_shift",
    "shifted",
    "REGISTRY",
    "resolve",
    "registry_names",
    "SHIFT_PREFIX",
]

SHIFT_PREFIX = "shifted:"


def _vector(x, min_len: int = 1) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=float)
    if x.ndim != 1 or x.size < min_len:
        raise ValueError(f"expected a vector with at least {min_len} component(s), got shape {x.shape}")
    return x


def sphere(x) -> float:
    """Sum of squares."""
    return float(_jit.sphere(_vector(x)))


def rosenbrock(x) -> float:
    """Sum of ``100 (x[i+1] - x[i]^2)^2 + (x[i] - 1)^2``; needs two or more components."""
    return float(_jit.rosenbrock(_vector(x, 2)))


def rastrigin(x) -> float:
    """Sum of ``x^2 - 10 cos(2 pi x) + 10``."""
    return float(_jit.rastrigin(_vector(x)))


def griewank(x) -> float:
    """``sum(x^2) / 4000 - prod(cos(x_i / sqrt(i))) + 1`` with 1-based ``i``."""
    return float(_jit.griewank(_vector(x)))


@dataclass(frozen=True)
class Objective:
    """Named objective with its default search box and known minimum."""

    name: str
    evaluate: Callable[[np.ndarray], float]
    default_bounds: Bounds
    known_optimum_value: float = 0.0
    min_dim: int = 1
    argmin_coord: float = 0.0  # the minimizer repeats this value in every component
    kind: int | None = None  # compiled-kernel code, None for user objectives

    def __call__(self, x) -> float:
        return self.evaluate(x)

    def minimizer(self, dim: int) -> np.ndarray:
        return np.full(dim, self.argmin_coord)


@dataclass(frozen=True, eq=False)
class ShiftedObjective:
    """``base`` translated so that ``f(x) = base(x - shift)``."""

    base: Objective
    shift: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "shift", _vector(self.shift).copy())

    @property
    def name(self) -> str:
        return SHIFT_PREFIX + self.base.name

    @property
    def default_bounds(self) -> Bounds:
        return SHIFTED_BOUNDS

    @property
    def known_optimum_value(self) -> float:
        return self.base.known_optimum_value

    @property
    def min_dim(self) -> int:
        return self.base.min_dim

    @property
    def kind(self):
        return self.base.kind

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != self.shift.shape:
            raise ValueError(f"point has shape {x.shape}, shift has shape {self.shift.shape}")
        return self.base.evaluate(x - self.shift)

    __call__ = evaluate

    def minimizer(self, dim: int) -> np.ndarray:
        return self.shift + self.base.minimizer(dim)


WIDE_BOUNDS = Bounds(-100.0, 100.0)
RASTRIGIN_BOUNDS = Bounds(-5.12, 5.12)
SHIFTED_BOUNDS = WIDE_BOUNDS

REGISTRY: dict[str, Objective] = {
    "sphere": Objective("sphere", sphere, WIDE_BOUNDS, kind=_jit.SPHERE),
    "rosenbrock": Objective("rosenbrock", rosenbrock, WIDE_BOUNDS, min_dim=2, argmin_coord=1.0,
                            kind=_jit.ROSENBROCK),
    "rastrigin": Objective("rastrigin", rastrigin, RASTRIGIN_BOUNDS, kind=_jit.RASTRIGIN),
    "griewank": Objective("griewank", griewank, WIDE_BOUNDS, kind=_jit.GRIEWANK),
}


def registry_names() -> list[str]:
    """Every name :func:`resolve` accepts, plain forms first."""
    return list(REGISTRY) + [SHIFT_PREFIX + n for n in REGISTRY]


def make_shift(bounds: Bounds, dim: int, rng) -> np.ndarray:
    """Random optimum location, ``lb + u * (ub - lb)`` per component."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    u = rng.uniforms(dim)
    return np.minimum(bounds.lower + u * bounds.width, np.nextafter(bounds.upper, bounds.lower))


def shifted(base: Objective, shift) -> ShiftedObjective:
    return ShiftedObjective(base, shift)


def resolve(name: str, dim: int | None = None, rng=None):
    """Look up a registry name.

    Plain names return the :class:`Objective`. ``shifted:<name>`` needs
    ``dim`` and ``rng`` and returns a :class:`ShiftedObjective` whose shift is
    drawn over the shifted-variant bounds.

    Raises ``KeyError`` listing the registry contents for unknown names.
    """
    base_name = name[len(SHIFT_PREFIX):] if name.startswith(SHIFT_PREFIX) else name
    if base_name not in REGISTRY:
        raise KeyError(f"unknown function {name!r}; known: {', '.join(registry_names())}")
    base = REGISTRY[base_name]
    if base_name == name:
        return base
    if dim is None or rng is None:
        raise ValueError("shifted objectives need dim and rng to draw the shift")
    return shifted(base, make_shift(SHIFTED_BOUNDS, dim, rng))
