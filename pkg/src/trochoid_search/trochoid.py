"""Trochoid curve geometry: classification and point sampling."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = ["TrochoidSpec", "TrochoidKind", "classify", "trochoid_points", "trochoid_xy"]


class TrochoidKind(str, enum.Enum):
    CURTATE = "curtate"
    CYCLOID = "cycloid"
    PROLATE = "prolate"


@dataclass(frozen=True)
class TrochoidSpec:
    """Rolling-circle radius ``R`` and attachment ratio ``B`` (distance / R)."""

    R: float
    B: float

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"R must be > 0, got {self.R}")
        if not self.B >= 0:
            raise ValueError(f"B must be >= 0, got {self.B}")


def classify(spec: TrochoidSpec) -> TrochoidKind:
    if spec.B < 1:
        return TrochoidKind.CURTATE
    if spec.B == 1:
        return TrochoidKind.CYCLOID
    return TrochoidKind.PROLATE


def trochoid_xy(spec: TrochoidSpec, theta):
    """Curve coordinates at angle(s) ``theta``.

    x = R (theta + B sin theta),  y = R (1 - B cos theta)
    """
    theta = np.asarray(theta, dtype=float)
    x = spec.R * (theta + spec.B * np.sin(theta))
    y = spec.R * (1.0 - spec.B * np.cos(theta))
    return x, y


def trochoid_points(spec: TrochoidSpec, theta_min: float, theta_max: float, n: int) -> np.ndarray:
    """Sample ``n`` points on an evenly spaced, endpoint-inclusive angle grid.

    Returns an ``(n, 3)`` array of ``theta, x, y`` rows.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not theta_min < theta_max:
        raise ValueError(f"empty angle range [{theta_min}, {theta_max}]")
    theta = np.linspace(theta_min, theta_max, n)
    x, y = trochoid_xy(spec, theta)
    return np.column_stack([theta, x, y])
