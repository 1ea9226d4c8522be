import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trochoid_search.benchmarks import (
    REGISTRY,
    ShiftedObjective,
    griewank,
    make_shift,
    rastrigin,
    registry_names,
    resolve,
    rosenbrock,
    shifted,
    sphere,
)
from trochoid_search.core import Bounds, RandomStream, ScriptedStream

FUNCS = [sphere, rosenbrock, rastrigin, griewank]


@pytest.mark.parametrize("x, expected", [([0, 0, 0], 0), ([1, 2, 3], 14), ([-2], 4)])
def test_sphere(x, expected):
    assert sphere(x) == expected


@pytest.mark.parametrize("x, expected", [([1, 1, 1, 1], 0), ([0, 0], 1), ([1, 2], 100)])
def test_rosenbrock(x, expected):
    assert rosenbrock(x) == expected


@pytest.mark.parametrize("x, expected", [([0, 0, 0], 0), ([1, 1], 2), ([0.5], 20.25)])
def test_rastrigin(x, expected):
    assert rastrigin(x) == pytest.approx(expected, abs=1e-12)


def test_griewank_values():
    assert griewank([0, 0]) == 0
    oracle = float(mpmath.mpf(1) / 4000 - mpmath.cos(1) + 1)
    assert griewank([1]) == pytest.approx(oracle, rel=1e-14)
    assert griewank([1]) == pytest.approx(0.4599477, abs=1e-7)


@pytest.mark.parametrize("f", FUNCS)
def test_empty_rejected(f):
    with pytest.raises(ValueError):
        f([])


def test_rosenbrock_needs_two():
    with pytest.raises(ValueError):
        rosenbrock([1.0])


def _oracle(name, x):
    mpmath.mp.dps = 30
    x = [mpmath.mpf(float(v)) for v in x]
    if name == "sphere":
        return sum(v * v for v in x)
    if name == "rosenbrock":
        return sum(100 * (x[i + 1] - x[i] ** 2) ** 2 + (x[i] - 1) ** 2 for i in range(len(x) - 1))
    if name == "rastrigin":
        return sum(v * v - 10 * mpmath.cos(2 * mpmath.pi * v) + 10 for v in x)
    prod = mpmath.mpf(1)
    for i, v in enumerate(x, start=1):
        prod *= mpmath.cos(v / mpmath.sqrt(i))
    return sum(v * v for v in x) / 4000 - prod + 1


@pytest.mark.parametrize("name", list(REGISTRY))
def test_against_high_precision_oracle(name):
    rng = np.random.default_rng(4)
    f = REGISTRY[name]
    b = f.default_bounds
    for _ in range(50):
        x = rng.uniform(b.lower, b.upper, size=7)
        ref = float(_oracle(name, x))
        # slack scaled by the size of the summed terms
        scale = max(1.0, abs(ref), float(np.sum(x * x)))
        assert abs(f(x) - ref) <= 1e-12 * scale


@pytest.mark.parametrize("name", list(REGISTRY))
def test_known_minimum(name):
    f = REGISTRY[name]
    assert f(f.minimizer(6)) == f.known_optimum_value == 0


@pytest.mark.parametrize("name", list(REGISTRY))
def test_nonnegative_and_pure(name):
    f = REGISTRY[name]
    b = f.default_bounds
    rng = np.random.default_rng(0)
    for _ in range(200):
        x = rng.uniform(b.lower, b.upper, size=5)
        v = f(x)
        assert v >= -1e-12
        assert f(x.copy()) == v


def test_default_bounds():
    assert REGISTRY["rastrigin"].default_bounds == Bounds(-5.12, 5.12)
    for n in ("sphere", "rosenbrock", "griewank"):
        assert REGISTRY[n].default_bounds == Bounds(-100, 100)


def test_make_shift():
    assert make_shift(Bounds(-100, 100), 4, ScriptedStream(u=[0.5] * 4)).tolist() == [0.0] * 4
    s = make_shift(Bounds(-100, 100), 30, RandomStream(1))
    assert np.all((s >= -100) & (s < 100))
    assert np.array_equal(s, make_shift(Bounds(-100, 100), 30, RandomStream(1)))
    with pytest.raises(ValueError):
        make_shift(Bounds(0, 1), 0, RandomStream(1))


def test_shifted_examples():
    s = np.array([3.0, -1.5, 2.0])
    assert shifted(REGISTRY["sphere"], s).evaluate(s) == 0
    assert shifted(REGISTRY["sphere"], [1, 1]).evaluate([2, 2]) == 2
    g = shifted(REGISTRY["griewank"], s)
    assert g(s) == 0
    assert g.name == "shifted:griewank"
    x = np.array([0.3, 0.7, -2.0])
    for f in REGISTRY.values():
        assert shifted(f, np.zeros(3)).evaluate(x) == f(x)


def test_shifted_dimension_mismatch():
    with pytest.raises(ValueError):
        shifted(REGISTRY["sphere"], [1.0, 2.0]).evaluate([1.0, 2.0, 3.0])


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(list(REGISTRY)),
       st.lists(st.floats(-50, 50), min_size=2, max_size=8),
       st.integers(0, 2**31))
def test_shift_equivariance(name, xs, seed):
    f = REGISTRY[name]
    x = np.array(xs)
    s = np.random.default_rng(seed).uniform(-100, 100, size=x.size)
    g = shifted(f, s)
    # x + s - s is not always x in floating point; compare on the exact point g sees
    z = (x + s) - s
    assert math.isclose(g(x + s), f(z), rel_tol=1e-12, abs_tol=0.0) or g(x + s) == f(z)
    assert math.isclose(f(z), f(x), rel_tol=1e-6, abs_tol=1e-9)


def test_registry_resolution():
    assert registry_names()[:4] == ["sphere", "rosenbrock", "rastrigin", "griewank"]
    assert resolve("sphere") is REGISTRY["sphere"]
    obj = resolve("shifted:rastrigin", 5, RandomStream(2))
    assert isinstance(obj, ShiftedObjective)
    assert obj.default_bounds == Bounds(-100, 100)
    assert obj(obj.shift) == 0
    with pytest.raises(KeyError, match="sphere"):
        resolve("ackley")
    with pytest.raises(ValueError):
        resolve("shifted:sphere")
