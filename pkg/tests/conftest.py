import numpy as np
import pytest

from curveclust.curves import Curve, Srvf, normalize_srvf, to_srvf


def random_smooth_curve(rng, T=100, n=1, harmonics=4):
    t = np.linspace(0.0, 1.0, T)
    samples = np.zeros((T, n))
    for d in range(n):
        f = t * rng.normal(0, 1)
        for k in range(1, harmonics + 1):
            a, b = rng.normal(0, 1.0 / k, size=2)
            f = f + a * np.sin(2 * np.pi * k * t) + b * np.cos(2 * np.pi * k * t)
        samples[:, d] = f
    return Curve(samples)


def random_unit_srvf(rng, T=100, n=1):
    return to_srvf(random_smooth_curve(rng, T=T, n=n))


def constant_srvf(vec, T=100):
    """Constant unit-norm SRVF with pointwise value vec (a unit vector)."""
    vec = np.asarray(vec, dtype=float)
    vals = np.tile(vec, (T, 1))
    return normalize_srvf(Srvf(vals))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
