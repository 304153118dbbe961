import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveclust.curves import (
    Curve,
    Srvf,
    derivative,
    l2_inner,
    l2_norm,
    normalize_srvf,
    resample,
    to_srvf,
)

from conftest import random_smooth_curve


class TestResample:
    def test_line_upsampled_exact(self):
        t = np.linspace(0, 1, 5)
        line = Curve(np.column_stack([2 * t + 1, -t]))
        out = resample(line, 9)
        t9 = np.linspace(0, 1, 9)
        np.testing.assert_allclose(out.samples, np.column_stack([2 * t9 + 1, -t9]),
                                   atol=1e-12)
        np.testing.assert_array_equal(out.samples[0], line.samples[0])
        np.testing.assert_array_equal(out.samples[-1], line.samples[-1])

    def test_identity_size(self):
        c = random_smooth_curve(np.random.default_rng(0), T=50)
        out = resample(c, 50)
        np.testing.assert_array_equal(out.samples, c.samples)

    def test_sine_downsample_matches_analytic(self):
        t = np.linspace(0, 1, 100)
        c = Curve(np.sin(2 * np.pi * t)[:, None])
        out = resample(c, 50)
        t50 = np.linspace(0, 1, 50)
        np.testing.assert_allclose(out.samples[:, 0], np.sin(2 * np.pi * t50),
                                   atol=1e-3)

    def test_rejects_small_target(self):
        c = random_smooth_curve(np.random.default_rng(0))
        with pytest.raises(ValueError):
            resample(c, 2)


class TestDerivative:
    def test_linear_exact(self):
        t = np.linspace(0, 1, 20)
        c = Curve(np.column_stack([t, np.zeros_like(t)]))
        d = derivative(c)
        np.testing.assert_allclose(d, np.tile([1.0, 0.0], (20, 1)), atol=1e-10)

    def test_quadratic_interior_exact(self):
        t = np.linspace(0, 1, 30)
        c = Curve(np.column_stack([t ** 2, np.zeros_like(t)]))
        d = derivative(c)
        np.testing.assert_allclose(d[1:-1, 0], 2 * t[1:-1], atol=1e-12)

    def test_sine_matches_analytic(self):
        t = np.linspace(0, 1, 200)
        c = Curve(np.sin(2 * np.pi * t)[:, None])
        d = derivative(c)
        np.testing.assert_allclose(d[:, 0], 2 * np.pi * np.cos(2 * np.pi * t),
                                   atol=1e-2)


class TestToSrvf:
    def test_unit_line(self):
        t = np.linspace(0, 1, 50)
        c = Curve(np.column_stack([t, np.zeros_like(t)]))
        q = to_srvf(c)
        np.testing.assert_allclose(q.values, np.tile([1.0, 0.0], (50, 1)), atol=1e-10)

    def test_scale_invariance(self):
        t = np.linspace(0, 1, 50)
        q1 = to_srvf(Curve(np.column_stack([t, np.zeros_like(t)])))
        q2 = to_srvf(Curve(np.column_stack([2 * t, np.zeros_like(t)])))
        np.testing.assert_allclose(q1.values, q2.values, atol=1e-8)

    def test_constant_speed_curve_has_constant_norm(self):
        t = np.linspace(0, 1, 200)
        c = Curve(np.column_stack([np.cos(np.pi * t), np.sin(np.pi * t)]) / np.pi)
        q = to_srvf(c)
        norms = np.linalg.norm(q.values, axis=1)
        assert norms.max() - norms.min() < 1e-3

    def test_rejects_constant_curve(self):
        with pytest.raises(ValueError):
            to_srvf(Curve(np.ones((10, 2))))


class TestNormalize:
    def test_idempotent(self, rng):
        q = normalize_srvf(Srvf(rng.normal(size=(100, 2))))
        again = normalize_srvf(q)
        np.testing.assert_allclose(again.values, q.values, atol=1e-12)

    def test_projective_invariance(self, rng):
        vals = rng.normal(size=(100, 2))
        q1 = normalize_srvf(Srvf(vals))
        q2 = normalize_srvf(Srvf(7.0 * vals))
        np.testing.assert_allclose(q1.values, q2.values, atol=1e-12)

    def test_unit_norm(self, rng):
        q = normalize_srvf(Srvf(rng.normal(size=(100, 3))))
        assert abs(l2_norm(q) - 1.0) < 1e-10

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            normalize_srvf(Srvf(np.zeros((10, 1))))


class TestL2Inner:
    def test_unit_self_inner(self, rng):
        q = normalize_srvf(Srvf(rng.normal(size=(100, 2))))
        assert abs(l2_inner(q, q) - 1.0) < 1e-8

    def test_pointwise_orthogonal(self):
        q1 = Srvf(np.tile([1.0, 0.0], (50, 1)))
        q2 = Srvf(np.tile([0.0, 1.0], (50, 1)))
        assert l2_inner(q1, q2) == 0.0

    def test_polynomial_value(self):
        t = np.linspace(0, 1, 2001)
        q1 = Srvf(np.ones((2001, 1)))
        q2 = Srvf(t[:, None])
        assert abs(l2_inner(q1, q2) - 0.5) < 1e-6

    def test_rejects_mismatch(self, rng):
        q1 = Srvf(rng.normal(size=(100, 2)))
        q2 = Srvf(rng.normal(size=(50, 2)))
        with pytest.raises(ValueError):
            l2_inner(q1, q2)


class TestInvariants:
    def test_translation_invariance_exact(self, rng):
        c = random_smooth_curve(rng, T=80, n=2)
        shifted = Curve(c.samples + np.array([3.5, -1.25]))
        q1, q2 = to_srvf(c), to_srvf(shifted)
        np.testing.assert_allclose(q1.values, q2.values, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(scale=st.floats(min_value=0.01, max_value=100.0),
           seed=st.integers(min_value=0, max_value=10 ** 6))
    def test_scale_invariance(self, scale, seed):
        c = random_smooth_curve(np.random.default_rng(seed), T=60)
        q1 = to_srvf(c)
        q2 = to_srvf(Curve(scale * c.samples))
        np.testing.assert_allclose(q1.values, q2.values, atol=1e-8)

    def test_cauchy_schwarz(self, rng):
        for _ in range(50):
            q1 = Srvf(rng.normal(size=(60, 2)))
            q2 = Srvf(rng.normal(size=(60, 2)))
            assert abs(l2_inner(q1, q2)) <= l2_norm(q1) * l2_norm(q2) + 1e-10

    def test_resample_commutes_with_srvf(self, rng):
        # 2-D curves keep the speed away from zero, where the SRVF square
        # root is ill-conditioned under discretization
        for _ in range(5):
            c = random_smooth_curve(rng, T=150, n=2)
            a = to_srvf(resample(c, 100))
            b_full = to_srvf(c)
            grid = np.linspace(0, 1, 100)
            b = np.column_stack([
                np.interp(grid, b_full.grid, b_full.values[:, d])
                for d in range(b_full.n)
            ])
            h = 1.0 / 99
            l2_gap = np.sqrt(np.trapezoid(((a.values - b) ** 2).sum(axis=1), dx=h))
            assert l2_gap < 1e-2
