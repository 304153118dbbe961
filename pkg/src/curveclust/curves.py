"""Discretized curves and their square-root velocity representation.

A curve is a function [0, 1] -> R^n sampled on a uniform grid of T points.
Its square-root velocity transform divides the velocity by the square root
of the speed, turning the L2 metric into one that is blind to
reparameterization of the time axis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Curve",
    "Srvf",
    "resample",
    "derivative",
    "to_srvf",
    "normalize_srvf",
    "l2_inner",
    "l2_norm",
]

SRVF_SPEED_EPS = 1e-8


def _as_samples(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"samples must be a T x n matrix, got shape {arr.shape}")
    if arr.shape[0] < 3:
        raise ValueError(f"need at least 3 samples, got {arr.shape[0]}")
    if arr.shape[1] < 1:
        raise ValueError("need at least one dimension")
    if not np.all(np.isfinite(arr)):
        raise ValueError("samples contain non-finite values")
    return arr


@dataclass(frozen=True)
class Curve:
    """Uniformly sampled curve beta: [0, 1] -> R^n, stored as a T x n matrix."""

    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_samples(self.samples))

    @property
    def T(self) -> int:
        return self.samples.shape[0]

    @property
    def n(self) -> int:
        return self.samples.shape[1]

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.T)

    @property
    def spacing(self) -> float:
        return 1.0 / (self.T - 1)


@dataclass(frozen=True)
class Srvf:
    """Square-root velocity function q: [0, 1] -> R^n on the same uniform grid."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_samples(self.values))

    @property
    def T(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.T)

    @property
    def spacing(self) -> float:
        return 1.0 / (self.T - 1)


def resample(curve: Curve, T_new: int) -> Curve:
    """Linearly interpolate a curve onto a uniform grid of ``T_new`` points."""
    if T_new < 3:
        raise ValueError(f"T_new must be >= 3, got {T_new}")
    if T_new == curve.T:
        return Curve(curve.samples.copy())
    new_grid = np.linspace(0.0, 1.0, T_new)
    out = np.column_stack(
        [np.interp(new_grid, curve.grid, curve.samples[:, d]) for d in range(curve.n)]
    )
    # endpoints carried over verbatim to avoid interpolation round-off
    out[0] = curve.samples[0]
    out[-1] = curve.samples[-1]
    return Curve(out)


def derivative(curve: Curve) -> np.ndarray:
    """Finite-difference velocity: central in the interior, one-sided at the ends."""
    return np.gradient(curve.samples, curve.spacing, axis=0)


def to_srvf(curve: Curve, eps: float = SRVF_SPEED_EPS) -> Srvf:
    """Square-root velocity transform, unit-normalized.

    q(t) = beta'(t) / sqrt(max(|beta'(t)|, eps)); the floor guards isolated
    zero-velocity samples. Constant curves are rejected.
    """
    vel = derivative(curve)
    speed = np.linalg.norm(vel, axis=1)
    if np.max(speed) <= eps:
        raise ValueError("curve is constant; SRVF is undefined")
    q = vel / np.sqrt(np.maximum(speed, eps))[:, None]
    return normalize_srvf(Srvf(q))


def _trapz_weights(T: int) -> np.ndarray:
    w = np.full(T, 1.0 / (T - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def l2_inner(q1: Srvf, q2: Srvf) -> float:
    """Trapezoidal L2 inner product of two SRVFs on the same grid."""
    if q1.values.shape != q2.values.shape:
        raise ValueError(
            f"shape mismatch: {q1.values.shape} vs {q2.values.shape}"
        )
    pointwise = np.einsum("td,td->t", q1.values, q2.values)
    return float(np.trapezoid(pointwise, dx=q1.spacing))


def l2_norm(q: Srvf) -> float:
    return float(np.sqrt(max(l2_inner(q, q), 0.0)))


def normalize_srvf(q: Srvf) -> Srvf:
    """Scale q to unit L2 norm (projection onto the unit hypersphere)."""
    nrm = l2_norm(q)
    if nrm <= 0.0:
        raise ValueError("cannot normalize a zero-norm SRVF")
    return Srvf(q.values / nrm)
