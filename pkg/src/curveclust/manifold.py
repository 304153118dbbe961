"""Geometry of unit-norm SRVFs and their shape quotient.

Unit-normalized SRVFs live on the unit hypersphere of L2([0,1], R^n).
Shape equivalence additionally quotients out rotations and monotone
reparameterizations; tangent vectors to the quotient are computed by first
aligning the second argument over that group (alternating Procrustes
rotation and dynamic-programming warping), then taking the sphere log map.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curves import Srvf, _trapz_weights, l2_inner, normalize_srvf
from .errors import AntipodalError

__all__ = [
    "Warp",
    "Rotation",
    "TangentVector",
    "GramTensor",
    "geodesic",
    "log_sphere",
    "align_rotation",
    "align_reparam",
    "align_to",
    "log_quotient",
    "build_gram_tensor",
    "apply_warp",
]

ZERO_ANGLE = 1e-9
ANTIPODAL_TOL = 1e-6
DEFAULT_ALIGN_ITERS = 3


@dataclass(frozen=True)
class Warp:
    """Discretized monotone reparameterization gamma of [0, 1]."""

    gamma: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=float)
        if g.ndim != 1 or g.size < 3:
            raise ValueError("warp must be a vector of at least 3 values")
        if abs(g[0]) > 1e-10 or abs(g[-1] - 1.0) > 1e-10:
            raise ValueError("warp endpoints must be 0 and 1")
        if np.any(np.diff(g) < -1e-12):
            raise ValueError("warp must be non-decreasing")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def identity(cls, T: int) -> "Warp":
        return cls(np.linspace(0.0, 1.0, T))


@dataclass(frozen=True)
class Rotation:
    """Element of SO(n)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("rotation must be a square matrix")
        if np.max(np.abs(m.T @ m - np.eye(m.shape[0]))) > 1e-8:
            raise ValueError("rotation is not orthogonal")
        if abs(np.linalg.det(m) - 1.0) > 1e-8:
            raise ValueError("rotation must have determinant +1")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, n: int) -> "Rotation":
        return cls(np.eye(n))


@dataclass(frozen=True)
class TangentVector:
    """Tangent vector at ``anchor`` on the unit hypersphere."""

    values: np.ndarray
    anchor: Srvf


def _angle(q0: Srvf, q1: Srvf, pair=None) -> float:
    inner = np.clip(l2_inner(q0, q1), -1.0, 1.0)
    theta = float(np.arccos(inner))
    if abs(theta - np.pi) < ANTIPODAL_TOL:
        raise AntipodalError("antipodal SRVFs: log map undefined", pair=pair)
    return theta


def geodesic(q0: Srvf, q1: Srvf, tau: float) -> Srvf:
    """Great-circle point between q0 and q1 at fraction ``tau``."""
    theta = _angle(q0, q1)
    if theta < ZERO_ANGLE:
        return q0
    s = np.sin(theta)
    vals = (np.sin(theta * (1.0 - tau)) * q0.values + np.sin(theta * tau) * q1.values) / s
    return Srvf(vals)


def log_sphere(q0: Srvf, q1: Srvf) -> TangentVector:
    """Sphere log map: tangent at q0 pointing to q1, with norm equal to the angle."""
    theta = _angle(q0, q1)
    if theta < ZERO_ANGLE:
        return TangentVector(np.zeros_like(q0.values), q0)
    inner = np.cos(theta)
    v = (theta / np.sin(theta)) * (q1.values - inner * q0.values)
    return TangentVector(v, q0)


def align_rotation(q0: Srvf, q1: Srvf) -> tuple[Rotation, Srvf]:
    """Best SO(n) rotation of q1 toward q0 (orthogonal Procrustes)."""
    if q0.values.shape != q1.values.shape:
        raise ValueError("SRVFs must share grid and dimension")
    n = q0.n
    if n == 1:
        return Rotation.identity(1), q1
    w = _trapz_weights(q0.T)
    M = np.einsum("t,td,te->de", w, q0.values, q1.values)
    U, _, Vt = np.linalg.svd(M)
    d = np.sign(np.linalg.det(U @ Vt))
    if d == 0:
        d = 1.0
    S = np.eye(n)
    S[-1, -1] = d
    O = U @ S @ Vt
    return Rotation(O), Srvf(q1.values @ O.T)


def _warp_values(spline, g: np.ndarray, spacing: float) -> np.ndarray:
    gdot = np.gradient(g, spacing)
    gdot = np.maximum(gdot, 0.0)
    vals = spline(np.clip(g, 0.0, 1.0))
    return vals * np.sqrt(gdot)[:, None]


def apply_warp(q: Srvf, warp: Warp) -> Srvf:
    """Group action of a warp on an SRVF: (q o gamma) sqrt(gamma'), renormalized.

    Cubic-spline interpolation of q keeps the action faithful for
    oscillatory SRVFs (linear interpolation dominates the alignment error
    otherwise).
    """
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(q.grid, q.values, axis=0)
    return normalize_srvf(Srvf(_warp_values(spline, warp.gamma, q.spacing)))


def align_reparam(q0: Srvf, q1: Srvf, grid_size: int | None = None) -> tuple[Warp, Srvf]:
    """Best monotone warp of q1 toward q0 via lattice dynamic programming.

    The lattice is grid_size x grid_size (default: the shared grid size T);
    the coprime step set keeps the local warp slope within [1/3, 3].
    Falls back to the identity warp if the discretized optimum does not beat
    it, so the aligned distance never exceeds the unaligned one.
    """
    if q0.values.shape != q1.values.shape:
        raise ValueError("SRVFs must share grid and dimension")
    T = q0.T
    if grid_size is None:
        grid_size = T
    if grid_size > T or grid_size < 3:
        raise ValueError(f"grid_size must be in [3, T={T}], got {grid_size}")

    if grid_size == T:
        a0, a1 = q0.values, q1.values
    else:
        sub = np.linspace(0.0, 1.0, grid_size)
        full = np.linspace(0.0, 1.0, T)
        a0 = np.column_stack([np.interp(sub, full, q0.values[:, d]) for d in range(q0.n)])
        a1 = np.column_stack([np.interp(sub, full, q1.values[:, d]) for d in range(q1.n)])

    gidx = _kernels.reparam_dp(np.ascontiguousarray(a0), np.ascontiguousarray(a1))
    gvals = gidx / (grid_size - 1)
    if grid_size != T:
        full = np.linspace(0.0, 1.0, T)
        sub = np.linspace(0.0, 1.0, grid_size)
        gvals = np.interp(full, sub, gvals)
    gvals[0], gvals[-1] = 0.0, 1.0
    gvals = np.maximum.accumulate(gvals)

    if np.allclose(gvals, np.linspace(0.0, 1.0, T), atol=1e-14):
        return Warp.identity(T), q1

    # the lattice path dithers between the admissible slopes; smoothing gamma
    # removes that quantization noise from sqrt(gamma'). Try a few smoothing
    # strengths and keep whichever warp (or the identity) gets closest.
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(q1.grid, q1.values, axis=0)
    d_old = _dist(q0, q1)
    best_warp, best_srvf, best_d = Warp.identity(T), q1, d_old
    cand = gvals
    for level in range(7):
        if level in (0, 2, 4, 6):
            vals = _warp_values(spline, cand, q1.spacing)
            nrm = np.sqrt(max(np.einsum("t,td,td->", _trapz_weights(T), vals, vals), 1e-300))
            warped = Srvf(vals / nrm)
            d = _dist(q0, warped)
            if d < best_d:
                best_warp, best_srvf, best_d = Warp(cand), warped, d
        nxt = cand.copy()
        nxt[1:-1] = 0.25 * cand[:-2] + 0.5 * cand[1:-1] + 0.25 * cand[2:]
        cand = np.maximum.accumulate(nxt)
    return best_warp, best_srvf


def _dist(q0: Srvf, q1: Srvf) -> float:
    diff = q0.values - q1.values
    w = _trapz_weights(q0.T)
    return float(np.sqrt(np.einsum("t,td,td->", w, diff, diff)))


def align_to(q0: Srvf, q1: Srvf, iters: int = DEFAULT_ALIGN_ITERS,
             grid_size: int | None = None) -> Srvf:
    """Representative of the shape orbit of q1 aligned to q0.

    Alternates Procrustes rotation and DP reparameterization ``iters`` times.
    Each pass cannot increase the L2 distance to q0.
    """
    cur = q1
    prev_d = _dist(q0, cur)
    for _ in range(iters):
        _, cur = align_rotation(q0, cur)
        _, cur = align_reparam(q0, cur, grid_size=grid_size)
        d = _dist(q0, cur)
        if d >= prev_d - 1e-12:
            break
        prev_d = d
    return cur


def log_quotient(q0: Srvf, q1: Srvf, iters: int = DEFAULT_ALIGN_ITERS,
                 grid_size: int | None = None) -> TangentVector:
    """Tangent vector at q0 toward the aligned representative of q1's orbit."""
    if np.array_equal(q0.values, q1.values):
        return TangentVector(np.zeros_like(q0.values), q0)
    aligned = align_to(q0, q1, iters=iters, grid_size=grid_size)
    return log_sphere(q0, aligned)


@dataclass(frozen=True)
class GramTensor:
    """Per-anchor Gram matrices of quotient-space tangent vectors.

    ``blocks[i]`` is the N x N symmetric PSD matrix of pairwise inner
    products of the tangent vectors anchored at curve i; its i-th row and
    column are zero.
    """

    blocks: np.ndarray  # (N, N, N)

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=float)
        if b.ndim != 3 or b.shape[0] != b.shape[1] or b.shape[1] != b.shape[2]:
            raise ValueError("blocks must have shape (N, N, N)")
        object.__setattr__(self, "blocks", b)

    @property
    def N(self) -> int:
        return self.blocks.shape[0]


def build_gram_tensor(srvfs: list[Srvf], iters: int = DEFAULT_ALIGN_ITERS,
                      grid_size: int | None = None) -> GramTensor:
    """Per-anchor Gram tensor over a dataset of unit-norm SRVFs.

    For anchor i, tangent vectors toward every other curve are computed in
    the quotient space and their trapezoidal inner products form block i.
    Alignments are recomputed per anchor (the tangent space moves with i).
    """
    N = len(srvfs)
    if N < 2:
        raise ValueError("need at least 2 SRVFs")
    T, n = srvfs[0].T, srvfs[0].n
    for q in srvfs:
        if q.values.shape != (T, n):
            raise ValueError("all SRVFs must share grid and dimension")

    w = _trapz_weights(T)
    blocks = np.zeros((N, N, N))
    for i, qi in enumerate(srvfs):
        V = np.zeros((N, T, n))
        for j, qj in enumerate(srvfs):
            if j == i:
                continue
            try:
                V[j] = log_quotient(qi, qj, iters=iters, grid_size=grid_size).values
            except AntipodalError as exc:
                raise AntipodalError(
                    f"antipodal pair while building Gram tensor: ({i}, {j})",
                    pair=(i, j),
                ) from exc
        Vw = V * w[None, :, None]
        B = np.einsum("jtd,ktd->jk", Vw, V)
        blocks[i] = 0.5 * (B + B.T)
    return GramTensor(blocks)
