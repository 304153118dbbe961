"""Baseline methods: k-means on flattened curves, banded DTW, Euclidean LRR."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curves import Curve
from .errors import SolverDivergenceError
from .solver import svt

__all__ = [
    "DtwConfig",
    "LrrConfig",
    "flatten",
    "kmeans",
    "dtw_distance",
    "dtw_affinity",
    "euclidean_lrr",
]

KMEANS_RESTARTS = 20


@dataclass(frozen=True)
class DtwConfig:
    window_fraction: float = 0.10

    def __post_init__(self):
        if not (0 < self.window_fraction <= 1):
            raise ValueError("window_fraction must be in (0, 1]")

    def halfwidth(self, T: int) -> int:
        return max(1, int(np.ceil(self.window_fraction * T)))


@dataclass(frozen=True)
class LrrConfig:
    lam: float = 0.1
    tol: float = 1e-6
    max_iters: int = 500

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lam must be positive")


def flatten(curve: Curve) -> np.ndarray:
    """Dimension-major concatenation: all of dim 1, then dim 2, ..."""
    return curve.samples.T.ravel().copy()


def _plusplus_init(X: np.ndarray, c: int, rng: np.random.Generator) -> np.ndarray:
    N = X.shape[0]
    centers = np.empty((c, X.shape[1]))
    centers[0] = X[rng.integers(N)]
    d2 = np.sum((X - centers[0]) ** 2, axis=1)
    for k in range(1, c):
        total = d2.sum()
        if total <= 0:
            centers[k] = X[rng.integers(N)]
        else:
            centers[k] = X[rng.choice(N, p=d2 / total)]
        d2 = np.minimum(d2, np.sum((X - centers[k]) ** 2, axis=1))
    return centers


def _lloyd(X: np.ndarray, c: int, rng: np.random.Generator,
           max_iters: int = 300, tol: float = 1e-10):
    centers = _plusplus_init(X, c, rng)
    trace = []
    labels = np.zeros(X.shape[0], dtype=int)
    for _ in range(max_iters):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = d2.argmin(axis=1)
        for k in range(c):
            if not np.any(labels == k):
                # reseed an empty cluster from the farthest point
                far = d2.min(axis=1).argmax()
                centers[k] = X[far]
                d2[:, k] = ((X - centers[k]) ** 2).sum(axis=1)
                labels = d2.argmin(axis=1)
        obj = float(d2[np.arange(X.shape[0]), labels].sum())
        trace.append(obj)
        new_centers = np.vstack([X[labels == k].mean(axis=0) for k in range(c)])
        if np.max(np.abs(new_centers - centers)) <= tol:
            centers = new_centers
            break
        centers = new_centers
    return labels, trace


def kmeans(vectors: np.ndarray, c: int, seed: int = 0,
           restarts: int = KMEANS_RESTARTS, return_trace: bool = False):
    """Lloyd's k-means with k-means++ seeding and seeded restarts.

    Deterministic for a fixed seed; the best restart by within-cluster sum
    of squares is kept. With ``return_trace`` also returns that restart's
    per-iteration objective values.
    """
    vectors = np.asarray(vectors, dtype=float)
    if c > vectors.shape[0]:
        raise ValueError("more clusters than points")
    rng = np.random.default_rng(seed)
    best_labels, best_trace = None, None
    for _ in range(restarts):
        labels, trace = _lloyd(vectors, c, rng)
        if best_trace is None or trace[-1] < best_trace[-1]:
            best_labels, best_trace = labels, trace
    if return_trace:
        return best_labels, best_trace
    return best_labels


def dtw_distance(a: Curve, b: Curve, cfg: DtwConfig | None = None) -> float:
    """Banded (Sakoe-Chiba) DTW with Euclidean local cost and steps {diag, up, right}.

    The band is widened to the feasibility minimum (with a warning) when the
    length ratio makes the configured window too narrow to connect corners.
    """
    if cfg is None:
        cfg = DtwConfig()
    if a.n != b.n:
        raise ValueError("curves must share dimension")
    hw = cfg.halfwidth(max(a.T, b.T))
    x = np.ascontiguousarray(a.samples)
    y = np.ascontiguousarray(b.samples)
    d = _kernels.dtw_band(x, y, float(hw))
    while d >= 1e29:
        hw *= 2
        warnings.warn(f"DTW band infeasible; widening half-width to {hw}")
        d = _kernels.dtw_band(x, y, float(hw))
    return float(d)


def dtw_affinity(dataset: list[Curve], cfg: DtwConfig | None = None) -> np.ndarray:
    """Gaussian-kernel affinity from pairwise DTW distances.

    sigma is the median off-diagonal distance; an all-identical dataset
    (sigma = 0) yields the all-ones matrix.
    """
    N = len(dataset)
    if N < 2:
        raise ValueError("need at least 2 curves")
    D = np.zeros((N, N))
    for i in range(N):
        for j in range(i + 1, N):
            D[i, j] = D[j, i] = dtw_distance(dataset[i], dataset[j], cfg)
    off = D[~np.eye(N, dtype=bool)]
    sigma = float(np.median(off))
    if sigma <= 0:
        return np.ones((N, N))
    return np.exp(-(D ** 2) / (2.0 * sigma ** 2))


def euclidean_lrr(X: np.ndarray, cfg: LrrConfig | None = None) -> tuple[np.ndarray, dict]:
    """Self-expressive low-rank coefficients for column-wise Euclidean data.

    Minimizes ||Z||_* + (lam/2) ||X - XZ||_F^2 by linearized proximal
    iterations sharing the SVT operator with the curve solver. Returns the
    N x N coefficient matrix and an info dict with the fit residual.
    """
    if cfg is None:
        cfg = LrrConfig()
    X = np.asarray(X, dtype=float)
    if not np.all(np.isfinite(X)):
        raise ValueError("X contains non-finite values")
    N = X.shape[1]
    if N < 2:
        raise ValueError("need at least 2 columns")

    G = X.T @ X
    L = cfg.lam * max(np.linalg.norm(G, 2), 1e-12)
    Z = np.zeros((N, N))
    iters = 0
    for iters in range(1, cfg.max_iters + 1):
        grad = cfg.lam * (G @ Z - G)
        Z_new = svt(Z - grad / L, 1.0 / L)
        if not np.all(np.isfinite(Z_new)):
            raise SolverDivergenceError(
                f"non-finite LRR iterate at iteration {iters}", iteration=iters
            )
        delta = np.linalg.norm(Z_new - Z, "fro")
        Z = Z_new
        if delta <= cfg.tol * max(1.0, np.linalg.norm(Z, "fro")):
            break
    residual = float(np.linalg.norm(X - X @ Z, "fro"))
    return Z, {"iters": iters, "residual": residual}
