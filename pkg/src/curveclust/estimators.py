"""Sklearn-style clustering estimators over collections of curves.

Each estimator accepts X as an (N, T) or (N, T, n) array, or a list of
Curve objects, and exposes fit / fit_predict with a ``labels_`` attribute
so the methods compose with the wider scikit-learn ecosystem.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .baselines import (
    DtwConfig,
    LrrConfig,
    dtw_affinity,
    euclidean_lrr,
    flatten,
    kmeans,
)
from .clustering import spectral_cluster, symmetrize
from .curves import Curve, resample, to_srvf
from .manifold import build_gram_tensor
from .solver import SolverConfig, solve

__all__ = [
    "CurveLowRankClustering",
    "EuclideanLRRClustering",
    "DTWSpectralClustering",
    "CurveKMeans",
    "as_curves",
]


def as_curves(X, resample_to: int | None = None) -> list[Curve]:
    """Coerce input to a list of Curve objects sharing a common grid."""
    if isinstance(X, (list, tuple)) and X and isinstance(X[0], Curve):
        curves = list(X)
    else:
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if arr.ndim != 3:
            raise ValueError("X must be (N, T) or (N, T, n)")
        curves = [Curve(arr[i]) for i in range(arr.shape[0])]
    Ts = {c.T for c in curves}
    ns = {c.n for c in curves}
    if len(ns) != 1:
        raise ValueError("curves must share dimension")
    if resample_to is None:
        if len(Ts) != 1:
            raise ValueError("curves have differing lengths; set resample_to")
    else:
        curves = [resample(c, resample_to) for c in curves]
    return curves


class CurveLowRankClustering(ClusterMixin, BaseEstimator):
    """Elastic-shape low-rank clustering of curves.

    Curves are mapped to unit-norm square-root velocity functions, pairwise
    tangent vectors are computed in the rotation/reparameterization quotient
    at every anchor, a low-rank coefficient matrix is fit by the linearized
    alternating direction solver, and the symmetrized coefficients are
    spectrally clustered.
    """

    def __init__(self, n_clusters=3, lam=0.1, align_iters=3, reparam_grid=None,
                 resample_to=None, beta0=0.1, beta_max=10.0, rho0=1.1,
                 eps1=1e-4, eps2=1e-4, max_iters=500, zero_diagonal=False,
                 random_state=0):
        self.n_clusters = n_clusters
        self.lam = lam
        self.align_iters = align_iters
        self.reparam_grid = reparam_grid
        self.resample_to = resample_to
        self.beta0 = beta0
        self.beta_max = beta_max
        self.rho0 = rho0
        self.eps1 = eps1
        self.eps2 = eps2
        self.max_iters = max_iters
        self.zero_diagonal = zero_diagonal
        self.random_state = random_state

    def fit(self, X, y=None):
        curves = as_curves(X, self.resample_to)
        srvfs = [to_srvf(c) for c in curves]
        gram = build_gram_tensor(srvfs, iters=self.align_iters,
                                 grid_size=self.reparam_grid)
        cfg = SolverConfig(lam=self.lam, beta0=self.beta0,
                           beta_max=self.beta_max, rho0=self.rho0,
                           eps1=self.eps1, eps2=self.eps2,
                           max_iters=self.max_iters)
        report = solve(gram, cfg)
        W = report.W
        if self.zero_diagonal:
            W = W - np.diag(np.diag(W))
        affinity = symmetrize(W)
        self.coefficients_ = report.W
        self.affinity_ = affinity
        self.report_ = report
        self.n_iter_ = report.iters
        self.labels_ = spectral_cluster(affinity, self.n_clusters,
                                        seed=self.random_state)
        return self


class EuclideanLRRClustering(ClusterMixin, BaseEstimator):
    """Low-rank representation on flattened curve vectors, spectrally clustered."""

    def __init__(self, n_clusters=3, lam=0.1, tol=1e-6, max_iters=500,
                 resample_to=None, random_state=0):
        self.n_clusters = n_clusters
        self.lam = lam
        self.tol = tol
        self.max_iters = max_iters
        self.resample_to = resample_to
        self.random_state = random_state

    def fit(self, X, y=None):
        curves = as_curves(X, self.resample_to)
        data = np.column_stack([flatten(c) for c in curves])  # D x N
        cfg = LrrConfig(lam=self.lam, tol=self.tol, max_iters=self.max_iters)
        Z, info = euclidean_lrr(data, cfg)
        self.coefficients_ = Z
        self.fit_residual_ = info["residual"]
        self.n_iter_ = info["iters"]
        self.affinity_ = symmetrize(Z)
        self.labels_ = spectral_cluster(self.affinity_, self.n_clusters,
                                        seed=self.random_state)
        return self


class DTWSpectralClustering(ClusterMixin, BaseEstimator):
    """Banded DTW distance matrix, Gaussian kernel, spectral clustering."""

    def __init__(self, n_clusters=3, window_fraction=0.10, resample_to=None,
                 random_state=0):
        self.n_clusters = n_clusters
        self.window_fraction = window_fraction
        self.resample_to = resample_to
        self.random_state = random_state

    def fit(self, X, y=None):
        curves = as_curves(X, self.resample_to)
        cfg = DtwConfig(window_fraction=self.window_fraction)
        self.affinity_ = dtw_affinity(curves, cfg)
        self.labels_ = spectral_cluster(self.affinity_, self.n_clusters,
                                        seed=self.random_state)
        return self


class CurveKMeans(ClusterMixin, BaseEstimator):
    """k-means on dimension-major flattened curve vectors."""

    def __init__(self, n_clusters=3, resample_to=None, random_state=0):
        self.n_clusters = n_clusters
        self.resample_to = resample_to
        self.random_state = random_state

    def fit(self, X, y=None):
        curves = as_curves(X, self.resample_to)
        vectors = np.vstack([flatten(c) for c in curves])
        self.labels_ = kmeans(vectors, self.n_clusters, seed=self.random_state)
        return self
