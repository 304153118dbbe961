"""Spectral clustering of affinity matrices and clustering accuracy scoring."""
from __future__ import annotations

import warnings

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import linear_sum_assignment
from sklearn.cluster import KMeans

__all__ = ["symmetrize", "spectral_cluster", "sca"]

DEGREE_FLOOR = 1e-12
KMEANS_RESTARTS = 20


def symmetrize(W: np.ndarray) -> np.ndarray:
    """Affinity (|W| + |W|^T) / 2 from a coefficient matrix."""
    W = np.asarray(W, dtype=float)
    if not np.all(np.isfinite(W)):
        raise ValueError("coefficient matrix contains non-finite values")
    A = np.abs(W)
    return 0.5 * (A + A.T)


def spectral_cluster(A: np.ndarray, c: int, seed: int = 0) -> np.ndarray:
    """Normalized-cuts style spectral clustering.

    Symmetric-normalized Laplacian, bottom-c eigenvectors, row-normalized
    embedding, k-means with seeded restarts. Deterministic for a fixed seed.
    """
    A = np.asarray(A, dtype=float)
    N = A.shape[0]
    if A.shape != (N, N):
        raise ValueError("affinity must be square")
    if c < 1 or c > N:
        raise ValueError(f"need 1 <= c <= N, got c={c}, N={N}")
    if np.max(np.abs(A - A.T)) > 1e-10:
        raise ValueError("affinity must be symmetric")
    if c == 1:
        return np.zeros(N, dtype=int)

    deg = A.sum(axis=1)
    if np.any(deg <= 0):
        warnings.warn("isolated vertex in affinity; flooring its degree")
        deg = np.maximum(deg, DEGREE_FLOOR)
    dinv = 1.0 / np.sqrt(deg)
    M = dinv[:, None] * A * dinv[None, :]
    # bottom-c eigenvectors of I - M == top-c of M
    _, vecs = eigh(M, subset_by_index=(N - c, N - 1))
    norms = np.linalg.norm(vecs, axis=1)
    vecs = vecs / np.maximum(norms, 1e-12)[:, None]
    km = KMeans(n_clusters=c, n_init=KMEANS_RESTARTS, random_state=seed)
    return km.fit_predict(vecs)


def sca(predicted: np.ndarray, truth: np.ndarray) -> float:
    """Clustering accuracy maximized over cluster-id matchings.

    Optimal assignment on the confusion matrix; equals the brute-force
    maximum over all id permutations.
    """
    predicted = np.asarray(predicted).ravel()
    truth = np.asarray(truth).ravel()
    if predicted.shape != truth.shape:
        raise ValueError("label vectors must have equal length")
    p_ids = np.unique(predicted)
    t_ids = np.unique(truth)
    conf = np.zeros((p_ids.size, t_ids.size))
    for a, pid in enumerate(p_ids):
        mask = predicted == pid
        for b, tid in enumerate(t_ids):
            conf[a, b] = np.count_nonzero(truth[mask] == tid)
    rows, cols = linear_sum_assignment(-conf)
    return float(conf[rows, cols].sum() / truth.size)
