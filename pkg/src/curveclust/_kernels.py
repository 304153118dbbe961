"""Numba kernels for the dynamic programs (reparameterization alignment, DTW).

Both kernels are plain scalar loops so numba can compile them; keep numpy
fancy indexing out of here.
"""
import numpy as np
from numba import njit

_BIG = 1e30


@njit(cache=True, nogil=True)
def _interp_row(q, x, out):
    """Linear interpolation of the T x n array ``q`` at fractional row index x."""
    T = q.shape[0]
    if x <= 0.0:
        for d in range(q.shape[1]):
            out[d] = q[0, d]
        return
    if x >= T - 1:
        for d in range(q.shape[1]):
            out[d] = q[T - 1, d]
        return
    k = int(np.floor(x))
    frac = x - k
    for d in range(q.shape[1]):
        out[d] = (1.0 - frac) * q[k, d] + frac * q[k + 1, d]


@njit(cache=True, nogil=True)
def reparam_dp(q0, q1):
    """Monotone lattice DP minimizing || q0 - (q1 o gamma) sqrt(gamma') ||^2.

    Admissible predecessor steps are the coprime moves (1,1), (1,2), (2,1),
    (1,3), (3,1), (2,3), (3,2) in (row of q0, row of q1), which bounds the
    local slope of gamma to [1/3, 3] on a slope grid fine enough to track
    smooth warps. Per-edge costs integrate on a 2x-refined subgrid.

    Returns a float vector g of length T with g[i] = fractional q1-row index
    matched to q0-row i (strictly increasing, g[0] = 0, g[-1] = T - 1).
    """
    T = q0.shape[0]
    n = q0.shape[1]
    h = 1.0 / (T - 1)
    steps_i = (1, 1, 2, 1, 3, 2, 3)
    steps_j = (1, 2, 1, 3, 1, 3, 2)
    nsteps = 7
    sub = 2  # integrand samples per unit lattice step

    cost = np.full((T, T), _BIG)
    pred = np.full((T, T), -1, dtype=np.int8)
    cost[0, 0] = 0.0
    buf = np.empty(n)

    # q0 sampled on the sub-refined grid (query points are multiples of 1/sub)
    q0_fine = np.empty(((T - 1) * sub + 1, n))
    for m in range((T - 1) * sub + 1):
        _interp_row(q0, m / sub, q0_fine[m])

    for i in range(1, T):
        for j in range(1, T):
            best = _BIG
            best_s = -1
            for s in range(nsteps):
                pi = i - steps_i[s]
                pj = j - steps_j[s]
                if pi < 0 or pj < 0:
                    continue
                base = cost[pi, pj]
                if base >= _BIG:
                    continue
                di = i - pi
                dj = j - pj
                slope = dj / di
                sq = np.sqrt(slope)
                c = 0.0
                nsub = di * sub
                base0 = pi * sub
                for m in range(1, nsub + 1):
                    x = pj + (m / sub) * slope
                    _interp_row(q1, x, buf)
                    for d in range(n):
                        diff = q0_fine[base0 + m, d] - sq * buf[d]
                        c += diff * diff
                c = base + c * h / sub
                if c < best:
                    best = c
                    best_s = s
            cost[i, j] = best
            pred[i, j] = best_s

    # backtrack; interpolate fractional indices for rows skipped by
    # steps that advance i by more than one
    g = np.empty(T)
    i = T - 1
    j = T - 1
    g[i] = j
    while i > 0:
        s = pred[i, j]
        pi = i - steps_i[s]
        pj = j - steps_j[s]
        di = i - pi
        dj = j - pj
        for m in range(1, di):
            g[pi + m] = pj + dj * m / di
        g[pi] = pj
        i = pi
        j = pj
    return g


@njit(cache=True, nogil=True)
def dtw_band(a, b, halfwidth):
    """Banded DTW with steps {diag, up, right} and Euclidean local cost.

    The band is centred on the slope-corrected diagonal so it stays feasible
    for unequal lengths whenever halfwidth >= 1.
    """
    Ta = a.shape[0]
    Tb = b.shape[0]
    n = a.shape[1]
    slope = (Tb - 1) / (Ta - 1) if Ta > 1 else 1.0

    D = np.full((Ta, Tb), _BIG)
    for i in range(Ta):
        center = i * slope
        jlo = int(np.ceil(center - halfwidth))
        jhi = int(np.floor(center + halfwidth))
        if jlo < 0:
            jlo = 0
        if jhi > Tb - 1:
            jhi = Tb - 1
        for j in range(jlo, jhi + 1):
            c = 0.0
            for d in range(n):
                diff = a[i, d] - b[j, d]
                c += diff * diff
            c = np.sqrt(c)
            if i == 0 and j == 0:
                D[i, j] = c
                continue
            best = _BIG
            if i > 0 and j > 0 and D[i - 1, j - 1] < best:
                best = D[i - 1, j - 1]
            if i > 0 and D[i - 1, j] < best:
                best = D[i - 1, j]
            if j > 0 and D[i, j - 1] < best:
                best = D[i, j - 1]
            if best < _BIG:
                D[i, j] = best + c
    return D[Ta - 1, Tb - 1]
