"""Synthetic and semi-synthetic curve dataset generation.

Clusters are built from base curves (sines at distinct frequencies, or
random smooth curves standing in for a spectral library) warped by random
monotone reparameterizations composed of a shift, a stretch and a local
smooth warp.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curves import Curve, derivative

__all__ = [
    "WarpSpec",
    "Dataset",
    "make_warp",
    "gen_sine_clusters",
    "gen_warped_basis_clusters",
    "random_smooth_basis",
    "random_smooth_bases",
]

MAX_SHIFT = 0.30       # |s| < 1/pi keeps t + s*sin(pi t) monotone
MAX_LOCAL_AMP = 0.95


@dataclass(frozen=True)
class WarpSpec:
    """Parameters of the random warp generator."""

    shift_range: tuple[float, float] = (0.0, 0.0)
    stretch_range: tuple[float, float] = (1.0, 1.0)
    local_warp_amplitude: float = 0.0
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.shift_range
        if lo > hi or abs(lo) > MAX_SHIFT or abs(hi) > MAX_SHIFT:
            raise ValueError(f"shift_range must be within +-{MAX_SHIFT}")
        slo, shi = self.stretch_range
        if not (0 < slo <= shi):
            raise ValueError("stretch_range must be positive")
        if not (0 <= self.local_warp_amplitude <= MAX_LOCAL_AMP):
            raise ValueError(f"local_warp_amplitude must be in [0, {MAX_LOCAL_AMP}]")


@dataclass
class Dataset:
    curves: list
    truth: np.ndarray
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.truth = np.asarray(self.truth, dtype=int)
        if len(self.curves) != self.truth.size:
            raise ValueError("curves and truth labels must have equal length")
        if self.curves:
            T, n = self.curves[0].T, self.curves[0].n
            for i, c in enumerate(self.curves):
                if (c.T, c.n) != (T, n):
                    raise ValueError(f"curve {i} has mismatched shape")

    @property
    def N(self) -> int:
        return len(self.curves)


def _draw_warp_params(rng: np.random.Generator, spec: WarpSpec):
    s = rng.uniform(*spec.shift_range)
    c = rng.uniform(*spec.stretch_range)
    amp = spec.local_warp_amplitude
    coeffs = rng.uniform(-1.0, 1.0, size=3)
    return s, c, amp, coeffs


def _eval_warp(t: np.ndarray, s: float, c: float, amp: float,
               coeffs: np.ndarray) -> np.ndarray:
    # stretch: exponential reallocation of the parameter density
    k = np.log(c)
    if abs(k) > 1e-12:
        g = (np.exp(k * t) - 1.0) / (np.exp(k) - 1.0)
    else:
        g = t.copy()
    # local warp: low-frequency bump with derivative bounded by amp < 1
    total = np.sum(np.abs(coeffs))
    if amp > 0 and total > 0:
        cs = coeffs * (amp / total)
        w = np.zeros_like(g)
        for m, cm in zip((2, 3, 4), cs):
            w += cm * np.sin(np.pi * m * g) / (np.pi * m)
        # derivative of each term is cm*cos(...), so |w'| <= amp
        g = g + w
    # shift: moves interior content left/right
    if s != 0.0:
        g = g + s * np.sin(np.pi * g)
    g[0], g[-1] = 0.0, 1.0
    return np.maximum.accumulate(g)


def make_warp(T: int, spec: WarpSpec, rng: np.random.Generator,
              scale: float = 1.0) -> np.ndarray:
    """Random warp values on a uniform grid; ``scale`` in [0, 1] interpolates
    toward the identity (scale 0 is exactly the identity)."""
    t = np.linspace(0.0, 1.0, T)
    s, c, amp, coeffs = _draw_warp_params(rng, spec)
    if scale == 0.0 or (s == 0.0 and c == 1.0 and amp == 0.0):
        return t
    return _eval_warp(t, s * scale, c ** scale, amp * scale, coeffs)


def _warp_samples(base: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    T = base.shape[0]
    idx = gamma * (T - 1)
    return np.column_stack(
        [np.interp(idx, np.arange(T), base[:, d]) for d in range(base.shape[1])]
    )


def gen_sine_clusters(c: int, per_cluster: int, T: int, spec: WarpSpec) -> Dataset:
    """Clusters of 1-D sine waves at distinct frequencies, each instance
    progressively more warped than the last (instance 0 is the unwarped base)."""
    rng = np.random.default_rng(spec.seed)
    t = np.linspace(0.0, 1.0, T)
    curves, labels = [], []
    for k in range(c):
        freq = k + 1
        for j in range(per_cluster):
            fac = j / max(per_cluster - 1, 1)
            gamma = make_warp(T, spec, rng, scale=fac)
            curves.append(Curve(np.sin(2 * np.pi * freq * gamma)[:, None]))
            labels.append(k)
    return Dataset(
        curves,
        np.array(labels),
        name="sine",
        meta={
            "kind": "sine",
            "clusters": c,
            "per_cluster": per_cluster,
            "T": T,
            "seed": spec.seed,
            "shift_range": list(spec.shift_range),
            "stretch_range": list(spec.stretch_range),
            "local_warp_amplitude": spec.local_warp_amplitude,
        },
    )


def gen_warped_basis_clusters(bases: list, per_cluster: int, spec: WarpSpec) -> Dataset:
    """One cluster per base curve: randomly shifted/stretched/warped copies."""
    if not bases:
        raise ValueError("need at least one base curve")
    T = bases[0].T
    for b in bases:
        if b.T != T or b.n != bases[0].n:
            raise ValueError("bases must share grid and dimension")
    rng = np.random.default_rng(spec.seed)
    curves, labels = [], []
    for k, base in enumerate(bases):
        for _ in range(per_cluster):
            gamma = make_warp(T, spec, rng)
            curves.append(Curve(_warp_samples(base.samples, gamma)))
            labels.append(k)
    return Dataset(
        curves,
        np.array(labels),
        name="warped-basis",
        meta={
            "kind": "warped-basis",
            "clusters": len(bases),
            "per_cluster": per_cluster,
            "T": T,
            "seed": spec.seed,
            "shift_range": list(spec.shift_range),
            "stretch_range": list(spec.stretch_range),
            "local_warp_amplitude": spec.local_warp_amplitude,
        },
    )


def random_smooth_basis(T: int, n: int, seed: int) -> Curve:
    """Random low-frequency Fourier mixture, normalized to unit curve length.

    At most 5 harmonics with decaying amplitudes; redraws (deterministically)
    until the discrete second difference stays below 100 / T^2.
    """
    if T < 16:
        raise ValueError("need T >= 16")
    t = np.linspace(0.0, 1.0, T)
    bound = 100.0 / T ** 2
    for attempt in range(64):
        rng = np.random.default_rng((seed, attempt))
        samples = np.zeros((T, n))
        for d in range(n):
            f = np.zeros(T)
            for k in range(1, 6):
                a, b = rng.normal(0.0, 1.0 / k ** 2, size=2)
                f += a * np.sin(2 * np.pi * k * t) + b * np.cos(2 * np.pi * k * t)
            samples[:, d] = f
        curve = Curve(samples)
        speed = np.linalg.norm(derivative(curve), axis=1)
        length = np.trapezoid(speed, dx=curve.spacing)
        if length < 1e-6:
            continue
        samples = samples / length
        d2 = np.abs(np.diff(samples, n=2, axis=0)).max()
        if d2 <= bound:
            return Curve(samples)
    raise RuntimeError("could not draw a smooth basis within the bound")


def random_smooth_bases(count: int, T: int, n: int, seed: int,
                        min_dist: float = 0.5) -> list:
    """Draw ``count`` mutually separated random smooth bases.

    Separation is the L2 distance between unit-L2-normalized sample
    matrices, so near-duplicate shapes are rejected deterministically.
    """
    bases: list = []
    attempt = 0
    while len(bases) < count:
        cand = random_smooth_basis(T, n, seed * 100003 + attempt)
        attempt += 1
        u = cand.samples / np.linalg.norm(cand.samples)
        ok = True
        for b in bases:
            v = b.samples / np.linalg.norm(b.samples)
            if np.linalg.norm(u - v) < min_dist:
                ok = False
                break
        if ok:
            bases.append(cand)
        if attempt > 1000 * count:
            raise RuntimeError("could not draw separated bases")
    return bases
