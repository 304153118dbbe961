"""Benchmark harness: repeated dataset generation, method timing, summaries.

Per-run SCA values go into a deterministic ``runs.csv``; wall-clock timings
are written separately (``timings.csv``) since they can never be
byte-reproducible. ``summary.csv`` and the text table carry the six
statistics columns (mean/median/max/min/std SCA and mean runtime).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .clustering import sca
from .datagen import Dataset, WarpSpec, gen_sine_clusters, gen_warped_basis_clusters, random_smooth_bases
from .estimators import (
    CurveKMeans,
    CurveLowRankClustering,
    DTWSpectralClustering,
    EuclideanLRRClustering,
)

__all__ = ["MethodRun", "BenchmarkResult", "run_benchmark", "make_dataset",
           "make_estimator", "METHODS"]

METHODS = ("kmeans", "dtw", "lrr", "clrr")


@dataclass
class MethodRun:
    sca: float
    runtime_seconds: float
    iters: int | None = None
    failed: bool = False


@dataclass
class BenchmarkResult:
    method: str
    runs: list[MethodRun] = field(default_factory=list)

    @property
    def scas(self) -> np.ndarray:
        return np.array([r.sca for r in self.runs])

    def summary(self) -> dict:
        s = self.scas
        return {
            "method": self.method,
            "mean": float(np.mean(s)),
            "median": float(np.median(s)),
            "max": float(np.max(s)),
            "min": float(np.min(s)),
            "std": float(np.std(s)),
            "mean_runtime": float(np.mean([r.runtime_seconds for r in self.runs])),
        }


def make_estimator(method: str, c: int, seed: int, lam: float = 0.1,
                   dtw_window: float = 0.10):
    if method == "kmeans":
        return CurveKMeans(n_clusters=c, random_state=seed)
    if method == "dtw":
        return DTWSpectralClustering(n_clusters=c, window_fraction=dtw_window,
                                     random_state=seed)
    if method == "lrr":
        return EuclideanLRRClustering(n_clusters=c, lam=lam, random_state=seed)
    if method == "clrr":
        return CurveLowRankClustering(n_clusters=c, lam=lam, random_state=seed)
    raise ValueError(f"unknown method '{method}'")


def make_dataset(kind: str, clusters: int, per_cluster: int, T: int,
                 spec: WarpSpec, n: int = 1) -> Dataset:
    if kind == "sine":
        return gen_sine_clusters(clusters, per_cluster, T, spec)
    if kind == "warped-basis":
        bases = random_smooth_bases(clusters, T, n, seed=spec.seed)
        return gen_warped_basis_clusters(bases, per_cluster, spec)
    raise ValueError(f"unknown dataset kind '{kind}'")


def run_benchmark(kind: str, clusters: int, per_cluster: int, T: int,
                  spec: WarpSpec, methods=METHODS, repeats: int = 10,
                  seed: int = 0, lam: float = 0.1, dtw_window: float = 0.10,
                  n: int = 1) -> list[BenchmarkResult]:
    """End-to-end timed benchmark; a method failure is recorded as SCA 0."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    results = {m: BenchmarkResult(m) for m in methods}
    for r in range(repeats):
        rspec = WarpSpec(spec.shift_range, spec.stretch_range,
                         spec.local_warp_amplitude, seed=seed + r)
        ds = make_dataset(kind, clusters, per_cluster, T, rspec, n=n)
        X = np.stack([c.samples for c in ds.curves])
        for m in methods:
            est = make_estimator(m, clusters, seed, lam=lam, dtw_window=dtw_window)
            t0 = time.perf_counter()
            try:
                est.fit(X)
                elapsed = time.perf_counter() - t0
                run = MethodRun(
                    sca=sca(est.labels_, ds.truth),
                    runtime_seconds=elapsed,
                    iters=getattr(est, "n_iter_", None),
                )
            except Exception:
                run = MethodRun(sca=0.0, runtime_seconds=time.perf_counter() - t0,
                                failed=True)
            results[m].runs.append(run)
    return [results[m] for m in methods]


def format_table(results: list[BenchmarkResult]) -> str:
    header = f"{'Method':<8} {'Mean':>7} {'Median':>7} {'Max':>7} {'Min':>7} {'Std':>7} {'Mean Run Time (s)':>18}"
    lines = [header, "-" * len(header)]
    for res in results:
        s = res.summary()
        lines.append(
            f"{s['method']:<8} {s['mean'] * 100:>6.1f}% {s['median'] * 100:>6.1f}% "
            f"{s['max'] * 100:>6.1f}% {s['min'] * 100:>6.1f}% {s['std'] * 100:>6.1f}% "
            f"{s['mean_runtime']:>18.2f}"
        )
    return "\n".join(lines)


def write_outputs(results: list[BenchmarkResult], out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    runs_lines = ["method,repeat,sca,iters"]
    timing_lines = ["method,repeat,runtime_seconds"]
    for res in results:
        for i, run in enumerate(res.runs):
            iters = "" if run.iters is None else str(run.iters)
            runs_lines.append(f"{res.method},{i},{run.sca!r},{iters}")
            timing_lines.append(f"{res.method},{i},{run.runtime_seconds!r}")
    (out / "runs.csv").write_text("\n".join(runs_lines) + "\n")
    (out / "timings.csv").write_text("\n".join(timing_lines) + "\n")

    summary_lines = ["method,mean,median,max,min,std,mean_runtime"]
    for res in results:
        s = res.summary()
        summary_lines.append(
            f"{s['method']},{s['mean']!r},{s['median']!r},{s['max']!r},"
            f"{s['min']!r},{s['std']!r},{s['mean_runtime']!r}"
        )
    (out / "summary.csv").write_text("\n".join(summary_lines) + "\n")
    (out / "summary.txt").write_text(format_table(results) + "\n")
