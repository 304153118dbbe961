"""Dataset directory format: a JSON manifest plus one CSV per curve.

Manifest fields: {"name", "n", "T", "labels", "curves", "meta"} where
"curves" holds relative CSV paths. Each CSV has exactly T lines of n
comma-separated decimals (no header). Floats are written with repr so a
save/load round trip is bit exact.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .curves import Curve
from .datagen import Dataset
from .errors import DataFormatError

__all__ = ["save_dataset", "load_dataset"]

MANIFEST = "manifest.json"


def save_dataset(dataset: Dataset, path) -> None:
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    rel_paths = []
    for i, curve in enumerate(dataset.curves):
        rel = f"curve_{i:04d}.csv"
        rel_paths.append(rel)
        lines = [
            ",".join(repr(float(x)) for x in row) for row in curve.samples
        ]
        (root / rel).write_text("\n".join(lines) + "\n")
    manifest = {
        "name": dataset.name,
        "n": int(dataset.curves[0].n) if dataset.curves else 0,
        "T": int(dataset.curves[0].T) if dataset.curves else 0,
        "labels": [int(x) for x in dataset.truth],
        "curves": rel_paths,
        "meta": _jsonable(dataset.meta),
    }
    (root / MANIFEST).write_text(json.dumps(manifest, indent=2) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _read_curve_csv(path: Path, T: int, n: int) -> Curve:
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise DataFormatError(f"{path}: empty curve file")
    if len(lines) != T:
        raise DataFormatError(f"{path}: expected {T} rows, found {len(lines)}")
    rows = []
    for lineno, line in enumerate(lines, start=1):
        parts = line.split(",")
        if len(parts) != n:
            raise DataFormatError(
                f"{path}:{lineno}: expected {n} values, found {len(parts)}"
            )
        try:
            row = [float(p) for p in parts]
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: {exc}") from exc
        if not all(np.isfinite(row)):
            raise DataFormatError(f"{path}:{lineno}: non-finite value")
        rows.append(row)
    return Curve(np.asarray(rows))


def load_dataset(path) -> Dataset:
    root = Path(path)
    mpath = root / MANIFEST
    if not mpath.is_file():
        raise DataFormatError(f"no {MANIFEST} in {root}")
    try:
        manifest = json.loads(mpath.read_text())
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{mpath}: malformed JSON: {exc}") from exc
    for key in ("name", "n", "T", "labels", "curves"):
        if key not in manifest:
            raise DataFormatError(f"{mpath}: missing field '{key}'")
    T, n = int(manifest["T"]), int(manifest["n"])
    labels = manifest["labels"]
    rel_paths = manifest["curves"]
    if len(labels) != len(rel_paths):
        raise DataFormatError(
            f"{mpath}: {len(labels)} labels but {len(rel_paths)} curve files"
        )
    if not rel_paths:
        raise DataFormatError(f"{mpath}: dataset has no curves")
    curves = [_read_curve_csv(root / rel, T, n) for rel in rel_paths]
    return Dataset(
        curves,
        np.asarray(labels, dtype=int),
        name=manifest["name"],
        meta=manifest.get("meta", {}),
    )
