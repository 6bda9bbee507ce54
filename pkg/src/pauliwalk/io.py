"""Distribution files and run manifests."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .analysis import Distribution

__all__ = ["render_csv", "write_distribution", "read_distribution", "sha256_text"]


def _fmt(p: float) -> str:
    return repr(float(p))


def render_csv(d: Distribution, coord_names: Sequence[str]) -> str:
    if len(coord_names) != d.dim:
        raise ValueError(f"{len(coord_names)} column names for a {d.dim}D distribution")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*coord_names, "p"])
    for pos, p in d:
        writer.writerow([*pos, _fmt(p)])
    return buf.getvalue()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def write_distribution(
    d: Distribution,
    coord_names: Sequence[str],
    path: str | Path,
    manifest: dict[str, Any],
    fmt: str = "csv",
) -> dict[str, Any]:
    """
    Write ``d`` as CSV (manifest beside it as ``<path>.manifest.json``) or as
    JSON with the manifest inline. Returns the completed manifest.
    """
    path = Path(path)
    text = render_csv(d, coord_names)
    manifest = dict(manifest)
    manifest["distribution_sha256"] = sha256_text(text)
    manifest["format"] = fmt
    if fmt == "csv":
        path.write_text(text, encoding="utf-8")
        manifest["output"] = {"path": path.name, "sha256": sha256_text(text)}
        Path(str(path) + ".manifest.json").write_text(_dumps(manifest), encoding="utf-8")
    elif fmt == "json":
        rows = [[*pos, p] for pos, p in d]
        doc = {"manifest": manifest, "columns": [*coord_names, "p"], "rows": rows}
        path.write_text(_dumps(doc), encoding="utf-8")
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    return manifest


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_distribution(path: str | Path) -> tuple[list[str], Distribution]:
    """Read a CSV or JSON distribution file written by :func:`write_distribution`."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        columns = list(doc["columns"])
        rows = doc["rows"]
    else:
        reader = csv.reader(io.StringIO(text))
        columns = next(reader)
        rows = [r for r in reader if r]
    if not columns or columns[-1] != "p":
        raise ValueError(f"{path}: last column must be 'p'")
    if not rows:
        raise ValueError(f"{path}: no rows")
    coords = np.array([[int(v) for v in r[:-1]] for r in rows], dtype=np.int64)
    probs = np.array([float(r[-1]) for r in rows], dtype=np.float64)
    return columns[:-1], Distribution(coords, probs)
