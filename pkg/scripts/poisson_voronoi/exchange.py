"""
Reading and writing point sets, triangulations, levels, colorings and
experiment results.

Point sets are plain ``"x y"`` lines with ``repr`` floats, so a write/read
cycle reproduces every coordinate exactly; their metadata lives in a JSON
sidecar next to the text file. Tables go through pandas.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .chromatics import Coloring, ProperReport
from .errors import ContractError, ParameterError
from .geometry import PointSet, Triangulation, Window
from .peeling import SURVIVOR, LevelAssignment

logger = logging.getLogger(__name__)

SURVIVOR_TOKEN = "SURVIVOR"


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"{type(obj).__name__} is not JSON serialisable")


def dump_json(payload: Dict[str, Any], path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n", encoding="utf-8")
    return path


def load_json(path: Path | str) -> Dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def sidecar_path(path: Path | str) -> Path:
    return Path(path).with_suffix(".json")


# point sets


def write_points(points: PointSet, path: Path | str) -> Tuple[Path, Path]:
    """Write ``points`` as ``"x y"`` lines plus a ``.json`` sidecar."""

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{float(x)!r} {float(y)!r}" for x, y in points.coords]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    side = dump_json(points.to_sidecar(), sidecar_path(path))
    logger.info("wrote %d points to %s", len(points), path)
    return path, side


def read_points(path: Path | str) -> PointSet:
    """Read a point file; without a sidecar the window is inferred from the points."""

    path = Path(path)
    if path.stat().st_size == 0:
        coords = np.zeros((0, 2))
    else:
        frame = pd.read_csv(path, sep=r"\s+", header=None, names=["x", "y"], float_precision="round_trip")
        coords = frame[["x", "y"]].to_numpy(dtype=float)
    side = sidecar_path(path)
    if not side.exists():
        return PointSet.from_points(coords)
    meta = load_json(side)
    return PointSet.from_points(
        coords,
        Window.from_dict(meta["window"]),
        pad_width=float(meta.get("pad", 0.0)),
        intensity=float(meta.get("intensity", 1.0)),
        seed=meta.get("seed"),
    )


# triangulations


def triangulation_payload(tri: Triangulation) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "vertices": [[float(x), float(y)] for x, y in tri.vertices],
        "triangles": [list(t) for t in tri.triangles],
    }
    if tri.window is not None:
        payload["window"] = tri.window.to_dict()
    return payload


def write_triangulation(tri: Triangulation, path: Path | str) -> Path:
    return dump_json(triangulation_payload(tri), path)


def read_triangulation(path: Path | str) -> Triangulation:
    data = load_json(path)
    if "vertices" not in data or "triangles" not in data:
        raise ContractError(f"{path} is not a triangulation file")
    window = Window.from_dict(data["window"]) if data.get("window") else None
    return Triangulation.from_triangles(data["vertices"], [tuple(t) for t in data["triangles"]], window)


# levels


def levels_frame(levels: LevelAssignment) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "vertex_id": range(len(levels)),
            "level": [SURVIVOR_TOKEN if lvl == SURVIVOR else str(lvl) for lvl in levels.levels],
        }
    )


def write_levels(levels: LevelAssignment, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    levels_frame(levels).to_csv(path, index=False)
    return path


def read_levels(path: Path | str) -> Tuple[int, ...]:
    frame = pd.read_csv(path, dtype={"level": str})
    return tuple(SURVIVOR if lvl == SURVIVOR_TOKEN else int(lvl) for lvl in frame.sort_values("vertex_id")["level"])


# colorings


def coloring_header(coloring: Coloring) -> Dict[str, Any]:
    header: Dict[str, Any] = {
        "scheme": coloring.scheme,
        "seed": coloring.seed,
        "palette_size": coloring.palette_size,
        "validity": None,
    }
    if coloring.validity is not None:
        header["validity"] = {
            "ok": coloring.validity.ok,
            "violations": [list(e) for e in coloring.validity.violations],
            "checked_vertices": coloring.validity.checked_vertices,
        }
    return header


def write_coloring(
    coloring: Coloring,
    path: Path | str,
    contaminated: Optional[Sequence[bool]] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> Tuple[Path, Path]:
    """CSV ``vertex_id,color,contaminated`` plus a JSON header with scheme, seed and validity."""

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    flags = [False] * len(coloring) if contaminated is None else [bool(c) for c in contaminated]
    if len(flags) != len(coloring):
        raise ParameterError("contamination flags must cover every colored vertex")
    pd.DataFrame(
        {"vertex_id": range(len(coloring)), "color": coloring.colors, "contaminated": flags}
    ).to_csv(path, index=False)
    header = coloring_header(coloring)
    header.update(extra or {})
    side = dump_json(header, sidecar_path(path))
    return path, side


def read_coloring(path: Path | str) -> Tuple[Coloring, Tuple[bool, ...]]:
    """Colors and contamination flags; the JSON header is optional."""

    frame = pd.read_csv(path).sort_values("vertex_id")
    if list(frame["vertex_id"]) != list(range(len(frame))):
        raise ContractError(f"{path}: vertex ids must be 0..n-1")
    colors = tuple(int(c) for c in frame["color"])
    flags = tuple(bool(c) for c in frame["contaminated"]) if "contaminated" in frame else (False,) * len(colors)
    side = sidecar_path(path)
    meta = load_json(side) if side.exists() else {}
    validity = None
    if meta.get("validity"):
        v = meta["validity"]
        validity = ProperReport(v["ok"], tuple(tuple(e) for e in v["violations"]), v["checked_vertices"])
    palette = int(meta.get("palette_size", max(colors, default=-1) + 1))
    coloring = Coloring(colors, meta.get("scheme", "UNKNOWN"), palette, meta.get("seed"), validity)
    return coloring, flags


# experiments


def write_experiment(result, out_dir: Path | str, config: Optional[Dict[str, Any]] = None) -> Tuple[Path, Path]:
    """``<name>.csv`` with one row per trial and ``<name>.json`` with params and summary."""

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{result.name}.csv"
    result.rows.to_csv(csv_path, index=False)
    payload = {"experiment": result.name, "params": result.params, **result.summary}
    if config is not None:
        payload["config"] = config
    json_path = dump_json(payload, out_dir / f"{result.name}.json")
    logger.info("wrote %d rows to %s", len(result.rows), csv_path)
    return csv_path, json_path


__all__ = [
    "SURVIVOR_TOKEN",
    "dump_json",
    "load_json",
    "write_points",
    "read_points",
    "triangulation_payload",
    "write_triangulation",
    "read_triangulation",
    "levels_frame",
    "write_levels",
    "read_levels",
    "coloring_header",
    "write_coloring",
    "read_coloring",
    "write_experiment",
]
