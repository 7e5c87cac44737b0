"""
Run configuration and rendering options.

A :class:`RunConfig` holds every parameter a command reads. It is written
into each JSON summary so that ``--config summary.json`` replays the run.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import colorcet as cc

from .errors import ParameterError

THREADS_ENV = "VORONOI_THREADS"

COMMANDS = (
    "sample",
    "triangulate",
    "color-det6",
    "color-rand",
    "color-1d",
    "peel",
    "experiment",
    "render",
    "verify",
)

EXPERIMENTS = (
    "sealed",
    "long-edges",
    "restricted-core",
    "omega",
    "rare-squares",
    "site-process",
    "det6",
    "randomized",
    "one-dim",
    "sealed-independence",
    "equivariance",
    "ld-bound",
    "peel-rounds",
    "four-core",
    "radius",
    "areas",
)

SITE_PREDICATES = ("removal", "area")
ORDER_KEYS = ("area", "neighbor_distance")


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    half_side: float = 50.0
    center: Tuple[float, float] = (0.0, 0.0)
    pad: float = 20.0
    intensity: float = 1.0
    max_deg: int = 5
    num_symbols: int = 2
    component_cap: int = 100_000
    node_budget: int = 10_000_000
    order_key: str = "area"
    external_face_trick: bool = True
    experiment: Optional[str] = None
    r_grid: Tuple[float, ...] = ()
    alpha_grid: Tuple[float, ...] = ()
    ell_grid: Tuple[float, ...] = ()
    trials: Optional[int] = None
    seed_base: int = 0
    max_rounds: Optional[int] = None
    length: float = 1000.0
    lattice_size: int = 10
    area_interval: Tuple[float, float] = (0.0, 0.05)
    site_predicate: str = "removal"
    fraction: Optional[float] = None
    points: Optional[str] = None
    graph: Optional[str] = None
    coloring: Optional[str] = None
    out: str = "voronoi_out"
    png: bool = False

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        if self.experiment is not None and self.experiment not in EXPERIMENTS:
            raise ParameterError(f"unknown experiment {self.experiment!r}")
        if self.half_side <= 0 or self.pad < 0 or self.intensity <= 0:
            raise ParameterError("need half_side > 0, pad >= 0 and intensity > 0")
        if self.num_symbols < 2:
            raise ParameterError(f"num_symbols must be at least 2, got {self.num_symbols}")
        if self.trials is not None and self.trials < 1:
            raise ParameterError(f"trials must be positive, got {self.trials}")
        if self.fraction is not None and not 0.0 <= self.fraction <= 1.0:
            raise ParameterError(f"fraction must lie in [0, 1], got {self.fraction}")
        if self.lattice_size < 1:
            raise ParameterError(f"lattice_size must be positive, got {self.lattice_size}")
        lo, hi = self.area_interval
        if not 0.0 <= lo < hi:
            raise ParameterError(f"area_interval must satisfy 0 <= lo < hi, got {self.area_interval}")
        if self.site_predicate not in SITE_PREDICATES:
            raise ParameterError(f"unknown site predicate {self.site_predicate!r}")
        if self.order_key not in ORDER_KEYS:
            raise ParameterError(f"unknown order key {self.order_key!r}")

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        names = {f.name: f for f in dataclasses.fields(cls)}
        unknown = set(data) - set(names)
        if unknown:
            raise ParameterError(f"unknown RunConfig keys {sorted(unknown)}")
        kwargs = {}
        for key, value in data.items():
            if isinstance(value, list):
                value = tuple(value)
            kwargs[key] = value
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        # Summaries nest the config under "config".
        if "config" in data and isinstance(data["config"], dict):
            data = data["config"]
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: Path | str) -> "RunConfig":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def replace(self, **changes: Any) -> "RunConfig":
        return dataclasses.replace(self, **changes)


def worker_count(default: Optional[int] = None) -> int:
    """Worker cap from ``VORONOI_THREADS``, else ``default``, else the CPU count."""

    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ParameterError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
        if value < 1:
            raise ParameterError(f"{THREADS_ENV} must be at least 1, got {value}")
        return value
    return default or os.cpu_count() or 1


def default_palette(size: int = 12) -> Tuple[str, ...]:
    return tuple(cc.glasbey[:size])


@dataclass(frozen=True)
class RenderSpec:
    """How colored cells are drawn.

    ``viewport`` is ``(x0, y0, x1, y1)`` in data units; ``None`` fits the cells.
    """

    palette: Tuple[str, ...] = field(default_factory=default_palette)
    stroke_width: float = 0.05
    stroke_color: str = "#202020"
    viewport: Optional[Tuple[float, float, float, float]] = None
    pixels_per_unit: float = 8.0
    draw_delaunay: bool = False
    draw_levels: bool = False

    def __post_init__(self) -> None:
        if len(self.palette) < 10 or len(set(self.palette)) != len(self.palette):
            raise ParameterError("palette needs at least 10 distinct colors")
        if self.stroke_width < 0 or self.pixels_per_unit <= 0:
            raise ParameterError("stroke width must be >= 0 and pixels_per_unit > 0")


__all__ = [
    "THREADS_ENV",
    "COMMANDS",
    "EXPERIMENTS",
    "SITE_PREDICATES",
    "ORDER_KEYS",
    "RunConfig",
    "RenderSpec",
    "worker_count",
    "default_palette",
]
