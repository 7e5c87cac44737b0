"""
Drawing colored Voronoi cells.

``render_svg`` writes the SVG text itself, with fixed number formatting and
element order, so the same cells and coloring always give the same bytes.
``render_png`` is a matplotlib preview of the same picture.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection, PolyCollection

from .chromatics import Coloring
from .config import RenderSpec
from .errors import ContractError, ParameterError
from .geometry import Triangulation, VoronoiCell, Window
from .peeling import SURVIVOR, LevelAssignment

logger = logging.getLogger(__name__)

Viewport = Tuple[float, float, float, float]


def _check_palette(coloring: Coloring, spec: RenderSpec) -> None:
    top = max(coloring.colors, default=-1)
    if top + 1 > len(spec.palette):
        raise ParameterError(f"palette has {len(spec.palette)} colors but the coloring uses color {top}")


def _visible_cells(cells: Sequence[VoronoiCell], coloring: Coloring, viewport: Optional[Viewport]) -> List[VoronoiCell]:
    out = []
    for cell in cells:
        if cell.site_index >= len(coloring):
            raise ContractError(f"cell {cell.site_index} has no color")
        if viewport is not None and not _overlaps(cell, viewport):
            continue
        out.append(cell)
    return out


def _overlaps(cell: VoronoiCell, viewport: Viewport) -> bool:
    x0, y0, x1, y1 = viewport
    xs = [p.x for p in cell.polygon]
    ys = [p.y for p in cell.polygon]
    return min(xs) <= x1 and max(xs) >= x0 and min(ys) <= y1 and max(ys) >= y0


def fit_viewport(cells: Sequence[VoronoiCell]) -> Viewport:
    xs = [p.x for c in cells for p in c.polygon]
    ys = [p.y for c in cells for p in c.polygon]
    if not xs:
        raise ContractError("nothing to render")
    return min(xs), min(ys), max(xs), max(ys)


def _fmt(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def svg_document(
    cells: Sequence[VoronoiCell],
    coloring: Coloring,
    spec: RenderSpec = RenderSpec(),
    tri: Optional[Triangulation] = None,
    levels: Optional[LevelAssignment] = None,
) -> str:
    """SVG text with one ``<polygon>`` per visible cell, filled by ``palette[color]``."""

    _check_palette(coloring, spec)
    viewport = spec.viewport or fit_viewport(cells)
    visible = _visible_cells(cells, coloring, spec.viewport)
    x0, y0, x1, y1 = viewport
    k = spec.pixels_per_unit
    width, height = (x1 - x0) * k, (y1 - y0) * k

    def sx(x: float) -> str:
        return _fmt((x - x0) * k)

    def sy(y: float) -> str:
        return _fmt((y1 - y) * k)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<g stroke="{spec.stroke_color}" stroke-width="{_fmt(spec.stroke_width * k)}" stroke-linejoin="round">',
    ]
    for cell in sorted(visible, key=lambda c: c.site_index):
        pts = " ".join(f"{sx(p.x)},{sy(p.y)}" for p in cell.polygon)
        fill = spec.palette[coloring.colors[cell.site_index]]
        lines.append(f'<polygon id="c{cell.site_index}" fill="{fill}" points="{pts}"/>')
    lines.append("</g>")

    if spec.draw_delaunay:
        if tri is None:
            raise ContractError("the Delaunay overlay needs the triangulation")
        shown = {c.site_index for c in visible}
        lines.append(f'<g stroke="#000000" stroke-opacity="0.4" stroke-width="{_fmt(spec.stroke_width * k / 2)}">')
        for u, v in tri.edges():
            if u in shown and v in shown:
                a, b = tri.points[u], tri.points[v]
                lines.append(f'<line x1="{sx(a.x)}" y1="{sy(a.y)}" x2="{sx(b.x)}" y2="{sy(b.y)}"/>')
        lines.append("</g>")

    if spec.draw_levels:
        if tri is None or levels is None:
            raise ContractError("level labels need the triangulation and the level assignment")
        size = _fmt(0.4 * k)
        lines.append(f'<g font-family="monospace" font-size="{size}" text-anchor="middle">')
        for cell in sorted(visible, key=lambda c: c.site_index):
            lvl = levels.level(cell.site_index)
            p = tri.points[cell.site_index]
            label = "S" if lvl == SURVIVOR else str(lvl)
            lines.append(f'<text x="{sx(p.x)}" y="{sy(p.y)}">{label}</text>')
        lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(
    cells: Sequence[VoronoiCell],
    coloring: Coloring,
    spec: RenderSpec,
    out_path: Path | str,
    tri: Optional[Triangulation] = None,
    levels: Optional[LevelAssignment] = None,
) -> Path:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    # Explicit newline keeps the bytes identical across platforms.
    with out_path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg_document(cells, coloring, spec, tri, levels))
    logger.info("rendered %d cells to %s", len(cells), out_path)
    return out_path


def render_png(
    cells: Sequence[VoronoiCell],
    coloring: Coloring,
    spec: RenderSpec,
    out_path: Path | str,
    tri: Optional[Triangulation] = None,
    dpi: int = 150,
) -> Path:
    """Matplotlib preview of :func:`render_svg`'s picture."""

    _check_palette(coloring, spec)
    viewport = spec.viewport or fit_viewport(cells)
    visible = _visible_cells(cells, coloring, spec.viewport)
    x0, y0, x1, y1 = viewport

    fig, ax = plt.subplots(figsize=(8, 8 * (y1 - y0) / max(x1 - x0, 1e-12)))
    polys = PolyCollection(
        [[(p.x, p.y) for p in c.polygon] for c in visible],
        facecolors=[spec.palette[coloring.colors[c.site_index]] for c in visible],
        edgecolors=spec.stroke_color,
        linewidths=max(spec.stroke_width * 10, 0.2),
    )
    ax.add_collection(polys)
    if spec.draw_delaunay and tri is not None:
        shown = {c.site_index for c in visible}
        segs = [
            [tuple(tri.vertices[u]), tuple(tri.vertices[v])]
            for u, v in tri.edges()
            if u in shown and v in shown
        ]
        ax.add_collection(LineCollection(segs, colors="black", linewidths=0.3, alpha=0.4))
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    ax.set_axis_off()
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    return out_path


def analysis_viewport(window: Window) -> Viewport:
    return window.bounds


__all__ = ["svg_document", "render_svg", "render_png", "fit_viewport", "analysis_viewport"]
