import xml.etree.ElementTree as ET

import pytest

from scripts.poisson_voronoi.chromatics import Coloring
from scripts.poisson_voronoi.config import RenderSpec, default_palette
from scripts.poisson_voronoi.errors import ContractError, ParameterError
from scripts.poisson_voronoi.experiments import deterministic_run
from scripts.poisson_voronoi.geometry import PointSet, Window, delaunay, sample_poisson, voronoi_cells
from scripts.poisson_voronoi.peeling import peel_to_core
from scripts.poisson_voronoi.render import render_png, render_svg, svg_document

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def three_cells():
    pts = PointSet.from_points([(-1.0, 0.0), (1.0, 0.0), (0.0, 2.0)], Window.square(5.0))
    tri = delaunay(pts)
    return tri, voronoi_cells(tri), Coloring((0, 1, 2), "DET6", 6)


def test_one_polygon_per_cell(three_cells):
    _, cells, coloring = three_cells
    root = ET.fromstring(svg_document(cells, coloring).encode("utf-8"))
    assert root.tag == f"{SVG_NS}svg"
    polygons = root.findall(f".//{SVG_NS}polygon")
    assert [p.get("id") for p in polygons] == ["c0", "c1", "c2"]
    palette = default_palette()
    assert [p.get("fill") for p in polygons] == [palette[0], palette[1], palette[2]]


def test_svg_bytes_are_reproducible(tmp_path, three_cells):
    _, cells, coloring = three_cells
    a = render_svg(cells, coloring, RenderSpec(), tmp_path / "a.svg")
    b = render_svg(list(reversed(cells)), coloring, RenderSpec(), tmp_path / "b.svg")
    assert a.read_bytes() == b.read_bytes()


def test_overlays(three_cells):
    tri, cells, coloring = three_cells
    spec = RenderSpec(draw_delaunay=True, draw_levels=True)
    text = svg_document(cells, coloring, spec, tri, peel_to_core(tri))
    assert text.count("<line ") == 3
    assert text.count("<text ") == 3
    assert ">0</text>" in text
    with pytest.raises(ContractError):
        svg_document(cells, coloring, RenderSpec(draw_delaunay=True))
    with pytest.raises(ContractError):
        svg_document(cells, coloring, RenderSpec(draw_levels=True), tri)


def test_viewport_drops_far_cells(three_cells):
    _, cells, coloring = three_cells
    spec = RenderSpec(viewport=(-5.0, -5.0, -4.0, -4.0))
    assert svg_document(cells, coloring, spec).count("<polygon") < 3


def test_palette_and_color_errors(three_cells):
    _, cells, _ = three_cells
    with pytest.raises(ParameterError):
        svg_document(cells, Coloring((0, 1, 12), "X", 13))
    with pytest.raises(ContractError):
        svg_document(cells, Coloring((0, 1), "X", 2))


def test_adjacent_cells_get_different_fills():
    run = deterministic_run(sample_poisson(Window.square(6.0), pad_width=2.0, seed=13))
    root = ET.fromstring(svg_document(run.cells, run.coloring).encode("utf-8"))
    fill = {int(p.get("id")[1:]): p.get("fill") for p in root.iter(f"{SVG_NS}polygon")}
    assert len(fill) == run.tri.n
    for u, v in run.tri.edges():
        assert fill[u] != fill[v]


def test_png_preview(tmp_path, three_cells):
    tri, cells, coloring = three_cells
    path = render_png(cells, coloring, RenderSpec(draw_delaunay=True), tmp_path / "cells.png", tri)
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
