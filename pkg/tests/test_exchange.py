import json

import numpy as np
import pandas as pd
import pytest

from scripts.poisson_voronoi.chromatics import Coloring
from scripts.poisson_voronoi.errors import ContractError, ParameterError
from scripts.poisson_voronoi.exchange import (
    SURVIVOR_TOKEN,
    read_coloring,
    read_levels,
    read_points,
    read_triangulation,
    write_coloring,
    write_experiment,
    write_levels,
    write_points,
    write_triangulation,
)
from scripts.poisson_voronoi.experiments import ExperimentResult
from scripts.poisson_voronoi.peeling import SURVIVOR, LevelAssignment, PeelConfig, peel_to_core


def test_points_are_exact(tmp_path, small_sample):
    path, side = write_points(small_sample, tmp_path / "points.txt")
    assert side.name == "points.json"
    again = read_points(path)
    assert np.array_equal(again.coords, small_sample.coords)
    assert again.sample_window == small_sample.sample_window
    assert again.pad_width == small_sample.pad_width
    assert again.seed == small_sample.seed


def test_points_without_sidecar(tmp_path):
    path = tmp_path / "bare.txt"
    path.write_text("0.0 0.0\n4.0 2.0\n0.1 1.9\n")
    pts = read_points(path)
    assert len(pts) == 3
    assert pts.sample_window.center == (2.0, 1.0)


def test_triangulation_round_trip(tmp_path, small_tri):
    path = write_triangulation(small_tri, tmp_path / "tri.json")
    again = read_triangulation(path)
    assert np.array_equal(again.vertices, small_tri.vertices)
    assert again.triangles == small_tri.triangles
    assert again.neighbor_lists == small_tri.neighbor_lists
    assert again.window == small_tri.window


def test_triangulation_file_must_have_triangles(tmp_path):
    path = tmp_path / "points.json"
    path.write_text(json.dumps({"vertices": [[0, 0]]}))
    with pytest.raises(ContractError):
        read_triangulation(path)


def test_levels_use_survivor_token(tmp_path, small_tri):
    levels = peel_to_core(small_tri, PeelConfig(max_deg=5, max_rounds=1))
    assert SURVIVOR in levels.levels
    path = write_levels(levels, tmp_path / "levels.csv")
    assert SURVIVOR_TOKEN in path.read_text()
    assert read_levels(path) == levels.levels


def test_levels_file_layout(tmp_path):
    levels = LevelAssignment((0, SURVIVOR, 1), 2, PeelConfig())
    path = write_levels(levels, tmp_path / "levels.csv")
    assert path.read_text().splitlines() == ["vertex_id,level", "0,0", "1,SURVIVOR", "2,1"]


def test_coloring_round_trip(tmp_path, k3_tri):
    coloring = Coloring((2, 1, 0), "DET6", 6, seed=4).checked(k3_tri.neighbor_lists)
    path, side = write_coloring(coloring, tmp_path / "coloring.csv", [True, False, False], {"n_clean": 2})
    assert path.read_text().splitlines()[0] == "vertex_id,color,contaminated"
    header = json.loads(side.read_text())
    assert header["scheme"] == "DET6"
    assert header["validity"]["ok"]
    assert header["n_clean"] == 2
    again, flags = read_coloring(path)
    assert again.colors == coloring.colors
    assert again.scheme == "DET6"
    assert again.seed == 4
    assert again.validity == coloring.validity
    assert flags == (True, False, False)


def test_coloring_without_header(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("vertex_id,color\n1,3\n0,0\n")
    coloring, flags = read_coloring(path)
    assert coloring.colors == (0, 3)
    assert coloring.palette_size == 4
    assert coloring.scheme == "UNKNOWN"
    assert flags == (False, False)


def test_coloring_errors(tmp_path):
    with pytest.raises(ParameterError):
        write_coloring(Coloring((0, 1), "DET6", 6), tmp_path / "c.csv", [False])
    path = tmp_path / "gap.csv"
    path.write_text("vertex_id,color\n0,0\n2,1\n")
    with pytest.raises(ContractError):
        read_coloring(path)


def test_write_experiment(tmp_path):
    result = ExperimentResult(
        "demo",
        {"trials": 2},
        pd.DataFrame({"seed": [0, 1], "hits": [np.int64(1), np.int64(0)]}),
        {"passed": True, "rate": np.float64(0.5)},
    )
    csv_path, json_path = write_experiment(result, tmp_path / "out", config={"command": "experiment"})
    assert pd.read_csv(csv_path)["hits"].tolist() == [1, 0]
    payload = json.loads(json_path.read_text())
    assert payload["experiment"] == "demo"
    assert payload["rate"] == 0.5
    assert payload["config"] == {"command": "experiment"}
