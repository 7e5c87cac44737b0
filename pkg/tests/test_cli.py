import json

import pandas as pd
import pytest

from scripts.poisson_voronoi import experiments
from scripts.poisson_voronoi.__main__ import EXIT_FAILED, EXIT_OK, EXIT_USAGE, cli_dispatch

SMALL = ["--seed", "7", "--half-side", "5", "--pad", "2"]


def summary(out):
    return json.loads((out / "summary.json").read_text())


@pytest.mark.parametrize(
    "argv,code",
    [
        ([], EXIT_USAGE),
        (["color-det6", "--bogus"], EXIT_USAGE),
        (["experiment", "nonsense"], EXIT_USAGE),
        (["--help"], EXIT_OK),
    ],
)
def test_usage(argv, code):
    assert cli_dispatch(argv) == code


def test_color_det6_writes_and_replays(tmp_path):
    out = tmp_path / "det"
    assert cli_dispatch(["-q", "color-det6", *SMALL, "--out", str(out)]) == EXIT_OK
    for name in ("coloring.csv", "coloring.json", "triangulation.json", "coloring.svg", "summary.json"):
        assert (out / name).exists(), name
    first = summary(out)
    assert first["command"] == "color-det6"
    assert first["config"]["seed"] == 7
    assert first["results"]["proper"]
    frame = pd.read_csv(out / "coloring.csv")
    assert list(frame.columns) == ["vertex_id", "color", "contaminated"]
    assert frame["color"].max() < 6

    again = tmp_path / "again"
    assert cli_dispatch(["-q", "--config", str(out / "summary.json"), "color-det6", "--out", str(again)]) == EXIT_OK
    assert (again / "coloring.csv").read_bytes() == (out / "coloring.csv").read_bytes()
    assert (again / "coloring.svg").read_bytes() == (out / "coloring.svg").read_bytes()


def test_verify(tmp_path):
    out = tmp_path / "det"
    assert cli_dispatch(["-q", "color-det6", *SMALL, "--out", str(out)]) == EXIT_OK
    graph, coloring = str(out / "triangulation.json"), str(out / "coloring.csv")
    assert cli_dispatch(["-q", "verify", "--coloring", coloring, "--graph", graph, "--out", str(out / "v")]) == EXIT_OK
    assert summary(out / "v")["results"]["violations"] == []

    frame = pd.read_csv(coloring)
    frame["color"] = 0
    bad = tmp_path / "bad.csv"
    frame.to_csv(bad, index=False)
    code = cli_dispatch(["-q", "verify", "--coloring", str(bad), "--graph", graph, "--out", str(tmp_path / "w")])
    assert code == EXIT_FAILED
    assert summary(tmp_path / "w")["results"]["violations"]


def test_verify_needs_both_files(tmp_path):
    assert cli_dispatch(["-q", "verify", "--out", str(tmp_path)]) == EXIT_FAILED


def test_bad_parameters_fail(tmp_path):
    assert cli_dispatch(["-q", "sample", "--intensity", "-1", "--out", str(tmp_path)]) == EXIT_FAILED
    assert not (tmp_path / "summary.json").exists()


def test_sample_and_triangulate(tmp_path):
    assert cli_dispatch(["-q", "sample", *SMALL, "--out", str(tmp_path / "s")]) == EXIT_OK
    points = tmp_path / "s" / "points.txt"
    assert points.exists() and (tmp_path / "s" / "points.json").exists()
    n = summary(tmp_path / "s")["results"]["points"]
    assert len(points.read_text().splitlines()) == n

    out = tmp_path / "t"
    assert cli_dispatch(["-q", "triangulate", "--points", str(points), "--out", str(out)]) == EXIT_OK
    results = summary(out)["results"]
    assert results["points"] == n
    assert results["triangles"] == 2 * n - 2 - results["hull"]


def test_peel(tmp_path):
    assert cli_dispatch(["-q", "peel", *SMALL, "--max-rounds", "1", "--out", str(tmp_path)]) == EXIT_OK
    levels = pd.read_csv(tmp_path / "levels.csv", dtype={"level": str})
    assert set(levels["level"]) <= {"0", "SURVIVOR"}
    assert summary(tmp_path)["results"]["rounds"] == 1


def test_color_rand(tmp_path):
    argv = ["-q", "color-rand", *SMALL, "--num-symbols", "2", "--out", str(tmp_path)]
    assert cli_dispatch(argv) == EXIT_OK
    results = summary(tmp_path)["results"]
    assert results["scheme"] == "RAND_KOZMA(2)"
    assert results["palette_size"] == 7
    assert pd.read_csv(tmp_path / "coloring.csv")["color"].max() < 7


def test_color_rand_without_shared_color(tmp_path):
    argv = ["-q", "color-rand", *SMALL, "--no-external-face-trick", "--out", str(tmp_path)]
    assert cli_dispatch(argv) == EXIT_OK
    assert summary(tmp_path)["results"]["palette_size"] == 8


def test_color_1d(tmp_path):
    assert cli_dispatch(["-q", "color-1d", "--length", "100", "--seed", "2", "--out", str(tmp_path)]) == EXIT_OK
    frame = pd.read_csv(tmp_path / "coloring_1d.csv")
    assert set(frame["color"]) <= {0, 1, 2}
    assert frame["contaminated"].tolist()[0] and frame["contaminated"].tolist()[-1]


def test_render_with_png(tmp_path):
    assert cli_dispatch(["-q", "render", *SMALL, "--png", "--out", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "coloring.svg").exists()
    assert (tmp_path / "coloring.png").exists()


def test_experiment_one_dim(tmp_path):
    argv = ["-q", "experiment", "one-dim", "--trials", "3", "--length", "100", "--out", str(tmp_path)]
    assert cli_dispatch(argv) == EXIT_OK
    rows = pd.read_csv(tmp_path / "one-dim.csv")
    assert rows["seed"].tolist() == [0, 1, 2]
    payload = json.loads((tmp_path / "one-dim.json").read_text())
    assert payload["config"]["experiment"] == "one-dim"
    assert summary(tmp_path)["results"]["passed"]


def test_experiment_omega(tmp_path):
    argv = ["-q", "experiment", "omega", "--R", "3,4", "--trials", "2", "--out", str(tmp_path)]
    assert cli_dispatch(argv) in (EXIT_OK, EXIT_FAILED)
    assert len(pd.read_csv(tmp_path / "omega.csv")) == 4
    assert (tmp_path / "omega.html").exists()


def instant_sealed_rows(fn, seeds, params, *args, **kwargs):
    return [{"seed": s, **params, "n_points": 0, "sealed": True, "net_sealed": True, "uncovered_segments": 0}
            for s in seeds]


def test_experiment_keeps_library_trial_count(tmp_path, monkeypatch):
    monkeypatch.setattr(experiments, "run_trials", instant_sealed_rows)
    argv = ["-q", "experiment", "sealed", "--R", "10", "--alpha", "3", "--out", str(tmp_path)]
    assert cli_dispatch(argv) == EXIT_OK
    payload = json.loads((tmp_path / "sealed.json").read_text())
    assert payload["params"]["trials"] == 10_000
    assert payload["config"]["trials"] is None


def test_experiment_trials_flag_overrides(tmp_path, monkeypatch):
    monkeypatch.setattr(experiments, "run_trials", instant_sealed_rows)
    argv = ["-q", "experiment", "sealed", "--R", "10", "--alpha", "3", "--trials", "250", "--out", str(tmp_path)]
    assert cli_dispatch(argv) == EXIT_OK
    assert json.loads((tmp_path / "sealed.json").read_text())["params"]["trials"] == 250
