import numpy as np
import pandas as pd

from scripts.poisson_voronoi.experiments import OMEGA_EVENTS, ExperimentResult
from scripts.poisson_voronoi.reports import probability_figure, radius_figure, share_figure, write_report


def interval(estimate):
    return {"estimate": estimate, "ci_lo": max(estimate - 0.1, 0.0), "ci_hi": min(estimate + 0.1, 1.0)}


def test_omega_figure_has_one_trace_per_event():
    groups = [{"R": R, **{e: interval(0.5 / R) for e in OMEGA_EVENTS}} for R in (2.0, 4.0)]
    fig = probability_figure(ExperimentResult("omega", {}, pd.DataFrame(), {"groups": groups}))
    assert [t.name for t in fig.data] == list(OMEGA_EVENTS)


def test_sealed_figure_pairs_estimates_with_bounds():
    groups = [
        {"R": R, "alpha": a, "analytic_bound": 0.2, **interval(0.1)}
        for a in (2.0, 3.0)
        for R in (5.0, 10.0)
    ]
    fig = probability_figure(ExperimentResult("sealed", {}, pd.DataFrame(), {"groups": groups}))
    assert len(fig.data) == 4
    assert fig.layout.yaxis.type == "log"


def test_radius_and_share_figures():
    rows = pd.DataFrame({"seed": [0, 0, 1], "scheme": ["det", "rand", "det"], "radius": [1.0, 2.0, 3.0]})
    assert len(radius_figure(ExperimentResult("radius", {}, rows)).data) == 2
    shares = pd.DataFrame({"seed": [0, 1], "g1_share": [0.4, 0.5], "g2_share": [0.1, 0.2], "n_points": [10, 12]})
    assert len(share_figure(ExperimentResult("peel-rounds", {}, shares)).data) == 2


def test_write_report(tmp_path):
    rows = pd.DataFrame({"seed": [0], "core4_share": [0.9], "core5_share": [np.float64(0.1)]})
    path = write_report(ExperimentResult("four-core", {}, rows), tmp_path)
    assert path.name == "four-core.html"
    assert path.stat().st_size > 0
    assert write_report(ExperimentResult("one-dim", {}, rows), tmp_path) is None
