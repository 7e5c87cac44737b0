"""
Interactive plotly figures for experiment results, written as standalone HTML.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
import plotly.graph_objects as go

from .config import default_palette
from .experiments import OMEGA_EVENTS, ExperimentResult, survival_curve

logger = logging.getLogger(__name__)


def _layout(fig: go.Figure, title: str, xaxis: str, yaxis: str, log_y: bool = False) -> go.Figure:
    fig.update_layout(
        title=dict(text=f"<b>{title}</b>", font=dict(size=20), x=0.5, xanchor="center"),
        xaxis=dict(title=f"<b>{xaxis}</b>", showgrid=True, gridcolor="rgba(0,0,0,0.1)"),
        yaxis=dict(
            title=f"<b>{yaxis}</b>",
            type="log" if log_y else "linear",
            showgrid=True,
            gridcolor="rgba(0,0,0,0.1)",
        ),
        height=550,
        width=900,
        template="plotly_white",
        legend=dict(orientation="h", yanchor="bottom", y=-0.3, xanchor="center", x=0.5),
        font=dict(family="Arial, sans-serif", size=14),
        margin=dict(t=80, b=110),
    )
    return fig


def _error_trace(groups: List[Dict], x_key: str, name: str, color: str, stats: Optional[str] = None) -> go.Scatter:
    rows = [g[stats] if stats else g for g in groups]
    est = np.array([r["estimate"] for r in rows])
    return go.Scatter(
        x=[g[x_key] for g in groups],
        y=est,
        mode="lines+markers",
        name=name,
        line=dict(color=color, width=3),
        error_y=dict(
            type="data",
            symmetric=False,
            array=np.array([r["ci_hi"] for r in rows]) - est,
            arrayminus=est - np.array([r["ci_lo"] for r in rows]),
        ),
        hovertemplate=f"{x_key} = %{{x}}<br>estimate = %{{y:.4f}}<extra></extra>",
    )


def probability_figure(result: ExperimentResult) -> go.Figure:
    """Estimated probabilities with their confidence intervals across the experiment grid."""

    palette = default_palette(12)
    groups = result.summary["groups"]
    fig = go.Figure()
    if result.name == "omega":
        for i, event in enumerate(OMEGA_EVENTS):
            fig.add_trace(_error_trace(groups, "R", event, palette[i], stats=event))
        return _layout(fig, "Omega events", "R", "frequency")
    if result.name == "sealed":
        for i, alpha in enumerate(sorted({g["alpha"] for g in groups})):
            sub = [g for g in groups if g["alpha"] == alpha]
            fig.add_trace(_error_trace(sub, "R", f"alpha = {alpha}", palette[i % len(palette)]))
            fig.add_trace(go.Scatter(
                x=[g["R"] for g in sub], y=[g["analytic_bound"] for g in sub], mode="lines",
                name=f"bound, alpha = {alpha}", line=dict(color=palette[i % len(palette)], dash="dash"),
            ))
        return _layout(fig, "Squares that are not sealed", "R", "probability", log_y=True)
    x_key = {"long-edges": "ell", "rare-squares": "rho"}.get(result.name, "R")
    fig.add_trace(_error_trace(groups, x_key, result.name, palette[0]))
    if any("analytic_bound" in g for g in groups):
        fig.add_trace(go.Scatter(
            x=[g[x_key] for g in groups], y=[g["analytic_bound"] for g in groups], mode="lines",
            name="bound", line=dict(color=palette[1], dash="dash"),
        ))
    return _layout(fig, result.name, x_key, "probability")


def radius_figure(result: ExperimentResult) -> go.Figure:
    """Empirical log-survival of the finitary radius, one curve per scheme."""

    palette = default_palette(12)
    fig = go.Figure()
    for i, (scheme, group) in enumerate(result.rows.groupby("scheme")):
        x, surv = survival_curve(group["radius"].to_numpy())
        fig.add_trace(go.Scatter(
            x=x, y=surv, mode="lines", name=str(scheme), line=dict(color=palette[i], width=3),
            hovertemplate="radius = %{x:.2f}<br>P(X >= x) = %{y:.4g}<extra></extra>",
        ))
    return _layout(fig, "Finitary radius", "radius", "P(radius >= x)", log_y=True)


def area_figure(result: ExperimentResult) -> go.Figure:
    edges = np.asarray(result.summary["bin_edges"])
    counts = np.asarray(result.summary["histogram"])
    fig = go.Figure(go.Bar(
        x=(edges[1:] + edges[:-1]) / 2.0, y=counts, width=np.diff(edges),
        marker_color=default_palette(1)[0], name="clean cells",
    ))
    fig.add_annotation(
        x=0.98, y=0.95, xref="paper", yref="paper", showarrow=False,
        text=f"min gap = {result.summary['min_gap']:.3g}<br>empty interior bins = {result.summary['empty_interior_bins']}",
        bgcolor="rgba(255,255,255,0.8)",
    )
    return _layout(fig, "Cell areas", "area", "cells")


def share_figure(result: ExperimentResult) -> go.Figure:
    """Box plots of every ``*_share`` column (largest component over vertex count)."""

    palette = default_palette(12)
    fig = go.Figure()
    for i, col in enumerate(c for c in result.rows.columns if c.endswith("_share")):
        fig.add_trace(go.Box(y=result.rows[col], name=col, marker_color=palette[i % len(palette)]))
    return _layout(fig, result.name, "statistic", "largest component / n")


FIGURES: Dict[str, Callable[[ExperimentResult], go.Figure]] = {
    "sealed": probability_figure,
    "long-edges": probability_figure,
    "restricted-core": probability_figure,
    "omega": probability_figure,
    "rare-squares": probability_figure,
    "radius": radius_figure,
    "areas": area_figure,
    "peel-rounds": share_figure,
    "four-core": share_figure,
}


def write_report(result: ExperimentResult, out_dir: Path | str) -> Optional[Path]:
    """``<name>.html`` for experiments that have a figure, else ``None``."""

    make = FIGURES.get(result.name)
    if make is None:
        return None
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{result.name}.html"
    make(result).write_html(str(path))
    logger.info("report written to %s", path)
    return path


__all__ = ["probability_figure", "radius_figure", "area_figure", "share_figure", "write_report", "FIGURES"]
