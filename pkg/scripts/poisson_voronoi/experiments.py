"""
Monte-Carlo drivers.

Every trial is a module-level function of ``(seed, **params)`` returning a
flat dict that always carries the seed, so trials can be shipped to worker
processes and the aggregate never depends on scheduling. Experiment
functions fan trials out with :func:`run_trials`, collect the rows in a
``pandas.DataFrame`` and summarise them with binomial confidence intervals.

Usage example:

    from scripts.poisson_voronoi.experiments import sealed_probability_experiment

    result = sealed_probability_experiment([10.0], [4.0], trials=1000)
    print(result.summary["groups"][0]["estimate"], result.passed)

"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from .chromatics import (
    CellInterval1D,
    Coloring,
    OrderDag,
    build_order_dag,
    clean_vertices,
    color_1d_cells,
    color_deterministic,
    color_randomized,
    predecessor_set,
    sample_poisson_line,
    verify_proper,
    zero_zero_edges,
)
from .config import worker_count
from .errors import OversizedComponentError, ParameterError
from .geometry import (
    PointSet,
    Triangulation,
    VoronoiCell,
    Window,
    cell_areas,
    delaunay,
    make_rng,
    sample_poisson,
    voronoi_cells,
)
from .peeling import SURVIVOR, LevelAssignment, PeelConfig, largest_component, peel_step, peel_to_core
from .percolation import (
    area_site_process,
    area_statistics,
    classify_square,
    critical_marginal,
    find_long_edges,
    is_sealed,
    long_edge_bound,
    net_sealed,
    omega_report,
    removal_site_process,
    sealed_failure_bound,
    site_process_components,
    wilson_interval,
)
from .planar import check_ld_bound, map_stats, min_core_size_bound, random_connected_subset

logger = logging.getLogger(__name__)

Row = Dict[str, Any]
Trial = Callable[..., Row]

OMEGA_EVENTS = ("omega0", "omega1", "omega2", "omega3", "omega4")


@dataclass(frozen=True)
class ExperimentResult:
    """Rows of one experiment (one per trial, or per grid point and trial) and their summary."""

    name: str
    params: Dict[str, Any]
    rows: pd.DataFrame
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.summary.get("passed", True))


def seeds_for(trials: int, seed_base: int = 0) -> List[int]:
    if trials < 1:
        raise ParameterError(f"trials must be positive, got {trials}")
    return [seed_base + i for i in range(trials)]


def run_trials(
    trial: Trial,
    seeds: Iterable[int],
    params: Optional[Dict[str, Any]] = None,
    workers: Optional[int] = None,
    progress: bool = True,
    desc: str = "trials",
) -> List[Row]:
    """Evaluate ``trial(seed, **params)`` for every seed, sorted by seed.

    ``VORONOI_THREADS=1`` (or ``workers=1``) keeps everything in this
    process; otherwise trials run in a process pool.
    """

    seeds = list(seeds)
    job = partial(trial, **(params or {}))
    n_workers = worker_count(workers)
    if n_workers == 1 or len(seeds) < 2:
        rows = [job(s) for s in tqdm(seeds, desc=desc, disable=not progress)]
    else:
        chunk = max(1, len(seeds) // (4 * n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            rows = list(tqdm(pool.map(job, seeds, chunksize=chunk), total=len(seeds), desc=desc, disable=not progress))
    return sorted(rows, key=lambda r: r["seed"])


def _proportion(hits: int, trials: int, confidence: float) -> Dict[str, float]:
    lo, hi = wilson_interval(hits, trials, confidence)
    return {"hits": int(hits), "trials": int(trials), "estimate": hits / trials, "ci_lo": lo, "ci_hi": hi}


def _nonincreasing(groups: Sequence[Dict[str, Any]]) -> bool:
    """Successive estimates never rise beyond overlapping confidence intervals."""

    return all(b["ci_lo"] <= a["ci_hi"] for a, b in zip(groups, groups[1:]))


def mean_degree(tri: Triangulation, cells: Sequence[VoronoiCell]) -> float:
    """Mean Delaunay degree over uncontaminated vertices."""

    degrees = [tri.degree(c.site_index) for c in cells if not c.contaminated]
    return float(np.mean(degrees)) if degrees else math.nan


# sealed squares


def sealed_trial(seed: int, R: float, alpha: float, intensity: float = 1.0) -> Row:
    # Only points within alpha of the boundary of Q(0, R) can seal it.
    pts = sample_poisson(Window.square(R + alpha), pad_width=0.0, intensity=intensity, seed=seed)
    square = Window.square(R)
    check = is_sealed(pts, square, alpha)
    return {
        "seed": seed,
        "R": R,
        "alpha": alpha,
        "n_points": len(pts),
        "sealed": check.sealed,
        "net_sealed": net_sealed(pts, square, alpha),
        "uncovered_segments": len(check.uncovered_segments),
    }


def sealed_probability_experiment(
    R_grid: Sequence[float],
    alpha_grid: Sequence[float],
    trials: int = 10_000,
    seed_base: int = 0,
    intensity: float = 1.0,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Empirical probability that ``Q(0, R)`` is not ``alpha``-sealed, per grid point.

    The 99% Wilson interval is compared with ``ceil(8R/alpha) exp(-pi alpha^2 / 4)``;
    a grid point fails only when the interval lies entirely above the bound.
    """

    if trials < 100:
        raise ParameterError(f"the sealing experiment needs at least 100 trials, got {trials}")
    frames, groups = [], []
    for R in R_grid:
        for alpha in alpha_grid:
            rows = run_trials(
                sealed_trial, seeds_for(trials, seed_base), {"R": R, "alpha": alpha, "intensity": intensity},
                workers, progress, desc=f"sealed R={R} alpha={alpha}",
            )
            df = pd.DataFrame(rows)
            failures = int((~df["sealed"]).sum())
            # The net condition implies the exact one.
            net_violations = int((df["net_sealed"] & ~df["sealed"]).sum())
            group = {"R": R, "alpha": alpha, **_proportion(failures, trials, 0.99)}
            group["analytic_bound"] = sealed_failure_bound(R, alpha)
            group["net_failures"] = int((~df["net_sealed"]).sum())
            group["net_implies_exact"] = net_violations == 0
            group["bound_ok"] = group["ci_lo"] <= group["analytic_bound"]
            groups.append(group)
            frames.append(df)
            logger.info(
                "sealed R=%g alpha=%g: %d/%d unsealed, bound %.3g",
                R, alpha, failures, trials, group["analytic_bound"],
            )
    passed = all(g["bound_ok"] and g["net_implies_exact"] for g in groups)
    params = {"R_grid": list(R_grid), "alpha_grid": list(alpha_grid), "trials": trials, "seed_base": seed_base}
    return ExperimentResult("sealed", params, pd.concat(frames, ignore_index=True), {"groups": groups, "passed": passed})


# long edges


def long_edge_trial(seed: int, rho: float, ell: float, intensity: float = 1.0) -> Row:
    pts = sample_poisson(Window.square(rho), pad_width=2.0 * ell, intensity=intensity, seed=seed)
    tri = delaunay(pts)
    edges = find_long_edges(tri, Window.square(rho), ell)
    return {"seed": seed, "rho": rho, "ell": ell, "n_points": len(pts), "long_edges": len(edges), "has_long_edge": bool(edges)}


def long_edge_experiment(
    rho: float,
    ell_grid: Sequence[float],
    trials: int = 200,
    seed_base: int = 0,
    intensity: float = 1.0,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Frequency of an edge of length at least ``ell`` meeting ``Q(0, rho)`` vs its closed-form bound."""

    frames, groups = [], []
    for ell in ell_grid:
        rows = run_trials(
            long_edge_trial, seeds_for(trials, seed_base), {"rho": rho, "ell": ell, "intensity": intensity},
            workers, progress, desc=f"long edges ell={ell}",
        )
        df = pd.DataFrame(rows)
        group = {"rho": rho, "ell": ell, **_proportion(int(df["has_long_edge"].sum()), trials, 0.99)}
        bound = long_edge_bound(rho, ell)
        group.update(analytic_bound=bound, vacuous=bound > 1.0)
        group["bound_ok"] = group["vacuous"] or group["ci_lo"] <= bound
        if group["vacuous"]:
            logger.info("long-edge bound %.3g at rho=%g ell=%g is vacuous", bound, rho, ell)
        groups.append(group)
        frames.append(df)
    params = {"rho": rho, "ell_grid": list(ell_grid), "trials": trials, "seed_base": seed_base}
    return ExperimentResult(
        "long-edges", params, pd.concat(frames, ignore_index=True),
        {"groups": groups, "passed": all(g["bound_ok"] for g in groups)},
    )


# restricted cores and the Omega events


def triangular_lattice(half_side: float, spacing: float = 1.0) -> np.ndarray:
    """Triangular lattice points inside ``Q(0, half_side)``, one row through the origin."""

    dy = spacing * math.sqrt(3.0) / 2.0
    rows = int(half_side // dy)
    out = []
    for j in range(-rows, rows + 1):
        shift = 0.5 * spacing if j % 2 else 0.0
        cols = int((half_side + shift) // spacing) + 1
        for i in range(-cols, cols + 1):
            x = i * spacing - shift
            if abs(x) <= half_side:
                out.append((x, j * dy))
    return np.array(out, dtype=float)


def with_lattice_insert(points: PointSet, half_side: float) -> PointSet:
    """Replace the sample inside ``Q(0, half_side)`` by a unit triangular lattice."""

    outside = points.coords[~Window.square(half_side).contains_array(points.coords)]
    coords = np.concatenate([triangular_lattice(half_side), outside])
    return PointSet.from_points(coords, points.sample_window, points.pad_width, points.intensity, points.seed)


def restricted_core_trial(
    seed: int,
    R: float,
    pad: float = 20.0,
    max_rounds: Optional[int] = None,
    force_lattice: bool = False,
    intensity: float = 1.0,
) -> Row:
    pts = sample_poisson(Window.square(3.0 * R), pad_width=pad, intensity=intensity, seed=seed)
    if force_lattice:
        pts = with_lattice_insert(pts, 3.0 * R + 2.0)
    tri = delaunay(pts)
    region = Window.square(3.0 * R)
    levels = peel_to_core(tri, PeelConfig(max_deg=5, region=region, max_rounds=max_rounds))
    in_region = region.contains_array(tri.vertices)
    core = [v for v in np.nonzero(in_region)[0] if levels.level(int(v)) == SURVIVOR]
    core_xy = tri.vertices[core] if core else np.zeros((0, 2))
    omega0 = bool(len(core_xy) and Window.square(R).contains_array(core_xy).any())
    L = math.log(R)
    omega1 = bool(find_long_edges(tri, region, L))
    bound = min_core_size_bound(R, L)
    return {
        "seed": seed,
        "R": R,
        "n_points": len(pts),
        "rounds": levels.rounds_executed,
        "omega0": omega0,
        "omega1": omega1,
        "core_size": len(core),
        "core_bound": bound,
        "core_lemma_ok": not (omega0 and not omega1) or len(core) >= bound,
    }


def restricted_core_experiment(
    R_grid: Sequence[float],
    trials: int = 200,
    seed_base: int = 0,
    max_rounds: Optional[int] = None,
    pad: float = 20.0,
    force_lattice: bool = False,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Estimate ``P(Omega_0)`` for each ``R`` with 95% intervals and check they do not increase."""

    frames, groups = [], []
    for R in sorted(R_grid):
        rows = run_trials(
            restricted_core_trial, seeds_for(trials, seed_base),
            {"R": R, "pad": pad, "max_rounds": max_rounds, "force_lattice": force_lattice},
            workers, progress, desc=f"restricted core R={R}",
        )
        df = pd.DataFrame(rows)
        group = {"R": R, **_proportion(int(df["omega0"].sum()), trials, 0.95)}
        group["core_lemma_violations"] = int((~df["core_lemma_ok"]).sum())
        groups.append(group)
        frames.append(df)
        logger.info("restricted core R=%g: P(omega0) ~ %.4f", R, group["estimate"])
    monotone = _nonincreasing(groups)
    passed = (force_lattice or monotone) and all(g["core_lemma_violations"] == 0 for g in groups)
    params = {"R_grid": sorted(R_grid), "trials": trials, "seed_base": seed_base, "max_rounds": max_rounds,
              "force_lattice": force_lattice}
    return ExperimentResult(
        "restricted-core", params, pd.concat(frames, ignore_index=True),
        {"groups": groups, "nonincreasing": monotone, "passed": passed},
    )


def omega_trial(seed: int, R: float, pad: float = 2.0, intensity: float = 1.0) -> Row:
    pts = sample_poisson(Window.square(3.0 * R + math.log(R)), pad_width=pad, intensity=intensity, seed=seed)
    report = omega_report(delaunay(pts), R, intensity)
    return {"seed": seed, "n_points": len(pts), **report.as_row()}


def omega_experiment(
    R_grid: Sequence[float],
    trials: int = 200,
    seed_base: int = 0,
    pad: float = 2.0,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Frequencies of the five Omega events per ``R``, with the lemma cross-checks."""

    frames, groups = [], []
    for R in sorted(R_grid):
        rows = run_trials(omega_trial, seeds_for(trials, seed_base), {"R": R, "pad": pad}, workers, progress,
                          desc=f"omega R={R}")
        df = pd.DataFrame(rows)
        group: Dict[str, Any] = {"R": R, "trials": trials}
        for event in OMEGA_EVENTS:
            group[event] = _proportion(int(df[event].sum()), trials, 0.95)
        group["boundary_lemma_violations"] = int((~df["boundary_lemma_ok"]).sum())
        group["core_lemma_violations"] = int((~df["core_lemma_ok"]).sum())
        groups.append(group)
        frames.append(df)
    trends = {event: _nonincreasing([g[event] for g in groups]) for event in OMEGA_EVENTS}
    passed = all(trends.values()) and all(
        g["boundary_lemma_violations"] == 0 and g["core_lemma_violations"] == 0 for g in groups
    )
    params = {"R_grid": sorted(R_grid), "trials": trials, "seed_base": seed_base, "pad": pad}
    return ExperimentResult(
        "omega", params, pd.concat(frames, ignore_index=True),
        {"groups": groups, "nonincreasing": trends, "passed": passed},
    )


def rare_square_trial(seed: int, rho: float, pad: float = 10.0, intensity: float = 1.0) -> Row:
    pts = sample_poisson(Window.square(rho), pad_width=pad, intensity=intensity, seed=seed)
    cls = classify_square(delaunay(pts), Window.square(rho))
    return {"seed": seed, "rho": rho, "rare": cls.value == "RARE"}


def rare_square_experiment(
    rho_grid: Sequence[float],
    trials: int = 200,
    seed_base: int = 0,
    pad: float = 10.0,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    frames, groups = [], []
    for rho in sorted(rho_grid):
        rows = run_trials(rare_square_trial, seeds_for(trials, seed_base), {"rho": rho, "pad": pad}, workers,
                          progress, desc=f"rare squares rho={rho}")
        df = pd.DataFrame(rows)
        groups.append({"rho": rho, **_proportion(int(df["rare"].sum()), trials, 0.95)})
        frames.append(df)
    params = {"rho_grid": sorted(rho_grid), "trials": trials, "seed_base": seed_base}
    return ExperimentResult(
        "rare-squares", params, pd.concat(frames, ignore_index=True),
        {"groups": groups, "nonincreasing": _nonincreasing(groups), "passed": True},
    )


# dependent site processes


def site_process_trial(
    seed: int,
    R: float,
    lattice_size: int = 10,
    rounds: int = 2,
    kind: str = "removal",
    area_interval: Tuple[float, float] = (0.0, 0.05),
    pad: float = 2.0,
) -> Row:
    shape = (lattice_size, lattice_size)
    if kind == "removal":
        spacing, read_half = R, 5.0 * R
    elif kind == "area":
        spacing, read_half = 2.0 * R, 1.5 * R
    else:
        raise ParameterError(f"unknown site process {kind!r}")
    half = spacing * (lattice_size - 1) / 2.0
    origin = (-half, -half)
    pts = sample_poisson(Window.square(half + read_half), pad_width=pad, seed=seed)
    tri = delaunay(pts)
    if kind == "removal":
        process = removal_site_process(tri, R, shape, rounds, origin)
    else:
        process = area_site_process(tri, voronoi_cells(tri), R, area_interval, shape, origin)
    sizes = site_process_components(process)
    n_sites = lattice_size * lattice_size
    return {
        "seed": seed,
        "R": R,
        "kind": kind,
        "sites": n_sites,
        "open_fraction": process.open_fraction(),
        "clusters": len(sizes),
        "largest_cluster": sizes[0] if sizes else 0,
        "largest_fraction": (sizes[0] if sizes else 0) / n_sites,
        "dependency_range": process.dependency_range,
        "critical_marginal": critical_marginal(process.dependency_range),
    }


def site_process_experiment(
    R: float,
    lattice_size: int = 10,
    rounds: int = 2,
    trials: int = 20,
    seed_base: int = 0,
    kind: str = "removal",
    area_interval: Tuple[float, float] = (0.0, 0.05),
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Open-cluster statistics of the removal or area site process (report only)."""

    params = {"R": R, "lattice_size": lattice_size, "rounds": rounds, "kind": kind,
              "area_interval": list(area_interval)}
    rows = run_trials(site_process_trial, seeds_for(trials, seed_base),
                      {**params, "area_interval": tuple(area_interval)}, workers, progress, desc=f"{kind} sites")
    df = pd.DataFrame(rows)
    summary = {
        "mean_open_fraction": float(df["open_fraction"].mean()),
        "mean_largest_fraction": float(df["largest_fraction"].mean()),
        "max_largest_fraction": float(df["largest_fraction"].max()),
        "subcritical_report": bool(df["largest_fraction"].max() < 0.05),
        "passed": True,
    }
    return ExperimentResult("site-process", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


# coloring pipelines


@dataclass(frozen=True)
class DeterministicRun:
    """Everything the deterministic scheme computes on one point set."""

    points: PointSet
    tri: Triangulation
    cells: List[VoronoiCell]
    levels: LevelAssignment
    dag: OrderDag
    coloring: Coloring
    contaminated: Tuple[bool, ...]
    clean: Set[int]


def deterministic_run(points: PointSet, max_deg: int = 5, order_key: str = "area") -> DeterministicRun:
    tri = delaunay(points)
    cells = voronoi_cells(tri, points.padded_window)
    levels = peel_to_core(tri, PeelConfig(max_deg=max_deg))
    dag = build_order_dag(tri, levels, cell_areas(cells), order_key)
    contaminated = tuple(c.contaminated for c in cells)
    uncontaminated = [v for v, bad in enumerate(contaminated) if not bad]
    coloring = color_deterministic(dag).checked(tri.neighbor_lists, uncontaminated)
    return DeterministicRun(points, tri, cells, levels, dag, coloring, contaminated, clean_vertices(dag, contaminated))


def det6_trial(seed: int, half_side: float = 50.0, pad: float = 20.0, max_deg: int = 5, order_key: str = "area") -> Row:
    run = deterministic_run(sample_poisson(Window.square(half_side), pad, seed=seed), max_deg, order_key)
    validity = run.coloring.validity
    return {
        "seed": seed,
        "n_points": run.tri.n,
        "rounds": run.levels.rounds_executed,
        "all_leveled": run.levels.all_leveled(),
        "proper": validity.ok,
        "violations": len(validity.violations),
        "max_color": max(run.coloring.colors),
        "max_out_degree": max(len(o) for o in run.dag.out_neighbors),
        "tie_breaks": len(run.dag.tie_breaks),
        "clean_vertices": len(run.clean),
        "mean_degree": mean_degree(run.tri, run.cells),
    }


def det6_experiment(
    trials: int = 100,
    seed_base: int = 0,
    half_side: float = 50.0,
    pad: float = 20.0,
    max_deg: int = 5,
    order_key: str = "area",
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    params = {"half_side": half_side, "pad": pad, "max_deg": max_deg, "order_key": order_key}
    df = pd.DataFrame(run_trials(det6_trial, seeds_for(trials, seed_base), params, workers, progress, desc="det"))
    palette = max_deg + 1
    summary = {
        "proper_runs": int(df["proper"].sum()),
        "max_color": int(df["max_color"].max()),
        "max_out_degree": int(df["max_out_degree"].max()),
        "tie_breaks": int(df["tie_breaks"].sum()),
        "mean_degree": float(df["mean_degree"].mean()),
    }
    summary["passed"] = bool(
        df["proper"].all()
        and df["all_leveled"].all()
        and summary["max_color"] < palette
        and summary["max_out_degree"] <= max_deg
    )
    return ExperimentResult("det6", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


def randomized_trial(
    seed: int,
    half_side: float = 30.0,
    pad: float = 20.0,
    num_symbols: int = 2,
    component_cap: int = 100_000,
    node_budget: int = 10_000_000,
    external_face_trick: bool = True,
) -> Row:
    pts = sample_poisson(Window.square(half_side), pad, seed=seed)
    tri = delaunay(pts)
    cells = voronoi_cells(tri, pts.padded_window)
    row: Row = {"seed": seed, "n_points": tri.n, "num_symbols": num_symbols, "oversized": False, "oversized_size": 0}
    try:
        coloring = color_randomized(
            tri, num_symbols, seed, cell_areas(cells), component_cap, node_budget, external_face_trick
        )
    except OversizedComponentError as exc:
        logger.warning("seed %d: %s (component of %d vertices)", seed, exc, exc.size)
        row.update(oversized=True, oversized_size=exc.size, proper=None, max_color=None, zero_zero=None)
        return row
    report = verify_proper(coloring, tri.neighbor_lists)
    row.update(
        proper=report.ok,
        violations=len(report.violations),
        max_color=max(coloring.colors),
        palette_size=coloring.palette_size,
        zero_zero=len(zero_zero_edges(coloring, tri.neighbor_lists)) if external_face_trick else 0,
        max_component_radius=max(coloring.component_radius or (0.0,)),
    )
    return row


def randomized_experiment(
    trials: int = 100,
    seed_base: int = 0,
    half_side: float = 30.0,
    pad: float = 20.0,
    num_symbols: int = 2,
    component_cap: int = 100_000,
    node_budget: int = 10_000_000,
    external_face_trick: bool = True,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Properness and palette of the randomized scheme; oversized components are counted, not failed."""

    params = {"half_side": half_side, "pad": pad, "num_symbols": num_symbols, "component_cap": component_cap,
              "node_budget": node_budget, "external_face_trick": external_face_trick}
    df = pd.DataFrame(run_trials(randomized_trial, seeds_for(trials, seed_base), params, workers, progress,
                                 desc="randomized"))
    colored = df[~df["oversized"]]
    palette = 3 * num_symbols + 1 if external_face_trick else 4 * num_symbols
    summary = {
        "oversized_runs": int(df["oversized"].sum()),
        "oversized_frequency": float(df["oversized"].mean()),
        "colored_runs": len(colored),
        "zero_zero_edges": int(colored["zero_zero"].sum()) if len(colored) else 0,
    }
    summary["passed"] = bool(
        colored["proper"].astype(bool).all()
        and (colored["max_color"] < palette).all()
        and summary["zero_zero_edges"] == 0
    ) if len(colored) else True
    return ExperimentResult("randomized", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


def one_dim_trial(seed: int, length: float = 1000.0, intensity: float = 1.0) -> Row:
    cells = CellInterval1D.from_points(sample_poisson_line(length, intensity, seed))
    coloring = color_1d_cells(cells)
    interior = np.nonzero(cells.interior)[0]
    report = verify_proper(coloring, cells.adjacency(), interior)
    greens = [i for i in interior if coloring.colors[i] == 0]
    adjacent_greens = sum(1 for a, b in zip(greens, greens[1:]) if b == a + 1)
    return {
        "seed": seed,
        "n_points": len(cells.cell_lengths),
        "proper": report.ok,
        "greens": len(greens),
        "adjacent_greens": adjacent_greens,
        "max_color": max(coloring.colors[i] for i in interior),
    }


def one_dim_experiment(
    trials: int = 1000,
    seed_base: int = 0,
    length: float = 1000.0,
    intensity: float = 1.0,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    params = {"length": length, "intensity": intensity}
    df = pd.DataFrame(run_trials(one_dim_trial, seeds_for(trials, seed_base), params, workers, progress, desc="1-d"))
    summary = {
        "proper_runs": int(df["proper"].sum()),
        "adjacent_greens": int(df["adjacent_greens"].sum()),
        "max_color": int(df["max_color"].max()),
        "mean_green_fraction": float((df["greens"] / df["n_points"]).mean()),
    }
    summary["passed"] = bool(df["proper"].all() and summary["adjacent_greens"] == 0 and summary["max_color"] <= 2)
    return ExperimentResult("one-dim", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


# locality and equivariance surrogates


def sealed_independence_trial(seed: int, R: float = 3.0) -> Row:
    """Resample everything outside ``Q(0, 5R)`` and compare the cells inside ``Q(0, 3R)``.

    Cells that straddle the boundary of ``Q(0, 3R)`` are not compared; the row
    counts them in ``skipped_cells``.
    """

    window = Window.square(7.0 * R)
    pts = sample_poisson(window, pad_width=0.0, seed=seed)
    row: Row = {"seed": seed, "R": R, "sealed": False, "compared_cells": 0, "skipped_cells": 0, "mismatches": 0,
                "identical": None}
    if not is_sealed(pts, Window.square(4.0 * R), R).sealed:
        return row
    keep = Window.square(5.0 * R)
    inside = pts.coords[keep.contains_array(pts.coords)]
    outside = pts.coords[~keep.contains_array(pts.coords)]
    rng = make_rng(seed, stream=2)
    n = int(rng.poisson(window.area))
    x0, y0, x1, y1 = window.bounds
    fresh = rng.uniform(low=(x0, y0), high=(x1, y1), size=(n, 2))
    fresh = fresh[~keep.contains_array(fresh)]
    first = PointSet.from_points(np.concatenate([inside, outside]), window, seed=seed)
    second = PointSet.from_points(np.concatenate([inside, fresh]), window, seed=seed)
    cells_a = voronoi_cells(delaunay(first))
    cells_b = voronoi_cells(delaunay(second))
    core = Window.square(3.0 * R)
    compared, skipped = [], 0
    for c in cells_a[: len(inside)]:
        hits = [core.contains(p) for p in c.polygon]
        if all(hits):
            compared.append(c)
        elif any(hits):
            skipped += 1
    mismatches = sum(
        1 for c in compared
        if cells_b[c.site_index].polygon != c.polygon or cells_b[c.site_index].area != c.area
    )
    row.update(sealed=True, compared_cells=len(compared), skipped_cells=skipped, mismatches=mismatches,
               identical=mismatches == 0)
    return row


def sealed_independence_experiment(
    trials: int = 100,
    seed_base: int = 0,
    R: float = 3.0,
    max_attempts: Optional[int] = None,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """Collect ``trials`` sealed instances, drawing seeds upward from ``seed_base``.

    At most ``max_attempts`` seeds are drawn (default ``20 * trials``). The run
    passes only when the target was reached, some cell was compared and no
    compared cell changed.
    """

    cap = 20 * trials if max_attempts is None else max_attempts
    if cap < trials:
        raise ParameterError(f"max_attempts={cap} cannot reach {trials} sealed instances")
    rows: List[Row] = []
    found = 0
    next_seed = seed_base
    while found < trials and len(rows) < cap:
        batch = min(trials - found, cap - len(rows))
        new = run_trials(sealed_independence_trial, seeds_for(batch, next_seed), {"R": R}, workers, progress,
                         desc="sealed independence")
        found += sum(1 for r in new if r["sealed"])
        rows.extend(new)
        next_seed += batch
    df = pd.DataFrame(rows)
    sealed = df[df["sealed"]]
    summary = {
        "attempts": len(df),
        "sealed_instances": len(sealed),
        "compared_cells": int(sealed["compared_cells"].sum()),
        "skipped_cells": int(sealed["skipped_cells"].sum()),
        "mismatches": int(sealed["mismatches"].sum()),
    }
    if summary["sealed_instances"] < trials:
        logger.warning("only %d of %d sealed instances after %d attempts", summary["sealed_instances"], trials,
                       summary["attempts"])
    summary["passed"] = (
        summary["sealed_instances"] >= trials and summary["compared_cells"] > 0 and summary["mismatches"] == 0
    )
    params = {"R": R, "trials": trials, "seed_base": seed_base, "max_attempts": cap}
    return ExperimentResult("sealed-independence", params, df, summary)


def equivariance_trial(seed: int, half_side: float = 50.0, pad: float = 20.0, max_deg: int = 5) -> Row:
    """Re-run the deterministic scheme on a rotated and translated copy of the sample."""

    pts = sample_poisson(Window.square(half_side), pad, seed=seed)
    base = deterministic_run(pts, max_deg)
    rng = make_rng(seed, stream=2)
    theta = float(rng.uniform(0.0, 2.0 * math.pi))
    t = rng.uniform(-10.0, 10.0, size=2)
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    moved = pts.coords @ rot.T + t
    window = Window((float(t[0]), float(t[1])), (half_side + pad) * math.sqrt(2.0))
    other = deterministic_run(PointSet.from_points(moved, window, seed=seed), max_deg)
    skip = base.dag.tie_broken_vertices() | other.dag.tie_broken_vertices()
    compared = sorted((base.clean & other.clean) - skip)
    mismatches = sum(1 for v in compared if base.coloring.colors[v] != other.coloring.colors[v])
    return {
        "seed": seed,
        "theta": theta,
        "tx": float(t[0]),
        "ty": float(t[1]),
        "compared": len(compared),
        "mismatches": mismatches,
        "mismatch_fraction": mismatches / len(compared) if compared else 0.0,
    }


def equivariance_experiment(
    trials: int = 50,
    seed_base: int = 0,
    half_side: float = 50.0,
    pad: float = 20.0,
    max_deg: int = 5,
    tolerance: float = 0.01,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    params = {"half_side": half_side, "pad": pad, "max_deg": max_deg}
    df = pd.DataFrame(run_trials(equivariance_trial, seeds_for(trials, seed_base), params, workers, progress,
                                 desc="equivariance"))
    compared = int(df["compared"].sum())
    fraction = int(df["mismatches"].sum()) / compared if compared else None
    if not compared:
        logger.warning("no clean cell was compared in %d equivariance trials", trials)
    summary = {"compared": compared, "mismatch_fraction": fraction, "tolerance": tolerance,
               "passed": fraction is not None and fraction < tolerance}
    return ExperimentResult("equivariance", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


# planar-map lemma oracle


def ld_bound_trial(seed: int, half_side: float = 10.0, pad: float = 2.0, subsets: int = 10, max_size: int = 60) -> Row:
    pts = sample_poisson(Window.square(half_side), pad, seed=seed)
    tri = delaunay(pts)
    rng = make_rng(seed, stream=3)
    violations, slack = 0, []
    for _ in range(subsets):
        size = int(rng.integers(3, min(tri.n, max_size) + 1))
        stats = map_stats(tri.induced(random_connected_subset(tri, size, rng)))
        violations += not check_ld_bound(stats)
        slack.append(5 * stats.ld - 2 * stats.me - 12)
    return {"seed": seed, "subsets": subsets, "violations": violations, "min_slack": min(slack)}


def ld_bound_experiment(
    trials: int = 100,
    seed_base: int = 0,
    subsets: int = 10,
    half_side: float = 10.0,
    workers: Optional[int] = None,
    progress: bool = True,
) -> ExperimentResult:
    """``5 LD >= 2 ME + 12`` on random connected induced Delaunay subgraphs."""

    params = {"half_side": half_side, "subsets": subsets}
    df = pd.DataFrame(run_trials(ld_bound_trial, seeds_for(trials, seed_base), params, workers, progress,
                                 desc="LD bound"))
    summary = {
        "subgraphs": int(df["subsets"].sum()),
        "violations": int(df["violations"].sum()),
        "min_slack": int(df["min_slack"].min()),
    }
    summary["passed"] = summary["violations"] == 0
    return ExperimentResult("ld-bound", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


# exploratory reports


def peel_rounds_trial(seed: int, half_side: float = 50.0, pad: float = 20.0, fraction: Optional[float] = None) -> Row:
    """Largest components after one and two global degree-5 rounds.

    With ``fraction`` set, the second round deletes only that share of its
    eligible vertices, picked at random.
    """

    pts = sample_poisson(Window.square(half_side), pad, seed=seed)
    tri = delaunay(pts)
    adj = tri.neighbor_lists
    alive0 = set(range(tri.n))
    alive1 = peel_step(adj, alive0, None, 5)
    alive2 = peel_step(adj, alive1, None, 5)
    row: Row = {
        "seed": seed,
        "n_points": tri.n,
        "g1_size": len(alive1),
        "g2_size": len(alive2),
        "g1_largest": largest_component(adj, alive1),
        "g2_largest": largest_component(adj, alive2),
    }
    if fraction is not None:
        eligible = sorted(alive1 - alive2)
        rng = make_rng(seed, stream=3)
        chosen = {v for v, u in zip(eligible, rng.random(len(eligible))) if u < fraction}
        row["partial_fraction"] = fraction
        row["partial_largest"] = largest_component(adj, alive1 - chosen)
    for key in ("g1_largest", "g2_largest", "partial_largest"):
        if key in row:
            row[key.replace("largest", "share")] = row[key] / tri.n
    return row


def four_core_trial(seed: int, half_side: float = 50.0, pad: float = 20.0) -> Row:
    pts = sample_poisson(Window.square(half_side), pad, seed=seed)
    tri = delaunay(pts)
    row: Row = {"seed": seed, "n_points": tri.n}
    for core, max_deg in (("core4", 3), ("core5", 4)):
        survivors = peel_to_core(tri, PeelConfig(max_deg=max_deg)).survivors()
        largest = largest_component(tri.neighbor_lists, survivors)
        row.update({f"{core}_size": len(survivors), f"{core}_largest": largest, f"{core}_share": largest / tri.n})
    return row


def radius_trial(seed: int, half_side: float = 30.0, pad: float = 20.0, num_symbols: int = 2) -> Row:
    """Predecessor radii of the deterministic scheme and component radii of the randomized one."""

    pts = sample_poisson(Window.square(half_side), pad, seed=seed)
    run = deterministic_run(pts)
    inner = Window.square(half_side)
    targets = [v for v in sorted(run.clean) if inner.contains(run.tri.points[v])]
    det = [predecessor_set(run.dag, v)[1] for v in targets]
    rand: List[float] = []
    oversized = False
    try:
        coloring = color_randomized(run.tri, num_symbols, seed, cell_areas(run.cells))
        rand = [coloring.component_radius[v] for v in targets]
    except OversizedComponentError:
        oversized = True
    return {"seed": seed, "det_radii": det, "rand_radii": rand, "oversized": oversized}


def areas_trial(seed: int, half_side: float = 50.0, pad: float = 20.0, bins: int = 100) -> Row:
    pts = sample_poisson(Window.square(half_side), pad, seed=seed)
    tri = delaunay(pts)
    stats = area_statistics(voronoi_cells(tri, pts.padded_window), tri, bins=bins)
    return {
        "seed": seed,
        "n_cells": stats.n_cells,
        "min_gap": stats.min_gap,
        "degenerate": stats.degenerate,
        "longest_decreasing_path": stats.longest_decreasing_path,
        "counts": stats.counts.tolist(),
        "bin_edges": stats.bin_edges.tolist(),
    }


def peel_rounds_experiment(trials: int = 20, seed_base: int = 0, half_side: float = 50.0, pad: float = 20.0,
                           fraction: Optional[float] = 0.5, workers: Optional[int] = None,
                           progress: bool = True) -> ExperimentResult:
    params = {"half_side": half_side, "pad": pad, "fraction": fraction}
    df = pd.DataFrame(run_trials(peel_rounds_trial, seeds_for(trials, seed_base), params, workers, progress,
                                 desc="peel rounds"))
    summary = {col: float(df[col].mean()) for col in df.columns if col.endswith("_share")}
    summary["passed"] = True
    return ExperimentResult("peel-rounds", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


def four_core_experiment(trials: int = 20, seed_base: int = 0, half_side: float = 50.0, pad: float = 20.0,
                         workers: Optional[int] = None, progress: bool = True) -> ExperimentResult:
    params = {"half_side": half_side, "pad": pad}
    df = pd.DataFrame(run_trials(four_core_trial, seeds_for(trials, seed_base), params, workers, progress,
                                 desc="cores"))
    summary = {col: float(df[col].mean()) for col in ("core4_share", "core5_share")}
    summary["passed"] = True
    return ExperimentResult("four-core", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


def radius_experiment(trials: int = 10, seed_base: int = 0, half_side: float = 30.0, pad: float = 20.0,
                      num_symbols: int = 2, workers: Optional[int] = None,
                      progress: bool = True) -> ExperimentResult:
    """Long-format radii (``seed, scheme, radius``) with empirical survival slopes."""

    params = {"half_side": half_side, "pad": pad, "num_symbols": num_symbols}
    raw = run_trials(radius_trial, seeds_for(trials, seed_base), params, workers, progress, desc="radius")
    records = [
        {"seed": r["seed"], "scheme": scheme, "radius": x}
        for r in raw
        for scheme, key in (("det", "det_radii"), ("rand", "rand_radii"))
        for x in r[key]
    ]
    df = pd.DataFrame(records, columns=["seed", "scheme", "radius"])
    summary: Dict[str, Any] = {"oversized_runs": sum(r["oversized"] for r in raw), "passed": True}
    for scheme, group in df.groupby("scheme"):
        summary[f"{scheme}_tail_slope"] = survival_slope(group["radius"].to_numpy())
        summary[f"{scheme}_max_radius"] = float(group["radius"].max())
    return ExperimentResult("radius", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


def survival_curve(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Sorted values and their empirical survival probabilities ``P(X >= x)``."""

    x = np.sort(np.asarray(values, dtype=float))
    surv = 1.0 - np.arange(len(x)) / max(len(x), 1)
    return x, surv


def survival_slope(values: np.ndarray) -> float:
    """Least-squares slope of ``log P(X >= x)`` against ``x``; negative for an exponential tail."""

    x, surv = survival_curve(values)
    keep = x > 0
    if keep.sum() < 2 or np.ptp(x[keep]) == 0:
        return math.nan
    slope, _ = np.polyfit(x[keep], np.log(surv[keep]), 1)
    return float(slope)


def areas_experiment(trials: int = 10, seed_base: int = 0, half_side: float = 50.0, pad: float = 20.0,
                     bins: int = 100, workers: Optional[int] = None, progress: bool = True) -> ExperimentResult:
    params = {"half_side": half_side, "pad": pad, "bins": bins}
    raw = run_trials(areas_trial, seeds_for(trials, seed_base), params, workers, progress, desc="areas")
    counts = np.sum([r["counts"] for r in raw], axis=0)
    occupied = np.nonzero(counts)[0]
    gaps_inside = int((counts[occupied[0]:occupied[-1] + 1] == 0).sum()) if len(occupied) else 0
    df = pd.DataFrame([{k: v for k, v in r.items() if k not in ("counts", "bin_edges")} for r in raw])
    summary = {
        "histogram": counts.tolist(),
        "bin_edges": raw[0]["bin_edges"],
        "cells": int(df["n_cells"].sum()),
        "empty_interior_bins": gaps_inside,
        "min_gap": float(df["min_gap"].min()),
        "degenerate_runs": int(df["degenerate"].sum()),
        "max_decreasing_path": int(df["longest_decreasing_path"].max()),
    }
    summary["passed"] = summary["degenerate_runs"] == 0
    return ExperimentResult("areas", {**params, "trials": trials, "seed_base": seed_base}, df, summary)


__all__ = [
    "ExperimentResult",
    "DeterministicRun",
    "run_trials",
    "seeds_for",
    "mean_degree",
    "triangular_lattice",
    "with_lattice_insert",
    "deterministic_run",
    "sealed_trial",
    "sealed_probability_experiment",
    "long_edge_trial",
    "long_edge_experiment",
    "restricted_core_trial",
    "restricted_core_experiment",
    "omega_trial",
    "omega_experiment",
    "rare_square_trial",
    "rare_square_experiment",
    "site_process_trial",
    "site_process_experiment",
    "det6_trial",
    "det6_experiment",
    "randomized_trial",
    "randomized_experiment",
    "one_dim_trial",
    "one_dim_experiment",
    "sealed_independence_trial",
    "sealed_independence_experiment",
    "equivariance_trial",
    "equivariance_experiment",
    "ld_bound_trial",
    "ld_bound_experiment",
    "peel_rounds_trial",
    "peel_rounds_experiment",
    "four_core_trial",
    "four_core_experiment",
    "radius_trial",
    "radius_experiment",
    "areas_trial",
    "areas_experiment",
    "survival_curve",
    "survival_slope",
]
