from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from rich.table import Table

from . import experiments as exp
from .chromatics import (
    CellInterval1D,
    color_1d_cells,
    color_randomized,
    sample_poisson_line,
    verify_proper,
)
from .config import COMMANDS, EXPERIMENTS, ORDER_KEYS, SITE_PREDICATES, RenderSpec, RunConfig
from .errors import ContractError, VoronoiError
from .exchange import (
    dump_json,
    read_coloring,
    read_points,
    read_triangulation,
    write_coloring,
    write_experiment,
    write_levels,
    write_points,
    write_triangulation,
)
from .geometry import PointSet, Window, cell_areas, delaunay, sample_poisson, voronoi_cells
from .logs import configure_logging, console
from .peeling import PeelConfig, peel_to_core
from .render import render_png, render_svg
from .reports import write_report

logger = logging.getLogger("scripts.poisson_voronoi")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _floats(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _pair(text: str) -> tuple:
    values = _floats(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m scripts.poisson_voronoi",
        description="Poisson-Voronoi maps: sampling, Delaunay, peeling, colorings and experiments.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings only, no progress bars.")
    parser.add_argument("--config", type=Path, default=None, help="Replay a RunConfig or a run summary JSON.")

    # Every option defaults to None so that only flags given explicitly override --config.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="64-bit sample seed.")
    common.add_argument("--half-side", dest="half_side", type=float, help="Half side of the analysis square.")
    common.add_argument("--center", type=_pair, help="Window center as x,y.")
    common.add_argument("--pad", type=float, help="Padding added around the analysis square.")
    common.add_argument("--intensity", type=float, help="Points per unit area.")
    common.add_argument("--max-deg", dest="max_deg", type=int, help="Peel vertices of degree at most this.")
    common.add_argument("--num-symbols", dest="num_symbols", type=int, help="Coin sides of the randomized scheme.")
    common.add_argument("--component-cap", dest="component_cap", type=int, help="Largest colorable component.")
    common.add_argument("--node-budget", dest="node_budget", type=int, help="4-coloring search budget.")
    common.add_argument("--order-key", dest="order_key", choices=ORDER_KEYS, help="Cell statistic for the order.")
    common.add_argument(
        "--no-external-face-trick", dest="external_face_trick", action="store_const", const=False,
        help="Use separate 4-color palettes per symbol (no shared color 0).",
    )
    common.add_argument("--points", type=str, help="Read the point set from this file instead of sampling.")
    common.add_argument("--out", type=str, help="Output directory.")
    common.add_argument("--png", action="store_const", const=True, help="Also write a PNG preview.")

    sub = parser.add_subparsers(dest="command", metavar="command")
    for name in COMMANDS:
        if name == "experiment":
            continue
        p = sub.add_parser(name, parents=[common], help=f"{name} pipeline")
        if name == "peel":
            p.add_argument("--max-rounds", dest="max_rounds", type=int, help="Stop after this many rounds.")
        if name == "color-1d":
            p.add_argument("--length", type=float, help="Length of the 1-D window.")
        if name in ("verify", "render"):
            p.add_argument("--coloring", type=str, help="Coloring CSV.")
        if name == "verify":
            p.add_argument("--graph", type=str, help="Triangulation JSON.")

    p = sub.add_parser("experiment", parents=[common], help="Monte-Carlo experiments")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--trials", type=int, help="Number of trials per grid point.")
    p.add_argument("--seed-base", dest="seed_base", type=int, help="Trial i uses seed seed_base + i.")
    p.add_argument("--R", "--r-grid", dest="r_grid", type=_floats, help="Scales R (or rho), comma separated.")
    p.add_argument("--alpha", dest="alpha_grid", type=_floats, help="Sealing radii, comma separated.")
    p.add_argument("--ell", dest="ell_grid", type=_floats, help="Edge lengths, comma separated.")
    p.add_argument("--max-rounds", dest="max_rounds", type=int, help="Peel round limit.")
    p.add_argument("--length", type=float, help="Length of the 1-D window.")
    p.add_argument("--fraction", type=float, help="Share of round-2 deletions in peel-rounds.")
    p.add_argument("--lattice-size", dest="lattice_size", type=int, help="Side of the site-process patch.")
    p.add_argument("--area-interval", dest="area_interval", type=_pair, help="Area interval lo,hi.")
    p.add_argument("--site-predicate", dest="site_predicate", choices=SITE_PREDICATES)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = set(RunConfig.__dataclass_fields__)
    overrides = {k: v for k, v in vars(args).items() if k in fields and k != "command" and v is not None}
    if args.config is not None:
        base = RunConfig.load(args.config)
        if args.command is not None and args.command != base.command:
            base = base.replace(command=args.command)
        return base.replace(**overrides)
    return RunConfig(command=args.command, **overrides)


# pipelines


def _out(config: RunConfig) -> Path:
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _point_set(config: RunConfig) -> PointSet:
    if config.points:
        return read_points(config.points)
    window = Window.square(config.half_side, config.center)
    return sample_poisson(window, config.pad, config.intensity, config.seed)


def _render(config: RunConfig, cells, coloring, out: Path, tri=None, levels=None) -> Dict[str, str]:
    spec = RenderSpec()
    paths = {"svg": str(render_svg(cells, coloring, spec, out / "coloring.svg", tri, levels))}
    if config.png:
        paths["png"] = str(render_png(cells, coloring, spec, out / "coloring.png", tri))
    return paths


def cmd_sample(config: RunConfig) -> Dict[str, Any]:
    pts = _point_set(config)
    path, side = write_points(pts, _out(config) / "points.txt")
    return {"points": len(pts), "files": [str(path), str(side)]}


def cmd_triangulate(config: RunConfig) -> Dict[str, Any]:
    pts = _point_set(config)
    tri = delaunay(pts)
    out = _out(config)
    write_points(pts, out / "points.txt")
    write_triangulation(tri, out / "triangulation.json")
    return {"points": tri.n, "triangles": len(tri.triangles), "hull": tri.hull_size(), "flips": tri.flips}


def cmd_peel(config: RunConfig) -> Dict[str, Any]:
    tri = delaunay(_point_set(config))
    levels = peel_to_core(tri, PeelConfig(max_deg=config.max_deg, max_rounds=config.max_rounds))
    write_levels(levels, _out(config) / "levels.csv")
    return {"points": tri.n, "rounds": levels.rounds_executed, "survivors": len(levels.survivors())}


def cmd_color_det(config: RunConfig) -> Dict[str, Any]:
    run = exp.deterministic_run(_point_set(config), config.max_deg, config.order_key)
    out = _out(config)
    write_triangulation(run.tri, out / "triangulation.json")
    write_coloring(run.coloring, out / "coloring.csv", run.contaminated, {"tie_breaks": len(run.dag.tie_breaks)})
    files = _render(config, run.cells, run.coloring, out, run.tri, run.levels)
    validity = run.coloring.validity
    return {
        "scheme": run.coloring.scheme,
        "points": run.tri.n,
        "colors_used": len(run.coloring.color_set()),
        "rounds": run.levels.rounds_executed,
        "tie_breaks": len(run.dag.tie_breaks),
        "proper": validity.ok,
        "violations": [list(e) for e in validity.violations],
        "files": files,
        "passed": validity.ok,
    }


def cmd_color_rand(config: RunConfig) -> Dict[str, Any]:
    pts = _point_set(config)
    tri = delaunay(pts)
    cells = voronoi_cells(tri, pts.padded_window)
    coloring = color_randomized(
        tri, config.num_symbols, config.seed, cell_areas(cells), config.component_cap, config.node_budget,
        config.external_face_trick,
    ).checked(tri.neighbor_lists)
    out = _out(config)
    write_triangulation(tri, out / "triangulation.json")
    write_coloring(coloring, out / "coloring.csv", [c.contaminated for c in cells])
    files = _render(config, cells, coloring, out, tri)
    return {
        "scheme": coloring.scheme,
        "points": tri.n,
        "palette_size": coloring.palette_size,
        "colors_used": len(coloring.color_set()),
        "proper": coloring.validity.ok,
        "files": files,
        "passed": coloring.validity.ok,
    }


def cmd_color_1d(config: RunConfig) -> Dict[str, Any]:
    cells = CellInterval1D.from_points(sample_poisson_line(config.length, config.intensity, config.seed))
    coloring = color_1d_cells(cells)
    interior = [int(i) for i in cells.interior.nonzero()[0]]
    coloring = coloring.checked(cells.adjacency(), interior)
    path, _ = write_coloring(coloring, _out(config) / "coloring_1d.csv", [not f for f in cells.interior])
    return {"points": len(cells.cell_lengths), "proper": coloring.validity.ok, "files": [str(path)],
            "passed": coloring.validity.ok}


def cmd_render(config: RunConfig) -> Dict[str, Any]:
    pts = _point_set(config)
    if config.coloring:
        tri = delaunay(pts)
        cells = voronoi_cells(tri, pts.padded_window)
        coloring, _ = read_coloring(config.coloring)
        if len(coloring) != tri.n:
            raise ContractError(f"coloring has {len(coloring)} entries for {tri.n} points")
        files = _render(config, cells, coloring, _out(config), tri)
    else:
        run = exp.deterministic_run(pts, config.max_deg, config.order_key)
        files = _render(config, run.cells, run.coloring, _out(config), run.tri, run.levels)
    return {"files": files}


def cmd_verify(config: RunConfig) -> Dict[str, Any]:
    if not (config.coloring and config.graph):
        raise ContractError("verify needs --coloring and --graph")
    coloring, _ = read_coloring(config.coloring)
    tri = read_triangulation(config.graph)
    if len(coloring) != tri.n:
        raise ContractError(f"coloring has {len(coloring)} entries for {tri.n} vertices")
    report = verify_proper(coloring, tri.neighbor_lists)
    for u, v in report.violations:
        console.print(f"[red]violation[/red] {u} - {v} share color {coloring.colors[u]}")
    return {"checked_vertices": report.checked_vertices, "violations": [list(e) for e in report.violations],
            "proper": report.ok, "passed": report.ok}


def run_experiment(config: RunConfig, progress: bool = True) -> exp.ExperimentResult:
    name = config.experiment
    common: Dict[str, Any] = {"seed_base": config.seed_base, "progress": progress}
    if config.trials is not None:
        common["trials"] = config.trials
    grid = config.r_grid
    if name == "sealed":
        return exp.sealed_probability_experiment(grid or (10.0, 20.0), config.alpha_grid or (3.0, 4.0, 5.0),
                                                 intensity=config.intensity, **common)
    if name == "long-edges":
        return exp.long_edge_experiment(grid[0] if grid else 20.0, config.ell_grid or (15.0, 20.0),
                                        intensity=config.intensity, **common)
    if name == "restricted-core":
        return exp.restricted_core_experiment(grid or (10.0, 20.0, 40.0), max_rounds=config.max_rounds,
                                              pad=config.pad, **common)
    if name == "omega":
        return exp.omega_experiment(grid or (10.0, 20.0, 40.0), **common)
    if name == "rare-squares":
        return exp.rare_square_experiment(grid or (2.0, 4.0, 8.0), **common)
    if name == "site-process":
        return exp.site_process_experiment(
            grid[0] if grid else 4.0, config.lattice_size, config.max_rounds or 2, kind=config.site_predicate,
            area_interval=config.area_interval, **common,
        )
    if name == "det6":
        return exp.det6_experiment(half_side=config.half_side, pad=config.pad, max_deg=config.max_deg,
                                   order_key=config.order_key, **common)
    if name == "randomized":
        return exp.randomized_experiment(
            half_side=config.half_side, pad=config.pad, num_symbols=config.num_symbols,
            component_cap=config.component_cap, node_budget=config.node_budget,
            external_face_trick=config.external_face_trick, **common,
        )
    if name == "one-dim":
        return exp.one_dim_experiment(length=config.length, intensity=config.intensity, **common)
    if name == "sealed-independence":
        return exp.sealed_independence_experiment(R=grid[0] if grid else 3.0, **common)
    if name == "equivariance":
        return exp.equivariance_experiment(half_side=config.half_side, pad=config.pad, max_deg=config.max_deg,
                                           **common)
    if name == "ld-bound":
        return exp.ld_bound_experiment(half_side=config.half_side, **common)
    if name == "peel-rounds":
        return exp.peel_rounds_experiment(half_side=config.half_side, pad=config.pad, fraction=config.fraction,
                                          **common)
    if name == "four-core":
        return exp.four_core_experiment(half_side=config.half_side, pad=config.pad, **common)
    if name == "radius":
        return exp.radius_experiment(half_side=config.half_side, pad=config.pad, num_symbols=config.num_symbols,
                                     **common)
    if name == "areas":
        return exp.areas_experiment(half_side=config.half_side, pad=config.pad, **common)
    raise ContractError("the experiment command needs an experiment name")


COMMAND_TABLE: Dict[str, Callable[[RunConfig], Dict[str, Any]]] = {
    "sample": cmd_sample,
    "triangulate": cmd_triangulate,
    "peel": cmd_peel,
    "color-det6": cmd_color_det,
    "color-rand": cmd_color_rand,
    "color-1d": cmd_color_1d,
    "render": cmd_render,
    "verify": cmd_verify,
}


def execute(config: RunConfig, progress: bool = True) -> Dict[str, Any]:
    if config.command == "experiment":
        result = run_experiment(config, progress)
        out = _out(config)
        csv_path, json_path = write_experiment(result, out, config.to_dict())
        files = [str(csv_path), str(json_path)]
        html = write_report(result, out)
        if html is not None:
            files.append(str(html))
        scalars = {k: v for k, v in result.summary.items() if not isinstance(v, (list, dict))}
        return {**scalars, "rows": len(result.rows), "files": files, "passed": result.passed}
    return COMMAND_TABLE[config.command](config)


def print_summary(command: str, results: Dict[str, Any]) -> None:
    table = Table(title=command, show_header=True, header_style="bold")
    table.add_column("key")
    table.add_column("value", overflow="fold")
    for key, value in results.items():
        text = str(value)
        table.add_row(key, text if len(text) < 200 else text[:197] + "...")
    console.print(table)


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command is None and args.config is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    configure_logging(logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO)
    try:
        config = config_from_args(args)
        results = execute(config, progress=not args.quiet)
        summary = {"command": config.command, "config": config.to_dict(), "results": results}
        dump_json(summary, Path(config.out) / "summary.json")
    except VoronoiError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILED
    if not args.quiet:
        print_summary(config.command if config.command != "experiment" else f"experiment {config.experiment}", results)
    return EXIT_OK if results.get("passed", True) else EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    return cli_dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
