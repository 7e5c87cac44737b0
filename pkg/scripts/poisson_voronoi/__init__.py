"""
Poisson-Voronoi maps in finite windows: exact Delaunay triangulation, cell
areas, low-degree peeling, the deterministic 6-coloring, the randomized
7-coloring, the 1-D 3-coloring and the Monte-Carlo experiments around them.

Run ``python -m scripts.poisson_voronoi --help`` for the command line.
"""

from .chromatics import (
    Coloring,
    OrderDag,
    ProperReport,
    build_order_dag,
    color_1d,
    color_deterministic,
    color_randomized,
    four_color_component,
    mex,
    predecessor_set,
    verify_proper,
)
from .config import RenderSpec, RunConfig
from .errors import (
    ContractError,
    DegenerateInputError,
    InvariantError,
    OversizedComponentError,
    ParameterError,
    VoronoiError,
)
from .geometry import (
    EmbeddedGraph,
    Point,
    PointSet,
    Triangulation,
    VoronoiCell,
    Window,
    delaunay,
    outer_boundary,
    sample_poisson,
    voronoi_cells,
)
from .peeling import SURVIVOR, LevelAssignment, PeelConfig, components, peel_step, peel_to_core
from .planar import PlanarMapStats, check_euler_six, check_ld_bound, map_stats, min_core_size_bound
from .percolation import (
    OmegaReport,
    SealingCheck,
    SiteProcess,
    SquareClass,
    area_statistics,
    classify_square,
    find_long_edges,
    is_sealed,
    omega_report,
    site_process_components,
)

__all__ = [
    "Coloring",
    "OrderDag",
    "ProperReport",
    "build_order_dag",
    "color_1d",
    "color_deterministic",
    "color_randomized",
    "four_color_component",
    "mex",
    "predecessor_set",
    "verify_proper",
    "RenderSpec",
    "RunConfig",
    "ContractError",
    "DegenerateInputError",
    "InvariantError",
    "OversizedComponentError",
    "ParameterError",
    "VoronoiError",
    "EmbeddedGraph",
    "Point",
    "PointSet",
    "Triangulation",
    "VoronoiCell",
    "Window",
    "delaunay",
    "outer_boundary",
    "sample_poisson",
    "voronoi_cells",
    "SURVIVOR",
    "LevelAssignment",
    "PeelConfig",
    "components",
    "peel_step",
    "peel_to_core",
    "PlanarMapStats",
    "check_euler_six",
    "check_ld_bound",
    "map_stats",
    "min_core_size_bound",
    "OmegaReport",
    "SealingCheck",
    "SiteProcess",
    "SquareClass",
    "area_statistics",
    "classify_square",
    "find_long_edges",
    "is_sealed",
    "omega_report",
    "site_process_components",
]
