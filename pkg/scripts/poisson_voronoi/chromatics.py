"""
Proper colorings of Delaunay graphs and of 1-D Poisson cells.

Three schemes live here:

* ``DET6`` (and its ``DET7`` sibling): orient every Delaunay edge towards the
  endpoint with the higher peel level, breaking level ties by smaller cell
  area, then color by ``f(u) = mex {f(v) : u -> v}``.
* ``RAND_KOZMA(s)``: toss an ``s``-sided coin per cell, 4-color every
  monochromatic component with its own palette ``{0, 3k-2, 3k-1, 3k}`` and keep
  the shared color 0 off each component's external face. ``RAND_PLAIN(s)``
  skips the shared color and uses ``{4(k-1), ..., 4k-1}``.
* ``ONE_DIM3``: greens at strict local minima of cell length, the stretches
  between them alternate red/blue starting next to the shorter green.

Usage example:

    from scripts.poisson_voronoi.chromatics import build_order_dag, color_deterministic, verify_proper

    dag = build_order_dag(tri, levels, areas)
    coloring = color_deterministic(dag)
    report = verify_proper(coloring, tri.neighbor_lists, clean)

"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from graphlib import CycleError, TopologicalSorter
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from .errors import ContractError, InvariantError, OversizedComponentError, ParameterError
from .geometry import Triangulation, make_rng, outer_boundary
from .peeling import Adjacency, LevelAssignment, components, iter_adjacency

logger = logging.getLogger(__name__)

GREEN, RED, BLUE = 0, 1, 2

DEFAULT_COMPONENT_CAP = 100_000
DEFAULT_NODE_BUDGET = 10_000_000


def mex(colors: Iterable[int]) -> int:
    """Least nonnegative integer not in ``colors``."""

    present = set(colors)
    k = 0
    while k in present:
        k += 1
    return k


@dataclass(frozen=True)
class ProperReport:
    ok: bool
    violations: Tuple[Tuple[int, int], ...]
    checked_vertices: int


@dataclass(frozen=True)
class Coloring:
    """Per-vertex colors with the scheme that produced them.

    ``symbols`` and ``component_radius`` are only filled by the randomized
    schemes; ``validity`` is attached by :meth:`checked`.
    """

    colors: Tuple[int, ...]
    scheme: str
    palette_size: int
    seed: Optional[int] = None
    validity: Optional[ProperReport] = None
    symbols: Optional[Tuple[int, ...]] = None
    component_radius: Optional[Tuple[float, ...]] = None

    def __len__(self) -> int:
        return len(self.colors)

    def color_set(self) -> Set[int]:
        return set(self.colors)

    def checked(self, adjacency: Adjacency, subset: Optional[Iterable[int]] = None) -> "Coloring":
        return replace(self, validity=verify_proper(self, adjacency, subset))


def verify_proper(
    coloring: "Coloring | Sequence[int]",
    adjacency: Adjacency,
    subset: Optional[Iterable[int]] = None,
) -> ProperReport:
    """List every edge inside ``subset`` whose endpoints share a color."""

    colors = coloring.colors if isinstance(coloring, Coloring) else tuple(coloring)
    adj = dict(iter_adjacency(adjacency))
    keep = set(adj) if subset is None else set(subset)
    bad = sorted(
        (u, v)
        for u in keep
        for v in adj[u]
        if u < v and v in keep and colors[u] == colors[v]
    )
    return ProperReport(ok=not bad, violations=tuple(bad), checked_vertices=len(keep))


@dataclass(frozen=True)
class OrderDag:
    """Orientation of the Delaunay edges used by the mex recursion.

    ``out_neighbors[u]`` are the vertices ``w`` with ``u -> w``; ``tie_breaks``
    holds the pairs whose order came from site coordinates because level and
    cell statistic were exactly equal.
    """

    out_neighbors: Tuple[Tuple[int, ...], ...]
    tie_breaks: Tuple[Tuple[int, int], ...]
    max_deg: int
    positions: np.ndarray = field(repr=False)
    order_key: str = "area"

    @property
    def n(self) -> int:
        return len(self.out_neighbors)

    def tie_broken_vertices(self) -> Set[int]:
        return {v for pair in self.tie_breaks for v in pair}


def cell_statistic(tri: Triangulation, areas: Sequence[float], order_key: str) -> np.ndarray:
    if order_key == "area":
        stat = np.asarray(areas, dtype=float)
        if stat.shape != (tri.n,):
            raise ContractError(f"expected {tri.n} areas, got shape {stat.shape}")
        return stat
    if order_key == "neighbor_distance":
        return np.array(
            [sum(tri.edge_length(v, u) for u in tri.neighbor_lists[v]) for v in range(tri.n)],
            dtype=float,
        )
    raise ParameterError(f"unknown order key {order_key!r}")


def build_order_dag(
    tri: Triangulation,
    levels: LevelAssignment,
    areas: Sequence[float],
    order_key: str = "area",
) -> OrderDag:
    """Direct each edge ``{u, w}`` as ``u -> w`` when ``w`` precedes ``u``.

    ``w`` precedes ``u`` when its level is higher, or levels match and its
    cell statistic is smaller. Exact statistic ties fall back to site
    coordinates and are logged.

    Raises
    ------
    ContractError
        Some vertex was never peeled.
    InvariantError
        A vertex ends up with more than ``max_deg`` out-neighbours.
    """

    if len(levels) != tri.n:
        raise ContractError(f"level assignment covers {len(levels)} of {tri.n} vertices")
    if not levels.all_leveled():
        raise ContractError("order DAG needs every vertex leveled (unrestricted peeling to fixpoint)")
    stat = cell_statistic(tri, areas, order_key)
    lvl = levels.levels
    pos = tri.vertices

    def key(v: int) -> Tuple[int, float, float, float]:
        return (-lvl[v], float(stat[v]), float(pos[v, 0]), float(pos[v, 1]))

    out: List[List[int]] = [[] for _ in range(tri.n)]
    ties: List[Tuple[int, int]] = []
    for u, w in tri.edges():
        if lvl[u] == lvl[w] and stat[u] == stat[w]:
            ties.append((u, w))
            logger.warning(
                "cells %d and %d tie on level %d and %s %r; ordering by site coordinates",
                u, w, lvl[u], order_key, float(stat[u]),
            )
        if key(w) < key(u):
            out[u].append(w)
        else:
            out[w].append(u)

    max_deg = levels.config.max_deg
    worst = max((len(o) for o in out), default=0)
    if worst > max_deg:
        raise InvariantError(f"out-degree {worst} exceeds the peel threshold {max_deg}")
    return OrderDag(
        out_neighbors=tuple(tuple(sorted(o)) for o in out),
        tie_breaks=tuple(ties),
        max_deg=max_deg,
        positions=np.asarray(pos),
        order_key=order_key,
    )


def topological_order(dag: OrderDag) -> List[int]:
    """Vertices with every out-neighbour listed before the vertex itself."""

    sorter = TopologicalSorter({u: dag.out_neighbors[u] for u in range(dag.n)})
    try:
        return list(sorter.static_order())
    except CycleError as exc:
        raise InvariantError(f"order DAG has a cycle through {exc.args[1][:8]}") from exc


def evaluate_mex(dag: OrderDag, order: Sequence[int]) -> Tuple[int, ...]:
    """Run the mex recursion along ``order``; ``order`` must be topological."""

    colors: Dict[int, int] = {}
    for u in order:
        try:
            colors[u] = mex(colors[v] for v in dag.out_neighbors[u])
        except KeyError as exc:
            raise InvariantError(f"vertex {u} evaluated before its successor {exc.args[0]}") from exc
    if len(colors) != dag.n:
        raise InvariantError(f"order covers {len(colors)} of {dag.n} vertices")
    return tuple(colors[v] for v in range(dag.n))


def deterministic_scheme_name(max_deg: int) -> str:
    return f"DET{max_deg + 1}"


def color_deterministic(dag: OrderDag) -> Coloring:
    """``f(u) = mex {f(v) : u -> v}`` over the order DAG."""

    colors = evaluate_mex(dag, topological_order(dag))
    palette = dag.max_deg + 1
    if colors and max(colors) >= palette:
        raise InvariantError(f"mex produced color {max(colors)} outside a palette of {palette}")
    return Coloring(colors, deterministic_scheme_name(dag.max_deg), palette)


def predecessor_set(dag: OrderDag, v: int) -> Tuple[Set[int], float]:
    """All ``w`` reachable from ``v`` along out-edges, and their farthest site distance."""

    seen: Set[int] = set()
    stack = list(dag.out_neighbors[v])
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        stack.extend(dag.out_neighbors[w])
    if not seen:
        return seen, 0.0
    idx = np.fromiter(seen, dtype=int)
    d = np.hypot(*(dag.positions[idx] - dag.positions[v]).T)
    return seen, float(d.max())


def clean_vertices(dag: OrderDag, contaminated: Sequence[bool]) -> Set[int]:
    """Vertices whose own cell and every predecessor cell are uncontaminated."""

    clean: Dict[int, bool] = {}
    for u in topological_order(dag):
        clean[u] = (not contaminated[u]) and all(clean[w] for w in dag.out_neighbors[u])
    return {v for v, ok in clean.items() if ok}


def predecessor_radii(dag: OrderDag, vertices: Iterable[int]) -> Dict[int, float]:
    return {v: predecessor_set(dag, v)[1] for v in vertices}


def four_color_component(
    adjacency: Mapping[int, Iterable[int]],
    external_face: Iterable[int] = (),
    order: Optional[Sequence[int]] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Dict[int, int]:
    """Lexicographically least proper coloring with colors ``{0, 1, 2, 3}``.

    Vertices are assigned in ``order`` (default: increasing id); each takes
    the smallest color consistent with the choices before it, backtracking
    when a later vertex runs out of colors. Vertices of ``external_face``
    never take color 0.

    Raises
    ------
    OversizedComponentError
        More than ``node_budget`` color assignments were tried.
    """

    vertices = sorted(adjacency) if order is None else list(order)
    members = set(vertices)
    if len(members) != len(vertices) or members != set(adjacency):
        raise ContractError("order must list every component vertex exactly once")
    nbrs = {v: [u for u in adjacency[v] if u in members and u != v] for v in vertices}
    external = set(external_face)
    domain = {v: (1, 2, 3) if v in external else (0, 1, 2, 3) for v in vertices}
    forbid = {v: [0, 0, 0, 0] for v in vertices}
    color: Dict[int, int] = {}

    def options(v: int) -> List[int]:
        return [c for c in domain[v] if forbid[v][c] == 0]

    def place(v: int, c: int, delta: int) -> None:
        for u in nbrs[v]:
            if u not in color:
                forbid[u][c] += delta

    # choice[i] is the index into options(vertices[i]) to try next.
    choice = [0] * len(vertices)
    tried: List[List[int]] = [[] for _ in vertices]
    nodes = 0
    i = 0
    while 0 <= i < len(vertices):
        v = vertices[i]
        if choice[i] == 0:
            tried[i] = options(v)
        placed = False
        while choice[i] < len(tried[i]):
            c = tried[i][choice[i]]
            choice[i] += 1
            nodes += 1
            if nodes > node_budget:
                raise OversizedComponentError(vertices, f"4-coloring search exceeded {node_budget} nodes")
            place(v, c, +1)
            color[v] = c
            if all(options(u) for u in nbrs[v] if u not in color):
                placed = True
                break
            del color[v]
            place(v, c, -1)
        if placed:
            i += 1
            continue
        choice[i] = 0
        i -= 1
        if i >= 0:
            prev = vertices[i]
            c = color.pop(prev)
            place(prev, c, -1)
    if i < 0:
        raise InvariantError("component admits no 4-coloring with the external-face restriction")
    return color


def _component_order(comp: Sequence[int], stat: np.ndarray, pos: np.ndarray) -> List[int]:
    return sorted(comp, key=lambda v: (float(stat[v]), float(pos[v, 0]), float(pos[v, 1])))


def draw_symbols(n: int, num_symbols: int, seed: int) -> np.ndarray:
    """Uniform symbols in ``1..num_symbols`` from a stream disjoint from the point sample."""

    rng = make_rng(seed, stream=1)
    return rng.integers(1, num_symbols + 1, size=n)


def randomized_scheme_name(num_symbols: int, external_face_trick: bool = True) -> str:
    return f"RAND_KOZMA({num_symbols})" if external_face_trick else f"RAND_PLAIN({num_symbols})"


def color_randomized(
    tri: Triangulation,
    num_symbols: int = 2,
    seed: int = 0,
    areas: Optional[Sequence[float]] = None,
    component_cap: int = DEFAULT_COMPONENT_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
    external_face_trick: bool = True,
    symbols: Optional[Sequence[int]] = None,
) -> Coloring:
    """Randomized coloring from per-cell coin tosses.

    Parameters
    ----------
    num_symbols
        Sides of the coin; ``2`` gives 7 colors with the external-face trick
        (8 without), ``3`` gives 10 (12).
    areas
        Cell areas used to order vertices inside a component; when omitted
        the site's x coordinate decides.
    symbols
        Forces the symbol of every vertex instead of drawing them.

    Raises
    ------
    OversizedComponentError
        A monochromatic component has more than ``component_cap`` vertices,
        or its 4-coloring search exceeds ``node_budget``.
    """

    if num_symbols < 2:
        raise ParameterError(f"need at least 2 symbols, got {num_symbols}")
    n = tri.n
    if symbols is None:
        sym = draw_symbols(n, num_symbols, seed)
    else:
        sym = np.asarray(symbols, dtype=int)
        if sym.shape != (n,) or sym.min() < 1 or sym.max() > num_symbols:
            raise ParameterError("forced symbols must be one value in 1..num_symbols per vertex")
    stat = np.zeros(n) if areas is None else np.asarray(areas, dtype=float)
    pos = tri.vertices

    colors = [0] * n
    radius = [0.0] * n
    for k in range(1, num_symbols + 1):
        members = [v for v in range(n) if sym[v] == k]
        for comp in components(tri.neighbor_lists, members):
            if len(comp) > component_cap:
                raise OversizedComponentError(comp, f"symbol {k} component above cap {component_cap}")
            external = outer_boundary(tri, comp) if external_face_trick else ()
            sub = {v: tri.neighbor_lists[v] for v in comp}
            local = four_color_component(sub, external, _component_order(comp, stat, pos), node_budget)
            for v, c in local.items():
                if external_face_trick:
                    colors[v] = 0 if c == 0 else 3 * (k - 1) + c
                else:
                    colors[v] = 4 * (k - 1) + c
            idx = np.asarray(comp)
            pts = pos[idx]
            for j, v in enumerate(comp):
                radius[v] = float(np.hypot(*(pts - pts[j]).T).max())

    palette = 3 * num_symbols + 1 if external_face_trick else 4 * num_symbols
    return Coloring(
        tuple(colors),
        randomized_scheme_name(num_symbols, external_face_trick),
        palette,
        seed=seed,
        symbols=tuple(int(s) for s in sym),
        component_radius=tuple(radius),
    )


def zero_zero_edges(coloring: Coloring, adjacency: Adjacency) -> List[Tuple[int, int]]:
    """Edges between different components that are both colored 0."""

    sym = coloring.symbols
    return [
        (u, v)
        for u, nbrs in iter_adjacency(adjacency)
        for v in nbrs
        if u < v
        and coloring.colors[u] == 0
        and coloring.colors[v] == 0
        and (sym is None or sym[u] != sym[v])
    ]


@dataclass(frozen=True)
class CellInterval1D:
    """Cells of a 1-D point sample; the two end cells are unbounded."""

    sorted_points: np.ndarray
    cell_lengths: np.ndarray
    interior: np.ndarray

    @classmethod
    def from_points(cls, points: Sequence[float]) -> "CellInterval1D":
        x = np.sort(np.asarray(points, dtype=float))
        if len(x) < 3:
            raise ParameterError(f"need at least 3 points, got {len(x)}")
        if np.any(np.diff(x) <= 0):
            raise ParameterError("1-D points must be distinct")
        mids = (x[1:] + x[:-1]) / 2.0
        lengths = np.full(len(x), math.inf)
        lengths[1:-1] = np.diff(mids)
        interior = np.ones(len(x), dtype=bool)
        interior[[0, -1]] = False
        return cls(x, lengths, interior)

    @classmethod
    def from_lengths(cls, interior_lengths: Sequence[float]) -> "CellInterval1D":
        """Interior cells with the given lengths, flanked by two boundary cells."""

        inner = np.asarray(interior_lengths, dtype=float)
        if np.any(inner <= 0):
            raise ParameterError("cell lengths must be positive")
        lengths = np.concatenate([[math.inf], inner, [math.inf]])
        edges = np.concatenate([[0.0], np.cumsum(inner)])
        centers = np.concatenate([[edges[0] - 1.0], (edges[1:] + edges[:-1]) / 2.0, [edges[-1] + 1.0]])
        interior = np.ones(len(lengths), dtype=bool)
        interior[[0, -1]] = False
        return cls(centers, lengths, interior)

    def adjacency(self) -> List[Tuple[int, ...]]:
        n = len(self.cell_lengths)
        return [tuple(j for j in (i - 1, i + 1) if 0 <= j < n) for i in range(n)]


def _greens(cells: CellInterval1D) -> List[int]:
    L, inner = cells.cell_lengths, cells.interior
    n = len(L)
    greens = []
    i = 1
    while i < n - 1:
        if not (inner[i - 1] and inner[i] and inner[i + 1]):
            i += 1
            continue
        j = i
        while j + 1 < n and inner[j + 1] and L[j + 1] == L[i]:
            j += 1
        if j + 1 < n and inner[j + 1] and L[i - 1] > L[i] and L[j + 1] > L[i]:
            greens.append(i)
            if j > i:
                logger.warning("1-D cells %d..%d share the minimal length %r; greening the leftmost", i, j, L[i])
        i = j + 1
    return greens


def color_1d_cells(cells: CellInterval1D) -> Coloring:
    """Green/red/blue coloring of :class:`CellInterval1D` (colors 0/1/2)."""

    L = cells.cell_lengths
    n = len(L)
    colors = [-1] * n
    greens = _greens(cells)

    def alternate(indices: Iterable[int]) -> None:
        for step, i in enumerate(indices):
            colors[i] = RED if step % 2 == 0 else BLUE

    if not greens:
        logger.warning("no strict local minimum among %d cells; alternating from the left", n)
        alternate(range(n))
    else:
        for g in greens:
            colors[g] = GREEN
        alternate(range(greens[0] - 1, -1, -1))
        alternate(range(greens[-1] + 1, n))
        for a, b in zip(greens, greens[1:]):
            if L[a] < L[b]:
                alternate(range(a + 1, b))
            elif L[b] < L[a]:
                alternate(range(b - 1, a, -1))
            else:
                logger.warning("green cells %d and %d have equal length; starting from the left", a, b)
                alternate(range(a + 1, b))
    return Coloring(tuple(colors), "ONE_DIM3", 3)


def color_1d(points: Sequence[float]) -> Coloring:
    """Three-color the 1-D Voronoi cells of ``points``."""

    return color_1d_cells(CellInterval1D.from_points(points))


def sample_poisson_line(length: float, intensity: float = 1.0, seed: int = 0) -> np.ndarray:
    """Sorted Poisson sample on ``[0, length)``."""

    if not (intensity > 0 and length > 0):
        raise ParameterError(f"need positive length and intensity, got {length}, {intensity}")
    rng = make_rng(seed)
    n = int(rng.poisson(intensity * length))
    return np.sort(rng.uniform(0.0, length, size=n))


__all__ = [
    "GREEN",
    "RED",
    "BLUE",
    "mex",
    "ProperReport",
    "Coloring",
    "verify_proper",
    "OrderDag",
    "cell_statistic",
    "build_order_dag",
    "topological_order",
    "evaluate_mex",
    "color_deterministic",
    "predecessor_set",
    "predecessor_radii",
    "clean_vertices",
    "four_color_component",
    "draw_symbols",
    "color_randomized",
    "zero_zero_edges",
    "CellInterval1D",
    "color_1d_cells",
    "color_1d",
    "sample_poisson_line",
]
