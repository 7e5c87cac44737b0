"""
Sealed squares, long edges, typical squares, the Omega events and
dependent site processes.

Everything in this module is a deterministic function of a point sample (or
of its triangulation); the Monte-Carlo loops that repeat these checks over
many seeds live in :mod:`experiments`.

Usage example:

    from scripts.poisson_voronoi.geometry import Window
    from scripts.poisson_voronoi.percolation import is_sealed, omega_report

    check = is_sealed(pts.coords, Window.square(40.0), alpha=10.0)
    report = omega_report(tri, R=20.0)

"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import norm

from .errors import ContractError, ParameterError
from .geometry import Point, Triangulation, VoronoiCell, Window, iter_clique_triangles
from .peeling import SURVIVOR, PeelConfig, UnionFind, peel_levels, peel_to_core
from .planar import min_core_size_bound
from .predicates import orient_sign

logger = logging.getLogger(__name__)

Segment = Tuple[Point, Point]

# Interval endpoints closer than this are treated as touching.
COVER_TOL = 1e-12


def _coords(points) -> np.ndarray:
    arr = getattr(points, "coords", points)
    return np.asarray(arr, dtype=float).reshape(-1, 2)


def _square_edges(square: Window) -> List[Tuple[Point, Point]]:
    corners = square.polygon()
    return [(corners[i], corners[(i + 1) % 4]) for i in range(4)]


@dataclass(frozen=True)
class SealingCheck:
    square: Window
    alpha: float
    sealed: bool
    uncovered_segments: Tuple[Segment, ...]


def is_sealed(points, square: Window, alpha: float) -> SealingCheck:
    """Exact test that every boundary point of ``square`` is within ``alpha`` of a point.

    A point at distance ``d <= alpha`` from the line of an edge covers the
    sub-interval of half-length ``sqrt(alpha^2 - d^2)`` around its
    projection. The square is sealed iff the union of these intervals covers
    all four edges. Only points within ``alpha`` of the boundary matter.
    """

    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    xy = _coords(points)
    uncovered: List[Segment] = []
    for a, b in _square_edges(square):
        length = math.hypot(b.x - a.x, b.y - a.y)
        ux, uy = (b.x - a.x) / length, (b.y - a.y) / length
        if len(xy):
            rel = xy - np.array([a.x, a.y])
            t = rel @ np.array([ux, uy])
            d = np.abs(rel @ np.array([-uy, ux]))
            near = (d <= alpha) & (t + alpha >= 0.0) & (t - alpha <= length)
            half = np.sqrt(alpha * alpha - d[near] ** 2)
            reaches = (t[near] + half >= 0.0) & (t[near] - half <= length)
            lo = np.clip(t[near] - half, 0.0, length)[reaches]
            hi = np.clip(t[near] + half, 0.0, length)[reaches]
            order = np.argsort(lo, kind="stable")
            intervals = zip(lo[order], hi[order])
        else:
            intervals = iter(())
        reach = 0.0
        for s, e in intervals:
            if s > reach + COVER_TOL:
                uncovered.append(_segment(a, ux, uy, reach, s))
            reach = max(reach, e)
        if reach < length - COVER_TOL:
            uncovered.append(_segment(a, ux, uy, reach, length))
    return SealingCheck(square, float(alpha), not uncovered, tuple(uncovered))


def _segment(a: Point, ux: float, uy: float, s: float, e: float) -> Segment:
    return Point(a.x + s * ux, a.y + s * uy), Point(a.x + e * ux, a.y + e * uy)


def boundary_net(square: Window, alpha: float) -> np.ndarray:
    """``ceil(8R / alpha)`` boundary points, each boundary point within ``alpha/2`` of one."""

    m = math.ceil(8.0 * square.half_side / alpha)
    perimeter = 8.0 * square.half_side
    side = 2.0 * square.half_side
    x0, y0, _, _ = square.bounds
    out = []
    for i in range(m):
        s = (i + 0.5) * perimeter / m
        k, t = divmod(s, side)
        k = int(k) % 4
        if k == 0:
            out.append((x0 + t, y0))
        elif k == 1:
            out.append((x0 + side, y0 + t))
        elif k == 2:
            out.append((x0 + side - t, y0 + side))
        else:
            out.append((x0, y0 + side - t))
    return np.array(out, dtype=float)


def net_sealed(points, square: Window, alpha: float) -> bool:
    """Sufficient sealing condition: every net point has a sample point within ``alpha/2``."""

    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    xy = _coords(points)
    if not len(xy):
        return False
    dist, _ = cKDTree(xy).query(boundary_net(square, alpha))
    return bool(np.all(dist <= alpha / 2.0))


def sealed_failure_bound(R: float, alpha: float) -> float:
    """``ceil(8R/alpha) * exp(-pi alpha^2 / 4)``."""

    return math.ceil(8.0 * R / alpha) * math.exp(-math.pi * alpha * alpha / 4.0)


def long_edge_bound(rho: float, ell: float) -> float:
    """``(sqrt(32) rho / ell + 8)^2 * exp(-ell^2 / 32)``."""

    if not ell > 0:
        raise ParameterError(f"ell must be positive, got {ell}")
    return (math.sqrt(32.0) * rho / ell + 8.0) ** 2 * math.exp(-ell * ell / 32.0)


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""

    if trials <= 0:
        raise ParameterError("need at least one trial")
    z = float(norm.ppf(0.5 + confidence / 2.0))
    p = successes / trials
    denom = 1.0 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def segment_meets_square(p: Sequence[float], q: Sequence[float], square: Window) -> bool:
    """Liang-Barsky test of the closed segment ``pq`` against the closed square."""

    x0, y0, x1, y1 = square.bounds
    dx, dy = q[0] - p[0], q[1] - p[1]
    t0, t1 = 0.0, 1.0
    for pk, qk in ((-dx, p[0] - x0), (dx, x1 - p[0]), (-dy, p[1] - y0), (dy, y1 - p[1])):
        if pk == 0:
            if qk < 0:
                return False
            continue
        r = qk / pk
        if pk < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return False
    return True


def find_long_edges(tri: Triangulation, square: Window, ell: float) -> List[Tuple[int, int]]:
    """Delaunay edges of length at least ``ell`` that meet ``square``."""

    if not ell > 0:
        raise ParameterError(f"ell must be positive, got {ell}")
    edges = np.array(tri.edges(), dtype=int).reshape(-1, 2)
    if not len(edges):
        return []
    v = tri.vertices
    lengths = np.hypot(*(v[edges[:, 0]] - v[edges[:, 1]]).T)
    out = []
    for a, b in edges[lengths >= ell]:
        if segment_meets_square(v[a], v[b], square):
            out.append((int(a), int(b)))
    return out


def polygon_meets_square(poly: Sequence[Point], square: Window) -> bool:
    if any(square.contains(p) for p in poly):
        return True
    if any(segment_meets_square(poly[i], poly[(i + 1) % len(poly)], square) for i in range(len(poly))):
        return True
    # Square strictly inside the convex polygon.
    c = square.center
    return all(orient_sign(poly[i], poly[(i + 1) % len(poly)], c) > 0 for i in range(len(poly)))


class SquareClass(str, Enum):
    TYPICAL = "TYPICAL"
    RARE = "RARE"


class CliqueIndex:
    """Counter-clockwise 3-cliques of a triangulation, bucketed on a grid.

    Each clique lands in the bucket of the lower-left corner of its bounding
    box. Buckets are as wide as the widest box, so a point can only be
    strictly inside cliques filed in its own bucket or the ones to its left
    and below.
    """

    def __init__(self, tri: Triangulation) -> None:
        pts = tri.points
        cliques = []
        for a, b, c in iter_clique_triangles(tri):
            o = orient_sign(pts[a], pts[b], pts[c])
            if o == 0:
                continue
            cliques.append((a, b, c) if o > 0 else (a, c, b))
        self.points = pts
        self.cliques = np.array(cliques, dtype=int).reshape(-1, 3)
        xy = tri.vertices[self.cliques] if len(cliques) else np.zeros((0, 3, 2))
        self.lo = xy.min(axis=1) if len(cliques) else np.zeros((0, 2))
        self.hi = xy.max(axis=1) if len(cliques) else np.zeros((0, 2))
        extent = float((self.hi - self.lo).max()) if len(cliques) else 1.0
        self.cell = max(extent, 1e-12)
        self.origin = self.lo.min(axis=0) if len(cliques) else np.zeros(2)
        self.buckets: Dict[Tuple[int, int], List[int]] = {}
        for i, key in enumerate(self._bucket_keys(self.lo)):
            self.buckets.setdefault(key, []).append(i)

    def __len__(self) -> int:
        return len(self.cliques)

    def _bucket_keys(self, xy: np.ndarray) -> List[Tuple[int, int]]:
        ij = np.floor((np.asarray(xy, dtype=float) - self.origin) / self.cell).astype(int)
        return [(int(i), int(j)) for i, j in ij.reshape(-1, 2)]

    def _candidates(self, p: Point) -> List[int]:
        (i, j), = self._bucket_keys(np.array([p.x, p.y]))
        rows: List[int] = []
        for di in (-1, 0):
            for dj in (-1, 0):
                rows.extend(self.buckets.get((i + di, j + dj), ()))
        return rows

    def strictly_inside_any(self, v: int, brute_force: bool = False) -> bool:
        p = self.points[v]
        if brute_force:
            rows = range(len(self.cliques))
        else:
            rows = [
                i for i in self._candidates(p)
                if self.lo[i, 0] < p.x < self.hi[i, 0] and self.lo[i, 1] < p.y < self.hi[i, 1]
            ]
        pts = self.points
        for i in rows:
            a, b, c = (int(x) for x in self.cliques[i])
            if v in (a, b, c):
                continue
            if (
                orient_sign(pts[a], pts[b], p) > 0
                and orient_sign(pts[b], pts[c], p) > 0
                and orient_sign(pts[c], pts[a], p) > 0
            ):
                return True
        return False

    def witnesses(self, tri: Triangulation, candidates: Optional[Sequence[int]] = None) -> np.ndarray:
        """Boolean mask of vertices with degree below 6 that lie in no clique triangle."""

        mask = np.zeros(tri.n, dtype=bool)
        pool = range(tri.n) if candidates is None else candidates
        for v in pool:
            v = int(v)
            if tri.degree(v) < 6 and not self.strictly_inside_any(v):
                mask[v] = True
        return mask


def classify_square(
    tri: Triangulation,
    square: Window,
    index: Optional[CliqueIndex] = None,
    brute_force: bool = False,
) -> SquareClass:
    """TYPICAL iff some vertex in ``square`` has degree below 6 and lies in no 3-clique triangle."""

    if index is None:
        index = CliqueIndex(tri)
    inside = np.nonzero(square.contains_array(tri.vertices))[0]
    for v in inside:
        v = int(v)
        if tri.degree(v) < 6 and not index.strictly_inside_any(v, brute_force):
            return SquareClass.TYPICAL
    return SquareClass.RARE


def square_tiling(R: float, r: float) -> Tuple[int, float]:
    """Number of boxes per side of ``Q(0, 3R)`` and their side length.

    ``6R / r`` is rounded to the nearest odd integer so that a box sits at
    the centre; the resulting side differs slightly from ``r``.
    """

    ratio = 6.0 * R / r
    m = max(1, 2 * int(round((ratio - 1.0) / 2.0)) + 1)
    return m, 6.0 * R / m


def tiling_boxes(R: float, m: int, side: float) -> List[Window]:
    start = -3.0 * R + side / 2.0
    return [
        Window(Point(start + i * side, start + j * side), side / 2.0)
        for j in range(m)
        for i in range(m)
    ]


def _box_indices(xy: np.ndarray, R: float, m: int, side: float) -> np.ndarray:
    """Row-major index (as in :func:`tiling_boxes`) of the box holding each point of ``Q(0, 3R)``."""

    ij = np.floor((np.asarray(xy, dtype=float).reshape(-1, 2) + 3.0 * R) / side).astype(int)
    ij = np.clip(ij, 0, m - 1)
    return ij[:, 1] * m + ij[:, 0]


@dataclass(frozen=True)
class OmegaReport:
    """The five Omega events at scale ``R`` with the counts that decide them."""

    R: float
    L: float
    r: float
    boxes_per_side: int
    box_side: float
    omega0: bool
    omega1: bool
    omega2: bool
    omega3: bool
    omega4: bool
    long_edges: int
    rare_boxes: int
    max_box_count: int
    box_threshold: float
    annulus_count: int
    annulus_threshold: float
    core_size: int
    core_bound: float
    boundary_boxes: int
    boundary_lemma_ok: bool
    core_lemma_ok: bool
    extras: Dict[str, float] = field(default_factory=dict)

    def as_row(self) -> Dict[str, object]:
        row = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "extras"}
        row.update(self.extras)
        return row


def omega_report(tri: Triangulation, R: float, intensity: float = 1.0) -> OmegaReport:
    """Evaluate the Omega events of ``tri`` around the origin.

    Raises
    ------
    ContractError
        The triangulation's window does not contain ``Q(0, 3R + log R)``.
    """

    if not R > 1:
        raise ParameterError(f"R must exceed 1 so that log R > 0, got {R}")
    L = math.log(R)
    r = R ** (1.0 / 3.0)
    outer = 3.0 * R + L
    if tri.window is None or not _window_covers(tri.window, Window.square(outer)):
        raise ContractError(f"triangulation window must contain Q(0, {outer:.3f})")

    m, side = square_tiling(R, r)
    if abs(side - r) > 1e-9 * r:
        logger.warning("box side adjusted from r=%.6f to %.6f so that 6R/r=%d is odd", r, side, m)

    region = Window.square(3.0 * R)
    long_edges = find_long_edges(tri, region, L)

    index = CliqueIndex(tri)
    in_region = region.contains_array(tri.vertices)
    region_ids = np.nonzero(in_region)[0]
    box_of = _box_indices(tri.vertices[region_ids], R, m, side)
    counts = np.bincount(box_of, minlength=m * m)
    witness = index.witnesses(tri, region_ids)[region_ids]
    typical = np.zeros(m * m, dtype=bool)
    typical[box_of[witness]] = True
    rare = int((~typical).sum())

    box_threshold = 2.0 * intensity * side * side
    annulus = Window.annulus(3.0 * R, outer)
    annulus_count = int(annulus.contains_array(tri.vertices).sum())
    annulus_threshold = 2.0 * intensity * annulus.area

    levels = peel_to_core(tri, PeelConfig(max_deg=5, region=region))
    core = np.array([v for v in region_ids if levels.level(int(v)) == SURVIVOR], dtype=int)
    core_in_region = tri.vertices[core] if len(core) else np.zeros((0, 2))
    omega0 = bool(len(core_in_region) and Window.square(R).contains_array(core_in_region).any())

    core_boxes = np.zeros(m * m, dtype=bool)
    if len(core):
        core_boxes[_box_indices(core_in_region, R, m, side)] = True
    boundary_boxes = int((typical & core_boxes).sum())
    omega1 = bool(long_edges)
    boundary_ok = omega1 or boundary_boxes <= 30 * annulus_count
    core_bound = min_core_size_bound(R, L)
    core_ok = not (omega0 and not omega1) or len(core_in_region) >= core_bound

    return OmegaReport(
        R=R,
        L=L,
        r=r,
        boxes_per_side=m,
        box_side=side,
        omega0=omega0,
        omega1=omega1,
        omega2=rare > 0,
        omega3=bool(counts.max() >= box_threshold),
        omega4=annulus_count > annulus_threshold,
        long_edges=len(long_edges),
        rare_boxes=rare,
        max_box_count=int(counts.max()),
        box_threshold=box_threshold,
        annulus_count=annulus_count,
        annulus_threshold=annulus_threshold,
        core_size=len(core_in_region),
        core_bound=core_bound,
        boundary_boxes=boundary_boxes,
        boundary_lemma_ok=boundary_ok,
        core_lemma_ok=core_ok,
    )


def _window_covers(outer: Window, inner: Window) -> bool:
    ox0, oy0, ox1, oy1 = outer.bounds
    ix0, iy0, ix1, iy1 = inner.bounds
    return ox0 <= ix0 and oy0 <= iy0 and ox1 >= ix1 and oy1 >= iy1


@dataclass(frozen=True)
class SiteProcess:
    """Open/closed states on a finite patch of the lattice ``origin + spacing * Z^2``.

    ``read_half`` is the half side of the square around each site that its
    predicate reads; sites ``k`` or more lattice steps apart read disjoint
    squares.
    """

    spacing: float
    origin: Point
    open_sites: np.ndarray
    dependency_range: int
    read_half: float
    predicate: str

    def __post_init__(self) -> None:
        if self.open_sites.ndim != 2:
            raise ParameterError("open_sites must be a 2-D boolean array")
        if self.dependency_range * self.spacing <= 2.0 * self.read_half:
            raise ParameterError(
                f"{self.predicate}: sites {self.dependency_range} steps apart would share read windows"
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.open_sites.shape  # type: ignore[return-value]

    def site(self, i: int, j: int) -> Point:
        return Point(self.origin.x + i * self.spacing, self.origin.y + j * self.spacing)

    def read_window(self, i: int, j: int) -> Window:
        return Window(self.site(i, j), self.read_half)

    def open_fraction(self) -> float:
        return float(self.open_sites.mean()) if self.open_sites.size else 0.0


def site_process_components(process: SiteProcess) -> List[int]:
    """Sizes of the open clusters (nearest-neighbour lattice adjacency), largest first."""

    opened = [tuple(int(x) for x in ij) for ij in np.argwhere(process.open_sites)]
    uf = UnionFind(opened)
    open_set = set(opened)
    for i, j in opened:
        for nb in ((i + 1, j), (i, j + 1)):
            if nb in open_set:
                uf.union((i, j), nb)
    return sorted((len(g) for g in uf.groups()), reverse=True)


def bernoulli_site_process(shape: Tuple[int, int], p: float, rng: np.random.Generator, k: int = 1) -> SiteProcess:
    """Independent sites (``k = 1``), open with probability ``p``."""

    if not 0 <= p <= 1:
        raise ParameterError(f"p must be a probability, got {p}")
    return SiteProcess(1.0, Point(0.0, 0.0), rng.random(shape) < p, k, 0.0, "bernoulli")


def path_count_bound(p0: float, k: int, length: int) -> float:
    """``(4 p0^(1/k^2))^length``: union bound on an open lattice path of that length."""

    if k < 1 or length < 0 or not 0 <= p0 <= 1:
        raise ParameterError(f"bad path-count arguments p0={p0}, k={k}, length={length}")
    return (4.0 * p0 ** (1.0 / (k * k))) ** length


def critical_marginal(k: int) -> float:
    """``4^(-k^2)``, the marginal below which a ``k``-dependent process has no infinite path."""

    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    return 4.0 ** (-(k * k))


def _sites(shape: Tuple[int, int]) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(shape[0]) for j in range(shape[1])]


def _check_cover(tri: Triangulation, process_window: Window) -> None:
    if tri.window is None or not _window_covers(tri.window, process_window):
        raise ContractError(f"triangulation window must contain {process_window}")


def removal_site_process(
    tri: Triangulation,
    R: float,
    shape: Tuple[int, int],
    rounds: int,
    origin: Tuple[float, float] = (0.0, 0.0),
) -> SiteProcess:
    """Sites of ``R Z^2``; a site ``x`` is open when

    * ``Q(x, 4R)`` is not ``R``-sealed, or
    * ``rounds`` rounds of degree-5 peeling restricted to ``Q(x, 3R)`` leave a
      vertex in ``Q(x, R)``, or
    * an edge of length at least ``R/2`` meets ``Q(x, R/2)``.

    Each predicate reads only ``Q(x, 5R)``, so the process is 11-dependent.
    """

    proc_origin = Point(*origin)
    extent = Window(
        Point(proc_origin.x + R * (shape[0] - 1) / 2.0, proc_origin.y + R * (shape[1] - 1) / 2.0),
        R * max(shape[0] - 1, shape[1] - 1) / 2.0 + 5.0 * R,
    )
    _check_cover(tri, extent)
    pts = tri.vertices
    edges = tri.edges()
    long_edges = [(a, b) for a, b in edges if tri.edge_length(a, b) >= R / 2.0]
    opened = np.zeros(shape, dtype=bool)
    for i, j in _sites(shape):
        x = Point(proc_origin.x + i * R, proc_origin.y + j * R)
        if not is_sealed(pts[Window(x, 5.0 * R).contains_array(pts)], Window(x, 4.0 * R), R).sealed:
            opened[i, j] = True
            continue
        small = Window(x, R / 2.0)
        if any(segment_meets_square(pts[a], pts[b], small) for a, b in long_edges):
            opened[i, j] = True
            continue
        region = [int(v) for v in np.nonzero(Window(x, 3.0 * R).contains_array(pts))[0]]
        deleted, _ = peel_levels(tri.neighbor_lists, 5, region, rounds)
        core = [v for v in region if v not in deleted]
        if core and Window(x, R).contains_array(pts[core]).any():
            opened[i, j] = True
    return SiteProcess(R, proc_origin, opened, 11, 5.0 * R, f"removal(M={rounds})")


def area_site_process(
    tri: Triangulation,
    cells: Sequence[VoronoiCell],
    R: float,
    interval: Tuple[float, float],
    shape: Tuple[int, int],
    origin: Tuple[float, float] = (0.0, 0.0),
) -> SiteProcess:
    """Sites of ``(2R) Z^2`` with ``alpha = R/8``; a site ``x`` is open when

    * some cell meeting ``Q(x, R)`` has area in ``[lo, hi)``, or
    * ``Q(x, R + alpha)`` or ``Q(x, R + 3 alpha)`` is not ``alpha``-sealed.

    Predicates read ``Q(x, R + 4 alpha)``, so the process is 2-dependent.
    """

    lo, hi = interval
    alpha = R / 8.0
    spacing = 2.0 * R
    read_half = R + 4.0 * alpha
    proc_origin = Point(*origin)
    extent = Window(
        Point(proc_origin.x + spacing * (shape[0] - 1) / 2.0, proc_origin.y + spacing * (shape[1] - 1) / 2.0),
        spacing * max(shape[0] - 1, shape[1] - 1) / 2.0 + read_half,
    )
    _check_cover(tri, extent)
    pts = tri.vertices
    flagged = [c for c in cells if lo <= c.area < hi]
    opened = np.zeros(shape, dtype=bool)
    for i, j in _sites(shape):
        x = Point(proc_origin.x + i * spacing, proc_origin.y + j * spacing)
        local = pts[Window(x, read_half).contains_array(pts)]
        if not (
            is_sealed(local, Window(x, R + alpha), alpha).sealed
            and is_sealed(local, Window(x, R + 3.0 * alpha), alpha).sealed
        ):
            opened[i, j] = True
            continue
        square = Window(x, R)
        if any(polygon_meets_square(c.polygon, square) for c in flagged):
            opened[i, j] = True
    return SiteProcess(spacing, proc_origin, opened, 2, read_half, f"area[{lo}, {hi})")


@dataclass(frozen=True)
class AreaStatistics:
    counts: np.ndarray
    bin_edges: np.ndarray
    min_gap: float
    degenerate: bool
    longest_decreasing_path: int
    n_cells: int


def area_statistics(
    cells: Sequence[VoronoiCell],
    tri: Optional[Triangulation] = None,
    bins: int = 100,
    value_range: Tuple[float, float] = (0.0, 4.0),
) -> AreaStatistics:
    """Histogram, smallest pairwise gap and longest area-decreasing path of clean cells.

    ``degenerate`` flags a zero gap, which Poisson input never produces.
    The path length counts vertices along a Delaunay path whose areas
    strictly decrease; it needs ``tri``.
    """

    clean = [c for c in cells if not c.contaminated]
    areas = np.array([c.area for c in clean], dtype=float)
    counts, edges = np.histogram(areas, bins=bins, range=value_range)
    gaps = np.diff(np.sort(areas))
    min_gap = float(gaps.min()) if len(gaps) else math.inf
    longest = 0
    if tri is not None and len(clean):
        area_of = {c.site_index: c.area for c in clean}
        best: Dict[int, int] = {}
        for v in sorted(area_of, key=lambda s: area_of[s]):
            lower = [best[u] for u in tri.neighbor_lists[v] if u in best and area_of[u] < area_of[v]]
            best[v] = 1 + max(lower, default=0)
        longest = max(best.values())
    if len(gaps) and min_gap == 0.0:
        logger.warning("two clean cells have identical areas; input is not in general position")
    return AreaStatistics(counts, edges, min_gap, bool(len(gaps) and min_gap == 0.0), longest, len(clean))


__all__ = [
    "SealingCheck",
    "is_sealed",
    "boundary_net",
    "net_sealed",
    "sealed_failure_bound",
    "long_edge_bound",
    "wilson_interval",
    "segment_meets_square",
    "find_long_edges",
    "polygon_meets_square",
    "SquareClass",
    "CliqueIndex",
    "classify_square",
    "square_tiling",
    "tiling_boxes",
    "OmegaReport",
    "omega_report",
    "SiteProcess",
    "site_process_components",
    "bernoulli_site_process",
    "path_count_bound",
    "critical_marginal",
    "removal_site_process",
    "area_site_process",
    "AreaStatistics",
    "area_statistics",
]
