"""
Poisson sampling, Delaunay triangulation, Voronoi cells and face traversal.

The triangulation is seeded by Qhull (through ``scipy.spatial.Delaunay``) and
then repaired with Lawson edge flips driven by the exact predicates of
:mod:`predicates`. The flip pass makes the result independent of whatever
diagonal Qhull picked for co-circular quadruples: every incircle decision is
resolved by symbolic perturbation, so identical input gives an identical
triangulation.

Usage example:

    from scripts.poisson_voronoi.geometry import Window, sample_poisson, delaunay, voronoi_cells

    pts = sample_poisson(Window((0.0, 0.0), 10.0), pad_width=5.0, seed=7)
    tri = delaunay(pts)
    cells = voronoi_cells(tri, pts.padded_window)
    print(len(tri.triangles), sum(c.area for c in cells))

"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.spatial import Delaunay as QhullDelaunay
from scipy.spatial import QhullError

from .errors import ContractError, DegenerateInputError, ParameterError
from .predicates import incircle_perturbed, orient_sign

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Tri = Tuple[int, int, int]


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Window:
    """Axis-parallel square ``Q(center, half_side)``.

    With ``inner_radius`` set the window is the square annulus
    ``Q(center, half_side) \\ int Q(center, inner_radius)``.
    """

    center: Point
    half_side: float
    inner_radius: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))
        if not all(math.isfinite(c) for c in self.center):
            raise ParameterError(f"window center must be finite, got {self.center}")
        if not (math.isfinite(self.half_side) and self.half_side > 0):
            raise ParameterError(f"window half side must be positive, got {self.half_side}")
        if self.inner_radius is not None and not (0 < self.inner_radius < self.half_side):
            raise ParameterError(
                f"annulus needs 0 < inner_radius < half_side, got {self.inner_radius} / {self.half_side}"
            )

    @classmethod
    def square(cls, half_side: float, center: Tuple[float, float] = (0.0, 0.0)) -> "Window":
        return cls(Point(*center), half_side)

    @classmethod
    def annulus(cls, inner: float, outer: float, center: Tuple[float, float] = (0.0, 0.0)) -> "Window":
        return cls(Point(*center), outer, inner)

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        cx, cy = self.center
        h = self.half_side
        return cx - h, cy - h, cx + h, cy + h

    @property
    def area(self) -> float:
        outer = (2.0 * self.half_side) ** 2
        if self.inner_radius is None:
            return outer
        return outer - (2.0 * self.inner_radius) ** 2

    def padded(self, pad: float) -> "Window":
        if pad < 0:
            raise ParameterError(f"pad width must be nonnegative, got {pad}")
        return Window(self.center, self.half_side + pad)

    def outer(self) -> "Window":
        return Window(self.center, self.half_side)

    def contains(self, p: Sequence[float]) -> bool:
        dx = abs(p[0] - self.center.x)
        dy = abs(p[1] - self.center.y)
        if max(dx, dy) > self.half_side:
            return False
        if self.inner_radius is not None and max(dx, dy) < self.inner_radius:
            return False
        return True

    def contains_array(self, coords: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`contains` over an ``(n, 2)`` array."""

        d = np.max(np.abs(np.asarray(coords, dtype=float) - np.asarray(self.center)), axis=1)
        mask = d <= self.half_side
        if self.inner_radius is not None:
            mask &= d >= self.inner_radius
        return mask

    def polygon(self) -> List[Point]:
        """Corners of the outer square in counter-clockwise order."""

        x0, y0, x1, y1 = self.bounds
        return [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]

    def to_dict(self) -> Dict[str, object]:
        return {
            "center": [self.center.x, self.center.y],
            "half_side": self.half_side,
            "inner_radius": self.inner_radius,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "Window":
        cx, cy = data["center"]  # type: ignore[misc]
        return cls(Point(cx, cy), float(data["half_side"]), data.get("inner_radius"))  # type: ignore[arg-type]


@dataclass(frozen=True, eq=False)
class PointSet:
    """Finite point sample together with the window it was drawn on."""

    coords: np.ndarray
    sample_window: Window
    pad_width: float = 0.0
    intensity: float = 1.0
    seed: Optional[int] = None

    def __len__(self) -> int:
        return int(self.coords.shape[0])

    @property
    def points(self) -> List[Point]:
        return [Point(float(x), float(y)) for x, y in self.coords]

    @property
    def padded_window(self) -> Window:
        return self.sample_window.padded(self.pad_width)

    @classmethod
    def from_points(
        cls,
        points: Iterable[Sequence[float]],
        window: Optional[Window] = None,
        pad_width: float = 0.0,
        intensity: float = 1.0,
        seed: Optional[int] = None,
    ) -> "PointSet":
        """Validate and wrap explicit coordinates.

        Without a window the tightest square around the points is used
        (half side at least 0.5).
        """

        coords = np.array([[float(p[0]), float(p[1])] for p in points], dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(coords)):
            raise ParameterError("point coordinates must be finite")
        if window is None:
            if len(coords) == 0:
                raise ParameterError("cannot infer a window for an empty point set")
            lo, hi = coords.min(axis=0), coords.max(axis=0)
            half = max(float(np.max(hi - lo)) / 2.0, 0.5)
            window = Window(Point(*((lo + hi) / 2.0)), half)
        padded = window.padded(pad_width)
        if len(coords) and not np.all(padded.contains_array(coords)):
            raise ParameterError("points must lie inside the padded sampling window")
        if len(np.unique(coords, axis=0)) != len(coords):
            raise DegenerateInputError("duplicate points are not allowed")
        coords.setflags(write=False)
        return cls(coords, window, float(pad_width), float(intensity), seed)

    def to_sidecar(self) -> Dict[str, object]:
        return {
            "intensity": self.intensity,
            "seed": self.seed,
            "window": self.sample_window.to_dict(),
            "pad": self.pad_width,
        }


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by ``seed``; ``stream`` selects a disjoint counter block."""

    if seed < 0 or seed >= 2 ** 64:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if stream:
        return np.random.Generator(np.random.Philox(key=seed, counter=stream << 192))
    return np.random.Generator(np.random.Philox(key=seed))


def sample_poisson(
    window: Window,
    pad_width: float = 20.0,
    intensity: float = 1.0,
    seed: int = 0,
) -> PointSet:
    """Draw a homogeneous Poisson process on the padded square.

    The count is Poisson(intensity * padded area) and the points are i.i.d.
    uniform given the count. The same arguments always give the same array.
    """

    if not (intensity > 0 and math.isfinite(intensity)):
        raise ParameterError(f"intensity must be positive, got {intensity}")
    if window.inner_radius is not None:
        raise ParameterError("sampling window must be a square, not an annulus")
    padded = window.padded(pad_width)
    rng = make_rng(seed)
    n = int(rng.poisson(intensity * padded.area))
    x0, y0, x1, y1 = padded.bounds
    coords = rng.uniform(low=(x0, y0), high=(x1, y1), size=(n, 2))
    # Half-open uniform draws never hit the upper edge; duplicates have probability zero.
    if len(np.unique(coords, axis=0)) != n:
        raise DegenerateInputError(f"seed {seed} produced coincident points")
    coords.setflags(write=False)
    logger.debug("sampled %d points on %s (seed %d)", n, padded, seed)
    return PointSet(coords, window, float(pad_width), float(intensity), seed)


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    """Plane graph given by a rotation system.

    ``rotation[v]`` lists the neighbours of ``v`` in counter-clockwise order.
    ``positions`` is optional; it is only needed to locate the outer face.
    """

    rotation: Dict[int, Tuple[int, ...]]
    positions: Optional[Dict[int, Point]] = None

    @property
    def vertices(self) -> List[int]:
        return sorted(self.rotation)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotation.values()) // 2

    def edges(self) -> List[Edge]:
        return sorted((u, v) for u, nbrs in self.rotation.items() for v in nbrs if u < v)

    def check_consistent(self) -> None:
        for u, nbrs in self.rotation.items():
            if len(set(nbrs)) != len(nbrs) or u in nbrs:
                raise ContractError(f"vertex {u} has a loop or a repeated neighbour")
            for v in nbrs:
                if u not in self.rotation.get(v, ()):
                    raise ContractError(f"rotation is not symmetric on edge ({u}, {v})")

    def _next_dart(self, u: int, v: int) -> Edge:
        # Arriving at v from u, leave along the neighbour just clockwise of u.
        rot = self.rotation[v]
        i = rot.index(u)
        return v, rot[(i - 1) % len(rot)]

    def face_from(self, u: int, v: int) -> List[int]:
        face = []
        dart = (u, v)
        while True:
            face.append(dart[0])
            dart = self._next_dart(*dart)
            if dart == (u, v):
                return face
            if len(face) > 2 * self.edge_count() + 1:
                raise ContractError("face traversal does not close; rotation system is inconsistent")

    def faces(self) -> List[List[int]]:
        """Every face as the cyclic list of dart tails, each dart used once."""

        self.check_consistent()
        seen: Set[Edge] = set()
        out: List[List[int]] = []
        for u in self.vertices:
            for v in self.rotation[u]:
                if (u, v) in seen:
                    continue
                face = self.face_from(u, v)
                for a, b in zip(face, face[1:] + face[:1]):
                    seen.add((a, b))
                out.append(face)
        return out

    def outer_face(self) -> List[int]:
        """Boundary walk of the unbounded face (requires positions)."""

        if self.positions is None:
            raise ContractError("outer face needs vertex positions")
        if not self.rotation:
            raise ContractError("empty graph has no outer face")
        v0 = min(self.rotation, key=lambda v: (self.positions[v].x, self.positions[v].y))
        nbrs = self.rotation[v0]
        if not nbrs:
            return [v0]
        # Neighbours of the lowest-leftmost vertex span less than a half turn,
        # so "most counter-clockwise" is a total order under orient_sign.
        p0 = self.positions[v0]
        w = nbrs[0]
        for u in nbrs[1:]:
            if orient_sign(p0, self.positions[w], self.positions[u]) > 0:
                w = u
        return self.face_from(v0, w)

    @classmethod
    def from_positions(cls, positions: Dict[int, Sequence[float]], edges: Iterable[Edge]) -> "EmbeddedGraph":
        """Straight-line embedding; neighbours sorted by polar angle."""

        pos = {v: Point(float(p[0]), float(p[1])) for v, p in positions.items()}
        adj: Dict[int, List[int]] = {v: [] for v in pos}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        rotation = {}
        for v, nbrs in adj.items():
            cx, cy = pos[v]
            rotation[v] = tuple(sorted(nbrs, key=lambda u: math.atan2(pos[u].y - cy, pos[u].x - cx)))
        return cls(rotation, pos)

    @classmethod
    def from_triangles(
        cls,
        triangles: Iterable[Tri],
        positions: Optional[Dict[int, Sequence[float]]] = None,
    ) -> "EmbeddedGraph":
        """Rotation system of a triangulated disk or sphere given CCW triangles."""

        return cls(_rotations_from_triangles(triangles)[0],
                   None if positions is None else {v: Point(*p) for v, p in positions.items()})


def _rotations_from_triangles(triangles: Iterable[Tri]) -> Tuple[Dict[int, Tuple[int, ...]], Set[int]]:
    succ: Dict[int, Dict[int, int]] = {}
    for a, b, c in triangles:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            succ.setdefault(x, {})[y] = z
    rotation: Dict[int, Tuple[int, ...]] = {}
    boundary: Set[int] = set()
    for v, nxt in succ.items():
        targets = set(nxt.values())
        starts = [u for u in nxt if u not in targets]
        if len(starts) > 1:
            raise ContractError(f"vertex {v} is a pinch point of the triangle set")
        start = starts[0] if starts else min(nxt)
        order = [start]
        cur = start
        while cur in nxt and nxt[cur] != start:
            cur = nxt[cur]
            order.append(cur)
            if len(order) > len(nxt) + 1:
                raise ContractError(f"rotation around vertex {v} does not close")
        if starts:
            boundary.add(v)
        rotation[v] = tuple(order)
    return rotation, boundary


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Embedded Delaunay graph with counter-clockwise triangles."""

    vertices: np.ndarray
    triangles: Tuple[Tri, ...]
    neighbor_lists: Tuple[Tuple[int, ...], ...]
    hull_flags: Tuple[bool, ...]
    rotations: Tuple[Tuple[int, ...], ...]
    window: Optional[Window] = None
    flips: int = 0
    points: Tuple[Point, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(Point(float(x), float(y)) for x, y in self.vertices))

    @property
    def n(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        return self.neighbor_lists

    def degree(self, v: int) -> int:
        return len(self.neighbor_lists[v])

    def edges(self) -> List[Edge]:
        return [(u, v) for u, nbrs in enumerate(self.neighbor_lists) for v in nbrs if u < v]

    def edge_length(self, u: int, v: int) -> float:
        return float(np.hypot(*(self.vertices[u] - self.vertices[v])))

    def hull_size(self) -> int:
        return sum(self.hull_flags)

    def embedded(self) -> EmbeddedGraph:
        return self.induced(range(self.n))

    def induced(self, subset: Iterable[int]) -> EmbeddedGraph:
        """Induced subgraph with the rotation system inherited from the plane."""

        keep = set(subset)
        rotation = {v: tuple(u for u in self.rotations[v] if u in keep) for v in keep}
        return EmbeddedGraph(rotation, {v: self.points[v] for v in keep})

    @classmethod
    def from_triangles(
        cls,
        vertices: Sequence[Sequence[float]],
        triangles: Iterable[Tri],
        window: Optional[Window] = None,
        flips: int = 0,
    ) -> "Triangulation":
        coords = np.asarray(vertices, dtype=float).reshape(-1, 2)
        tris = tuple(sorted(_canonical(t) for t in triangles))
        rotation, boundary = _rotations_from_triangles(tris)
        n = len(coords)
        missing = [v for v in range(n) if v not in rotation]
        if missing:
            raise DegenerateInputError(f"vertices {missing[:8]} are not covered by any triangle")
        rotations = tuple(rotation[v] for v in range(n))
        neighbor_lists = tuple(tuple(sorted(r)) for r in rotations)
        hull = tuple(v in boundary for v in range(n))
        coords.setflags(write=False)
        return cls(coords, tris, neighbor_lists, hull, rotations, window, flips)


def _canonical(t: Sequence[int]) -> Tri:
    a, b, c = (int(x) for x in t)
    i = (a, b, c).index(min(a, b, c))
    rot = (a, b, c)[i:] + (a, b, c)[:i]
    return rot  # type: ignore[return-value]


def _check_not_collinear(pts: List[Point]) -> None:
    a, b = pts[0], pts[1]
    if not any(orient_sign(a, b, c) for c in pts[2:]):
        raise DegenerateInputError("all points are collinear")


def _seed_triangles(coords: np.ndarray, pts: List[Point]) -> Dict[Edge, int]:
    try:
        qh = QhullDelaunay(coords, qhull_options="Qbb Qc Qz Q12")
    except QhullError as exc:
        raise DegenerateInputError(f"Qhull failed: {exc}") from exc
    if len(qh.coplanar):
        dropped = sorted(int(i) for i in qh.coplanar[:, 0])
        raise DegenerateInputError(f"Qhull dropped nearly coincident points {dropped[:8]}")

    opp: Dict[Edge, int] = {}
    flat = 0
    for simplex in qh.simplices:
        a, b, c = (int(i) for i in simplex)
        o = orient_sign(pts[a], pts[b], pts[c])
        if o == 0:
            # Qhull's triangulation option may emit zero-area slivers on collinear hull runs.
            flat += 1
            continue
        if o < 0:
            b, c = c, b
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if (x, y) in opp:
                raise DegenerateInputError(f"Qhull triangles overlap on edge ({x}, {y})")
            opp[(x, y)] = z
    if flat:
        logger.debug("discarded %d zero-area Qhull simplices", flat)
    return opp


def _fill_hull_pockets(opp: Dict[Edge, int], pts: List[Point]) -> int:
    """Add triangles until the boundary is exactly convex; returns how many were added."""

    added = 0
    while True:
        nxt = {u: v for (u, v) in opp if (v, u) not in opp}
        pocket = None
        for u, v in nxt.items():
            w = nxt.get(v)
            if w is not None and w != u and orient_sign(pts[u], pts[v], pts[w]) < 0:
                pocket = (u, v, w)
                break
        if pocket is None:
            return added
        u, v, w = pocket
        # Boundary walks u -> v -> w with the hull on the left; v is reflex.
        for x, y, z in ((u, w, v), (w, v, u), (v, u, w)):
            opp[(x, y)] = z
        added += 1


def _legalize(opp: Dict[Edge, int], pts: List[Point]) -> int:
    stack = [e for e in opp if (e[1], e[0]) in opp and e[0] < e[1]]
    stack.sort()
    flips = 0
    while stack:
        a, b = stack.pop()
        c = opp.get((a, b))
        d = opp.get((b, a))
        if c is None or d is None:
            continue
        if incircle_perturbed(pts, a, b, c, d) <= 0:
            continue
        for key in ((a, b), (b, c), (c, a), (b, a), (a, d), (d, b)):
            del opp[key]
        for x, y, z in ((a, d, c), (d, c, a), (c, a, d), (d, b, c), (b, c, d), (c, d, b)):
            opp[(x, y)] = z
        stack.extend(((a, d), (d, b), (b, c), (c, a)))
        flips += 1
    return flips


def delaunay(points: PointSet) -> Triangulation:
    """Delaunay triangulation with exact predicates and symbolic tie-breaking.

    Parameters
    ----------
    points
        At least three points, not all collinear.

    Returns
    -------
    Triangulation
        Triangles are counter-clockwise; no vertex lies strictly inside any
        circumcircle, and co-circular quadruples are resolved by point index.

    Raises
    ------
    DegenerateInputError
        Too few points, collinear input, or a seed triangulation that cannot
        be repaired into a conforming one.
    """

    coords = np.asarray(points.coords, dtype=float)
    n = len(coords)
    if n < 3:
        raise DegenerateInputError(f"need at least 3 points, got {n}")
    pts = [Point(float(x), float(y)) for x, y in coords]
    _check_not_collinear(pts)

    opp = _seed_triangles(coords, pts)
    pockets = _fill_hull_pockets(opp, pts)
    if pockets:
        logger.debug("filled %d hull pockets left by the seed triangulation", pockets)
    flips = _legalize(opp, pts)

    tris = {_canonical((a, b, c)) for (a, b), c in opp.items()}
    tri = Triangulation.from_triangles(coords, tris, window=points.padded_window, flips=flips)

    h = tri.hull_size()
    if len(tri.triangles) != 2 * n - 2 - h:
        raise DegenerateInputError(
            f"triangulation is not conforming: {len(tri.triangles)} triangles for n={n}, h={h}"
        )
    logger.info(
        "triangulated %d points: %d triangles, %d hull vertices, %d Lawson flips",
        n, len(tri.triangles), h, flips,
    )
    return tri


@dataclass(frozen=True)
class VoronoiCell:
    site_index: int
    polygon: Tuple[Point, ...]
    area: float
    contaminated: bool


def _clip_halfplane(poly: List[Point], m: Point, normal: Tuple[float, float]) -> List[Point]:
    """Keep the part of ``poly`` with ``(z - m) . normal <= 0`` (Sutherland-Hodgman step)."""

    if not poly:
        return poly
    nx, ny = normal
    out: List[Point] = []
    values = [(p.x - m.x) * nx + (p.y - m.y) * ny for p in poly]
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        fp, fq = values[i], values[(i + 1) % len(poly)]
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append(Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))
    return out


def shoelace_area(poly: Sequence[Sequence[float]]) -> float:
    if len(poly) < 3:
        return 0.0
    xy = np.asarray(poly, dtype=float)
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _touches_boundary(poly: Sequence[Point], clip: Window) -> bool:
    x0, y0, x1, y1 = clip.bounds
    tol = 1e-9 * max(1.0, clip.half_side)
    return any(
        abs(p.x - x0) <= tol or abs(p.x - x1) <= tol or abs(p.y - y0) <= tol or abs(p.y - y1) <= tol
        for p in poly
    )


def voronoi_cells(tri: Triangulation, clip: Optional[Window] = None) -> List[VoronoiCell]:
    """Voronoi cell of every site, clipped to ``clip`` (default: the sampling window).

    Each cell is the window square cut by the bisectors with the site's
    Delaunay neighbours. A cell is contaminated when its polygon reaches the
    window boundary or its site is on the convex hull.
    """

    if clip is None:
        clip = tri.window
    if clip is None:
        raise ContractError("voronoi_cells needs a clip window")
    square = clip.polygon()
    pts = tri.points
    cells = []
    for v, site in enumerate(pts):
        poly = list(square)
        for u in tri.neighbor_lists[v]:
            other = pts[u]
            m = Point((site.x + other.x) / 2.0, (site.y + other.y) / 2.0)
            poly = _clip_halfplane(poly, m, (other.x - site.x, other.y - site.y))
        area = shoelace_area(poly)
        if area <= 0:
            raise DegenerateInputError(f"cell of site {v} has non-positive clipped area")
        contaminated = tri.hull_flags[v] or _touches_boundary(poly, clip)
        cells.append(VoronoiCell(v, tuple(poly), area, contaminated))
    return cells


def cell_areas(cells: Sequence[VoronoiCell]) -> np.ndarray:
    return np.array([c.area for c in cells], dtype=float)


def _connected(adj: Dict[int, Tuple[int, ...]]) -> bool:
    if not adj:
        return False
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(adj)


def outer_boundary(tri: Triangulation, subset: Iterable[int]) -> List[int]:
    """Vertices on the unbounded face of the induced subgraph, in walk order.

    Vertices met more than once by the walk (cut vertices, tree paths) are
    listed at their first visit.

    Raises
    ------
    ContractError
        ``subset`` is empty or induces a disconnected subgraph.
    """

    g = tri.induced(subset)
    if not _connected(g.rotation):
        raise ContractError("outer_boundary needs a nonempty connected vertex subset")
    walk = g.outer_face()
    seen: Set[int] = set()
    ordered = []
    for v in walk:
        if v not in seen:
            seen.add(v)
            ordered.append(v)
    return ordered


def iter_clique_triangles(tri: Triangulation) -> Iterator[Tri]:
    """All 3-cliques ``u < v < w`` of the Delaunay graph."""

    nbr_sets = [set(n) for n in tri.neighbor_lists]
    for u in range(tri.n):
        higher = [v for v in tri.neighbor_lists[u] if v > u]
        for i, v in enumerate(higher):
            for w in higher[i + 1:]:
                if w in nbr_sets[v]:
                    yield (u, v, w)


__all__ = [
    "Point",
    "Window",
    "PointSet",
    "EmbeddedGraph",
    "Triangulation",
    "VoronoiCell",
    "make_rng",
    "sample_poisson",
    "delaunay",
    "voronoi_cells",
    "cell_areas",
    "shoelace_area",
    "outer_boundary",
    "iter_clique_triangles",
]
