"""
Exact counting oracles for embedded planar maps.

All checks use integer (or ``Fraction``) arithmetic; nothing here depends on
floating point once the rotation system is known.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Set

import numpy as np

from .errors import ContractError, ParameterError
from .geometry import EmbeddedGraph, Triangulation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlanarMapStats:
    """Degree statistics of a connected plane map.

    Attributes
    ----------
    ld
        Number of vertices of degree at most 5.
    me
        Sum over all faces (outer face included) of ``deg(f) - 3``: the number
        of edges a full triangulation would add.
    face_degrees, vertex_degrees
        Multisets as ``Counter`` objects (degree -> count).
    """

    ld: int
    me: int
    face_degrees: Counter
    vertex_degrees: Counter
    is_maximal_planar: bool
    n_vertices: int
    n_edges: int
    n_faces: int


def map_stats(graph: EmbeddedGraph) -> PlanarMapStats:
    """Face-traversal statistics of a connected simple plane map with >= 3 vertices.

    Raises
    ------
    ContractError
        Fewer than 3 vertices, a disconnected map, or a rotation system whose
        face count violates Euler's formula.
    """

    n = len(graph.rotation)
    if n < 3:
        raise ContractError(f"map_stats needs at least 3 vertices, got {n}")
    faces = graph.faces()
    e = graph.edge_count()
    f = len(faces)
    if n - e + f != 2:
        raise ContractError(
            f"rotation system is not a connected plane map: V - E + F = {n} - {e} + {f} != 2"
        )
    face_degrees = Counter(len(face) for face in faces)
    vertex_degrees = Counter(graph.degree(v) for v in graph.rotation)
    me = sum((k - 3) * c for k, c in face_degrees.items())
    ld = sum(c for k, c in vertex_degrees.items() if k <= 5)
    if me < 0:
        raise ContractError("a face of degree below 3 means the map is not simple")
    return PlanarMapStats(
        ld=ld,
        me=me,
        face_degrees=face_degrees,
        vertex_degrees=vertex_degrees,
        is_maximal_planar=me == 0,
        n_vertices=n,
        n_edges=e,
        n_faces=f,
    )


def check_ld_bound(stats: PlanarMapStats) -> bool:
    """``LD >= (2/5) ME + 12/5``, evaluated as ``5 LD >= 2 ME + 12``."""

    return 5 * stats.ld >= 2 * stats.me + 12


def check_euler_six(graph: EmbeddedGraph) -> bool:
    """``sum_v (6 - deg v) == 12`` for a maximal planar map."""

    stats = map_stats(graph)
    if not stats.is_maximal_planar:
        raise ContractError(f"check_euler_six needs a triangulation, ME = {stats.me}")
    total = sum((6 - k) * c for k, c in stats.vertex_degrees.items())
    return total == 12


def min_core_size_bound(rho: float, ell: float) -> float:
    """Lower bound ``8 rho^2 / (5 ell^2)`` on the core vertex count in ``Q(0, 3 rho)``."""

    if not (ell > 0 and rho > ell):
        raise ParameterError(f"need rho > ell > 0, got rho={rho}, ell={ell}")
    return float(Fraction(8) * Fraction(rho) ** 2 / (Fraction(5) * Fraction(ell) ** 2))


def random_connected_subset(tri: Triangulation, size: int, rng: np.random.Generator) -> List[int]:
    """Grow a connected vertex set of ``size`` vertices by random frontier picks."""

    if not 1 <= size <= tri.n:
        raise ParameterError(f"subset size must be in [1, {tri.n}], got {size}")
    start = int(rng.integers(tri.n))
    chosen: Set[int] = {start}
    frontier = sorted(set(tri.neighbor_lists[start]))
    while len(chosen) < size and frontier:
        v = frontier.pop(int(rng.integers(len(frontier))))
        if v in chosen:
            continue
        chosen.add(v)
        frontier = sorted((set(frontier) | set(tri.neighbor_lists[v])) - chosen)
    return sorted(chosen)


__all__ = [
    "PlanarMapStats",
    "map_stats",
    "check_ld_bound",
    "check_euler_six",
    "min_core_size_bound",
    "random_connected_subset",
]
