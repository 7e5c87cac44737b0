"""
Synchronous low-degree peeling and connected components.

Round ``k`` deletes, all at once, every alive vertex inside the peel region
whose alive-degree is at most ``max_deg``; those vertices get level ``k``.
Vertices that are never deleted are marked :data:`SURVIVOR`.

Usage example:

    from scripts.poisson_voronoi.peeling import PeelConfig, peel_to_core

    levels = peel_to_core(tri, PeelConfig(max_deg=5))
    print(levels.rounds_executed, levels.survivors())

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .errors import ParameterError
from .geometry import Triangulation, Window

logger = logging.getLogger(__name__)

SURVIVOR = -1

Adjacency = Union[Sequence[Sequence[int]], Mapping[int, Sequence[int]]]


def iter_adjacency(adjacency: Adjacency) -> Iterable[Tuple[int, Sequence[int]]]:
    if isinstance(adjacency, Mapping):
        return adjacency.items()
    return enumerate(adjacency)


@dataclass(frozen=True)
class PeelConfig:
    max_deg: int = 5
    region: Optional[Window] = None
    max_rounds: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_deg < 0:
            raise ParameterError(f"max_deg must be nonnegative, got {self.max_deg}")
        if self.max_rounds is not None and self.max_rounds < 0:
            raise ParameterError(f"max_rounds must be nonnegative, got {self.max_rounds}")


@dataclass(frozen=True)
class LevelAssignment:
    levels: Tuple[int, ...]
    rounds_executed: int
    config: PeelConfig

    def __len__(self) -> int:
        return len(self.levels)

    def level(self, v: int) -> int:
        return self.levels[v]

    def survivors(self) -> List[int]:
        return [v for v, lvl in enumerate(self.levels) if lvl == SURVIVOR]

    def all_leveled(self) -> bool:
        return SURVIVOR not in self.levels

    def alive_after(self, rounds: int) -> Set[int]:
        """Vertex set of ``G_rounds``: vertices not deleted in rounds ``0..rounds-1``."""

        return {v for v, lvl in enumerate(self.levels) if lvl == SURVIVOR or lvl >= rounds}


def peel_step(
    adjacency: Adjacency,
    alive: Iterable[int],
    region: Optional[Iterable[int]] = None,
    max_deg: int = 5,
) -> Set[int]:
    """One synchronous deletion round; returns the new alive set.

    Degrees are counted among ``alive`` before any deletion, so the result
    does not depend on the order in which vertices are visited.
    """

    alive_set = set(alive)
    allowed = alive_set if region is None else alive_set & set(region)
    adj = dict(iter_adjacency(adjacency))
    doomed = {v for v in allowed if sum(1 for u in adj[v] if u in alive_set) <= max_deg}
    return alive_set - doomed


def peel_levels(
    adjacency: Adjacency,
    max_deg: int = 5,
    region: Optional[Iterable[int]] = None,
    max_rounds: Optional[int] = None,
) -> Tuple[Dict[int, int], int]:
    """Iterate :func:`peel_step` to a fixpoint.

    Returns ``(deleted, rounds)`` where ``deleted`` maps every removed vertex
    to its level; vertices absent from it are survivors. Only neighbours of
    vertices deleted in one round can become deletable in the next, so each
    round rescans just those, and a small ``region`` never touches the rest
    of the graph.
    """

    if region is None:
        deletable = {v for v, _ in iter_adjacency(adjacency)}
    else:
        deletable = set(region)
    degree: Dict[int, int] = {}

    def deg(v: int) -> int:
        if v not in degree:
            degree[v] = len(adjacency[v])
        return degree[v]

    deleted: Dict[int, int] = {}
    candidates = set(deletable)
    rounds = 0
    while candidates and (max_rounds is None or rounds < max_rounds):
        doomed = [v for v in candidates if deg(v) <= max_deg]
        if not doomed:
            break
        for v in doomed:
            deleted[v] = rounds
        candidates = set()
        for v in doomed:
            for u in adjacency[v]:
                degree[u] = deg(u) - 1
                if u in deletable and u not in deleted:
                    candidates.add(u)
        logger.debug("peel round %d removed %d vertices", rounds, len(doomed))
        rounds += 1
    return deleted, rounds


def peel_to_core(tri: Triangulation, config: PeelConfig = PeelConfig()) -> LevelAssignment:
    """Level function of ``tri`` under ``config``.

    With ``config.region`` set only vertices whose sites lie in the region
    are ever deleted; everything else is reported as a survivor.
    """

    region = None
    if config.region is not None:
        region = [int(v) for v in config.region.contains_array(tri.vertices).nonzero()[0]]
    deleted, rounds = peel_levels(tri.neighbor_lists, config.max_deg, region, config.max_rounds)
    assignment = LevelAssignment(tuple(deleted.get(v, SURVIVOR) for v in range(tri.n)), rounds, config)
    logger.debug(
        "peeling with max_deg=%d took %d rounds, %d survivors",
        config.max_deg, rounds, len(assignment.survivors()),
    )
    return assignment


class UnionFind:
    """Disjoint sets with union by rank and path compression."""

    def __init__(self, items: Iterable[Hashable]) -> None:
        self._leader = {s: s for s in items}
        self._size = dict.fromkeys(self._leader, 1)
        self._rank = dict.fromkeys(self._leader, 0)
        self.n_clusters = len(self._leader)

    def __repr__(self) -> str:
        return f"UnionFind: contains {self.n_clusters} clusters."

    def find(self, s: Hashable) -> Hashable:
        path = [s]
        parent = self._leader[s]
        while parent != self._leader[parent]:
            path.append(parent)
            parent = self._leader[parent]
        for a in path:
            self._leader[a] = parent
        return parent

    def size(self, s: Hashable) -> int:
        return self._size[self.find(s)]

    def union(self, a: Hashable, b: Hashable) -> None:
        s1, s2 = self.find(a), self.find(b)
        if s1 == s2:
            return
        r1, r2 = self._rank[s1], self._rank[s2]
        if r2 > r1:
            s1, s2 = s2, s1
        elif r1 == r2:
            self._rank[s1] += 1
        self._leader[s2] = s1
        self._size[s1] += self._size[s2]
        self.n_clusters -= 1

    def groups(self) -> List[tuple]:
        out: Dict[Hashable, list] = {}
        for s in self._leader:
            out.setdefault(self.find(s), []).append(s)
        return sorted((tuple(sorted(g)) for g in out.values()), key=lambda g: g[0])


def components(adjacency: Adjacency, subset: Optional[Iterable[int]] = None) -> List[Tuple[int, ...]]:
    """Connected components of the subgraph induced by ``subset``.

    Each component is a sorted tuple; components are ordered by their least
    vertex id. ``subset=None`` means every vertex.
    """

    keep = {v for v, _ in iter_adjacency(adjacency)} if subset is None else set(subset)
    uf = UnionFind(keep)
    for v in keep:
        for u in adjacency[v]:
            if u in keep:
                uf.union(v, u)
    return uf.groups()


def largest_component(adjacency: Adjacency, subset: Optional[Iterable[int]] = None) -> int:
    comps = components(adjacency, subset)
    return max((len(c) for c in comps), default=0)


__all__ = [
    "SURVIVOR",
    "Adjacency",
    "iter_adjacency",
    "PeelConfig",
    "LevelAssignment",
    "peel_step",
    "peel_levels",
    "peel_to_core",
    "UnionFind",
    "components",
    "largest_component",
]
