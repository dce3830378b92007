"""Finite simple graphs, BFS metric structure and the example graph families."""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import Disconnected, IdOutOfRange, LoopEdge, TooSmall

UNREACHABLE = -1
INFINITE = math.inf


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..vertex_count-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.  Instances are
    immutable and hashable, so they can key caches.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length does not match vertex_count")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"adjacency of {v} is not sorted and duplicate free")
            for u in nbrs:
                if not 0 <= u < self.vertex_count:
                    raise IdOutOfRange(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise LoopEdge(v)
                if v not in self._neighbour_sets[u]:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {u})")

    @cached_property
    def _neighbour_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @property
    def n(self) -> int:
        return self.vertex_count

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbour_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build the canonical graph on ``n`` vertices; duplicate edges collapse."""
    if n < 0:
        raise TooSmall("vertex count must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise IdOutOfRange(f"edge ({u}, {v}) has an id outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(u)
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


@dataclass(frozen=True)
class DistanceField:
    source: int
    dist: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.dist[v]

    def reachable(self, v: int) -> bool:
        return self.dist[v] != UNREACHABLE


def bfs_distances(g: Graph, source: int) -> DistanceField:
    if not 0 <= source < g.n:
        raise IdOutOfRange(f"source {source} out of range")
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return DistanceField(source, tuple(dist))


def distance(g: Graph, u: int, v: int) -> int | float:
    d = bfs_distances(g, u)[v]
    return INFINITE if d == UNREACHABLE else d


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return UNREACHABLE not in bfs_distances(g, 0).dist


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise Disconnected(f"{g!r} is not connected")


def all_pairs_distances(g: Graph) -> list[tuple[int, ...]]:
    return [bfs_distances(g, s).dist for s in range(g.n)]


def diameter(g: Graph) -> int | float:
    """Largest pairwise distance, or ``INFINITE`` if ``g`` is disconnected."""
    best = 0
    for s in range(g.n):
        dist = bfs_distances(g, s).dist
        if UNREACHABLE in dist:
            return INFINITE
        best = max(best, max(dist, default=0))
    return best


def ball(g: Graph, x: int, radius: int) -> list[list[int]]:
    """Spheres ``S_0(x), ..., S_radius(x)`` as sorted vertex lists."""
    dist = bfs_distances(g, x).dist
    spheres: list[list[int]] = [[] for _ in range(radius + 1)]
    for v, d in enumerate(dist):
        if 0 <= d <= radius:
            spheres[d].append(v)
    return spheres


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise TooSmall("complete graph needs n >= 1")
    return from_edge_list(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise TooSmall("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise TooSmall("path needs n >= 1")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def hypercube(n: int) -> Graph:
    """``Q^n``: binary words of length n, adjacent when they differ in one bit."""
    if n < 1:
        raise TooSmall("hypercube needs n >= 1")
    size = 1 << n
    return from_edge_list(size, [(v, v ^ (1 << k)) for v in range(size) for k in range(n)])


def prism(n: int) -> Graph:
    """Vertices ``u_i = i`` (outer cycle) and ``v_i = n + i`` (inner cycle)."""
    if n < 3:
        raise TooSmall("prism needs n >= 3")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges += [(i, j), (n + i, n + j), (i, n + i)]
    return from_edge_list(2 * n, edges)


def antiprism(n: int) -> Graph:
    """Prism edges plus ``u_i ~ v_{i+1}`` cyclically."""
    if n < 3:
        raise TooSmall("antiprism needs n >= 3")
    g = prism(n)
    return from_edge_list(2 * n, g.edges() + [(i, n + (i + 1) % n) for i in range(n)])


def dumbbell(n: int, m: int) -> Graph:
    """``K_n`` on ``0..n-1`` and ``K_m`` on ``n..n+m-1`` bridged by ``(n-1, n)``."""
    if n < 1 or m < 1:
        raise TooSmall("dumbbell needs n, m >= 1")
    edges = list(itertools.combinations(range(n), 2))
    edges += list(itertools.combinations(range(n, n + m), 2))
    edges.append((n - 1, n))
    return from_edge_list(n + m, edges)


def antitree_levels(levels: int) -> list[list[int]]:
    """Vertex ids of each level; level ``i`` (1-based) holds ``i`` vertices."""
    out, start = [], 0
    for size in range(1, levels + 1):
        out.append(list(range(start, start + size)))
        start += size
    return out


def antitree(levels: int) -> Graph:
    """Finite truncation of the antitree: cliques ``K_1..K_L``, consecutive levels fully joined."""
    if levels < 1:
        raise TooSmall("antitree needs at least one level")
    lv = antitree_levels(levels)
    edges = []
    for i, level in enumerate(lv):
        edges += itertools.combinations(level, 2)
        if i + 1 < len(lv):
            edges += itertools.product(level, lv[i + 1])
    return from_edge_list(lv[-1][-1] + 1, edges)


def antitree_interior(levels: int) -> list[int]:
    """Vertices whose 2-ball and its degrees coincide with the infinite antitree.

    Curvature at level ``i`` only sees degrees of levels ``i-1..i+1``, and level
    ``i+1`` has its full degree only if level ``i+2`` exists.
    """
    lv = antitree_levels(levels)
    return [v for i, level in enumerate(lv, start=1) if i + 2 <= levels for v in level]


EXAMPLE_41_LABELS = ("x", "y", "u", "v", "w", "a", "z")


def example_41() -> Graph:
    """The 7-vertex transport example graph: a square x-y-v-u and a pentagon x-w-a-z-y."""
    idx = {name: i for i, name in enumerate(EXAMPLE_41_LABELS)}
    pairs = ["xy", "yv", "vu", "ux", "xw", "wa", "az", "zy"]
    return from_edge_list(7, [(idx[p[0]], idx[p[1]]) for p in pairs])


FAMILIES = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "hypercube": hypercube,
    "prism": prism,
    "antiprism": antiprism,
    "dumbbell": dumbbell,
    "antitree": antitree,
    "example41": example_41,
}


def generate(family: str, *params: int) -> Graph:
    try:
        make = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return make(*params)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def to_json_dict(g: Graph, rotation: Sequence[Sequence[int]] | None = None) -> dict:
    doc: dict = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if rotation is not None:
        doc["rotation"] = {str(v): list(order) for v, order in enumerate(rotation)}
    return doc


def from_json_dict(doc: dict) -> tuple[Graph, list[list[int]] | None]:
    """Parse the graph JSON format; returns the graph and the optional rotation."""
    g = from_edge_list(int(doc["n"]), doc.get("edges", []))
    rot = doc.get("rotation")
    if rot is None:
        return g, None
    rotation = [list(rot.get(str(v), [])) for v in range(g.n)]
    return g, rotation


def load_graph(path_or_file) -> tuple[Graph, list[list[int]] | None]:
    if hasattr(path_or_file, "read"):
        return from_json_dict(json.load(path_or_file))
    with open(path_or_file) as fh:
        return from_json_dict(json.load(fh))
