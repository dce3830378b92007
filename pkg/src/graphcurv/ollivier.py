"""Exact Wasserstein-1 distances on graphs and Ollivier / Lin-Lu-Yau curvature.

Transport problems are solved with a primal network simplex on the bipartite
transportation graph (sources = support of ``mu``, sinks = support of
``nu``, costs = BFS distances).  Masses are scaled to integers by their
common denominator, so every pivot is exact integer arithmetic; Bland's rule
(lowest cell index enters, lowest index among ratio-test ties leaves)
prevents cycling on degenerate bases.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import graph as gmod
from .errors import (
    DisconnectedPair,
    DisconnectedSupports,
    IdlenessOutOfRange,
    IsolatedVertex,
    SameVertex,
)
from .graph import UNREACHABLE, Graph


@dataclass(frozen=True)
class ProbMeasure:
    support: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        vertices = [v for v, _ in self.support]
        if len(set(vertices)) != len(vertices):
            raise ValueError("support vertices must be distinct")
        if any(m <= 0 for _, m in self.support):
            raise ValueError("masses must be positive")
        if sum((m for _, m in self.support), Fraction(0)) != 1:
            raise ValueError("masses must sum to 1")

    @classmethod
    def from_dict(cls, masses: dict) -> "ProbMeasure":
        return cls(tuple((int(v), Fraction(m)) for v, m in sorted(masses.items()) if m != 0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.support)

    @property
    def vertices(self) -> list[int]:
        return [v for v, _ in self.support]

    def __getitem__(self, v: int) -> Fraction:
        return self.as_dict().get(v, Fraction(0))


def dirac(x: int) -> ProbMeasure:
    return ProbMeasure(((x, Fraction(1)),))


@dataclass(frozen=True)
class TransportPlan:
    entries: tuple[tuple[int, int, Fraction], ...]

    def cost(self, dist: Callable[[int, int], int]) -> Fraction:
        return sum((m * dist(a, b) for a, b, m in self.entries), Fraction(0))

    def marginals(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        rows: dict[int, Fraction] = {}
        cols: dict[int, Fraction] = {}
        for a, b, m in self.entries:
            rows[a] = rows.get(a, Fraction(0)) + m
            cols[b] = cols.get(b, Fraction(0)) + m
        return rows, cols


@dataclass(frozen=True)
class KantorovichPotential:
    values: dict[int, Fraction]

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]


@dataclass(frozen=True)
class W1Certificate:
    value: Fraction
    plan: TransportPlan
    potential: KantorovichPotential
    mu: ProbMeasure
    nu: ProbMeasure

    def check(self, dist: Callable[[int, int], int]) -> list[str]:
        """Return the list of violated certificate conditions (empty when valid)."""
        problems = []
        rows, cols = self.plan.marginals()
        if any(m < 0 for _, _, m in self.plan.entries):
            problems.append("negative plan entry")
        if {k: v for k, v in rows.items() if v} != self.mu.as_dict():
            problems.append("row marginals differ from mu")
        if {k: v for k, v in cols.items() if v} != self.nu.as_dict():
            problems.append("column marginals differ from nu")
        cost = self.plan.cost(dist)
        phi = self.potential.values
        dual = sum((phi[v] * m for v, m in self.mu.support), Fraction(0))
        dual -= sum((phi[v] * m for v, m in self.nu.support), Fraction(0))
        if not cost == self.value == dual:
            problems.append(f"duality gap: cost {cost}, value {self.value}, dual {dual}")
        domain = sorted(phi)
        for i, a in enumerate(domain):
            for b in domain[i + 1 :]:
                if abs(phi[a] - phi[b]) > dist(a, b):
                    problems.append(f"potential not 1-Lipschitz on ({a}, {b})")
        for a, b, m in self.plan.entries:
            if m > 0 and phi[a] - phi[b] != dist(a, b):
                problems.append(f"complementary slackness fails on ({a}, {b})")
        return problems


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------


def _idleness(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise IdlenessOutOfRange(f"idleness {p} outside [0, 1]")
    return p


def mu(g: Graph, x: int, p) -> ProbMeasure:
    """Lazy random-walk step from ``x``: mass ``p`` at ``x``, ``(1-p)/d_x`` on each neighbour."""
    p = _idleness(p)
    d = g.degree(x)
    if d == 0:
        raise IsolatedVertex(f"vertex {x} has no neighbours")
    masses = {}
    if p:
        masses[x] = p
    if p != 1:
        for z in g.adjacency[x]:
            masses[z] = (1 - p) / d
    return ProbMeasure.from_dict(masses)


# ---------------------------------------------------------------------------
# transportation simplex
# ---------------------------------------------------------------------------


def _northwest_corner(supply: list[int], demand: list[int]) -> dict[tuple[int, int], int]:
    a, b = list(supply), list(demand)
    m, n = len(a), len(b)
    flow = {}
    i = j = 0
    while True:
        q = min(a[i], b[j])
        flow[i, j] = q
        a[i] -= q
        b[j] -= q
        if i == m - 1 and j == n - 1:
            return flow
        if a[i] == 0 and i < m - 1:
            i += 1
        else:
            j += 1


def _duals(m: int, n: int, basis: Iterable[tuple[int, int]], cost) -> tuple[list, list]:
    rows_adj: list[list[int]] = [[] for _ in range(m)]
    cols_adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in basis:
        rows_adj[i].append(j)
        cols_adj[j].append(i)
    u: list = [None] * m
    v: list = [None] * n
    u[0] = 0
    queue = deque([("r", 0)])
    while queue:
        kind, k = queue.popleft()
        if kind == "r":
            for j in rows_adj[k]:
                if v[j] is None:
                    v[j] = cost[k][j] - u[k]
                    queue.append(("c", j))
        else:
            for i in cols_adj[k]:
                if u[i] is None:
                    u[i] = cost[i][k] - v[k]
                    queue.append(("r", i))
    return u, v


def _tree_path(m: int, n: int, basis, start_row: int, end_col: int) -> list[tuple[int, int]]:
    """Basic cells on the tree path from row ``start_row`` to column ``end_col``, in order."""
    rows_adj: list[list[int]] = [[] for _ in range(m)]
    cols_adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in basis:
        rows_adj[i].append(j)
        cols_adj[j].append(i)
    parent = {("r", start_row): None}
    queue = deque([("r", start_row)])
    target = ("c", end_col)
    while queue:
        node = queue.popleft()
        if node == target:
            break
        kind, k = node
        nbrs = [("c", j) for j in rows_adj[k]] if kind == "r" else [("r", i) for i in cols_adj[k]]
        for nb in nbrs:
            if nb not in parent:
                parent[nb] = node
                queue.append(nb)
    cells = []
    node = target
    while parent[node] is not None:
        prev = parent[node]
        cells.append((prev[1], node[1]) if prev[0] == "r" else (node[1], prev[1]))
        node = prev
    cells.reverse()
    return cells


def transportation_simplex(supply: Sequence[int], demand: Sequence[int], cost: Sequence[Sequence[int]]):
    """Solve ``min sum c_ij x_ij`` over balanced transportation plans.

    Returns ``(flow, u, v)``: the optimal basic flow (dict over the ``m + n - 1``
    basic cells, degenerate zeros included) and dual potentials with
    ``u_i + v_j <= c_ij`` everywhere and equality on basic cells.
    """
    m, n = len(supply), len(demand)
    if sum(supply) != sum(demand):
        raise ValueError("unbalanced transportation problem")
    flow = _northwest_corner(list(supply), list(demand))
    while True:
        u, v = _duals(m, n, flow, cost)
        entering = None
        for i in range(m):
            ui, ci = u[i], cost[i]
            for j in range(n):
                if ci[j] - ui - v[j] < 0 and (i, j) not in flow:
                    entering = (i, j)
                    break
            if entering:
                break
        if entering is None:
            return flow, u, v
        i, j = entering
        path = _tree_path(m, n, flow, i, j)
        # path runs row i -> ... -> column j; its cells alternate -, +, -, ... from the column end
        minus = path[::-2]
        plus = path[-2::-2]
        theta = min(flow[c] for c in minus)
        leaving = min(c for c in minus if flow[c] == theta)
        for c in minus:
            flow[c] -= theta
        for c in plus:
            flow[c] += theta
        flow[entering] = theta
        del flow[leaving]


# ---------------------------------------------------------------------------
# Wasserstein distance with certificate
# ---------------------------------------------------------------------------


class _BFSCache:
    def __init__(self, g: Graph):
        self.g = g
        self.rows: dict[int, tuple[int, ...]] = {}

    def __call__(self, a: int, b: int) -> int:
        row = self.rows.get(a)
        if row is None:
            row = self.rows[a] = gmod.bfs_distances(self.g, a).dist
        return row[b]


def wasserstein(g: Graph, mu_: ProbMeasure, nu: ProbMeasure, dist: Callable[[int, int], int] | None = None) -> W1Certificate:
    dist = dist or _BFSCache(g)
    src = mu_.vertices
    dst = nu.vertices
    cost = [[dist(t, s) for t in dst] for s in src]
    if any(c == UNREACHABLE for row in cost for c in row):
        raise DisconnectedSupports("supports lie in different components")

    scale = math.lcm(*(m.denominator for _, m in mu_.support + nu.support))
    supply = [int(m * scale) for _, m in mu_.support]
    demand = [int(m * scale) for _, m in nu.support]
    flow, u, v = transportation_simplex(supply, demand, cost)

    entries = tuple(
        (src[i], dst[j], Fraction(q, scale)) for (i, j), q in sorted(flow.items()) if q
    )
    value = sum((Fraction(q, scale) * cost[i][j] for (i, j), q in flow.items()), Fraction(0))

    # 1-Lipschitz potential on the union of supports: inf-convolution of the sink duals
    domain = sorted(set(src) | set(dst))
    phi = {z: min(-v[j] + dist(z, t) for j, t in enumerate(dst)) for z in domain}
    shift = phi[dst[0]]
    potential = KantorovichPotential({z: Fraction(val - shift) for z, val in phi.items()})
    cert = W1Certificate(value, TransportPlan(entries), potential, mu_, nu)
    problems = cert.check(dist)
    if problems:
        raise ArithmeticError("invalid transport certificate: " + "; ".join(problems))
    return cert


def extend_potential(g: Graph, potential: KantorovichPotential) -> dict[int, Fraction]:
    """Extend a 1-Lipschitz function from its domain to every vertex reachable from it."""
    rows = {u: gmod.bfs_distances(g, u).dist for u in potential.values}
    out = {}
    for v in range(g.n):
        cands = [val + rows[u][v] for u, val in potential.values.items() if rows[u][v] != UNREACHABLE]
        if cands:
            out[v] = min(cands)
    return out


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def _pair_distance(g: Graph, x: int, y: int) -> int:
    if x == y:
        raise SameVertex(f"curvature needs two distinct vertices, got {x} twice")
    d = gmod.bfs_distances(g, x)[y]
    if d == UNREACHABLE:
        raise DisconnectedPair(f"{x} and {y} lie in different components")
    return d


@lru_cache(maxsize=65536)
def ollivier_certificate(g: Graph, x: int, y: int, p) -> W1Certificate:
    p = _idleness(p)
    _pair_distance(g, x, y)
    return wasserstein(g, mu(g, x, p), mu(g, y, p))


def ollivier_curvature(g: Graph, x: int, y: int, p) -> Fraction:
    """``K_p(x, y) = 1 - W1(mu_x^p, mu_y^p) / d(x, y)``."""
    p = _idleness(p)
    d = _pair_distance(g, x, y)
    return 1 - ollivier_certificate(g, x, y, p).value / d


def lly_curvature(g: Graph, x: int, y: int) -> Fraction:
    """Lin-Lu-Yau curvature via ``K_p / (1 - p)``, constant for ``p`` in ``[1/2, 1)``."""
    half = 2 * ollivier_curvature(g, x, y, Fraction(1, 2))
    three_quarters = 4 * ollivier_curvature(g, x, y, Fraction(3, 4))
    if half != three_quarters:
        raise ArithmeticError(f"K_p/(1-p) not constant on ({x}, {y}): {half} vs {three_quarters}")
    return half


@dataclass(frozen=True)
class CurvatureProfile:
    points: tuple[tuple[Fraction, Fraction], ...]
    pieces: tuple[tuple[Fraction, Fraction, Fraction], ...]  # (p_start, p_end, slope)


def curvature_profile(g: Graph, x: int, y: int, grid: Iterable) -> CurvatureProfile:
    """``K_p(x, y)`` on a grid of idleness values, with maximal linear runs of the sampled values."""
    ps = sorted({_idleness(p) for p in grid})
    points = tuple((p, ollivier_curvature(g, x, y, p)) for p in ps)
    pieces = []
    for (p0, k0), (p1, k1) in zip(points, points[1:]):
        slope = (k1 - k0) / (p1 - p0)
        if pieces and pieces[-1][2] == slope:
            pieces[-1] = (pieces[-1][0], p1, slope)
        else:
            pieces.append((p0, p1, slope))
    return CurvatureProfile(points, tuple(pieces))


def edge_curvatures(g: Graph, p) -> dict[tuple[int, int], Fraction]:
    return {(x, y): ollivier_curvature(g, x, y, p) for x, y in g.edges()}


def lly_edge_curvatures(g: Graph) -> dict[tuple[int, int], Fraction]:
    return {(x, y): lly_curvature(g, x, y) for x, y in g.edges()}


def global_curvature_bound(g: Graph, p, sample: int = 20, seed: int = 0) -> Fraction:
    """Minimum of ``K_p`` over edges; a random sample of distant pairs is checked against it."""
    gmod.require_connected(g)
    p = _idleness(p)
    k_edge = min(edge_curvatures(g, p).values())
    rng = random.Random(seed)
    far = [(a, b) for a in range(g.n) for b in range(a + 1, g.n) if not g.has_edge(a, b)]
    for a, b in rng.sample(far, min(sample, len(far))):
        k = ollivier_curvature(g, a, b, p)
        if k < k_edge:
            raise ArithmeticError(f"K_p({a}, {b}) = {k} below the edge minimum {k_edge}")
    return k_edge


def parse_idleness(text: str) -> Fraction:
    return _idleness(Fraction(text))
