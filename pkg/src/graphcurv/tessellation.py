"""Planar tessellations given by rotation systems, and combinatorial curvature.

A rotation system lists, for every vertex, its neighbours in cyclic order.
Faces are traced with the usual rule: after the dart ``u -> v`` comes
``v -> w`` where ``w`` follows ``u`` in the rotation at ``v``.  Finite
tessellations are treated as tessellations of the sphere, so the outer face
is an ordinary polygon and Euler's relation reads ``V - E + F = 2``.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import graph as gmod
from .errors import InvalidRotation, InvalidTessellation, NotIncident, TooLarge
from .graph import Graph

CHEEGER_LIMIT = 20


@dataclass(frozen=True)
class Face:
    boundary: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.boundary)

    def darts(self) -> list[tuple[int, int]]:
        b = self.boundary
        return [(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]

    def edge_set(self) -> set[frozenset]:
        return {frozenset(d) for d in self.darts()}


@dataclass(frozen=True)
class Tessellation:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[Face, ...]

    def face_of_dart(self) -> dict[tuple[int, int], int]:
        return {d: i for i, f in enumerate(self.faces) for d in f.darts()}

    def corners(self, v: int) -> list[Face]:
        """Faces at ``v``, one entry per corner (outgoing dart), in rotation order."""
        owner = self.face_of_dart()
        return [self.faces[owner[(v, w)]] for w in self.rotation[v]]


def validate_rotation(g: Graph, rot: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    if len(rot) != g.n:
        raise InvalidRotation(f"rotation has {len(rot)} entries for {g.n} vertices")
    for v, order in enumerate(rot):
        if len(order) != g.degree(v) or sorted(order) != list(g.adjacency[v]):
            raise InvalidRotation(f"rotation at {v} is not a permutation of its neighbours")
    return tuple(tuple(int(w) for w in order) for order in rot)


def faces_from_rotation(g: Graph, rot: Sequence[Sequence[int]]) -> list[Face]:
    rot = validate_rotation(g, rot)
    succ = {}
    for v, order in enumerate(rot):
        k = len(order)
        for i, u in enumerate(order):
            succ[(v, u)] = order[(i + 1) % k]
    seen = set()
    faces = []
    for u in range(g.n):
        for v in g.adjacency[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                a, b = b, succ[(b, a)]
            faces.append(Face(tuple(walk)))
    return faces


def rotation_from_faces(n: int, faces: Sequence[Sequence[int]]) -> list[list[int]]:
    """Invert face tracing: consistently oriented faces determine the rotation.

    A face ``... a, b, c ...`` says that ``c`` follows ``a`` in the rotation at ``b``.
    """
    nxt: list[dict[int, int]] = [dict() for _ in range(n)]
    for f in faces:
        k = len(f)
        for i in range(k):
            a, b, c = f[i - 1], f[i], f[(i + 1) % k]
            if a in nxt[b]:
                raise InvalidRotation(f"faces are not consistently oriented at {b}")
            nxt[b][a] = c
    rot = []
    for v in range(n):
        if not nxt[v]:
            rot.append([])
            continue
        start = min(nxt[v])
        order = [start]
        while (w := nxt[v][order[-1]]) != start:
            order.append(w)
            if len(order) > len(nxt[v]):
                raise InvalidRotation(f"corners at {v} do not close into a single cycle")
        if len(order) != len(nxt[v]):
            raise InvalidRotation(f"corners at {v} do not close into a single cycle")
        rot.append(order)
    return rot


def rotation_from_coordinates(g: Graph, coords) -> list[list[int]]:
    """Rotation of a convex polyhedron inscribed in a sphere centred at the origin.

    Neighbours are sorted counter-clockwise (seen from outside) in the tangent
    plane at each vertex; floats only decide the order.
    """
    pts = np.asarray(coords, dtype=float)
    rot = []
    for v in range(g.n):
        normal = pts[v] / np.linalg.norm(pts[v])
        helper = np.array([1.0, 0, 0]) if abs(normal[0]) < 0.9 else np.array([0, 1.0, 0])
        e1 = np.cross(normal, helper)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)

        def angle(w):
            d = pts[w] - pts[v]
            return math.atan2(d @ e2, d @ e1)

        rot.append(sorted(g.adjacency[v], key=angle))
    return rot


def make_tessellation(g: Graph, rot: Sequence[Sequence[int]]) -> Tessellation:
    rot = validate_rotation(g, rot)
    gmod.require_connected(g)
    return Tessellation(g, rot, tuple(faces_from_rotation(g, rot)))


# ---------------------------------------------------------------------------
# polyhedral tessellations
# ---------------------------------------------------------------------------


def _ring(n, z, offset=0.0):
    return [(math.cos(2 * math.pi * (i + offset) / n), math.sin(2 * math.pi * (i + offset) / n), z) for i in range(n)]


def prism_tessellation(n: int) -> Tessellation:
    g = gmod.prism(n)
    return make_tessellation(g, rotation_from_coordinates(g, _ring(n, 0.5) + _ring(n, -0.5)))


def antiprism_tessellation(n: int) -> Tessellation:
    # u_i joins v_i and v_{i+1}, so v_i sits half a step before u_i
    g = gmod.antiprism(n)
    return make_tessellation(g, rotation_from_coordinates(g, _ring(n, 0.5) + _ring(n, -0.5, offset=-0.5)))


def tetrahedron_tessellation() -> Tessellation:
    g = gmod.complete(4)
    coords = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return make_tessellation(g, rotation_from_coordinates(g, coords))


def icosahedron_tessellation() -> Tessellation:
    phi = (1 + math.sqrt(5)) / 2
    coords = []
    for a, b in itertools.product((-1, 1), repeat=2):
        coords += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
    pts = np.array(coords)
    edges = [(i, j) for i, j in itertools.combinations(range(12), 2) if abs(np.linalg.norm(pts[i] - pts[j]) - 2) < 1e-9]
    g = gmod.from_edge_list(12, edges)
    return make_tessellation(g, rotation_from_coordinates(g, coords))


def cycle_tessellation(n: int) -> Tessellation:
    g = gmod.cycle(n)
    return make_tessellation(g, [list(g.adjacency[v]) for v in range(n)])


POLYHEDRA = {
    "prism": prism_tessellation,
    "antiprism": antiprism_tessellation,
    "tetrahedron": tetrahedron_tessellation,
    "icosahedron": icosahedron_tessellation,
}


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class TessellationReport:
    edges_in_two_faces: bool
    faces_simple: bool
    intersections_ok: bool
    vertex_degrees_ok: bool
    face_degrees_ok: bool
    euler_characteristic: int
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.edges_in_two_faces
            and self.faces_simple
            and self.intersections_ok
            and self.vertex_degrees_ok
            and self.face_degrees_ok
            and self.euler_characteristic == 2
        )


def _face_intersection_ok(f1: Face, f2: Face) -> bool:
    common = set(f1.boundary) & set(f2.boundary)
    if len(common) <= 1:
        return True
    shared_edges = f1.edge_set() & f2.edge_set()
    return len(common) == 2 and len(shared_edges) == 1 and next(iter(shared_edges)) == frozenset(common)


def check_tessellation(t: Tessellation) -> TessellationReport:
    g = t.graph
    problems = []
    owner = t.face_of_dart()

    two_faces = True
    for u, v in g.edges():
        if owner[(u, v)] == owner[(v, u)]:
            two_faces = False
            problems.append(f"edge ({u}, {v}) lies on a single face")

    simple = True
    for i, f in enumerate(t.faces):
        if len(set(f.boundary)) != f.degree:
            simple = False
            problems.append(f"face {i} boundary {f.boundary} is not a simple cycle")

    intersections = True
    at_vertex = defaultdict(set)
    for i, f in enumerate(t.faces):
        for v in f.boundary:
            at_vertex[v].add(i)
    checked = set()
    for faces_here in at_vertex.values():
        for i, j in itertools.combinations(sorted(faces_here), 2):
            if (i, j) in checked:
                continue
            checked.add((i, j))
            if not _face_intersection_ok(t.faces[i], t.faces[j]):
                intersections = False
                problems.append(f"faces {i} and {j} meet in more than a vertex or an edge")

    vdeg = all(d >= 3 for d in g.degrees)
    if not vdeg:
        problems.append("some vertex has degree < 3")
    fdeg = all(f.degree >= 3 for f in t.faces)
    if not fdeg:
        problems.append("some face has degree < 3")
    chi = g.n - g.edge_count + len(t.faces)
    if chi != 2:
        problems.append(f"Euler characteristic is {chi}, expected 2")
    return TessellationReport(two_faces, simple, intersections, vdeg, fdeg, chi, problems)


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def corner_curvature(t: Tessellation, v: int, f: Face) -> Fraction:
    if v not in f.boundary:
        raise NotIncident(f"vertex {v} is not on face {f.boundary}")
    return Fraction(1, t.graph.degree(v)) + Fraction(1, f.degree) - Fraction(1, 2)


def vertex_curvature(t: Tessellation, v: int) -> Fraction:
    corners = t.corners(v)
    by_corners = sum((corner_curvature(t, v, f) for f in corners), Fraction(0))
    closed_form = 1 - Fraction(t.graph.degree(v), 2) + sum((Fraction(1, f.degree) for f in corners), Fraction(0))
    assert by_corners == closed_form, (v, by_corners, closed_form)
    return closed_form


def curvatures(t: Tessellation) -> list[Fraction]:
    return [vertex_curvature(t, v) for v in range(t.graph.n)]


def gauss_bonnet_sum(t: Tessellation) -> Fraction:
    report = check_tessellation(t)
    if not report.ok:
        raise InvalidTessellation("; ".join(report.problems))
    return sum(curvatures(t), Fraction(0))


def cut_locus(g: Graph, v0: int) -> set[int]:
    """Vertices other than ``v0`` at which ``d(v0, .)`` has a local maximum.

    Uses ``d(v0, v') >= d(v0, v)`` for every neighbour ``v`` of ``v'``.
    """
    gmod.require_connected(g)
    dist = gmod.bfs_distances(g, v0).dist
    return {w for w in range(g.n) if w != v0 and all(dist[w] >= dist[u] for u in g.adjacency[w])}


# ---------------------------------------------------------------------------
# Cheeger constant
# ---------------------------------------------------------------------------


def cheeger_constant(g: Graph, limit: int = CHEEGER_LIMIT) -> tuple[Fraction, frozenset[int]]:
    """Exact minimum of ``|boundary(W)| / vol(W)`` over ``0 < |W| <= |V|/2``.

    Walks all subsets in Gray-code order, updating the boundary size and the
    volume incrementally when one vertex enters or leaves ``W``.
    """
    gmod.require_connected(g)
    n = g.n
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the brute-force limit {limit}")
    if n < 2:
        raise TooLarge("Cheeger constant needs at least two vertices")
    masks = [sum(1 << u for u in g.adjacency[v]) for v in range(n)]
    deg = g.degrees
    half = n // 2
    mask = boundary = vol = size = 0
    best_num, best_den, best_mask = None, None, 0
    prev_gray = 0
    for i in range(1, 1 << n):
        gray = i ^ (i >> 1)
        v = (gray ^ prev_gray).bit_length() - 1
        prev_gray = gray
        inside = (masks[v] & mask).bit_count()
        if mask >> v & 1:
            mask ^= 1 << v
            boundary -= deg[v] - 2 * inside
            vol -= deg[v]
            size -= 1
        else:
            mask |= 1 << v
            boundary += deg[v] - 2 * inside
            vol += deg[v]
            size += 1
        if size > half:
            continue
        if best_num is None or boundary * best_den < best_num * vol:
            best_num, best_den, best_mask = boundary, vol, mask
    witness = frozenset(v for v in range(n) if best_mask >> v & 1)
    return Fraction(best_num, best_den), witness


def boundary_ratio(g: Graph, w) -> Fraction:
    w = set(w)
    cut = sum(1 for u in w for v in g.adjacency[u] if v not in w)
    return Fraction(cut, sum(g.degree(u) for u in w))


# ---------------------------------------------------------------------------
# positively curved tessellations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    kind: str  # "Prism", "Antiprism", "SmallGraph", "Violation", "NotApplicable"
    size: int

    def __str__(self):
        return f"{self.kind}({self.size})"


def _face_signature(t: Tessellation) -> dict[int, int]:
    sig = defaultdict(int)
    for f in t.faces:
        sig[f.degree] += 1
    return dict(sig)


def _two_disjoint_ngons(t: Tessellation, n: int) -> bool:
    big = [f for f in t.faces if f.degree == n]
    if n in (3, 4):
        big_sets = [set(f.boundary) for f in big]
        return any(not (a & b) and len(a | b) == 2 * n for a, b in itertools.combinations(big_sets, 2))
    return len(big) == 2 and not set(big[0].boundary) & set(big[1].boundary)


def higuchi_classify(t: Tessellation) -> Classification:
    """Place an everywhere positively curved tessellation in one of the three classes."""
    kappa = curvatures(t)
    g = t.graph
    if any(k <= 0 for k in kappa):
        return Classification("NotApplicable", g.n)
    degs = set(g.degrees)
    sig = _face_signature(t)
    if g.n % 2 == 0 and g.n >= 6:
        n = g.n // 2
        if degs == {3} and _prism_signature(sig, n) and _two_disjoint_ngons(t, n):
            return Classification("Prism", n)
        if degs == {4} and _antiprism_signature(sig, n) and _two_disjoint_ngons(t, n):
            return Classification("Antiprism", n)
    if g.n <= 208:
        return Classification("SmallGraph", g.n)
    return Classification("Violation", g.n)


def _prism_signature(sig, n):
    if n == 4:
        return sig == {4: 6}
    return sig == {n: 2, 4: n}


def _antiprism_signature(sig, n):
    if n == 3:
        return sig == {3: 8}
    return sig == {n: 2, 3: 2 * n}


# ---------------------------------------------------------------------------
# hyperbolic patches and the isoperimetric bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Patch:
    """A finite piece of the regular ``{p, q}`` tiling, closed by its outer face."""

    tessellation: Tessellation
    p: int
    q: int
    interior: tuple[int, ...]
    outer_face: int


def hyperbolic_patch(p: int, q: int, layers: int) -> Patch:
    """Grow ``layers`` rings of ``p``-gons around a central ``p``-gon, ``q`` at each vertex.

    After the last ring every vertex of the earlier rings carries its full
    ``q`` faces; those vertices form ``interior``.  Needs ``p >= 4, q >= 4``.
    """
    if p < 4 or q < 4:
        raise ValueError("patch growth needs p >= 4 and q >= 4")
    faces = [list(range(p))]
    boundary = list(range(p))
    deg = defaultdict(int, {v: 2 for v in range(p)})
    count = p
    complete: list[int] = []

    def new():
        nonlocal count
        count += 1
        return count - 1

    for _ in range(layers):
        k = len(boundary)
        spokes = []
        for b in boundary:
            r = q - deg[b]
            ends = [new() for _ in range(r)]
            spokes.append(ends)
            deg[b] += r
            for e in ends:
                deg[e] += 1
        new_boundary = []
        for i, b in enumerate(boundary):
            ends = spokes[i]
            for j in range(len(ends) - 1):
                fill = [new() for _ in range(p - 3)]
                faces.append([b, ends[j], *fill, ends[j + 1]])
                new_boundary += [ends[j], *fill]
            nb = boundary[(i + 1) % k]
            fill = [new() for _ in range(p - 4)]
            faces.append([b, ends[-1], *fill, spokes[(i + 1) % k][0], nb])
            new_boundary += [ends[-1], *fill]
        for v in new_boundary:
            deg[v] += 2
        complete += boundary
        boundary = new_boundary
    # outer face runs against the boundary orientation
    faces.append(boundary[::-1])
    interior = tuple(sorted(complete))

    edges = set()
    for f in faces:
        for i in range(len(f)):
            a, b = f[i], f[(i + 1) % len(f)]
            edges.add((min(a, b), max(a, b)))
    g = gmod.from_edge_list(count, sorted(edges))
    rot = rotation_from_faces(count, faces)
    t = make_tessellation(g, rot)
    outer = next(i for i, f in enumerate(t.faces) if f.degree == len(boundary) and set(f.boundary) == set(boundary))
    return Patch(t, p, q, interior, outer)


def connected_subsets(g: Graph, allowed, max_size: int):
    """Yield every connected vertex subset of ``allowed`` with at most ``max_size`` vertices."""
    allowed = set(allowed)
    for root in sorted(allowed):
        # each subset is generated once, from its smallest vertex
        start = frozenset([root])
        stack = [(start, frozenset(u for u in g.adjacency[root] if u in allowed and u > root))]
        seen = {start}
        while stack:
            current, frontier = stack.pop()
            yield current
            if len(current) == max_size:
                continue
            for u in frontier:
                nxt = current | {u}
                if nxt in seen:
                    continue
                seen.add(nxt)
                grow = frontier | {w for w in g.adjacency[u] if w in allowed and w > root}
                stack.append((nxt, grow - nxt))


@dataclass
class IsoperimetricReport:
    k0: Fraction
    bound: Fraction
    min_ratio: Fraction
    witness: frozenset
    subsets_checked: int
    holds: bool
    caveat: str = (
        "finite patch of an infinite tessellation: only subsets of vertices carrying their full "
        "degree and faces are tested, truncation boundary excluded"
    )


def check_negative_curvature_isoperimetry(patch: Patch, max_size: int = 6) -> IsoperimetricReport:
    """Check ``|boundary(W)| / vol(W) >= 2 K0`` on interior subsets of a patch.

    ``K0`` is the largest constant with corner curvature ``<= -K0`` at every
    corner of an interior vertex.
    """
    t = patch.tessellation
    g = t.graph
    worst = max(corner_curvature(t, v, f) for v in patch.interior for f in t.corners(v))
    if worst >= 0:
        raise InvalidTessellation("interior corners are not negatively curved")
    k0 = -worst
    bound = 2 * k0
    best, witness, count = None, frozenset(), 0
    candidates = list(connected_subsets(g, patch.interior, max_size))
    candidates.append(frozenset(patch.interior))
    for w in candidates:
        count += 1
        r = boundary_ratio(g, w)
        if best is None or r < best:
            best, witness = r, w
    return IsoperimetricReport(k0, bound, best, witness, count, best >= bound)
