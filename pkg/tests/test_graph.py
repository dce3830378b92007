import itertools
import json
import random

import pytest

from graphcurv import graph as gmod
from graphcurv.errors import Disconnected, IdOutOfRange, LoopEdge

from oracles import floyd_warshall

GENERATED = [
    gmod.complete(5),
    gmod.cycle(7),
    gmod.path(4),
    gmod.hypercube(3),
    gmod.prism(6),
    gmod.antiprism(5),
    gmod.dumbbell(3, 4),
    gmod.antitree(5),
    gmod.example_41(),
]


@pytest.mark.parametrize("g", GENERATED, ids=repr)
def test_generators_symmetric_and_simple(g):
    for u in range(g.n):
        assert list(g.adjacency[u]) == sorted(set(g.adjacency[u]))
        assert u not in g.adjacency[u]
        for v in g.adjacency[u]:
            assert u in g.adjacency[v]


@pytest.mark.parametrize("g", GENERATED, ids=repr)
def test_bfs_matches_floyd_warshall(g):
    ref = floyd_warshall(g.n, list(g.edges()))
    for s in range(g.n):
        assert list(gmod.bfs_distances(g, s).dist) == ref[s]


@pytest.mark.parametrize("g", GENERATED, ids=repr)
def test_triangle_inequality(g):
    d = gmod.all_pairs_distances(g)
    rng = random.Random(0)
    for _ in range(200):
        a, b, c = (rng.randrange(g.n) for _ in range(3))
        assert d[a][c] <= d[a][b] + d[b][c]


@pytest.mark.parametrize("n", range(2, 7))
def test_regularity(n):
    assert set(gmod.hypercube(n).degrees) == {n}
    assert set(gmod.prism(n + 1).degrees) == {3}
    assert set(gmod.antiprism(n + 1).degrees) == {4}


def test_sizes_and_diameters():
    assert gmod.hypercube(4).n == 16 and gmod.diameter(gmod.hypercube(4)) == 4
    assert gmod.complete(6).edge_count == 15
    assert gmod.diameter(gmod.cycle(9)) == 4
    assert gmod.antitree(7).n == 28
    assert gmod.dumbbell(4, 4).edge_count == 13


def test_rejects_bad_edges():
    with pytest.raises(LoopEdge):
        gmod.from_edge_list(3, [(1, 1)])
    with pytest.raises(IdOutOfRange):
        gmod.from_edge_list(3, [(0, 3)])


def test_disconnected_graph_is_representable_but_rejected_by_distance_ops():
    g = gmod.from_edge_list(4, [(0, 1), (2, 3)])
    assert not gmod.is_connected(g)
    assert gmod.diameter(g) == gmod.INFINITE
    with pytest.raises(Disconnected):
        gmod.require_connected(g)


def test_ball_spheres():
    s0, s1, s2 = gmod.ball(gmod.cycle(8), 0, 2)
    assert (s0, s1, s2) == ([0], [1, 7], [2, 6])


def test_json_roundtrip(tmp_path):
    g = gmod.example_41()
    rot = [list(reversed(g.adjacency[v])) for v in range(g.n)]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(gmod.to_json_dict(g, rot)))
    g2, rot2 = gmod.load_graph(path)
    assert g2 == g and rot2 == rot


def test_json_accepts_unordered_duplicate_edges():
    g, rot = gmod.from_json_dict({"n": 3, "edges": [[1, 0], [0, 1], [2, 1]]})
    assert rot is None and g.edge_count == 2


def test_antitree_interior_excludes_truncated_levels():
    interior = gmod.antitree_interior(5)
    levels = gmod.antitree_levels(5)
    assert set(interior) == set(itertools.chain(*levels[:3]))


def test_generate_unknown_family():
    with pytest.raises(ValueError):
        gmod.generate("moebius", 3)
