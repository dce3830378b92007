from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcurv import graph as gmod
from graphcurv import tessellation as tess
from graphcurv.errors import InvalidRotation, InvalidTessellation, NotIncident

from oracles import cheeger_naive

POLYHEDRA = (
    [tess.prism_tessellation(n) for n in range(3, 13)]
    + [tess.antiprism_tessellation(n) for n in range(3, 13)]
    + [tess.tetrahedron_tessellation(), tess.icosahedron_tessellation()]
)


@pytest.mark.parametrize("t", POLYHEDRA, ids=lambda t: repr(t.graph))
def test_polyhedra_are_valid_and_gauss_bonnet(t):
    report = tess.check_tessellation(t)
    assert report.ok, report.problems
    assert tess.gauss_bonnet_sum(t) == 2


@pytest.mark.parametrize("t", POLYHEDRA, ids=lambda t: repr(t.graph))
def test_faces_use_each_dart_once(t):
    darts = [d for f in t.faces for d in f.darts()]
    assert len(darts) == len(set(darts)) == 2 * t.graph.edge_count
    assert sum(f.degree for f in t.faces) == 2 * t.graph.edge_count


@pytest.mark.parametrize("n", range(3, 13))
def test_prism_and_antiprism_curvature(n):
    assert tess.curvatures(tess.prism_tessellation(n)) == [Fraction(1, n)] * (2 * n)
    assert tess.curvatures(tess.antiprism_tessellation(n)) == [Fraction(1, n)] * (2 * n)


def test_cube_faces():
    t = tess.prism_tessellation(4)
    assert sorted(f.degree for f in t.faces) == [4] * 6


def test_platonic_curvatures():
    assert set(tess.curvatures(tess.icosahedron_tessellation())) == {Fraction(1, 6)}
    assert set(tess.curvatures(tess.tetrahedron_tessellation())) == {Fraction(1, 2)}


def test_corner_curvature_formula_and_incidence():
    t = tess.prism_tessellation(5)
    square = next(f for f in t.faces if f.degree == 4)
    v = square.boundary[0]
    assert tess.corner_curvature(t, v, square) == Fraction(1, 3) + Fraction(1, 4) - Fraction(1, 2)
    outsider = next(u for u in range(t.graph.n) if u not in square.boundary)
    with pytest.raises(NotIncident):
        tess.corner_curvature(t, outsider, square)


def test_rotation_roundtrip_through_faces():
    t = tess.icosahedron_tessellation()
    rot = tess.rotation_from_faces(t.graph.n, [f.boundary for f in t.faces])
    t2 = tess.make_tessellation(t.graph, rot)
    assert sorted(map(sorted, (f.boundary for f in t2.faces))) == sorted(map(sorted, (f.boundary for f in t.faces)))


def test_bad_rotation_rejected():
    g = gmod.complete(4)
    with pytest.raises(InvalidRotation):
        tess.make_tessellation(g, [[1, 2], [0, 2, 3], [0, 1, 3], [0, 1, 2]])


def test_non_planar_rotation_fails_validation():
    # K4 with a rotation of genus one: two faces, Euler characteristic 0
    g = gmod.complete(4)
    t = tess.make_tessellation(g, [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])
    report = tess.check_tessellation(t)
    assert report.euler_characteristic == 0 and not report.faces_simple
    with pytest.raises(InvalidTessellation):
        tess.gauss_bonnet_sum(t)


def test_cycle_is_not_a_tessellation():
    report = tess.check_tessellation(tess.cycle_tessellation(5))
    assert not report.vertex_degrees_ok and not report.ok


def test_classification():
    for n in range(3, 13):
        assert tess.higuchi_classify(tess.prism_tessellation(n)) == tess.Classification("Prism", n)
        assert tess.higuchi_classify(tess.antiprism_tessellation(n)) == tess.Classification("Antiprism", n)
    assert tess.higuchi_classify(tess.icosahedron_tessellation()).kind == "SmallGraph"
    assert tess.higuchi_classify(tess.tetrahedron_tessellation()).kind == "SmallGraph"


def test_cut_locus():
    assert tess.cut_locus(gmod.cycle(6), 0) == {3}
    assert tess.cut_locus(gmod.complete(4), 0) == {1, 2, 3}
    # ties count: on an odd cycle both antipodal vertices are maxima
    assert tess.cut_locus(gmod.cycle(7), 0) == {3, 4}


def test_cheeger_small_cases():
    assert tess.cheeger_constant(gmod.dumbbell(3, 3))[0] == Fraction(1, 7)
    assert tess.cheeger_constant(gmod.cycle(6))[0] == Fraction(1, 3)
    assert tess.cheeger_constant(gmod.complete(2))[0] == 1


@pytest.mark.parametrize(
    "g", [gmod.example_41(), gmod.hypercube(3), gmod.antitree(4), gmod.prism(5), gmod.dumbbell(4, 5)], ids=repr
)
def test_cheeger_witness_matches_value(g):
    h, w = tess.cheeger_constant(g)
    assert 0 < len(w) <= g.n // 2
    assert tess.boundary_ratio(g, w) == h
    assert h == cheeger_naive(g.n, list(g.edges()))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.data())
def test_cheeger_matches_oracle_on_random_graphs(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True, min_size=n - 1))
    edges = [(i, i + 1) for i in range(n - 1)] + chosen
    g = gmod.from_edge_list(n, edges)
    assert tess.cheeger_constant(g)[0] == cheeger_naive(n, list(g.edges()))


@pytest.mark.parametrize("p,q", [(4, 5), (5, 4), (4, 6), (7, 4)])
def test_negative_curvature_isoperimetry_on_patches(p, q):
    patch = tess.hyperbolic_patch(p, q, 2)
    t = patch.tessellation
    g = t.graph
    for v in patch.interior:
        assert g.degree(v) == q
        assert all(f.degree == p for f in t.corners(v))
    report = tess.check_negative_curvature_isoperimetry(patch, max_size=5)
    assert report.k0 == Fraction(1, 2) - Fraction(1, q) - Fraction(1, p)
    assert report.holds and report.min_ratio >= 2 * report.k0
    assert "truncation boundary excluded" in report.caveat
    assert report.subsets_checked > len(patch.interior)


def test_patch_requires_hyperbolic_parameters():
    with pytest.raises(ValueError):
        tess.hyperbolic_patch(3, 6, 1)
