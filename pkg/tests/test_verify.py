import math
from fractions import Fraction

import pytest

from graphcurv import graph as gmod
from graphcurv import tessellation as tess
from graphcurv import verify as V


def test_gauss_bonnet_examples():
    for t in (tess.prism_tessellation(7), tess.antiprism_tessellation(5), tess.icosahedron_tessellation()):
        r = V.verify_gauss_bonnet(t)
        assert r.verdict == V.HOLDS and r.hypotheses["gauss_bonnet_sum"] == 2


def test_lichnerowicz_be_examples():
    r = V.verify_lichnerowicz_be(gmod.hypercube(4))
    assert r.verdict == V.HOLDS and abs(r.slack) < 1e-6
    assert r.hypotheses["lambda1"] == pytest.approx(0.5)
    r = V.verify_lichnerowicz_be(gmod.complete(5))
    assert r.verdict == V.HOLDS and r.hypotheses["lambda1"] == pytest.approx(1.25)
    assert V.verify_lichnerowicz_be(gmod.dumbbell(4, 4)).verdict == V.VACUOUS
    with pytest.raises(ValueError):
        V.verify_lichnerowicz_be(gmod.complete(3), 1.0)


def test_bonnet_myers_be_examples():
    r = V.verify_bonnet_myers_be(gmod.hypercube(4))
    assert r.verdict == V.HOLDS and abs(r.slack) < 1e-6
    assert V.verify_bonnet_myers_be(gmod.complete(6)).verdict == V.HOLDS
    # prism(12) is flat up to rounding; the snapped curvature gives Vacuous
    assert V.verify_bonnet_myers_be(gmod.prism(12)).verdict == V.VACUOUS


def test_bonnet_myers_ollivier_examples():
    assert V.verify_bonnet_myers_ollivier(gmod.hypercube(3), Fraction(1, 2)).verdict == V.HOLDS
    assert V.verify_bonnet_myers_ollivier(gmod.complete(4), 0).verdict == V.HOLDS
    r = V.verify_bonnet_myers_ollivier(gmod.cycle(12), Fraction(1, 2))
    assert r.verdict == V.VACUOUS and r.hypotheses["K"] == 0
    with pytest.raises(ValueError):
        V.verify_bonnet_myers_ollivier(gmod.cycle(5), 1)


def test_lichnerowicz_ollivier_examples():
    r = V.verify_lichnerowicz_ollivier(gmod.hypercube(4))
    assert r.verdict == V.HOLDS and abs(r.slack) < 1e-6 and r.hypotheses["K_LLY"] == Fraction(1, 2)
    for n in range(2, 7):
        assert V.verify_lichnerowicz_ollivier(gmod.complete(n)).verdict == V.HOLDS
    r = V.verify_lichnerowicz_ollivier(gmod.example_41())
    assert r.verdict in (V.HOLDS, V.VACUOUS) and r.hypotheses["lambda1"] > 0


def test_only_gauss_bonnet_runs_only_tessellations():
    res = V.run_suite(V.SuiteConfig(only=("gauss-bonnet",)))
    assert res.reports and {r.theorem for r in res.reports} == {"gauss-bonnet"}
    assert len(res.reports) == sum(e.tessellation is not None for e in V.default_zoo())


def test_corrupted_laplacian_fails_with_replayable_witness():
    g = gmod.hypercube(3)
    zoo = [V.ZooEntry("hypercube(3)", g)]
    config = V.SuiteConfig(only=("lichnerowicz-be", "lichnerowicz-ollivier"), laplacian_scale=0.5)
    res = V.run_suite(config, zoo)
    assert res.failed
    for r in res.failed:
        assert r.witness is not None
        assert V.replay(r, g)
    assert "FAILED" in res.summary()


def test_replay_for_pair_witness():
    g = gmod.cycle(6)
    r = V.VerificationReport("bonnet-myers-be", "cycle(6)", {}, V.FAILED, -1.0, {"pair": [0, 3], "distance": 3, "bound": 2.0})
    assert V.replay(r, g)
    r.witness["bound"] = 3.0
    assert not V.replay(r, g)


def test_suite_is_deterministic_and_serializes_exactly():
    zoo = [V.ZooEntry("example41", gmod.example_41()), V.ZooEntry("q3", gmod.hypercube(3))]
    a = V.run_suite(V.SuiteConfig(), zoo).to_json()
    b = V.run_suite(V.SuiteConfig(), zoo).to_json()
    assert a == b
    assert '"1/2"' in a


def test_parallel_run_matches_serial(monkeypatch):
    zoo = [V.ZooEntry(f"cycle({n})", gmod.cycle(n)) for n in (4, 5, 6)]
    serial = V.run_suite(V.SuiteConfig(), zoo).to_json()
    monkeypatch.setenv("GCURV_THREADS", "2")
    assert V.run_suite(V.SuiteConfig(workers=4), zoo).to_json() == serial


def test_jsonable_formats():
    assert V._jsonable(Fraction(3, 6)) == "1/2"
    assert V._jsonable(1 / 3) == 0.333333333333
    assert V._jsonable(math.inf) == "inf"


def test_zoo_from_json():
    doc = {
        "graphs": [
            {"name": "p5", "family": "prism", "params": [5]},
            {"name": "k3", "family": "complete", "params": [3]},
            {"name": "raw", "n": 3, "edges": [[0, 1], [1, 2]]},
        ]
    }
    zoo = V.zoo_from_json(doc)
    assert [e.name for e in zoo] == ["p5", "k3", "raw"]
    assert zoo[0].tessellation is not None and zoo[1].tessellation is None
