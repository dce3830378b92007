"""Machine checks of the discrete curvature theorems over a zoo of graphs.

Every check returns a :class:`VerificationReport` whose verdict is one of
``Holds`` (hypothesis met, conclusion true), ``Vacuous`` (hypothesis not met)
or ``FAILED`` (hypothesis met, conclusion false; carries a replayable witness).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

from . import bakry_emery as be
from . import graph as gmod
from . import ollivier as orc
from . import spectral
from . import tessellation as tess
from .graph import Graph

HOLDS, VACUOUS, FAILED = "Holds", "Vacuous", "FAILED"
FLOAT_TOL = 1e-8
# pencil-solver curvatures this close to zero count as zero
ZERO_CURVATURE = 1e-9

THEOREMS = (
    "gauss-bonnet",
    "lichnerowicz-be",
    "bonnet-myers-be",
    "bonnet-myers-ollivier",
    "lichnerowicz-ollivier",
)


@dataclass
class VerificationReport:
    theorem: str
    graph: str
    hypotheses: dict[str, Any]
    verdict: str
    slack: Any
    witness: dict[str, Any] | None = None

    def to_json(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(format(x, ".12g"))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _positive(k: float) -> bool:
    return k > ZERO_CURVATURE


# ---------------------------------------------------------------------------
# individual theorems
# ---------------------------------------------------------------------------


def verify_gauss_bonnet(t: tess.Tessellation, name: str = "") -> VerificationReport:
    total = tess.gauss_bonnet_sum(t)
    hyp = {"V": t.graph.n, "E": t.graph.edge_count, "F": len(t.faces), "gauss_bonnet_sum": total}
    if total == 2:
        return VerificationReport("gauss-bonnet", name, hyp, HOLDS, total - 2)
    witness = {"curvatures": tess.curvatures(t)}
    return VerificationReport("gauss-bonnet", name, hyp, FAILED, total - 2, witness)


def _first_eigenfunction(g: Graph, laplacian_scale: float = 1.0):
    spec = spectral.spectrum(g)
    k = int(np.argmax(spec.values > spectral.ZERO_EIGENVALUE_CUTOFF))
    return laplacian_scale * spec.lambda1, spec.vectors[:, k]


def rayleigh_quotient(g: Graph, f, laplacian_scale: float = 1.0) -> float:
    """``<f, -L f>_D / <f, f>_D`` after removing the degree-weighted mean."""
    f = np.asarray(f, dtype=float)
    deg = np.array(g.degrees, dtype=float)
    f = f - (deg @ f) / deg.sum()
    lf = spectral.laplacian(g).dense() @ f
    return laplacian_scale * float(-(deg * f) @ lf / ((deg * f) @ f))


def verify_lichnerowicz_be(g: Graph, n: float = be.INF, name: str = "", laplacian_scale: float = 1.0) -> VerificationReport:
    if not (n == be.INF or n > 1):
        raise ValueError("the eigenvalue bound needs dimension n > 1")
    gmod.require_connected(g)
    K = be.cd_constant(g, n)
    lam1, f1 = _first_eigenfunction(g, laplacian_scale)
    factor = 1.0 if n == be.INF else n / (n - 1)
    hyp = {"K": K, "n": n, "lambda1": lam1}
    if not _positive(K):
        return VerificationReport("lichnerowicz-be", name, hyp, VACUOUS, None)
    slack = lam1 - factor * K
    if slack >= -FLOAT_TOL:
        return VerificationReport("lichnerowicz-be", name, hyp, HOLDS, slack)
    witness = {"eigenfunction": list(f1), "bound": factor * K, "laplacian_scale": laplacian_scale}
    return VerificationReport("lichnerowicz-be", name, hyp, FAILED, slack, witness)


def _diameter_pair(g: Graph) -> tuple[int, int, int]:
    best = (0, 0, 0)
    for s in range(g.n):
        dist = gmod.bfs_distances(g, s).dist
        far = max(range(g.n), key=lambda v: dist[v])
        if dist[far] > best[2]:
            best = (s, far, dist[far])
    return best


def verify_bonnet_myers_be(g: Graph, name: str = "") -> VerificationReport:
    gmod.require_connected(g)
    K = be.cd_constant(g, be.INF)
    diam = gmod.diameter(g)
    hyp = {"K": K, "diameter": diam}
    if not _positive(K):
        return VerificationReport("bonnet-myers-be", name, hyp, VACUOUS, None)
    slack = 2 / K - diam
    if slack >= -FLOAT_TOL:
        return VerificationReport("bonnet-myers-be", name, hyp, HOLDS, slack)
    a, b, d = _diameter_pair(g)
    return VerificationReport("bonnet-myers-be", name, hyp, FAILED, slack, {"pair": [a, b], "distance": d, "bound": 2 / K})


def verify_bonnet_myers_ollivier(g: Graph, p=Fraction(1, 2), name: str = "") -> VerificationReport:
    gmod.require_connected(g)
    p = Fraction(p)
    if not 0 <= p < 1:
        raise ValueError("idleness must lie in [0, 1)")
    K = orc.global_curvature_bound(g, p)
    diam = gmod.diameter(g)
    hyp = {"K": K, "p": p, "diameter": diam}
    if K <= 0:
        return VerificationReport("bonnet-myers-ollivier", name, hyp, VACUOUS, None)
    bound = 2 * (1 - p) / K
    slack = bound - diam
    if slack >= 0:
        return VerificationReport("bonnet-myers-ollivier", name, hyp, HOLDS, slack)
    a, b, d = _diameter_pair(g)
    return VerificationReport("bonnet-myers-ollivier", name, hyp, FAILED, slack, {"pair": [a, b], "distance": d, "bound": bound})


def verify_lichnerowicz_ollivier(g: Graph, name: str = "", laplacian_scale: float = 1.0) -> VerificationReport:
    gmod.require_connected(g)
    curv = orc.lly_edge_curvatures(g)
    edge, K = min(curv.items(), key=lambda kv: kv[1])
    lam1, f1 = _first_eigenfunction(g, laplacian_scale)
    hyp = {"K_LLY": K, "min_edge": list(edge), "lambda1": lam1}
    if K <= 0:
        return VerificationReport("lichnerowicz-ollivier", name, hyp, VACUOUS, None)
    slack = lam1 - float(K)
    if slack >= -FLOAT_TOL:
        return VerificationReport("lichnerowicz-ollivier", name, hyp, HOLDS, slack)
    witness = {"eigenfunction": list(f1), "bound": K, "laplacian_scale": laplacian_scale}
    return VerificationReport("lichnerowicz-ollivier", name, hyp, FAILED, slack, witness)


def replay(report: VerificationReport, g: Graph | None = None, t: tess.Tessellation | None = None) -> bool:
    """Re-evaluate a FAILED report's witness; True when the violation reproduces."""
    w = report.witness
    if report.verdict != FAILED or w is None:
        return False
    if report.theorem == "gauss-bonnet":
        total = sum((Fraction(k) for k in w["curvatures"]), Fraction(0))
        return total != 2
    if report.theorem in ("lichnerowicz-be", "lichnerowicz-ollivier"):
        lam = rayleigh_quotient(g, w["eigenfunction"], w.get("laplacian_scale", 1.0))
        return lam < float(w["bound"]) - FLOAT_TOL
    if report.theorem in ("bonnet-myers-be", "bonnet-myers-ollivier"):
        a, b = w["pair"]
        return gmod.distance(g, a, b) > w["bound"]
    raise ValueError(f"unknown theorem {report.theorem}")


# ---------------------------------------------------------------------------
# zoo and suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZooEntry:
    name: str
    graph: Graph
    tessellation: tess.Tessellation | None = None


def default_zoo() -> list[ZooEntry]:
    zoo = [ZooEntry(f"complete({n})", gmod.complete(n)) for n in range(2, 9)]
    zoo += [ZooEntry(f"cycle({n})", gmod.cycle(n)) for n in range(3, 13)]
    zoo += [ZooEntry(f"hypercube({n})", gmod.hypercube(n)) for n in range(2, 6)]
    for n in range(3, 13):
        t = tess.prism_tessellation(n)
        zoo.append(ZooEntry(f"prism({n})", t.graph, t))
    for n in range(3, 13):
        t = tess.antiprism_tessellation(n)
        zoo.append(ZooEntry(f"antiprism({n})", t.graph, t))
    zoo.append(ZooEntry("tetrahedron", gmod.complete(4), tess.tetrahedron_tessellation()))
    ico = tess.icosahedron_tessellation()
    zoo.append(ZooEntry("icosahedron", ico.graph, ico))
    zoo += [ZooEntry(f"dumbbell({a},{b})", gmod.dumbbell(a, b)) for a in range(3, 6) for b in range(a, 6)]
    zoo += [ZooEntry(f"antitree({n})", gmod.antitree(n)) for n in range(4, 8)]
    zoo.append(ZooEntry("example41", gmod.example_41()))
    return zoo


def zoo_from_json(doc: dict) -> list[ZooEntry]:
    """``{"graphs": [{"name", "family", "params"} | {"name", "n", "edges", "rotation"?}]}``."""
    out = []
    for i, item in enumerate(doc["graphs"]):
        name = item.get("name", f"graph{i}")
        if "family" in item:
            params = item.get("params", [])
            if item["family"] in tess.POLYHEDRA:
                t = tess.POLYHEDRA[item["family"]](*params)
                out.append(ZooEntry(name, t.graph, t))
            else:
                out.append(ZooEntry(name, gmod.generate(item["family"], *params)))
        else:
            g, rot = gmod.from_json_dict(item)
            t = tess.make_tessellation(g, rot) if rot is not None else None
            out.append(ZooEntry(name, g, t))
    return out


@dataclass
class SuiteConfig:
    only: tuple[str, ...] = THEOREMS
    dims: tuple[float, ...] = (be.INF, 2.0)
    idleness: tuple[Fraction, ...] = (Fraction(0), Fraction(1, 2))
    workers: int = 1
    # negative-control hook: multiplies every computed Laplacian eigenvalue
    laplacian_scale: float = 1.0


@dataclass
class SuiteResult:
    reports: list[VerificationReport] = field(default_factory=list)

    @property
    def failed(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.verdict == FAILED]

    def to_json(self) -> str:
        counts = {v: sum(r.verdict == v for r in self.reports) for v in (HOLDS, VACUOUS, FAILED)}
        doc = {"summary": counts, "reports": [r.to_json() for r in self.reports]}
        return json.dumps(doc, indent=1, sort_keys=True)

    def summary(self) -> str:
        lines = []
        for theorem in THEOREMS:
            rs = [r for r in self.reports if r.theorem == theorem]
            if not rs:
                continue
            counts = {v: sum(r.verdict == v for r in rs) for v in (HOLDS, VACUOUS, FAILED)}
            lines.append(f"{theorem:24s} holds={counts[HOLDS]:3d} vacuous={counts[VACUOUS]:3d} failed={counts[FAILED]:3d}")
        for r in self.failed:
            lines.append(f"FAILED {r.theorem} on {r.graph}: slack {r.slack}")
        return "\n".join(lines)


def _jobs(zoo: Iterable[ZooEntry], config: SuiteConfig) -> list[tuple[Callable, tuple, dict]]:
    jobs = []
    for entry in zoo:
        g, name = entry.graph, entry.name
        if "gauss-bonnet" in config.only and entry.tessellation is not None:
            jobs.append((verify_gauss_bonnet, (entry.tessellation, name), {}))
        if g.n < 2 or not gmod.is_connected(g):
            continue
        if "lichnerowicz-be" in config.only:
            for n in config.dims:
                jobs.append((verify_lichnerowicz_be, (g, n, name), {"laplacian_scale": config.laplacian_scale}))
        if "bonnet-myers-be" in config.only:
            jobs.append((verify_bonnet_myers_be, (g, name), {}))
        if "bonnet-myers-ollivier" in config.only:
            for p in config.idleness:
                jobs.append((verify_bonnet_myers_ollivier, (g, p, name), {}))
        if "lichnerowicz-ollivier" in config.only:
            jobs.append((verify_lichnerowicz_ollivier, (g, name), {"laplacian_scale": config.laplacian_scale}))
    return jobs


def _run(job):
    fn, args, kwargs = job
    return fn(*args, **kwargs)


def run_suite(config: SuiteConfig | None = None, zoo: list[ZooEntry] | None = None) -> SuiteResult:
    config = config or SuiteConfig()
    zoo = default_zoo() if zoo is None else zoo
    jobs = _jobs(zoo, config)
    workers = config.workers
    cap = os.environ.get("GCURV_THREADS")
    if cap:
        workers = min(workers, max(1, int(cap)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run, jobs, chunksize=4))
    else:
        reports = [_run(job) for job in jobs]
    return SuiteResult(reports)
