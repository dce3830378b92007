"""Command-line interface ``gcurv``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

import numpy as np

from . import bakry_emery as be
from . import graph as gmod
from . import ollivier as orc
from . import spectral
from . import tessellation as tess
from . import verify
from .errors import CurvatureError


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _write_json(doc, out) -> None:
    json.dump(doc, out, indent=1, sort_keys=True)
    out.write("\n")


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", newline="")


def cmd_gen(args) -> int:
    params = [int(p) for p in args.params]
    rotation = None
    if args.family in tess.POLYHEDRA and (args.embed or args.family in ("tetrahedron", "icosahedron")):
        t = tess.POLYHEDRA[args.family](*params)
        g, rotation = t.graph, t.rotation
    elif args.family == "cycle" and args.embed:
        t = tess.cycle_tessellation(*params)
        g, rotation = t.graph, t.rotation
    else:
        g = gmod.generate(args.family, *params)
    out = _open_out(args.output)
    _write_json(gmod.to_json_dict(g, rotation), out)
    if out is not sys.stdout:
        out.close()
    return 0


def _load_tessellation(path) -> tess.Tessellation:
    g, rot = gmod.load_graph(path)
    if rot is None:
        raise CurvatureError("combinatorial curvature needs a 'rotation' entry in the graph file")
    return tess.make_tessellation(g, rot)


def cmd_faces(args) -> int:
    t = _load_tessellation(args.graph)
    _write_json([list(f.boundary) for f in t.faces], sys.stdout)
    return 0


def cmd_curv(args) -> int:
    out = _open_out(args.output)
    writer = csv.writer(out, lineterminator="\n")
    if args.notion == "combinatorial":
        t = _load_tessellation(args.graph)
        writer.writerow(["vertex", "numerator", "denominator"])
        for v, k in enumerate(tess.curvatures(t)):
            writer.writerow([v, k.numerator, k.denominator])
        return 0

    g, _ = gmod.load_graph(args.graph)
    if args.notion == "bakry-emery":
        n = be.parse_dimension(args.dim)
        writer.writerow(["vertex", "K", "certificate_slack"])
        for r in be.curvature_all(g, n):
            writer.writerow([r.vertex, format(r.K, ".12g"), format(r.certificate_slack, ".3g")])
        return 0

    certificates = []
    if args.notion == "ollivier":
        p = orc.parse_idleness(args.p)
    else:
        p = Fraction(1, 2)
    writer.writerow(["x", "y", "numerator", "denominator"])
    for x, y in g.edges():
        k = orc.ollivier_curvature(g, x, y, p)
        if args.notion == "lly":
            k = orc.lly_curvature(g, x, y)
        writer.writerow([x, y, k.numerator, k.denominator])
        if args.certify:
            cert = orc.ollivier_certificate(g, x, y, p)
            certificates.append(
                {
                    "x": x,
                    "y": y,
                    "p": _frac(p),
                    "W1": _frac(cert.value),
                    "plan": [[a, b, _frac(m)] for a, b, m in cert.plan.entries],
                    "potential": {str(v): _frac(val) for v, val in sorted(cert.potential.values.items())},
                }
            )
    if args.certify:
        with open(args.certify_out, "w") as fh:
            _write_json(certificates, fh)
    return 0


def cmd_spec(args) -> int:
    g, _ = gmod.load_graph(args.graph)
    s = spectral.spectrum(g)
    _write_json({"lambda": [float(format(v, ".12g")) for v in s.values], "lambda1": float(format(s.lambda1, ".12g"))}, sys.stdout)
    return 0


def cmd_heat(args) -> int:
    g, _ = gmod.load_graph(args.graph)
    with open(args.f) as fh:
        f = json.load(fh)
    if isinstance(f, dict):
        f = [f[str(v)] for v in range(g.n)]
    result = spectral.heat_apply(g, np.asarray(f, dtype=float), args.t)
    _write_json([float(format(v, ".12g")) for v in result], sys.stdout)
    return 0


def cmd_cheeger(args) -> int:
    g, _ = gmod.load_graph(args.graph)
    h, witness = tess.cheeger_constant(g)
    _write_json({"cheeger": _frac(h), "witness": sorted(witness)}, sys.stdout)
    return 0


def cmd_verify(args) -> int:
    only = verify.THEOREMS
    if args.only:
        only = tuple(s.strip() for s in args.only.split(",") if s.strip())
        unknown = set(only) - set(verify.THEOREMS)
        if unknown:
            raise CurvatureError(f"unknown theorem(s) {sorted(unknown)}; choose from {list(verify.THEOREMS)}")
    if args.zoo in (None, "default"):
        zoo = verify.default_zoo()
    else:
        with open(args.zoo) as fh:
            zoo = verify.zoo_from_json(json.load(fh))
    config = verify.SuiteConfig(only=only, workers=args.workers)
    result = verify.run_suite(config, zoo)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(result.to_json())
            fh.write("\n")
    print(result.summary())
    return 1 if result.failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcurv", description="Discrete curvature of finite graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph from a named family")
    p.add_argument("family", choices=sorted(set(gmod.FAMILIES) | set(tess.POLYHEDRA)))
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--embed", action="store_true", help="include a rotation system when one is known")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("curv", help="per-vertex or per-edge curvature as CSV")
    p.add_argument("graph")
    p.add_argument("--notion", required=True, choices=["combinatorial", "bakry-emery", "ollivier", "lly"])
    p.add_argument("--dim", default="inf", help="dimension n for bakry-emery (default inf)")
    p.add_argument("--p", default="0", help="idleness as num/den for ollivier (default 0)")
    p.add_argument("--certify", action="store_true", help="also dump transport plans and potentials")
    p.add_argument("--certify-out", default="certificates.json")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_curv)

    p = sub.add_parser("faces", help="face boundaries of an embedded graph as JSON")
    p.add_argument("graph")
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("spec", help="spectrum of the normalized Laplacian")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("heat", help="evolve a function under the heat semigroup")
    p.add_argument("graph")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--f", required=True, help="JSON list (or vertex-keyed map) of function values")
    p.set_defaults(func=cmd_heat)

    p = sub.add_parser("cheeger", help="exact Cheeger constant by exhaustive search")
    p.add_argument("graph")
    p.set_defaults(func=cmd_cheeger)

    p = sub.add_parser("verify", help="check the curvature theorems over a graph zoo")
    p.add_argument("--only", help="comma-separated theorem ids")
    p.add_argument("--zoo", default="default", help="'default' or a zoo JSON file")
    p.add_argument("--json", help="write the full report here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"gcurv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
