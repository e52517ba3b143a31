"""courant-kit command line.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import acceptance
from . import bialgebroid as bg
from . import ecourant as ec
from . import exactlin as el
from . import leibniz as lb
from . import serialize as se
from . import twist as tw
from .dirac import NotDirac, is_dirac

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _plain(x):
    """Make a report value JSON-friendly and deterministic."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return se.tensor_to_json(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    try:
        return el.fstr(x)
    except TypeError:
        return str(x)


def _render_text(report, indent=0):
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append("%s%s:" % (pad, k))
            lines.extend(_render_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append("%s%s:" % (pad, k))
            for item in v:
                lines.extend(_render_text(item, indent + 1))
                lines.append("")
        else:
            lines.append("%s%s: %s" % (pad, k, json.dumps(v)))
    return lines


def _emit(report, fmt, out):
    report = _plain(report)
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2))
        out.write("\n")
    else:
        out.write("\n".join(_render_text(report)))
        out.write("\n")


def _cap(value, cap, what):
    if value > cap:
        raise InputError("%s %d exceeds the cap %d (raise it with the matching --*-cap flag)"
                         % (what, value, cap))


# ---------------------------------------------------------------------------
# commands

def cmd_verify_ecourant(args):
    s = se.load(args.structure, "ecourant")
    _cap(s.e_dim, args.dim_cap, "eDim")
    rep = ec.verify_axioms(s)
    axioms = {name: {"passed": st.passed, "witness": st.witness} for name, st in rep.statuses.items()}
    return rep.ok, {"command": "verify-ecourant", "ok": rep.ok, "axioms": axioms}


def cmd_verify_dirac(args):
    s = se.load(args.structure, "ecourant")
    L = se.load(args.subspace, "subspace")
    _cap(s.e_dim, args.dim_cap, "eDim")
    if L.ambient != s.k_dim:
        raise InputError("subspace ambient %d does not match kDim %d" % (L.ambient, s.k_dim))
    r = is_dirac(s, L)
    return r.dirac, {"command": "verify-dirac", "dirac": r.dirac, "dim": L.dim,
                     "isotropic": r.isotropic, "isotropicWitness": r.isotropic_witness,
                     "selfPerp": r.self_perp, "perpDim": r.perp_dim,
                     "closed": r.closed, "closureWitness": r.closure_witness}


def cmd_leibniz_cohomology(args):
    alg = se.load(args.algebra, "leibniz_algebra")
    rep = se.load(args.representation, "representation")
    if rep.algebra_dim != alg.dim:
        raise InputError("representation is for an algebra of dim %d, not %d" % (rep.algebra_dim, alg.dim))
    max_dim = args.cohomology_dim_cap ** 2
    degrees = range(args.max_degree + 1)
    _cap(args.max_degree, lb.DEFAULT_MAX_DEGREE, "degree")
    _cap(alg.dim, max_dim, "algebra dimension")
    lrep = lb.check_leibniz(alg)
    rrep = lb.check_rep(alg, rep)
    report = {"command": "leibniz-cohomology", "leibniz": lrep.ok, "representation": rrep.ok,
              "leibnizWitness": lrep.first, "representationWitness": rrep.first}
    if not (lrep.ok and rrep.ok):
        return False, report
    try:
        dims = [lb.cohomology_dim(alg, rep, k, "both", max_dim=max_dim) for k in degrees]
    except el.EliminationMismatch as e:
        report["mismatch"] = str(e)
        return False, report
    report["dims"] = {"HL^%d" % k: d for k, d in zip(degrees, dims)}
    return True, report


def cmd_classify_twist(args):
    p = se.load(args.pair, "admissible_pair")
    _cap(p.n, args.dim_cap, "n")
    rep = tw.admissible_check(p)
    report = {"command": "classify-twist", "admissible": rep.ok,
              "conditions": {"symmetric": rep.symmetric, "cond1": rep.cond1,
                             "cond2": rep.cond2, "cond3": rep.cond3},
              "witnesses": {k: rep.witnesses[k] for k in sorted(rep.witnesses)}}
    if not rep.ok:
        report["builds"] = False
        return False, report
    s = tw.build_exact(p, check=False)
    built = ec.verify_axioms(s).ok
    report["builds"] = built
    t = tw.trivialize(p.theta)
    report["trivialization"] = se.tensor_to_json(t.b) if t.exists else "nontrivial class"
    return built, report


def _bialg_dict(r):
    return {k: {"passed": st.passed, "witness": st.witness} for k, st in r.statuses.items()}


def cmd_double(args):
    p = se.load(args.pair, "edual_pair")
    _cap(p.e_dim, args.dim_cap, "eDim")
    r = bg.check_bialgebroid(p)
    report = {"command": "double", "bialgebroid": r.ok, "conditions": _bialg_dict(r)}
    if not r.ok:
        return False, report
    s = bg.double(p, require=False)
    ax = ec.verify_axioms(s)
    report["axioms"] = ax.ok
    report["failedAxioms"] = ax.failed()
    report["structure"] = se.to_json(s)
    if args.output:
        se.dump(s, args.output)
    return ax.ok, report


def cmd_manin(args):
    s = se.load(args.structure, "ecourant")
    A = se.load(args.a, "subspace")
    B = se.load(args.b, "subspace")
    _cap(s.e_dim, args.dim_cap, "eDim")
    report = {"command": "manin"}
    try:
        p = bg.manin_decompose(s, A, B)
    except (bg.NotTransverse, NotDirac) as e:
        report.update(ok=False, error=type(e).__name__, detail=str(e))
        return False, report
    r = bg.check_bialgebroid(p)
    report.update(ok=r.ok, conditions=_bialg_dict(r), pair=se.to_json(p))
    if args.output:
        se.dump(p, args.output)
    return r.ok, report


def cmd_maurer_cartan(args):
    p = se.load(args.pair, "edual_pair")
    obj = se.load(args.h, ("tensor", "cochain"))
    H = obj.values if isinstance(obj, se.Cochain) else obj
    _cap(p.e_dim, args.dim_cap, "eDim")
    try:
        mc = bg.maurer_cartan(p, H)
    except (bg.NotConstrained, el.ShapeError) as e:
        raise InputError(str(e)) from None
    report = {"command": "maurer-cartan", "holds": mc.holds, "witness": mc.witness}
    r = bg.check_bialgebroid(p)
    report["bialgebroid"] = r.ok
    if r.ok:
        d = bg.double(p, require=False)
        dr = is_dirac(d, bg.graph(p, H), bg.graph_generators(p, H))
        report["graphDirac"] = dr.dirac
        report["closureWitness"] = dr.closure_witness
        report["agree"] = dr.dirac == mc.holds
    return mc.holds and report.get("agree", True), report


def cmd_selftest(args):
    results = acceptance.run_all(args.seed)
    ok = all(r.ok for r in results)
    return ok, {"command": "selftest", "seed": args.seed, "ok": ok,
                "criteria": [r.as_dict() for r in results]}


COMMANDS = {
    "verify-ecourant": cmd_verify_ecourant,
    "verify-dirac": cmd_verify_dirac,
    "leibniz-cohomology": cmd_leibniz_cohomology,
    "classify-twist": cmd_classify_twist,
    "double": cmd_double,
    "manin": cmd_manin,
    "maurer-cartan": cmd_maurer_cartan,
    "selftest": cmd_selftest,
}


def _seed(text):
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _common(defaults):
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim-cap", type=_positive, default=d(4))
    common.add_argument("--cohomology-dim-cap", type=_positive, default=d(3))
    common.add_argument("--seed", type=_seed, default=d(7))
    common.add_argument("--format", choices=("text", "json"), default=d("text"))
    return common


def build_parser():
    # suppressed defaults on the subcommands keep options given before the command name
    common = _common(False)
    parser = argparse.ArgumentParser(prog="courant-kit", parents=[_common(True)],
                                     description="Exact checks for point-fiber E-Courant structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-ecourant", parents=[common], help="check the E-Courant axioms")
    p.add_argument("structure")
    p = sub.add_parser("verify-dirac", parents=[common], help="check a Dirac structure")
    p.add_argument("structure")
    p.add_argument("subspace")
    p = sub.add_parser("leibniz-cohomology", parents=[common], help="Leibniz cohomology dimensions")
    p.add_argument("algebra")
    p.add_argument("representation")
    p.add_argument("--max-degree", type=int, default=2)
    p = sub.add_parser("classify-twist", parents=[common], help="classify an admissible pair")
    p.add_argument("pair")
    p = sub.add_parser("double", parents=[common], help="double of an E-Lie bialgebroid")
    p.add_argument("pair")
    p.add_argument("--output")
    p = sub.add_parser("manin", parents=[common], help="split along two transverse Dirac structures")
    p.add_argument("structure")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--output")
    p = sub.add_parser("maurer-cartan", parents=[common], help="Maurer-Cartan test for a graph")
    p.add_argument("pair")
    p.add_argument("h")
    sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        ok, report = COMMANDS[args.command](args)
    except (se.SchemaError, InputError, el.ShapeError, lb.DimensionCapExceeded, OSError) as e:
        err.write("courant-kit: input error: %s\n" % e)
        return EXIT_INPUT
    _emit(report, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
