"""Command-line front end.  Every subcommand prints one JSON report.

Exit codes: 0 success, 1 acceptance criteria failed, 2 validation error,
3 size cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .acceptance import CORPUS_DIR, Corpus, run_all
from .autom import AutError, cmp_report, mu_set_report, parse_automorphism
from .cubealg import STATED_RANK2_BOUND, FinMedAlg, h_bound, MedAlgError, from_group_points, grid_staircase, staircase_length, subalgebra_closure
from .fixsub import FixError, approx_subalgebra_defect, fix_ball, quasiconvexity_probe
from .graphs import GraphError, load_graph
from .medgeom import CapExceeded, dilworth_chains, hull_by_walls, interval, median
from .splittings import PartitionError, construct_good_partition, is_good
from .words import Presentation, WordError

SCHEMA = "1"
VALIDATION_ERRORS = (GraphError, WordError, AutError, MedAlgError, PartitionError, FixError, ValueError)


class CliError(ValueError):
    pass


def _graph(args):
    if not args.graph:
        raise CliError("--graph is required")
    path = Path(args.graph)
    if not path.exists():
        name = path.name if path.suffix == ".json" else path.name + ".json"
        bundled = CORPUS_DIR / name
        if not bundled.exists():
            raise CliError(f"graph file {args.graph} not found (and no bundled graph of that name)")
        path = bundled
    return load_graph(path)


def _pres(args) -> Presentation:
    return Presentation(_graph(args), args.mode)


def _elems(p: Presentation, words):
    return [p.normalize(w) for w in words]


def _algebra(args) -> FinMedAlg:
    if not args.algebra:
        raise CliError("--algebra is required")
    return FinMedAlg.load(args.algebra)


def _radius(args, default: int) -> int:
    r = default if args.radius is None else args.radius
    if r < 1:
        raise CliError("--radius must be ≥ 1")
    return r


# -- subcommands ----------------------------------------------------------------

def cmd_median(args):
    p = _pres(args)
    x, y, z = _elems(p, args.points)
    return {"median": str(median(x, y, z)), "points": [str(x), str(y), str(z)]}


def cmd_interval(args):
    p = _pres(args)
    x, y = _elems(p, args.points)
    I = sorted(interval(x, y, args.cap))
    return {"size": len(I), "elements": [str(g) for g in I], "cap": args.cap}


def cmd_hull(args):
    p = _pres(args)
    pts = _elems(p, args.points)
    H = sorted(hull_by_walls(pts, args.cap))
    return {"size": len(H), "elements": [str(g) for g in H], "cap": args.cap}


def cmd_dilworth(args):
    p = _pres(args)
    x, y = _elems(p, args.points)
    chains = dilworth_chains(x, y)
    return {"distance": len(x.inverse() * y), "chain_count": len(chains),
            "chains": [[w.describe(p) for w, _ in c] for c in chains]}


def _budgeted(args, fn, R):
    """Run fn(r) for r = R, or for r = 1..R under a wall-clock budget."""
    if args.budget_ms is None:
        return fn(R), R, False
    t = time.perf_counter()
    out, done = None, 0
    for r in range(1, R + 1):
        out, done = fn(r), r
        if (time.perf_counter() - t) * 1000 > args.budget_ms:
            break
    return out, done, done < R


def cmd_mu_set(args):
    p = _pres(args)
    phi = parse_automorphism(p, args.aut)
    R = _radius(args, 3)
    res, done, cut = _budgeted(args, lambda r: mu_set_report(phi, r), R)
    out = {"automorphism": str(phi), **res.to_json()}
    out["truncated"] = out["truncated"] or cut
    return out


def cmd_cmp_report(args):
    p = _pres(args)
    phi = parse_automorphism(p, args.aut)
    R = _radius(args, 4)
    res, done, cut = _budgeted(args, lambda r: cmp_report(phi, list(range(1, r + 1))), R)
    res["truncated"] = res["truncated"] or cut
    return res


def cmd_fix_explore(args):
    p = _pres(args)
    phi = parse_automorphism(p, args.aut)
    R = _radius(args, 3)
    rep = fix_ball(phi, R)
    return {"automorphism": str(phi), "fix": rep.to_json(),
            "approx_subalgebra": approx_subalgebra_defect(phi, min(R, 3)),
            "quasiconvexity": quasiconvexity_probe(phi, range(1, min(R, 3) + 1))}


def cmd_good_partition(args):
    g = _graph(args)
    P = construct_good_partition(g)
    ok, why = is_good(g, P)
    return {**P.to_json(), "certified": ok}


def cmd_staircase(args):
    if args.grid:
        m = grid_staircase(args.grid)
        source = {"grid": args.grid}
    elif args.algebra:
        m = _algebra(args)
        source = {"algebra": args.algebra}
    else:
        p = _pres(args)
        R = _radius(args, 2)
        m, _, _ = from_group_points(hull_by_walls(p.ball(R), args.cap))
        source = {"graph": args.graph, "radius": R, "fragment": "hull of the ball"}
    st = staircase_length(m)
    return {"source": source, "points": len(m), "walls": m.width, **st.to_json()}


def cmd_closure(args):
    m = _algebra(args)
    A = [FinMedAlg.parse_point(s) for s in args.points]
    for a in A:
        if a not in m:
            raise CliError(f"point {m.fmt(a)} is not in the algebra")
    S, steps = subalgebra_closure(A, m.width)
    r = m.rank()
    bound = {"rank": r, "h": h_bound(r)["h"] if r <= 4 else None}
    if r == 2:
        bound["stated"] = STATED_RANK2_BOUND
    return {"input": [m.fmt(a) for a in A], "size": len(S), "steps": steps, "bound": bound,
            "closure": sorted(m.fmt(s) for s in S)}


def cmd_bridge(args):
    m = _algebra(args)
    if not args.set:
        raise CliError("give at least one --set")
    Cs = []
    for spec in args.set:
        pts = [FinMedAlg.parse_point(s) for s in spec.split(",") if s]
        Cs.append(m.hull(pts))
    B, par, perp = m.multi_bridge(Cs)
    return {"sets": [sorted(m.fmt(p) for p in C) for C in Cs], "bridge": sorted(m.fmt(p) for p in B),
            "parallel_coordinates": par, "perpendicular_coordinates": perp, "rank": m.rank()}


def cmd_acceptance(args):
    corpus = Corpus(args.corpus or CORPUS_DIR)
    only = {int(x) for x in args.only.split(",")} if args.only else None
    outs = run_all(corpus, only, args.seed)
    for o in outs:
        print(o.line(), file=sys.stderr)
    return {"criteria": [o.to_json() for o in outs], "all_passed": all(o.passed for o in outs)}


COMMANDS = {
    "median": (cmd_median, "median of three group elements"),
    "interval": (cmd_interval, "the interval I(x, y)"),
    "hull": (cmd_hull, "convex hull of group elements"),
    "dilworth": (cmd_dilworth, "minimal chain partition of H(x|y)"),
    "mu-set": (cmd_mu_set, "truncated μ-set of an automorphism"),
    "cmp-report": (cmd_cmp_report, "μ-set growth and verdict"),
    "fix-explore": (cmd_fix_explore, "Fix φ in a ball with defect probes"),
    "good-partition": (cmd_good_partition, "construct and certify a good partition"),
    "staircase": (cmd_staircase, "longest staircase of a finite median algebra"),
    "closure": (cmd_closure, "median subalgebra generated by points"),
    "bridge": (cmd_bridge, "multi-bridge of convex sets"),
    "acceptance": (cmd_acceptance, "run the acceptance criteria"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="medcube", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--graph", help="graph JSON file or bundled corpus name")
        sp.add_argument("--mode", choices=("artin", "coxeter"), default=None)
        sp.add_argument("--radius", type=int)
        sp.add_argument("--cap", type=int, default=20_000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", "--report", dest="out")
        sp.add_argument("--budget-ms", type=int, dest="budget_ms")
        if name in ("median", "interval", "hull", "dilworth", "closure"):
            sp.add_argument("points", nargs="*")
        if name in ("mu-set", "cmp-report", "fix-explore"):
            sp.add_argument("--aut", required=True, help='e.g. "inv(a); join(a,b); pc(w,{c,d})"')
        if name in ("staircase", "closure", "bridge"):
            sp.add_argument("--algebra", help="median algebra JSON {width, points}")
        if name == "staircase":
            sp.add_argument("--grid", type=int, help="the n-step grid staircase")
        if name == "bridge":
            sp.add_argument("--set", action="append", help="comma-separated points spanning a convex set")
        if name == "acceptance":
            sp.add_argument("--corpus", help="directory of graph JSON files")
            sp.add_argument("--only", help="comma-separated criterion numbers")
    return ap


def _limit_threads() -> None:
    n = os.environ.get("MEDCUBE_THREADS")
    if not n:
        return
    import numba
    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


ARITY = {"median": 3, "interval": 2, "dilworth": 2}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    report = {"schema": SCHEMA, "command": args.command}
    code = 0
    try:
        if args.cap < 1:
            raise CliError("--cap must be ≥ 1")
        if args.command in ARITY and len(args.points) != ARITY[args.command]:
            raise CliError(f"{args.command} takes {ARITY[args.command]} points")
        _limit_threads()
        report.update(fn(args))
        if args.command == "acceptance" and not report["all_passed"]:
            code = 1
    except CapExceeded as exc:
        report.update(error=str(exc), kind="cap")
        code = 3
    except VALIDATION_ERRORS as exc:
        report.update(error=str(exc), kind="validation")
        code = 2
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    if args.out and code in (0, 1):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if code == 2 or code == 3:
        print(f"medcube: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
