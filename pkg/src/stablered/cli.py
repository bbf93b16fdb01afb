"""Command-line front end.

Every subcommand prints one JSON document to stdout.  Exit status is 0 on
success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import basechange, contract, localmodel, pipeline, saito
from .document import emit_dot, graph_to_dict, parse, parse_plan
from .errors import StableReductionError
from .fibergraph import genus, reduced_pa, validate


def _load(path: str):
    return parse(Path(path).read_text(encoding="utf-8"))


def _write_dots(dot_dir: str | None, stages: list[tuple[str, object]]) -> None:
    if not dot_dir:
        return
    out = Path(dot_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, graph in stages:
        (out / f"{name}.dot").write_text(emit_dot(graph, name), encoding="utf-8")


def cmd_validate(args):
    g, _ = _load(args.graph)
    _write_dots(args.dot, [("input", g)])
    return validate(g).as_dict()


def cmd_genus(args):
    g, _ = _load(args.graph)
    return {"genus": genus(g)}


def cmd_saito(args):
    g, _ = _load(args.graph)
    return saito.saito_check(g).as_dict()


def cmd_degree(args):
    g, _ = _load(args.graph)
    ps = saito.minimal_degree(g)
    return {"principal": sorted(ps.ids), "minimal_degree": ps.minimal_degree}


def cmd_local(args):
    ob_a = localmodel.one_branch(args.a, args.n)
    ob_b = localmodel.one_branch(args.b, args.n)
    params = localmodel.node_params(args.a, args.b, args.n, args.p)
    out = {
        "one_branch": {
            "a": {"b_prime": ob_a.b_prime, "sheet_count": ob_a.sheet_count},
            "b": {"b_prime": ob_b.b_prime, "sheet_count": ob_b.sheet_count},
        },
        "node": {
            "a_dd": params.a_dd,
            "b_dd": params.b_dd,
            "n_dd": params.n_dd,
            "r": params.r,
            "point_count": params.point_count,
            "regular": params.regular,
        },
        "chain": None,
    }
    if not params.regular:
        chain = localmodel.resolve_node(params, (params.a_dd, params.b_dd))
        out["chain"] = {
            "boundary": {"m2": chain.boundary[0], "m1": chain.boundary[1]},
            "entries": [{"b": b, "mu": mu} for b, mu in chain.entries],
        }
    return out


def cmd_jh(args):
    bs = localmodel.jung_hirzebruch(args.n, args.r)
    return {"n": args.n, "r": args.r, "expansion": bs}


def cmd_basechange(args):
    g, doc_plan = _load(args.graph)
    plan = parse_plan(Path(args.plan).read_text(encoding="utf-8")) if args.plan else doc_plan
    out = basechange.transform(g, args.n, plan)
    _write_dots(args.dot, [("input", g), ("base_changed", out)])
    return {
        "stage": "base_changed",
        "graph": graph_to_dict(out),
        "checks": {"genus": genus(out), "genus_preserved": genus(out) == genus(g)},
    }


def cmd_search(args):
    g, _ = _load(args.graph)
    results = basechange.search_splittings(g, args.n)
    return {
        "n": args.n,
        "plans": [{"plan": p.as_dict(), "graph": graph_to_dict(out)} for p, out in results],
    }


def cmd_contract(args):
    g, _ = _load(args.graph)
    out, trace = contract.contract_chains(g)
    _write_dots(args.dot, [("input", g), ("semi_stable", out)])
    return {
        "stage": "semi_stable",
        "graph": graph_to_dict(out),
        "checks": {"genus": genus(out), "genus_preserved": genus(out) == genus(g)},
        "trace": trace.as_list(),
    }


def cmd_stable(args):
    g, _ = _load(args.graph)
    out = contract.to_stable(g)
    _write_dots(args.dot, [("input", g), ("stable", out)])
    return {
        "stage": "stable",
        "graph": graph_to_dict(out),
        "checks": {"genus": reduced_pa(out), "genus_preserved": reduced_pa(out) == genus(g)},
    }


def cmd_pipeline(args):
    g, doc_plan = _load(args.graph)
    plan = None if args.search else (doc_plan or basechange.SplittingPlan())
    report = pipeline.run(g, plan)
    _write_dots(args.dot, [(s.name, s.graph) for s in report.stages])
    out = report.as_dict()
    if args.probe_minimality:
        out["minimality"] = [{"divisor": d, **res} for d, res in pipeline.probe_minimality(g)]
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablered", description="Stable reduction of curves, computed on weighted dual graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="GraphDocument JSON file")
        p.add_argument("--dot", metavar="PATH", help="directory for per-stage DOT files")
        p.set_defaults(func=func)
        return p

    graph_cmd("validate", cmd_validate, "check the structural invariants of a fiber graph")
    graph_cmd("genus", cmd_genus, "arithmetic genus of the fiber")
    graph_cmd("saito", cmd_saito, "evaluate Saito's tameness criterion")
    graph_cmd("degree", cmd_degree, "principal components and minimal tame degree")
    p = graph_cmd("basechange", cmd_basechange, "base change, normalize and resolve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--plan", metavar="FILE", help="JSON splitting plan")
    p = graph_cmd("search", cmd_search, "enumerate consistent splitting plans")
    p.add_argument("--n", type=int, required=True)
    graph_cmd("contract", cmd_contract, "contract non-reduced chain components")
    graph_cmd("stable", cmd_stable, "stable contraction of a reduced fiber")
    p = graph_cmd("pipeline", cmd_pipeline, "full stable reduction")
    p.add_argument("--search", action="store_true", help="try every consistent splitting plan")
    p.add_argument("--probe-minimality", action="store_true", help="check all proper divisors of n")

    p = sub.add_parser("local", help="local normalization and resolution data at a node")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=0)
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("jh", help="Jung-Hirzebruch continued fraction of n/r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_jh)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except StableReductionError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"stablered: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
