"""``flexcolor`` command line.

Exit codes: 0 pass, 1 a proven claim failed (counterexample printed),
2 inconclusive (budget), 64 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import verify
from .budget import BudgetExceeded, default_budget
from .constructions import (
    ConditionFails,
    HypothesisViolation,
    PaperClaimViolation,
    converse_certificate,
    ohba_condition,
    ohba_threshold,
    question2_probe,
)
from .flex import NotLColorable, chi_ell_flex, epsilon_ell, is_flexible
from .graph import GraphError
from .invariants import chromatic_number, clique_number, hall_ratio, invariants_report
from .io import catalog_path, emit_graph6, iter_graph6_lines, parse_graph6, parse_graph_spec
from .lists import is_k_choosable

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64
SCHEMA = verify.SCHEMA


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(obj: dict, fmt: str = "json", stream=None):
    stream = stream or sys.stdout
    obj = {"schema": SCHEMA, **obj}
    if fmt == "table":
        for key, value in obj.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            print(f"{key:>20}  {value}", file=stream)
    else:
        print(json.dumps(obj, sort_keys=True), file=stream)


def _graph(spec: str):
    try:
        return parse_graph_spec(spec)
    except (GraphError, OSError) as exc:
        raise UsageError(f"cannot read graph {spec!r}: {exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def cmd_invariants(args) -> int:
    G = _graph(args.graph)
    _emit({"graph": emit_graph6(G), **invariants_report(G)}, args.output)
    return EXIT_OK


def cmd_choosable(args) -> int:
    G = _graph(args.graph)
    ok, wit = is_k_choosable(G, args.k, args.budget)
    out = {"graph": emit_graph6(G), "k": args.k, "choosable": ok}
    if wit is not None:
        out["witness"] = wit.to_json()
    _emit(out, args.output)
    return EXIT_OK


def cmd_flex(args) -> int:
    G = _graph(args.graph)
    base = {"graph": emit_graph6(G)}
    if args.number:
        num = chi_ell_flex(G, args.mode, seed=args.seed, trials=args.trials, budget=args.budget)
        _emit({**base, "chi_ell_flex": num.to_json()}, args.output)
        return EXIT_OK
    if args.k is None:
        raise UsageError("flex needs -k (or --number)")
    if args.eps is None and args.mode == "exhaustive":
        rep = epsilon_ell(G, args.k, args.budget)
    else:
        eps = _fraction(args.eps) if args.eps is not None else 1 / hall_ratio(G)
        rep = is_flexible(G, args.k, eps, args.mode, seed=args.seed, trials=args.trials, budget=args.budget)
    _emit({**base, **rep.to_json()}, args.output)
    return EXIT_OK


def cmd_ohba(args) -> int:
    G = _graph(args.graph)
    res = ohba_condition(G)
    out = {"graph": emit_graph6(G), "condition": res.holds}
    if res.violating_set is not None:
        out["S"] = list(res.violating_set)
    if res.note:
        out["note"] = res.note
    if res.holds:
        out["threshold_N"] = ohba_threshold(G)
    _emit(out, args.output)
    return EXIT_OK


def cmd_certificate(args) -> int:
    G = _graph(args.graph)
    try:
        S = [int(x) for x in args.set.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--set must be comma separated vertices, got {args.set!r}") from None
    try:
        cert = converse_certificate(G, S, args.p, cap=args.cap)
    except HypothesisViolation as exc:
        raise UsageError(str(exc)) from None
    _emit(cert.to_json(), args.output)
    return EXIT_OK


def _hunt_one(args):
    line, k = args
    G = parse_graph6(line)
    if clique_number(G) != k - 1 or chromatic_number(G) != k:
        return None
    res = ohba_condition(G)
    if res.holds:
        return None
    return {"graph": line, "n": G.n, "chi": k, "omega": k - 1, "S": list(res.violating_set)}


def cmd_hunt(args) -> int:
    if args.k < 3:
        raise UsageError("hunt needs -k >= 3")
    try:
        path = catalog_path(args.catalog)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if args.n_max is not None:
        lines = [ln for ln in lines if parse_graph6(ln).n <= args.n_max]
    jobs = [(ln, args.k) for ln in lines]
    workers = args.workers or os.cpu_count() or 1
    if workers > 1 and len(jobs) > 64:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_hunt_one, jobs, chunksize=32))
    else:
        results = [_hunt_one(j) for j in jobs]
    for res in results:
        if res is not None:
            print(json.dumps({"schema": SCHEMA, **res}, sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    name = args.suite
    if name == "theorem8":
        rep = verify.verify_theorem8(n=args.n or 5, trials=args.trials or 200, seed=args.seed)
    elif name == "lemma6":
        rep = verify.verify_lemma6(n_max=args.n or 6)
    elif name == "prop4":
        rep = verify.verify_prop4(k=args.k or 2, trials=args.trials or 100_000, seed=args.seed)
    elif name == "theorem3":
        rep = verify.verify_theorem3(trials=args.trials or 500, seed=args.seed, budget=args.budget)
    elif name == "theorem5":
        kw = dict(trials=args.trials or 10_000, seed=args.seed)
        if args.catalog:
            try:
                rep = verify.verify_theorem5_catalog(args.catalog, **kw)
            except FileNotFoundError as exc:
                raise UsageError(str(exc)) from None
        else:
            rep = verify.verify_theorem5(n_max=args.n or 4, **kw)
    elif name == "epsilon":
        rep = verify.verify_epsilon(n_max=args.n or 4, k_max=args.k or 3, budget=args.budget)
    elif name in ("choosability", "theorem4"):
        rep = verify.SUITES[name](budget=args.budget)
    else:
        rep = verify.SUITES[name]()
    _emit({k: v for k, v in rep.items() if k != "schema"}, args.output)
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[rep["status"]]


def cmd_probe_q2(args) -> int:
    G = _graph(args.graph)
    rep = question2_probe(G, args.budget, args.base_flex, args.seed, args.trials)
    _emit({"graph": emit_graph6(G), **rep}, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flexcolor", description="Exact list-coloring flexibility invariants of small graphs.")
    p.add_argument("--output", choices=["json", "table"], default="json")
    p.add_argument("--workers", type=int, default=None, help="worker processes for catalog scans")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, budget=True, seed=False):
        if budget:
            sp.add_argument("--budget", type=int, default=None,
                            help="node budget (default: $FLEXCOLOR_BUDGET or 1e9)")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--trials", type=int, default=10_000)

    sp = sub.add_parser("invariants", help="alpha, omega, chi, Delta, w-profile, Hall ratio, tau")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("choosable", help="decide k-choosability with a witness")
    sp.add_argument("graph")
    sp.add_argument("-k", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_choosable)

    sp = sub.add_parser("flex", help="epsilon flexibility and the list flexibility number")
    sp.add_argument("graph")
    sp.add_argument("-k", type=int)
    sp.add_argument("--eps", help="test (k, eps)-flexibility, e.g. 1/3")
    sp.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    sp.add_argument("--number", action="store_true", help="compute the list flexibility number")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_flex)

    sp = sub.add_parser("ohba", help="check the join condition and report the threshold N")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_ohba)

    sp = sub.add_parser("certificate", help="build and check the converse certificate")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True, help="violating set, comma separated")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--cap", type=int, default=12, help="largest |V(H)| checked exhaustively")
    sp.set_defaults(func=cmd_certificate)

    sp = sub.add_parser("hunt", help="scan a graph6 catalog for condition violators")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=None)
    sp.set_defaults(func=cmd_hunt)

    sp = sub.add_parser("verify", help="run a property suite")
    sp.add_argument("suite", choices=sorted(verify.SUITES))
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--catalog")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_verify, trials=None)

    sp = sub.add_parser("probe-q2", help="probe whether the cone keeps flex number = chi")
    sp.add_argument("graph")
    sp.add_argument("--base-flex", type=int, default=None, help="known list flexibility number of the graph")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_probe_q2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        args.budget = default_budget()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"flexcolor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, NotLColorable, ConditionFails) as exc:
        print(f"flexcolor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"flexcolor: inconclusive: {exc}", file=sys.stderr)
        _emit({"status": "inconclusive", "reason": str(exc)})
        return EXIT_INCONCLUSIVE
    except PaperClaimViolation as exc:
        print(f"flexcolor: claim violated: {exc}", file=sys.stderr)
        _emit({"status": "fail", "counterexample": str(exc)})
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
