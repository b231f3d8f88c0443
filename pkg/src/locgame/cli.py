"""``locgame`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget abort.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import __version__
from .decomposition import TreeDecomposition, minfill_td, td_stats, td_violation, tree_edge_td
from .generators import FAMILIES, gen_family
from .graph import GraphError, format_edge_list, read_edge_list
from .solver import ABORTED, Budget, BudgetExceeded, localization_number, metric_dimension, solve_capture_time
from .strategies import StrategyError, build_strategy, evaluate_strategy

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
RANDOM_FAMILIES = {"random_tree"}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="edge-list file")
    src.add_argument("--family", metavar="NAME", help=f"one of: {', '.join(sorted(FAMILIES))}")
    p.add_argument("--params", nargs="*", default=[], metavar="P", help="family parameters")
    p.add_argument("--seed", type=int, help="seed for randomized families")


def _add_common(p: argparse.ArgumentParser, fmt=("json", "text")) -> None:
    p.add_argument("--format", choices=fmt, default=fmt[0])
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--threads", type=_positive, default=1, help="worker cap (work is single-threaded)")


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-states", type=_positive, default=Budget.max_states)
    p.add_argument("--budget-probes", type=_positive, default=Budget.max_probes)


def _family_graph(family: str, params, seed):
    params = list(params)
    if family in RANDOM_FAMILIES:
        if seed is None and len(params) < 2:
            raise UsageError(f"{family} needs --seed")
        if seed is not None:
            params = params[:1] + [seed]
    return gen_family(family, *params)


def load_graph(args):
    if args.graph:
        try:
            return read_edge_list(args.graph)
        except OSError as exc:
            raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    return _family_graph(args.family, args.params, args.seed)


def _budget(args) -> Budget:
    return Budget(max_states=args.budget_states, max_probes=args.budget_probes)


def _dump(payload: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["schema_version", *header])
    for r in rows:
        w.writerow([SCHEMA_VERSION, *r])
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------- commands


def cmd_gen(args) -> int:
    g = _family_graph(args.family, args.params, args.seed)
    _emit(args, format_edge_list(g))
    return EXIT_OK


def cmd_solve(args) -> int:
    g = load_graph(args)
    res = solve_capture_time(g, args.cops, _budget(args), symmetry=args.symmetry)
    payload = res.as_dict(g.name)
    if res.outcome == ABORTED:
        payload["reason"] = res.reason
    if args.format == "json":
        _emit(args, _dump(payload))
    else:
        t = res.capture_time if res.capture_time is not None else "-"
        _emit(args, f"{g.name or 'graph'} k={res.k} {res.outcome} capture_time={t} states={res.states}\n")
    return EXIT_BUDGET if res.outcome == ABORTED else EXIT_OK


def cmd_locnum(args) -> int:
    g = load_graph(args)
    loc = localization_number(g, _budget(args), symmetry=args.symmetry, max_k=args.max_cops)
    table = [{"k": k, "outcome": r.outcome, "capture_time": r.capture_time, "states": r.states}
             for k, r in sorted(loc.table.items())]
    if args.format == "json":
        _emit(args, _dump({"graph": g.name, "zeta": loc.zeta, "aborted": loc.aborted, "table": table}))
    elif args.format == "csv":
        _emit(args, _csv(["graph", "k", "outcome", "capture_time", "states"],
                         [[g.name, t["k"], t["outcome"], t["capture_time"], t["states"]] for t in table]))
    else:
        _emit(args, f"{g.name or 'graph'} zeta={loc.zeta}\n")
    return EXIT_BUDGET if loc.aborted else EXIT_OK


def cmd_mdim(args) -> int:
    g = load_graph(args)
    size, witness = metric_dimension(g, _budget(args))
    if args.format == "json":
        _emit(args, _dump({"graph": g.name, "beta": size, "witness": list(witness)}))
    else:
        _emit(args, f"{g.name or 'graph'} beta={size} witness={list(witness)}\n")
    return EXIT_OK


def _load_td(path):
    try:
        with open(path) as fh:
            return TreeDecomposition.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad decomposition file {path}: {exc}") from None


def cmd_eval(args) -> int:
    g = load_graph(args)
    td = _load_td(args.td) if args.td else None
    strategy = build_strategy(args.strategy, g, td)
    if args.cops is not None and strategy.cops > args.cops:
        raise UsageError(f"{strategy.name} needs {strategy.cops} cops, only {args.cops} given")
    rep = evaluate_strategy(g, strategy, args.max_rounds)
    if args.format == "json":
        _emit(args, _dump({"graph": g.name, "strategy": strategy.describe(), **rep.as_dict()}))
    else:
        w = rep.worst_case_rounds if not rep.exceeded else f">{rep.cap}"
        _emit(args, f"{strategy.name} cops={strategy.cops} status={rep.status} worst_case_rounds={w}\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = load_graph(args)
    if args.check:
        td = _load_td(args.check)
        msg = td_violation(g, td)
        payload = {"graph": g.name, "valid": msg is None, "violation": msg}
        _emit(args, _dump(payload) if args.format == "json" else f"valid={msg is None} {msg or ''}\n")
        return EXIT_OK if msg is None else EXIT_FAIL
    td = tree_edge_td(g) if args.method == "tree-edge" else minfill_td(g)
    st = td_stats(td)
    if args.format == "json":
        body = json.loads(td.to_json())
        _emit(args, _dump({"graph": g.name, **body, "width": st.width, "radius": st.radius,
                           "center": st.center, "leaves": st.leaves}))
    else:
        _emit(args, f"bags={len(td.bags)} width={st.width} radius={st.radius} leaves={st.leaves}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .suite import SUITES, run_suite

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")

    def progress(row):
        logging.getLogger("locgame.verify").info("%s %s %.2fs", row.id, "pass" if row.passed else "FAIL", row.seconds)

    rows = run_suite(args.only, log=progress)
    if not rows:
        raise UsageError(f"--only {args.only!r} matches no check")
    if args.format == "json":
        _emit(args, _dump({"suite": args.suite, "rows": [r.as_dict() for r in rows]}))
    else:
        _emit(args, _csv(["id", "criterion", "expected", "observed", "pass", "runtime_s", "reason"],
                         [[r.id, r.criterion, r.expected, r.observed, "pass" if r.passed else "fail",
                           f"{r.seconds:.3f}", r.reason] for r in rows]))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


# ------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locgame", description="Localization game solver and strategy checker.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="exact capture time with k cops")
    _add_graph_source(p)
    p.add_argument("--cops", type=_positive, required=True)
    p.add_argument("--symmetry", choices=("none", "tree"), default="none")
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("locnum", help="localization number and per-k capture times")
    _add_graph_source(p)
    p.add_argument("--symmetry", choices=("none", "tree"), default="none")
    p.add_argument("--max-cops", type=_positive)
    _add_budget(p)
    _add_common(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_locnum)

    p = sub.add_parser("mdim", help="metric dimension with a witness")
    _add_graph_source(p)
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_mdim)

    p = sub.add_parser("eval", help="worst case of a fixed cop strategy")
    _add_graph_source(p)
    p.add_argument("--strategy", required=True, help="name[:key=value,...]")
    p.add_argument("--max-rounds", type=_positive, default=50)
    p.add_argument("--td", metavar="PATH", help="decomposition JSON for the decomposition strategies")
    p.add_argument("--cops", type=_positive, help="expected cop count (checked against the strategy)")
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", help="build or check a tree decomposition")
    _add_graph_source(p)
    p.add_argument("--method", choices=("minfill", "tree-edge"), default="minfill")
    p.add_argument("--check", metavar="PATH", help="validate this decomposition JSON instead")
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("suite", help="suite name (paper)")
    p.add_argument("--only", help="substring of a check id, or a criterion number")
    _add_common(p, ("csv", "json"))
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        code = args.func(args)
    except BudgetExceeded as exc:
        print(f"locgame: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GraphError, StrategyError, ValueError) as exc:
        print(f"locgame: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
