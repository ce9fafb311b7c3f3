"""Command-line front end.

Exit codes: 0 success, 1 internal disagreement, 2 usage or parse error,
3 resource limit, 4 ledger mismatch on an engine-verified claim,
5 ledger mismatch on an empirical claim only.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import ledger
from .engine import Budget, Configuration, SearchLimitExceeded, CoverSearch, TargetSearch
from .expr import ExprError, build
from .graph import Graph, GraphError
from .numbers import (classify, cover_pebbling_search, cover_pebbling_stacking,
                      default_workers, optimal_pebbling_number, pebbling_number,
                      rooted_pebbling_number)

EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


class UsageError(Exception):
    pass


def load_graph(text: str) -> Graph:
    """A graph expression, or ``@path`` to an edge-list JSON file."""
    if text.startswith("@"):
        data = json.loads(Path(text[1:]).read_text())
        return Graph(int(data["n"]), [tuple(e) for e in data["edges"]], data.get("tag") or text[1:])
    return build(text)


def parse_config(graph: Graph, text: str) -> Configuration:
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--config is not valid JSON: {exc}") from None
    if not isinstance(mapping, dict):
        raise UsageError('--config must be a JSON object such as {"0": 4}')
    try:
        return Configuration.from_map(graph.n, mapping)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def graph_summary(g: Graph) -> dict:
    return {
        "tag": g.tag,
        "order": g.n,
        "size": g.size,
        "diameter": g.diameter if g.is_connected else None,
        "connected": g.is_connected,
    }


def _check_vertex(g: Graph, v: int, what: str = "target") -> int:
    if not 0 <= v < g.n:
        raise UsageError(f"{what} {v} out of range 0..{g.n - 1}")
    return v


def _moves(moves) -> list[list[int]]:
    return [[m.src, m.dst] for m in moves]


# ------------------------------------------------------------------ commands

def cmd_pi(args, g: Graph, budget: Budget) -> dict:
    if args.target is not None:
        r = _check_vertex(g, args.target)
        value, witness = rooted_pebbling_number(g, r, args.t, budget)
        return {"quantity": "pi_t(G,r)", "t": args.t, "target": r, "value": value,
                "witness": witness.to_map()}
    res = pebbling_number(g, args.t, budget, workers=args.workers)
    return {"quantity": "pi_t(G)", "t": args.t, "value": res.value, "target": res.target,
            "witness": res.witness.to_map(),
            "rooted_values": {str(k): v for k, v in res.rooted_values.items()},
            "explored": res.explored}


def cmd_gamma(args, g: Graph, budget: Budget) -> dict:
    out: dict = {"quantity": "gamma(G)", "method": args.method}
    stacking = search = None
    if args.method in ("stacking", "both"):
        stacking = cover_pebbling_stacking(g)
        out["stacking"] = stacking
    if args.method in ("search", "both"):
        res = cover_pebbling_search(g, budget)
        search = res.value
        out["search"] = search
        out["witness"] = res.witness.to_map()
    if args.method == "both":
        out["agree"] = stacking == search
    out["value"] = stacking if stacking is not None else search
    return out


def cmd_pistar(args, g: Graph, budget: Budget) -> dict:
    res = optimal_pebbling_number(g, budget)
    return {"quantity": "pi*(G)", "value": res.value, "witness": res.witness.to_map()}


def cmd_classify(args, g: Graph, budget: Budget) -> dict:
    res = classify(g, budget, workers=args.workers)
    return {"quantity": "class", "label": res.label, "value": res.details["pi"],
            "pi_minus_n": res.value, "order": g.n,
            "diameter_two_bound_applies": res.details["diameter_two_bound_applies"],
            "witness": res.witness.to_map(), "target": res.target}


def cmd_solvable(args, g: Graph, budget: Budget) -> dict:
    config = parse_config(g, args.config)
    r = _check_vertex(g, args.target)
    verdict = TargetSearch(g, r, args.t, budget).verdict(config.counts)
    return {"quantity": "t-fold solvability", "t": args.t, "target": r,
            "configuration": config.to_map(), "size": config.size,
            "solvable": verdict.solvable,
            "moves": _moves(verdict.witness) if verdict.solvable else None,
            "explored": verdict.explored}


def cmd_cover(args, g: Graph, budget: Budget) -> dict:
    config = parse_config(g, args.config)
    verdict = CoverSearch(g, budget).verdict(config.counts)
    return {"quantity": "cover solvability", "configuration": config.to_map(),
            "size": config.size, "solvable": verdict.solvable,
            "moves": _moves(verdict.witness) if verdict.solvable else None,
            "explored": verdict.explored}


def cmd_witness(args, g: Graph, budget: Budget) -> dict:
    r = _check_vertex(g, args.target)
    value, witness = rooted_pebbling_number(g, r, args.t, budget)
    return {"quantity": "maximum unsolvable configuration", "t": args.t, "target": r,
            "size": witness.size, "value": value, "witness": witness.to_map()}


def cmd_export(args, g: Graph, budget: Budget) -> dict:
    if args.format == "dot":
        lines = [f'graph "{g.tag or "G"}" {{']
        lines += [f"  {v};" for v in range(g.n)]
        lines += [f"  {u} -- {v};" for u, v in g.edges]
        lines.append("}")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"n": g.n, "edges": [list(e) for e in g.edges], "tag": g.tag}) + "\n"
    return {"quantity": "export", "text": text}


COMMANDS = {
    "pi": cmd_pi,
    "gamma": cmd_gamma,
    "pistar": cmd_pistar,
    "classify": cmd_classify,
    "solvable": cmd_solvable,
    "cover": cmd_cover,
    "witness": cmd_witness,
    "export": cmd_export,
}


# ------------------------------------------------------------------ output

def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, json.dumps(value) if isinstance(value, (list, type(None), bool)) else value))


def emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
        return
    rows: list = []
    _flatten("", {k: v for k, v in record.items() if k != "command"}, rows)
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["field", "value"])
        writer.writerows(rows)
        return
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        out.write(f"{k.ljust(width)}  {v}\n")


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    limits = argparse.ArgumentParser(add_help=False)
    limits.add_argument("--limit-states", type=int, default=None, metavar="N",
                        help="cap on explored configurations (default 50 million)")
    limits.add_argument("--limit-seconds", type=float, default=None, metavar="S")
    limits.add_argument("--workers", type=int, default=default_workers(), metavar="N",
                        help="parallel workers (default: all cores); results do not depend on it")
    common = argparse.ArgumentParser(add_help=False, parents=[limits])
    common.add_argument("--format", choices=["json", "table", "csv"], default="table")

    parser = argparse.ArgumentParser(prog="pebblelab", description="Exact graph pebbling computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str, parents=(common,)):
        p = sub.add_parser(name, parents=list(parents), help=help)
        p.add_argument("expr", help='graph expression, e.g. "corona(complete(3),path(1))", or @file.json')
        return p

    p = graph_cmd("pi", "t-fold pebbling number (or rooted value with --target)")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--target", type=int, default=None)
    p = graph_cmd("gamma", "cover pebbling number")
    p.add_argument("--method", choices=["stacking", "search", "both"], default="stacking")
    graph_cmd("pistar", "optimal pebbling number")
    graph_cmd("classify", "Class 0 / Class 1")
    p = graph_cmd("solvable", "decide t-fold solvability of a configuration")
    p.add_argument("--config", required=True, help='sparse JSON map, e.g. {"0": 4}')
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p = graph_cmd("cover", "decide cover solvability of a configuration")
    p.add_argument("--config", required=True)
    p = graph_cmd("witness", "maximum-size unsolvable configuration for a target")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p = graph_cmd("export", "serialize a graph", parents=(limits,))
    p.add_argument("--format", choices=["dot", "json"], default="dot")

    p = sub.add_parser("verify-paper", parents=[common], help="check every ledger claim")
    p.add_argument("--budget", choices=["small", "full"], default="small")
    p.add_argument("--only", default=None, metavar="CLAIM_ID")
    return parser


def run(argv: list[str], out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    if getattr(args, "t", 1) < 1:
        parser.error("--t must be >= 1")
    record = {"command": list(argv)}
    budget = Budget(
        max_states=args.limit_states if args.limit_states is not None else Budget().max_states,
        max_seconds=args.limit_seconds,
    ).start()
    record["budget"] = {"max_states": budget.max_states, "max_seconds": budget.max_seconds,
                        "outcome": "complete"}
    started = time.perf_counter()

    if args.command == "verify-paper":
        try:
            entries = ledger.verify_paper(args.budget, args.only, args.limit_states)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_USAGE
        record["result"] = ledger.report_json(entries, args.budget)
        record["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
        if args.format == "table":
            out.write(ledger.render_table(entries) + "\n")
        else:
            emit(record, args.format, out)
        return ledger.exit_status(entries)

    try:
        g = load_graph(args.expr)
        record["graph"] = graph_summary(g)
        if args.command != "export":
            g.require_connected()
        result = COMMANDS[args.command](args, g, budget)
    except (ExprError, GraphError, UsageError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchLimitExceeded as exc:
        record["budget"]["outcome"] = "limit"
        record["budget"]["explored"] = exc.explored
        record["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
        print(f"resource limit: {exc}", file=sys.stderr)
        emit(record, args.format, out)
        return EXIT_LIMIT
    record["budget"]["explored"] = result.pop("explored", budget.explored)
    record["result"] = result
    record["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    if args.command == "export":
        out.write(result["text"])
    else:
        emit(record, args.format, out)
    if args.command == "gamma" and result.get("agree") is False:
        print("error: stacking formula and search disagree", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
