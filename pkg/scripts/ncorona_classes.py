"""Tabulate pi(G * H) - |V(G * H)| for neighbourhood coronas of small factors.

Useful for asking which G * H are Class 0: the table lists the label,
pi, order and diameter for each pair.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from pebblelab.engine import Budget, SearchLimitExceeded
from pebblelab.expr import build
from pebblelab.numbers import classify

DEFAULT_G = ["complete(2)", "complete(3)", "complete(4)", "path(3)", "path(4)", "cycle(4)", "cycle(5)", "star(3)"]
DEFAULT_H = ["complete(1)", "complete(2)", "edgeless(2)"]


@dataclass
class ClassTable:
    left: list[str] = field(default_factory=lambda: list(DEFAULT_G))
    right: list[str] = field(default_factory=lambda: list(DEFAULT_H))
    max_states: int = 20_000_000
    max_seconds: float = 60.0


def rows(cfg: ClassTable):
    for g in cfg.left:
        for h in cfg.right:
            expr = f"ncorona({g},{h})"
            graph = build(expr)
            try:
                res = classify(graph, Budget(cfg.max_states, cfg.max_seconds))
            except SearchLimitExceeded:
                yield expr, graph.n, graph.diameter, None, "limit"
                continue
            yield expr, graph.n, graph.diameter, res.details["pi"], res.label


if __name__ == "__main__":
    p = argparse.ArgumentParser(description="Class table for neighbourhood coronas.")
    p.add_argument("--max-states", type=int, default=20_000_000)
    p.add_argument("--max-seconds", type=float, default=60.0, help="per-instance time limit")
    args = p.parse_args()
    header = ("expression", "n", "diam", "pi", "label")
    print("{:<36} {:>3} {:>4} {:>4}  {}".format(*header))
    for expr, n, diam, pi, label in rows(ClassTable(max_states=args.max_states, max_seconds=args.max_seconds)):
        print(f"{expr:<36} {n:>3} {diam:>4} {'-' if pi is None else pi:>4}  {label}", flush=True)
