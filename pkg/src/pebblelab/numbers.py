"""Exact pebbling quantities: pi_t(G, r), pi_t(G), cover number, optimal
pebbling number and the Class 0 / Class 1 label.

pi_t and the cover number are computed as one plus the largest size of a
*failing* configuration. Failing configurations form a down-set inside a
finite box (a vertex holding enough pebbles solves on its own), so a
depth-first sweep of the box in lexicographic order that stops raising a
coordinate as soon as the configuration succeeds visits only the down-set
and its boundary.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Sequence

from .engine import Budget, Configuration, CoverSearch, TargetSearch
from .graph import CANONICAL_MAX_ORDER, Graph, vertex_orbits

PI_T = "PI_T"
GAMMA = "GAMMA"
PI_STAR = "PI_STAR"
CLASS = "CLASS"


@dataclass
class QuantityResult:
    kind: str
    value: int
    witness: Configuration | None = None
    t: int | None = None
    target: int | None = None
    rooted_values: dict[int, int] | None = None
    label: str | None = None
    explored: int = 0
    details: dict = field(default_factory=dict)


def max_failing_configuration(
    caps: Sequence[int],
    fails: Callable[[tuple[int, ...]], bool],
    seeds: Sequence[Sequence[int]] = (),
) -> tuple[int, ...]:
    """Lexicographically smallest maximum-size vector ``c <= caps`` with
    ``fails(c)``, assuming failure is inherited by every smaller vector.

    ``seeds`` are candidate failing vectors used only to start the size bound.
    """
    n = len(caps)
    best_size = -1
    for seed in seeds:
        seed = tuple(seed)
        if sum(seed) - 1 > best_size and fails(seed):
            best_size = sum(seed) - 1
    remaining = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        remaining[i] = remaining[i + 1] + caps[i]
    current = [0] * n
    best: list[tuple[int, ...] | None] = [None]

    def sweep(i: int, size: int) -> None:
        nonlocal best_size
        if i == n:
            if size > best_size:
                best_size = size
                best[0] = tuple(current)
            return
        if size + remaining[i] <= best_size:
            return
        for c in range(caps[i] + 1):
            # too small to beat the bound; failure of a larger c implies this one
            if size + c + remaining[i + 1] <= best_size:
                continue
            if c:
                current[i] = c
                if not fails(tuple(current)):
                    break
            sweep(i + 1, size + c)
        current[i] = 0

    if fails(tuple(current)):
        sweep(0, 0)
    if best[0] is None:
        raise RuntimeError("no failing configuration inside the box")
    return best[0]


def rooted_box(graph: Graph, target: int, t: int = 1) -> list[int]:
    """Per-vertex caps containing every t-fold target-unsolvable configuration."""
    d = graph.dist[target]
    return [t - 1 if v == target else (t << d[v]) - 1 for v in range(graph.n)]


def rooted_pebbling_number(graph: Graph, target: int, t: int = 1,
                           budget: Budget | None = None) -> tuple[int, Configuration]:
    """``pi_t(G, r)`` together with a maximum-size unsolvable configuration."""
    budget = (budget or Budget()).start()
    search = TargetSearch(graph, target, t, budget)
    far = max(range(graph.n), key=lambda v: (graph.dist[target][v], -v))
    ones = [1] * graph.n
    ones[target] = t - 1
    stack = [0] * graph.n
    stack[far] = (t << graph.dist[target][far]) - 1
    stack[target] = t - 1
    worst = max_failing_configuration(
        rooted_box(graph, target, t),
        lambda c: not search.decide(c),
        seeds=[ones, stack],
    )
    return sum(worst) + 1, Configuration(worst)


def _rooted_job(args):
    graph, target, t, budget = args
    value, witness = rooted_pebbling_number(graph, target, t, budget)
    return value, witness, budget.explored


def target_representatives(graph: Graph, use_symmetry: bool = True) -> dict[int, list[int]]:
    """Map orbit representative -> orbit members (identity without symmetry)."""
    if use_symmetry and graph.n <= CANONICAL_MAX_ORDER:
        return {orbit[0]: orbit for orbit in vertex_orbits(graph)}
    return {v: [v] for v in range(graph.n)}


def pebbling_number(graph: Graph, t: int = 1, budget: Budget | None = None,
                    workers: int = 1, use_symmetry: bool = True) -> QuantityResult:
    """``pi_t(G)``: the worst target's rooted number, with every rooted value."""
    graph.require_connected()
    budget = (budget or Budget()).start()
    reps = target_representatives(graph, use_symmetry)
    targets = sorted(reps)
    if workers > 1 and len(targets) > 1:
        jobs = [(graph, r, t, budget.fresh()) for r in targets]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_rooted_job, jobs))
        explored = sum(o[2] for o in outcomes)
        results = {r: (o[0], o[1]) for r, o in zip(targets, outcomes)}
    else:
        start = budget.explored
        results = {r: rooted_pebbling_number(graph, r, t, budget) for r in targets}
        explored = budget.explored - start
    rooted = {}
    for rep, members in reps.items():
        for v in members:
            rooted[v] = results[rep][0]
    worst = min(targets, key=lambda r: (-results[r][0], r))
    value, witness = results[worst]
    return QuantityResult(PI_T, value, witness, t=t, target=worst,
                          rooted_values=dict(sorted(rooted.items())), explored=explored)


def stacking_costs(graph: Graph) -> list[int]:
    """Pebbles a single stack at v needs to cover the graph: sum_u 2**d(u, v)."""
    graph.require_connected()
    return [sum(1 << d for d in row) for row in graph.dist]


def cover_pebbling_stacking(graph: Graph) -> int:
    return max(stacking_costs(graph))


def cover_pebbling_search(graph: Graph, budget: Budget | None = None) -> QuantityResult:
    """Cover pebbling number by exhaustive search of non-coverable configurations."""
    budget = (budget or Budget()).start()
    start = budget.explored
    search = CoverSearch(graph, budget)
    costs = stacking_costs(graph)
    v = max(range(graph.n), key=lambda v: (costs[v], -v))
    seed = [0] * graph.n
    seed[v] = costs[v] - 1
    worst = max_failing_configuration(
        [c - 1 for c in costs],
        lambda c: not search.decide(c),
        seeds=[seed],
    )
    return QuantityResult(GAMMA, sum(worst) + 1, Configuration(worst),
                          explored=budget.explored - start)


def optimal_pebbling_number(graph: Graph, budget: Budget | None = None) -> QuantityResult:
    """Smallest size of a configuration solving every target (1 pebble each).

    Sizes are tried upward; the witness is the first size-m multiset of
    vertices, in lexicographic order, that solves all targets.
    """
    graph.require_connected()
    budget = (budget or Budget()).start()
    start = budget.explored
    searches = [TargetSearch(graph, r, 1, budget) for r in range(graph.n)]
    m = 1
    while True:
        for multiset in combinations_with_replacement(range(graph.n), m):
            counts = [0] * graph.n
            for v in multiset:
                counts[v] += 1
            counts = tuple(counts)
            if all(s.decide(counts) for s in searches):
                return QuantityResult(PI_STAR, m, Configuration(counts),
                                      explored=budget.explored - start)
        m += 1


def classify(graph: Graph, budget: Budget | None = None, workers: int = 1) -> QuantityResult:
    """Class 0 when pi(G) = n, Class 1 when pi(G) = n + 1."""
    pi = pebbling_number(graph, 1, budget, workers)
    excess = pi.value - graph.n
    if excess == 0:
        label = "Class 0"
    elif excess == 1:
        label = "Class 1"
    else:
        label = f"pi-n = {excess}"
    diameter = graph.diameter
    return QuantityResult(
        CLASS, excess, pi.witness, t=1, target=pi.target,
        rooted_values=pi.rooted_values, label=label, explored=pi.explored,
        details={"pi": pi.value, "n": graph.n, "diameter": diameter,
                 "diameter_two_bound_applies": diameter == 2},
    )


def default_workers() -> int:
    return os.cpu_count() or 1
