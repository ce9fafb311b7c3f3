"""Machine-checked ledger of published pebbling claims.

Claims live in ``data/manifest.json``: a graph recipe template, the engine
quantity to compute, and one or more relations whose right-hand side is a
closed form evaluated at run time. Each instance becomes a
:class:`LedgerEntry` with status CONFIRMED, MISMATCH, SKIPPED or
NOT_APPLICABLE.
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from .engine import Budget, SearchLimitExceeded, TargetSearch
from .expr import build
from .graph import DisconnectedGraphError, Graph, corona
from .numbers import (cover_pebbling_search, cover_pebbling_stacking,
                      optimal_pebbling_number, pebbling_number,
                      rooted_pebbling_number)

CONFIRMED = "CONFIRMED"
MISMATCH = "MISMATCH"
SKIPPED = "SKIPPED"
NOT_APPLICABLE = "NOT_APPLICABLE"

EXIT_OK = 0
EXIT_ENGINE_MISMATCH = 4
EXIT_EMPIRICAL_MISMATCH = 5


# ------------------------------------------------------------------ formulas

_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.Div: operator.truediv, ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow,
    ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt,
    ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge,
}
_FUNCS = {"min": min, "max": max}


def evaluate_formula(text: str, lookup: Callable[[str], object]):
    """Exact arithmetic on integers and Fractions; names resolve via ``lookup``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            return lookup(node.id)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                return Fraction(left) / Fraction(right)
            return _BINOPS[type(node.op)](left, right)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        if isinstance(node, ast.Compare) and len(node.ops) == 1 and type(node.ops[0]) in _CMPOPS:
            return _CMPOPS[type(node.ops[0])](ev(node.left), ev(node.comparators[0]))
        raise ValueError(f"unsupported formula element {ast.dump(node)} in {text!r}")

    value = ev(ast.parse(text, mode="eval"))
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def _show(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


RELATIONS = {"=": operator.eq, "<=": operator.le, ">=": operator.ge}


# ------------------------------------------------------------------ witnesses

@dataclass(frozen=True)
class WitnessSpec:
    name: str
    recipe: str
    parameter: str
    param_range: tuple[int, int]
    size_formula: str
    target: Callable[[Graph, int], int]
    configuration: Callable[[Graph, int], tuple[int, ...]]
    description: str

    def instantiate(self, k: int) -> tuple[Graph, int, tuple[int, ...]]:
        g = build(self.recipe.format(**{self.parameter: k}))
        return g, self.target(g, k), self.configuration(g, k)

    def declared_size(self, k: int) -> int:
        return evaluate_formula(self.size_formula, {self.parameter: k}.__getitem__)


def _friendship_config(g: Graph, n: int):
    # target 1, its triangle partner 2, hub 0; vertex 3 sits in another triangle
    counts = [1] * g.n
    counts[1] = 0
    counts[0] = 0
    counts[3] = 3
    return tuple(counts)


def _book_hub_config(g: Graph, n: int):
    # target hub 0; vertex 3 (far side of page 0) holds 3, its neighbours 1 and 2 hold none
    counts = [1] * g.n
    for v in (0, 1, 2):
        counts[v] = 0
    counts[3] = 3
    return tuple(counts)


@lru_cache(maxsize=None)
def _book2_page_witness() -> tuple[int, ...]:
    _, witness = rooted_pebbling_number(build("book(2)"), 2)
    return witness.counts


def _book_page_config(g: Graph, n: int):
    # B_2 occupies vertices 0..5 of B_n; every further page vertex holds 1
    return _book2_page_witness() + (1,) * (g.n - 6)


def _ncorona_config(g: Graph, m: int):
    # target 3 = first vertex of copy 0; copies 1 and 2 start at 3+m and 3+2m
    counts = [1] * g.n
    for v in (0, 1, 2, 3):
        counts[v] = 0
    counts[3 + m] = 3
    counts[3 + 2 * m] = 3
    return tuple(counts)


def witness_registry() -> list[WitnessSpec]:
    return [
        WitnessSpec("friendship", "friendship({n})", "n", (2, 4), "2*n + 1",
                    lambda g, n: 1, _friendship_config,
                    "target a leaf; hub and target empty; 3 on a vertex of another triangle; 1 elsewhere"),
        WitnessSpec("book-hub", "book({n})", "n", (2, 3), "2*n + 1",
                    lambda g, n: 0, _book_hub_config,
                    "target a hub; 3 on the far corner of a page; 1 on every vertex not adjacent to it"),
        WitnessSpec("book-page", "book({n})", "n", (2, 3), "2*n + 3",
                    lambda g, n: 2, _book_page_config,
                    "target a page vertex; maximum unsolvable B_2 configuration plus 1 on other pages"),
        WitnessSpec("ncorona", "ncorona(complete(3),complete({m}))", "m", (1, 3), "3*m + 3",
                    lambda g, m: 3, _ncorona_config,
                    "target in copy 0; 3 on one vertex of each other copy; 1 on every other copy vertex"),
    ]


def check_witness(spec: WitnessSpec, k: int, budget: Budget | None = None) -> dict:
    g, target, counts = spec.instantiate(k)
    solvable = TargetSearch(g, target, 1, budget).decide(counts)
    return {
        "graph": g.tag, "target": target,
        "configuration": {str(v): c for v, c in enumerate(counts) if c},
        "size": sum(counts), "declared_size": spec.declared_size(k),
        "unsolvable": not solvable,
    }


# ------------------------------------------------------------------ ledger

@dataclass
class LedgerEntry:
    claim_id: str
    instance: str
    statement: str
    kind: str
    recipe: str
    quantity: str
    status: str
    engine_value: int | None = None
    expected: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def load_manifest() -> dict:
    text = resources.files("pebblelab").joinpath("data/manifest.json").read_text()
    return json.loads(text)


def corona_bounds(g: Graph, h: Graph, pi_g: int, pi2_g: int) -> tuple[int, int, int]:
    """The two published upper bounds on pi(G o H) and the claimed exact value."""
    gh = g.n * h.n
    return 4 * pi_g + gh, 3 * pi2_g + gh, gh + 2 * (pi2_g - 1)


def lower_bound(g: Graph) -> int:
    return max(g.n, 2 ** g.diameter)


class _Session:
    """Per-run cache so shared sub-results (pi of a factor, etc.) are computed once."""

    def __init__(self, max_states: int | None):
        self.max_states = max_states
        self.cache: dict = {}

    def budget(self) -> Budget:
        return Budget(max_states=self.max_states)

    def memo(self, key, compute):
        if key not in self.cache:
            try:
                self.cache[key] = compute()
            except SearchLimitExceeded as exc:
                self.cache[key] = exc
        value = self.cache[key]
        if isinstance(value, SearchLimitExceeded):
            raise value
        return value

    def pi(self, g: Graph, t: int = 1) -> int:
        return self.memo(("pi", g, t), lambda: pebbling_number(g, t, self.budget()).value)

    def quantity(self, kind: str, g: Graph, t: int = 1):
        if kind == "pi":
            return self.pi(g, t)
        if kind == "gamma_stacking":
            return cover_pebbling_stacking(g)
        if kind == "gamma_search":
            return self.memo(("gamma", g), lambda: cover_pebbling_search(g, self.budget()).value)
        if kind == "pistar":
            return self.memo(("pistar", g), lambda: optimal_pebbling_number(g, self.budget()).value)
        if kind == "class_excess":
            return self.pi(g) - g.n
        if kind == "diameter":
            return g.diameter
        raise ValueError(f"unknown quantity {kind!r}")


def _instances(claim: dict, budget: str) -> list[dict]:
    params = claim["params"]
    out = list(params.get("small", []))
    if budget == "full":
        out += params.get("full", [])
    return out


def _instance_label(params: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in params.items()) or "-"


def evaluate_claim(claim: dict, params: dict, session: _Session) -> LedgerEntry:
    bound = dict(params)
    for name, formula in claim.get("bind", {}).items():
        bound[name] = evaluate_formula(formula, bound.__getitem__)
    recipe = claim["graph"].format(**bound)
    entry = LedgerEntry(
        claim_id=claim["id"], instance=_instance_label(params), statement=claim["statement"],
        kind=claim["kind"], recipe=recipe, quantity=claim["quantity"], status=NOT_APPLICABLE,
    )
    try:
        g = build(recipe)
        g.require_connected()
    except DisconnectedGraphError as exc:
        entry.details["reason"] = str(exc)
        return entry

    factors = {name: build(bound[name]) for name in ("G", "H") if name in bound}

    def lookup(name: str):
        if name in bound:
            return bound[name]
        if name == "order":
            return g.n
        if name == "diam":
            return g.diameter
        if name == "pi":
            return session.pi(g)
        if name == "pi2":
            return session.pi(g, 2)
        if name in ("g", "h"):
            return factors[name.upper()].n
        if name == "piG":
            return session.pi(factors["G"])
        if name == "pi2G":
            return session.pi(factors["G"], 2)
        if name == "piH":
            return session.pi(factors["H"])
        if name == "pi_corona":
            return session.pi(corona(factors["G"], factors["H"]))
        raise KeyError(f"unknown formula variable {name!r}")

    try:
        if "requires" in claim and not evaluate_formula(claim["requires"], lookup):
            entry.details["reason"] = f"precondition {claim['requires']} fails"
            return entry
        if claim["quantity"] == "witness":
            spec = next(s for s in witness_registry() if s.name == claim["witness"])
            report = check_witness(spec, params[spec.parameter], session.budget())
            entry.details.update(report)
            value = report["size"]
        else:
            value = session.quantity(claim["quantity"], g, claim.get("t", 1))
        entry.engine_value = value
        ok = True
        for rel, formula in claim["relations"]:
            expected = evaluate_formula(formula, lookup)
            holds = RELATIONS[rel](value, expected)
            item = {"relation": rel, "formula": formula, "value": _show(expected), "holds": holds}
            if rel == "=":
                item["difference"] = _show(value - expected)
            entry.expected.append(item)
            ok = ok and holds
        if claim["quantity"] == "witness" and not entry.details["unsolvable"]:
            ok = False
            entry.details["reason"] = "configuration is solvable"
        for label, formula in claim.get("also_show", {}).items():
            shown = evaluate_formula(formula, lookup)
            entry.details[label] = {"value": _show(shown), "holds": value >= shown}
        entry.status = CONFIRMED if ok else MISMATCH
    except SearchLimitExceeded as exc:
        entry.status = SKIPPED
        entry.engine_value = None
        entry.expected = []
        entry.details["reason"] = str(exc)
    return entry


def verify_paper(budget: str = "small", only: str | None = None,
                 max_states: int | None = None) -> list[LedgerEntry]:
    manifest = load_manifest()
    if budget not in manifest["budgets"]:
        raise ValueError(f"unknown budget class {budget!r}")
    cap = max_states if max_states is not None else manifest["budgets"][budget]["max_states"]
    session = _Session(cap)
    claims = manifest["claims"]
    if only is not None:
        claims = [c for c in claims if c["id"] == only or c["id"].startswith(only + ".")]
        if not claims:
            raise KeyError(f"no claim with id {only!r}")
    return [evaluate_claim(c, p, session) for c in claims for p in _instances(c, budget)]


def exit_status(entries: list[LedgerEntry]) -> int:
    mismatched = [e for e in entries if e.status == MISMATCH]
    if any(e.kind != "empirical" for e in mismatched):
        return EXIT_ENGINE_MISMATCH
    if mismatched:
        return EXIT_EMPIRICAL_MISMATCH
    return EXIT_OK


def graham_check(g: Graph, h: Graph, max_states: int | None = None) -> LedgerEntry:
    claim = next(c for c in load_manifest()["claims"] if c["id"] == "graham")
    return evaluate_claim(claim, {"G": g.tag, "H": h.tag}, _Session(max_states))


def render_table(entries: list[LedgerEntry]) -> str:
    rows = [("claim", "instance", "status", "engine", "expected", "kind")]
    for e in entries:
        expected = "; ".join(f"{x['relation']} {x['value']}" for x in e.expected) or "-"
        engine = "-" if e.engine_value is None else str(e.engine_value)
        rows.append((e.claim_id, e.instance, e.status, engine, expected, e.kind))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    findings = [e for e in entries if e.status == MISMATCH]
    for e in findings:
        label = "FINDING" if e.kind == "empirical" else "ENGINE MISMATCH"
        expected = "; ".join(f"{x['relation']} {x['value']}" for x in e.expected)
        lines.append(f"{label}: {e.claim_id} [{e.instance}] {e.statement}: "
                     f"engine {e.engine_value}, expected {expected}")
    for e in entries:
        for label, shown in e.details.items():
            if isinstance(shown, dict) and "holds" in shown and label.startswith("printed"):
                lines.append(f"note: {e.claim_id} [{e.instance}] {label} = {shown['value']} "
                             f"({'holds' if shown['holds'] else 'fails'})")
    counts = {}
    for e in entries:
        counts[e.status] = counts.get(e.status, 0) + 1
    lines.append("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    return "\n".join(lines)


def report_json(entries: list[LedgerEntry], budget: str) -> dict:
    counts: dict[str, int] = {}
    for e in entries:
        counts[e.status] = counts.get(e.status, 0) + 1
    return {
        "budget": budget,
        "entries": [e.to_json() for e in entries],
        "summary": dict(sorted(counts.items())),
        "exit_code": exit_status(entries),
    }
