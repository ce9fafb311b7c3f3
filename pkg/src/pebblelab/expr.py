"""Graph expression language.

    expr := IDENT "(" args ")"
    args := expr {"," expr} | INT {"," INT}

Family constructors take one integer; ``cartesian``, ``corona`` and
``ncorona`` take two expressions. Identifiers are case-insensitive and
whitespace is ignored. Errors report the byte offset of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import graph as gc

OPERATORS = {
    "cartesian": gc.cartesian_product,
    "corona": gc.corona,
    "ncorona": gc.neighbourhood_corona,
}


class ExprError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Family:
    name: str
    k: int

    def __str__(self):
        return f"{self.name}({self.k})"


@dataclass(frozen=True)
class Product:
    op: str
    left: "Family | Product"
    right: "Family | Product"

    def __str__(self):
        return f"{self.op}({self.left},{self.right})"


GraphExpr = Family | Product

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<punct>[(),]))")


def _tokens(text: str):
    pos = 0
    raw = text.encode()
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprError(f"unexpected character {text[start]!r}", _byte(text, start))
        kind = m.lastgroup
        out.append((kind, m.group(kind), _byte(text, m.start(kind))))
        pos = m.end()
    out.append(("end", "", len(raw)))
    return out


def _byte(text: str, index: int) -> int:
    return len(text[:index].encode())


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind or (kind == "punct" and tok[1] != what):
            found = tok[1] or "end of input"
            raise ExprError(f"expected {what!r}, found {found!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> GraphExpr:
        kind, value, offset = self.peek()
        if kind != "ident":
            raise ExprError(f"expected a constructor name, found {value or 'end of input'!r}", offset)
        self.i += 1
        name = value.lower()
        if name not in gc.FAMILIES and name not in OPERATORS:
            raise ExprError(f"unknown constructor {value!r}", offset)
        self.take("punct", "(")
        if self.peek()[:2] == ("punct", ")"):
            arity = 2 if name in OPERATORS else 1
            raise ExprError(f"{name} takes {arity} argument{'s' if arity > 1 else ''}, got 0",
                            self.peek()[2])
        if name in OPERATORS:
            left = self.expr()
            self.arity_sep(name, 2, 1)
            right = self.expr()
            self.close(name, 2)
            return Product(name, left, right)
        kind, value, offset = self.peek()
        if kind != "int":
            raise ExprError(f"{name} takes an integer argument", offset)
        self.i += 1
        k = int(value)
        minimum = gc.MIN_PARAM[name]
        if k < minimum:
            raise ExprError(f"{name}({k}): parameter must be >= {minimum}", offset)
        self.close(name, 1)
        return Family(name, k)

    def arity_sep(self, name: str, arity: int, seen: int):
        kind, value, offset = self.peek()
        if (kind, value) != ("punct", ","):
            raise ExprError(f"{name} takes {arity} arguments, got {seen}", offset)
        self.i += 1

    def close(self, name: str, arity: int):
        kind, value, offset = self.peek()
        if (kind, value) == ("punct", ","):
            raise ExprError(f"{name} takes {arity} argument{'s' if arity > 1 else ''}, got more", offset)
        self.take("punct", ")")


def parse_graph_expr(text: str) -> GraphExpr:
    p = _Parser(text)
    tree = p.expr()
    kind, value, offset = p.peek()
    if kind != "end":
        raise ExprError(f"trailing input {value!r}", offset)
    return tree


def evaluate(tree: GraphExpr) -> gc.Graph:
    if isinstance(tree, Family):
        return gc.build_family(tree.name, tree.k)
    return OPERATORS[tree.op](evaluate(tree.left), evaluate(tree.right))


def build(text: str) -> gc.Graph:
    """Parse and evaluate; the resulting graph is tagged with the canonical expression."""
    tree = parse_graph_expr(text)
    return evaluate(tree).with_tag(str(tree))
