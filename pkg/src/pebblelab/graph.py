"""Simple undirected graphs, the families and products used for pebbling,
and small-graph isomorphism helpers.

Vertex numbering is fixed per constructor so that configurations written as
``{vertex: count}`` maps are reproducible:

* ``path(k)``        0 - 1 - ... - (k-1)
* ``cycle(k)``       0 .. k-1 in cyclic order
* ``complete(k)``    0 .. k-1
* ``star(k)``        hub 0, leaves 1..k  (K_{1,k}, k+1 vertices)
* ``edgeless(k)``    0 .. k-1, no edges
* ``hypercube(d)``   vertex i is the bit string of i; neighbours differ in one bit
* ``friendship(k)``  hub 0, triangle j uses vertices 2j+1 and 2j+2
* ``book(k)``        hub edge 0-1; page j has 2+2j (joined to 0) and 3+2j (joined to 1)
* ``cartesian(G,H)`` (a, x) -> a*|H| + x
* ``corona(G,H)`` and ``ncorona(G,H)``: vertices of G first, then copy i of H
  occupies g + i*h .. g + i*h + h-1
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

CANONICAL_MAX_ORDER = 10

FAMILIES = (
    "path",
    "cycle",
    "complete",
    "star",
    "edgeless",
    "hypercube",
    "friendship",
    "book",
)


class GraphError(ValueError):
    """Invalid construction parameters or an unusable graph."""


class DisconnectedGraphError(GraphError):
    pass


class GraphTooLargeError(GraphError):
    pass


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Distances are computed once by BFS; ``-1`` marks unreachable pairs, which
    only occur for disconnected graphs (allowed as product operands).
    """

    __slots__ = ("n", "edges", "adj", "dist", "tag", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]], tag: str | None = None):
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        normalized = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for order {n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            pair = (min(u, v), max(u, v))
            if pair in normalized:
                raise GraphError(f"duplicate edge {u}-{v}")
            normalized.add(pair)
        neighbours: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            neighbours[u].append(v)
            neighbours[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in neighbours))
        object.__setattr__(self, "dist", _all_pairs_bfs(self.adj))
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "_hash", hash((n, self.edges)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, self.edges, self.tag))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.tag or "graph"
        return f"<Graph {label}: n={self.n}, m={len(self.edges)}>"

    @property
    def size(self) -> int:
        """Number of edges."""
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @property
    def is_connected(self) -> bool:
        return all(d >= 0 for d in self.dist[0])

    def require_connected(self) -> None:
        if not self.is_connected:
            raise DisconnectedGraphError(
                f"{self.tag or 'graph'} is disconnected; pebbling quantities are undefined"
            )

    def eccentricity(self, v: int) -> int:
        self.require_connected()
        return max(self.dist[v])

    @property
    def diameter(self) -> int:
        self.require_connected()
        return max(max(row) for row in self.dist)

    def with_tag(self, tag: str) -> "Graph":
        return Graph(self.n, self.edges, tag)


def _all_pairs_bfs(adj: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(adj)
    rows = []
    for s in range(n):
        d = [-1] * n
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    queue.append(w)
        rows.append(tuple(d))
    return tuple(rows)


def metrics(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Return ``(diameter, eccentricities)`` of a connected graph."""
    g.require_connected()
    ecc = tuple(max(row) for row in g.dist)
    return max(ecc), ecc


# ---------------------------------------------------------------- families

def path(k: int) -> Graph:
    _check_param("path", k, 1)
    return Graph(k, [(i, i + 1) for i in range(k - 1)], f"path({k})")


def cycle(k: int) -> Graph:
    _check_param("cycle", k, 3)
    return Graph(k, [(i, (i + 1) % k) for i in range(k)], f"cycle({k})")


def complete(k: int) -> Graph:
    _check_param("complete", k, 1)
    return Graph(k, combinations(range(k), 2), f"complete({k})")


def star(k: int) -> Graph:
    _check_param("star", k, 1)
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)], f"star({k})")


def edgeless(k: int) -> Graph:
    _check_param("edgeless", k, 1)
    return Graph(k, [], f"edgeless({k})")


def hypercube(d: int) -> Graph:
    _check_param("hypercube", d, 1)
    n = 1 << d
    edges = [(i, i ^ (1 << b)) for i in range(n) for b in range(d) if i < i ^ (1 << b)]
    return Graph(n, edges, f"hypercube({d})")


def friendship(k: int) -> Graph:
    _check_param("friendship", k, 1)
    edges = []
    for j in range(k):
        a, b = 2 * j + 1, 2 * j + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph(2 * k + 1, edges, f"friendship({k})")


def book(k: int) -> Graph:
    _check_param("book", k, 1)
    edges = [(0, 1)]
    for j in range(k):
        a, b = 2 + 2 * j, 3 + 2 * j
        edges += [(0, a), (1, b), (a, b)]
    return Graph(2 * k + 2, edges, f"book({k})")


_BUILDERS = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "edgeless": edgeless,
    "hypercube": hypercube,
    "friendship": friendship,
    "book": book,
}

MIN_PARAM = {name: 1 for name in FAMILIES} | {"cycle": 3}


def build_family(family: str, k: int) -> Graph:
    try:
        builder = _BUILDERS[family.lower()]
    except KeyError:
        raise GraphError(f"unknown family {family!r}") from None
    return builder(k)


def _check_param(family: str, k: int, minimum: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < minimum:
        raise GraphError(f"{family}({k}): parameter must be an integer >= {minimum}")


# ---------------------------------------------------------------- products

def cartesian_product(g: Graph, h: Graph) -> Graph:
    g.require_connected()
    h.require_connected()
    m = h.n
    edges = []
    for a in range(g.n):
        for x, y in h.edges:
            edges.append((a * m + x, a * m + y))
    for a, b in g.edges:
        for x in range(m):
            edges.append((a * m + x, b * m + x))
    return Graph(g.n * m, edges, f"cartesian({_name(g)},{_name(h)})")


def corona(g: Graph, h: Graph) -> Graph:
    """G with vertex i joined to every vertex of the i-th copy of H."""
    g.require_connected()
    edges = list(g.edges)
    for i in range(g.n):
        base = g.n + i * h.n
        edges += [(base + x, base + y) for x, y in h.edges]
        edges += [(i, base + x) for x in range(h.n)]
    return Graph(g.n + g.n * h.n, edges, f"corona({_name(g)},{_name(h)})")


def neighbourhood_corona(g: Graph, h: Graph) -> Graph:
    """G with the neighbours of vertex i joined to every vertex of the i-th copy of H."""
    g.require_connected()
    if g.n < 2:
        raise DisconnectedGraphError(
            "neighbourhood corona of a one-vertex graph is disconnected"
        )
    edges = list(g.edges)
    for i in range(g.n):
        base = g.n + i * h.n
        edges += [(base + x, base + y) for x, y in h.edges]
        edges += [(j, base + x) for j in g.adj[i] for x in range(h.n)]
    return Graph(g.n + g.n * h.n, edges, f"ncorona({_name(g)},{_name(h)})")


def _name(g: Graph) -> str:
    return g.tag or f"graph[{g.n}]"


# ------------------------------------------------------ isomorphism helpers

def _refine(g: Graph, colors: Sequence[int]) -> list[int]:
    """Colour refinement with canonical relabelling (colour ids depend only
    on the isomorphism class of the coloured graph)."""
    colors = list(colors)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant key: equal keys iff the graphs are isomorphic.

    Lexicographically largest upper-triangle adjacency string over vertex
    orderings compatible with the refined colour partition, found by branch
    and bound. Interchangeable twins are branched on once.
    """
    n = g.n
    if n > CANONICAL_MAX_ORDER:
        raise GraphTooLargeError(f"canonical_form supports n <= {CANONICAL_MAX_ORDER}, got {n}")
    colors = _refine(g, [0] * n)
    cell_of_position = sorted(colors)
    adjsets = [frozenset(a) for a in g.adj]
    best: list = [None]
    order: list[int] = []
    bits: list[int] = []
    used = [False] * n

    def extend(pos: int) -> None:
        if pos == n:
            if best[0] is None or bits > best[0]:
                best[0] = list(bits)
            return
        want = cell_of_position[pos]
        tried: list[int] = []
        for v in range(n):
            if used[v] or colors[v] != want:
                continue
            # swapping twins is an automorphism: one representative suffices
            if any(adjsets[v] - {u} == adjsets[u] - {v} for u in tried):
                continue
            tried.append(v)
            start = len(bits)
            bits.extend(1 if order[q] in adjsets[v] else 0 for q in range(pos))
            if best[0] is None or bits >= best[0][:len(bits)]:
                used[v] = True
                order.append(v)
                extend(pos + 1)
                order.pop()
                used[v] = False
            del bits[start:]

    extend(0)
    return (n, tuple(cell_of_position), tuple(best[0]))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.size != h.size:
        return False
    return find_isomorphism(g, h) is not None


def find_isomorphism(g: Graph, h: Graph, fixed: tuple[int, int] | None = None) -> list[int] | None:
    """Return a vertex map ``g -> h`` preserving adjacency, or None.

    ``fixed=(u, v)`` forces ``u`` to map to ``v``.
    """
    if g.n != h.n or g.size != h.size:
        return None
    n = g.n
    cg = [0] * n
    ch = [0] * n
    if fixed is not None:
        cg[fixed[0]] = 1
        ch[fixed[1]] = 1
    # refine both graphs jointly so colour ids are comparable
    joint = Graph(2 * n, list(g.edges) + [(a + n, b + n) for a, b in h.edges])
    colors = _refine(joint, cg + ch)
    cg, ch = colors[:n], colors[n:]
    if sorted(cg) != sorted(ch):
        return None
    order = sorted(range(n), key=lambda v: (sum(1 for w in range(n) if cg[w] == cg[v]), v))
    gadj = [set(a) for a in g.adj]
    hadj = [set(a) for a in h.adj]
    mapping = [-1] * n
    taken = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if taken[w] or ch[w] != cg[v]:
                continue
            if all((mapping[u] in hadj[w]) == (u in gadj[v]) for u in order[:i]):
                mapping[v] = w
                taken[w] = True
                if extend(i + 1):
                    return True
                taken[w] = False
        mapping[v] = -1
        return False

    return list(mapping) if extend(0) else None


def vertex_orbits(g: Graph) -> list[list[int]]:
    """Partition of the vertices into automorphism orbits (ascending)."""
    if g.n > CANONICAL_MAX_ORDER:
        raise GraphTooLargeError(f"vertex_orbits supports n <= {CANONICAL_MAX_ORDER}, got {g.n}")
    colors = _refine(g, [0] * g.n)
    orbits: list[list[int]] = []
    for v in range(g.n):
        for orbit in orbits:
            rep = orbit[0]
            if colors[rep] == colors[v] and find_isomorphism(g, g, fixed=(rep, v)) is not None:
                orbit.append(v)
                break
        else:
            orbits.append([v])
    return orbits


def automorphisms(g: Graph) -> list[list[int]]:
    """All automorphisms as vertex maps; intended for very small graphs."""
    n = g.n
    colors = _refine(g, [0] * n)
    adjs = [set(a) for a in g.adj]
    result = []
    mapping = [-1] * n
    taken = [False] * n

    def extend(v: int) -> None:
        if v == n:
            result.append(list(mapping))
            return
        for w in range(n):
            if taken[w] or colors[w] != colors[v]:
                continue
            if all((mapping[u] in adjs[w]) == (u in adjs[v]) for u in range(v)):
                mapping[v] = w
                taken[w] = True
                extend(v + 1)
                taken[w] = False
        mapping[v] = -1

    extend(0)
    return result
