"""Exact solvability of pebble configurations.

Every decision is a complete search of the configurations reachable by
pebbling moves. Reachable sizes strictly decrease, so the space is finite and
acyclic; positive and negative results are memoised by exact count vector
inside a :class:`TargetSearch` / :class:`CoverSearch` context.

Two cheap exact tests short-circuit most states in target searches:

* weight: ``sum_v C[v] * 2**-d(v, r)`` never increases under a move, so a
  state whose weight is below ``t`` cannot reach ``t`` pebbles on ``r``;
* relay: each vertex can independently ship ``C[v] // 2**d(v, r)`` pebbles
  to ``r`` along a shortest path, so if these add up to ``t`` the state is
  solvable (and the relay moves are the witness).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .graph import Graph, GraphError

DEFAULT_MAX_STATES = 50_000_000


class Move(NamedTuple):
    src: int
    dst: int


class IllegalMoveError(ValueError):
    pass


class SearchLimitExceeded(RuntimeError):
    """Search budget exhausted. This is *not* an unsolvable verdict."""

    def __init__(self, message: str, explored: int = 0):
        super().__init__(message)
        self.explored = explored


@dataclass
class Budget:
    """Shared resource cap for one computation (possibly many decisions)."""

    max_states: int | None = DEFAULT_MAX_STATES
    max_seconds: float | None = None
    explored: int = 0
    _deadline: float | None = field(default=None, repr=False)

    def start(self) -> "Budget":
        if self.max_seconds is not None and self._deadline is None:
            self._deadline = time.monotonic() + self.max_seconds
        return self

    def charge(self, k: int = 1) -> None:
        self.explored += k
        if self.max_states is not None and self.explored > self.max_states:
            raise SearchLimitExceeded(
                f"state cap of {self.max_states} exceeded", self.explored
            )
        if self._deadline is not None and (self.explored - k) >> 10 != self.explored >> 10:
            if time.monotonic() > self._deadline:
                raise SearchLimitExceeded(
                    f"time budget of {self.max_seconds}s exceeded", self.explored
                )

    def fresh(self) -> "Budget":
        """Same limits, zero usage (for work shipped to another process)."""
        return Budget(self.max_states, self.max_seconds)


@dataclass(frozen=True)
class Configuration:
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError("pebble counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @property
    def size(self) -> int:
        return sum(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, v):
        return self.counts[v]

    def __iter__(self):
        return iter(self.counts)

    @classmethod
    def from_map(cls, n: int, mapping: Mapping) -> "Configuration":
        counts = [0] * n
        for key, value in mapping.items():
            v = int(key)
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for order {n}")
            counts[v] = int(value)
        return cls(tuple(counts))

    def to_map(self) -> dict[str, int]:
        return {str(v): c for v, c in enumerate(self.counts) if c}


@dataclass(frozen=True)
class SolveVerdict:
    solvable: bool
    witness: tuple[Move, ...] | None
    explored: int

    def __bool__(self):
        return self.solvable


def _counts(graph: Graph, config) -> tuple[int, ...]:
    counts = tuple(config.counts if isinstance(config, Configuration) else config)
    if len(counts) != graph.n:
        raise ValueError(f"configuration has {len(counts)} entries, graph has {graph.n} vertices")
    if any(c < 0 for c in counts):
        raise ValueError("pebble counts must be nonnegative")
    return counts


def apply_move(graph: Graph, config, move) -> Configuration:
    src, dst = move
    counts = list(_counts(graph, config))
    if not graph.has_edge(src, dst):
        raise IllegalMoveError(f"{src}-{dst} is not an edge")
    if counts[src] < 2:
        raise IllegalMoveError(f"vertex {src} holds {counts[src]} pebble(s), a move needs 2")
    counts[src] -= 2
    counts[dst] += 1
    return Configuration(tuple(counts))


def replay(graph: Graph, config, moves: Iterable) -> Configuration:
    current = Configuration(_counts(graph, config))
    for m in moves:
        current = apply_move(graph, current, m)
    return current


def _relay_path(graph: Graph, src: int, dst: int) -> list[int]:
    """Lowest-index shortest path from src to dst."""
    route = [src]
    d = graph.dist
    while route[-1] != dst:
        here = route[-1]
        route.append(next(w for w in graph.adj[here] if d[w][dst] == d[here][dst] - 1))
    return route


def _relay_moves(graph: Graph, src: int, dst: int, deliveries: int) -> list[Move]:
    """Moves shipping ``deliveries`` pebbles from src to dst; costs
    ``deliveries * 2**d(src, dst)`` pebbles at src and nothing elsewhere."""
    route = _relay_path(graph, src, dst)
    hops = len(route) - 1
    moves = []
    for i in range(hops):
        moves += [Move(route[i], route[i + 1])] * (deliveries << (hops - i - 1))
    return moves


_GOAL = "goal"


class _Search:
    """Memoised depth-first search toward a goal; subclasses define the goal."""

    def __init__(self, graph: Graph, budget: Budget | None = None):
        graph.require_connected()
        self.graph = graph
        self.n = graph.n
        self.budget = (budget or Budget()).start()
        # state -> False | Move (first move of a solution) | _GOAL
        self.memo: dict[tuple[int, ...], object] = {}

    def _quick(self, s: tuple[int, ...]):
        """True / False when decidable without search, else None."""
        raise NotImplementedError

    def _plan(self, s: tuple[int, ...]) -> list[Move]:
        """Moves finishing a state for which ``_quick`` returned True."""
        raise NotImplementedError

    def _successors(self, s: tuple[int, ...]) -> Iterator[tuple[Move, tuple[int, ...]]]:
        raise NotImplementedError

    def decide(self, state: Sequence[int]) -> bool:
        s = tuple(state)
        known = self.memo.get(s)
        if known is not None:
            return known is not False
        q = self._quick(s)
        if q is not None:
            if q:
                self.memo[s] = _GOAL
            return q
        memo = self.memo
        charge = self.budget.charge
        charge()
        # frames: [state, successor iterator, move to the child being explored]
        stack = [[s, self._successors(s), None]]
        while stack:
            frame = stack[-1]
            nxt = next(frame[1], None)
            if nxt is None:
                memo[frame[0]] = False
                stack.pop()
                continue
            move, child = nxt
            known = memo.get(child)
            if known is None:
                q = self._quick(child)
                if q is True:
                    memo[child] = _GOAL
                    known = _GOAL
                elif q is False:
                    continue
            if known is False:
                continue
            if known is not None:
                frame[2] = move
                for f in stack:
                    memo[f[0]] = f[2]
                return True
            frame[2] = move
            charge()
            stack.append([child, self._successors(child), None])
        return False

    def witness(self, state: Sequence[int]) -> list[Move]:
        s = tuple(state)
        if not self.decide(s):
            raise ValueError("no witness for an unsolvable state")
        moves: list[Move] = []
        while True:
            entry = self.memo[s]
            if entry is _GOAL:
                return moves + self._plan(s)
            moves.append(entry)
            nxt = list(s)
            nxt[entry.src] -= 2
            nxt[entry.dst] += 1
            s = tuple(nxt)

    def verdict(self, state: Sequence[int]) -> SolveVerdict:
        before = self.budget.explored
        ok = self.decide(state)
        return SolveVerdict(ok, tuple(self.witness(state)) if ok else None,
                            self.budget.explored - before)


class TargetSearch(_Search):
    """Can ``t`` pebbles be placed on ``target``? One context per (graph, target, t)."""

    def __init__(self, graph: Graph, target: int, t: int = 1, budget: Budget | None = None):
        super().__init__(graph, budget)
        if not 0 <= target < graph.n:
            raise GraphError(f"target {target} out of range")
        if t < 1:
            raise ValueError("t must be a positive integer")
        self.target = target
        self.t = t
        d = graph.dist[target]
        self.depth = max(d)
        # integer-scaled weights 2**(depth - d(v, r))
        self.weights = tuple(1 << (self.depth - d[v]) for v in range(self.n))
        self.needed_weight = t << self.depth
        self.dist = d
        # closer vertices first, and moves toward the target first
        order = sorted(range(self.n), key=lambda v: (d[v] == 0, d[v], v))
        self.sources = tuple(
            (u, tuple(sorted(graph.adj[u], key=lambda w: (d[w], w)))) for u in order
        )
        self.others = tuple(v for v in range(self.n) if v != target)

    def _quick(self, s):
        r = self.target
        if s[r] >= self.t:
            return True
        w = self.weights
        total = 0
        for v in range(self.n):
            total += s[v] * w[v]
        if total < self.needed_weight:
            return False
        d = self.dist
        got = s[r]
        mobile = False
        for v in self.others:
            c = s[v]
            if c >= 2:
                mobile = True
                got += c >> d[v]
        if got >= self.t:
            return True
        return None if mobile else False

    def _plan(self, s):
        r = self.target
        need = self.t - s[r]
        moves: list[Move] = []
        for v in sorted(self.others, key=lambda v: (self.dist[v], v)):
            if need <= 0:
                break
            k = min(need, s[v] >> self.dist[v])
            if k:
                moves += _relay_moves(self.graph, v, r, k)
                need -= k
        return moves

    def _successors(self, s):
        for u, nbrs in self.sources:
            if s[u] >= 2:
                for v in nbrs:
                    nxt = list(s)
                    nxt[u] -= 2
                    nxt[v] += 1
                    yield Move(u, v), tuple(nxt)


class CoverSearch(_Search):
    """Can every vertex simultaneously hold a pebble?"""

    def __init__(self, graph: Graph, budget: Budget | None = None):
        super().__init__(graph, budget)
        self.pow = tuple(tuple(1 << x for x in row) for row in graph.dist)

    def _quick(self, s):
        n = self.n
        zeros = [v for v in range(n) if s[v] == 0]
        if not zeros:
            return True
        if sum(s) - len(zeros) < n:
            return False
        p = self.pow
        mobile = False
        for v in range(n):
            c = s[v]
            if c >= 2:
                mobile = True
                # v alone can cover every empty vertex and keep a pebble
                if c > sum(p[v][z] for z in zeros):
                    return True
        if not mobile:
            return False
        # an empty vertex z needs sum_v C[v] / 2**d(v, z) >= 1
        span = 1 << max(max(row) for row in self.graph.dist)
        for z in zeros:
            if sum(s[v] * (span // p[v][z]) for v in range(n)) < span:
                return False
        return None

    def _plan(self, s):
        zeros = [v for v in range(self.n) if s[v] == 0]
        if not zeros:
            return []
        p = self.pow
        v = next(v for v in range(self.n) if s[v] > sum(p[v][z] for z in zeros))
        moves: list[Move] = []
        for z in zeros:
            moves += _relay_moves(self.graph, v, z, 1)
        return moves

    def _successors(self, s):
        adj = self.graph.adj
        for u in range(self.n):
            if s[u] >= 2:
                # feed empty neighbours first
                for v in sorted(adj[u], key=lambda w: (s[w] != 0, w)):
                    nxt = list(s)
                    nxt[u] -= 2
                    nxt[v] += 1
                    yield Move(u, v), tuple(nxt)


def is_t_solvable(graph: Graph, config, target: int, t: int = 1,
                  budget: Budget | None = None) -> SolveVerdict:
    counts = _counts(graph, config)
    return TargetSearch(graph, target, t, budget).verdict(counts)


def is_cover_solvable(graph: Graph, config, budget: Budget | None = None) -> SolveVerdict:
    counts = _counts(graph, config)
    return CoverSearch(graph, budget).verdict(counts)


def max_deliverable(graph: Graph, config, target: int, budget: Budget | None = None) -> int:
    """Largest t such that t pebbles can be placed on ``target``."""
    counts = _counts(graph, config)
    graph.require_connected()
    budget = (budget or Budget()).start()
    d = graph.dist[target]
    depth = max(d)
    # weight bound: never more than floor(sum C[v] / 2**d(v, r))
    hi = sum(c << (depth - d[v]) for v, c in enumerate(counts)) >> depth
    lo = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if TargetSearch(graph, target, mid, budget).decide(counts):
            lo = mid
        else:
            hi = mid - 1
    return lo
