"""Brute-force reference implementations used to check the engine.

Deliberately naive: plain adjacency lists, full breadth-first enumeration of
reachable configurations, no memo across calls, no pruning or fast paths.
"""

from collections import deque
from itertools import combinations, product


def reachable(adj, counts):
    counts = tuple(counts)
    seen = {counts}
    queue = deque([counts])
    while queue:
        s = queue.popleft()
        for u, c in enumerate(s):
            if c < 2:
                continue
            for v in adj[u]:
                nxt = list(s)
                nxt[u] -= 2
                nxt[v] += 1
                nxt = tuple(nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def t_solvable(adj, counts, target, t=1):
    return any(s[target] >= t for s in reachable(adj, counts))


def cover_solvable(adj, counts):
    return any(min(s) >= 1 for s in reachable(adj, counts))


def configurations(n, size):
    """All count vectors of length n summing to ``size``."""
    for cuts in combinations(range(size + n - 1), n - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(size + n - 2 - prev)
        yield tuple(out)


def bfs_distances(adj, source):
    d = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in d:
                d[w] = d[u] + 1
                queue.append(w)
    return [d[v] for v in range(len(adj))]


def rooted_pebbling_number(adj, target, t=1, stop_early=False):
    """1 + the largest size of an unsolvable configuration, checking every
    configuration of every size up to the trivial ceiling.

    With ``stop_early`` the sweep ends at the first size where every
    configuration solves; extra pebbles never hurt, so nothing above it fails.
    """
    n = len(adj)
    d = bfs_distances(adj, target)
    ceiling = (t - 1) + sum((t << d[v]) - 1 for v in range(n) if v != target) + 1
    worst = -1
    for size in range(ceiling + 1):
        if any(not t_solvable(adj, c, target, t) for c in configurations(n, size)):
            worst = size
        elif stop_early:
            break
    return worst + 1


def cover_number(adj):
    """First size at which every configuration covers. Removing a pebble from
    a failing configuration keeps it failing, so one all-coverable size layer
    means every larger size is coverable too."""
    n = len(adj)
    size = 0
    while any(not cover_solvable(adj, c) for c in configurations(n, size)):
        size += 1
    return size


def optimal_number(adj):
    n = len(adj)
    size = 1
    while True:
        for c in configurations(n, size):
            if all(t_solvable(adj, c, r) for r in range(n)):
                return size
        size += 1


def connected_graphs(max_n):
    """Every connected labelled graph on 1..max_n vertices as adjacency lists."""
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for mask in product((0, 1), repeat=len(pairs)):
            edges = [p for p, bit in zip(pairs, mask) if bit]
            adj = [[] for _ in range(n)]
            for u, v in edges:
                adj[u].append(v)
                adj[v].append(u)
            if _connected(adj):
                yield n, edges, adj


def graphs_of_order(n):
    return ((edges, adj) for m, edges, adj in connected_graphs(n) if m == n)


def _connected(adj):
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)
