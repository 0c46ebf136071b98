"""Brute-force ground truth for dimer and spanning-tree counts on small graphs."""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .errors import GraphValidationError, SizeCapError

DIMER_CAP = 16
TREE_CAP = 10


@dataclass(frozen=True)
class EnumerationReport:
    count: int
    examined: int
    elapsed: float


def as_multigraph(G) -> tuple[int, list[tuple[int, int]]]:
    """``(n_vertices, edge list)`` from a graph object or an ``(n, edges)`` pair."""
    if isinstance(G, tuple) and len(G) == 2 and isinstance(G[0], int):
        n, edges = G
    else:
        n, edges = G.n_vertices, G.edges
    return n, [(int(e[0]), int(e[1])) for e in edges]


def _bipartition(G) -> tuple[list[int], list[int], list[tuple[int, int]]]:
    """Blacks, whites and (black, white) edges."""
    n, edges = as_multigraph(G)
    colors = getattr(G, "colors", None)
    origin = getattr(G, "origin", None)
    if origin:
        colors = [1 if o == "white" else 0 for o in origin]
    if colors is None:
        colors = [-1] * n
        for s in range(n):
            if colors[s] >= 0:
                continue
            colors[s] = 0
            stack = [s]
            while stack:
                x = stack.pop()
                for u, v in edges:
                    for a, b in ((u, v), (v, u)):
                        if a == x and colors[b] < 0:
                            colors[b] = 1 - colors[x]
                            stack.append(b)
    out = []
    for u, v in edges:
        if colors[u] == colors[v]:
            raise GraphValidationError("graph is not bipartite")
        out.append((u, v) if colors[u] == 0 else (v, u))
    blacks = [x for x in range(n) if colors[x] == 0]
    whites = [x for x in range(n) if colors[x] == 1]
    return blacks, whites, out


def _frontier_order(blacks: list[int], edges) -> list[int]:
    """Breadth-first order on blacks (via shared whites), which keeps the set of
    partially used whites, and so the memo table, small."""
    nbrs: dict[int, set[int]] = {b: set() for b in blacks}
    by_white: dict[int, list[int]] = {}
    for b, w in edges:
        by_white.setdefault(w, []).append(b)
    for bs in by_white.values():
        for b in bs:
            nbrs[b].update(bs)
    order, seen = [], set()
    for s in blacks:
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        for b in queue:
            order.append(b)
            for c in sorted(nbrs[b]):
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
    return order


def enum_dimers(G, cap: int = DIMER_CAP) -> EnumerationReport:
    """Count perfect matchings by matching blacks in breadth-first order, memoized on the
    set of used whites. Parallel edges count separately."""
    t0 = time.perf_counter()
    blacks, whites, edges = _bipartition(G)
    if len(blacks) + len(whites) > 2 * cap:
        raise SizeCapError(f"{len(blacks) + len(whites)} vertices exceeds the dimer oracle cap of {2 * cap}")
    if len(blacks) != len(whites):
        return EnumerationReport(0, 0, time.perf_counter() - t0)
    blacks = _frontier_order(blacks, edges)
    wpos = {w: i for i, w in enumerate(whites)}
    options = [[] for _ in blacks]
    bpos = {b: i for i, b in enumerate(blacks)}
    for b, w in edges:
        options[bpos[b]].append(wpos[w])
    examined = 0

    @lru_cache(maxsize=None)
    def count(i: int, used: int) -> int:
        nonlocal examined
        examined += 1
        if i == len(blacks):
            return 1
        total = 0
        for w in options[i]:
            if not used >> w & 1:
                total += count(i + 1, used | 1 << w)
        return total

    result = count(0, 0)
    return EnumerationReport(result, examined, time.perf_counter() - t0)


def _canonical(n: int, edges: tuple[tuple[int, int], ...]) -> tuple[int, tuple]:
    return n, tuple(sorted((min(u, v), max(u, v)) for u, v in edges))


def enum_spanning_trees(G, cap: int = TREE_CAP) -> EnumerationReport:
    """Count spanning trees by deletion-contraction on the multigraph.

    All parallel copies of an edge are handled together:
    ``tau(G) = tau(G - e*) + m * tau(G / e)`` with ``m`` the multiplicity.
    """
    t0 = time.perf_counter()
    n, edges = as_multigraph(G)
    if n > cap:
        raise SizeCapError(f"{n} vertices exceeds the spanning-tree oracle cap of {cap}")
    if not _is_connected(n, edges):
        raise GraphValidationError("spanning trees need a connected graph")
    examined = 0

    @lru_cache(maxsize=None)
    def tau(n: int, edges: tuple[tuple[int, int], ...]) -> int:
        nonlocal examined
        examined += 1
        edges = tuple(e for e in edges if e[0] != e[1])
        if n == 1:
            return 1
        if not _is_connected(n, edges):
            return 0
        a, b = edges[0]
        m = sum(1 for e in edges if e == (a, b))
        rest = tuple(e for e in edges if e != (a, b))
        deleted = tau(*_canonical(n, rest))
        # contract b into a, then renumber vertices above b down by one
        relabel = lambda x: a if x == b else (x - 1 if x > b else x)  # noqa: E731
        contracted = tuple((relabel(u), relabel(v)) for u, v in rest)
        return deleted + m * tau(*_canonical(n - 1, contracted))

    result = tau(*_canonical(n, tuple(edges)))
    return EnumerationReport(result, examined, time.perf_counter() - t0)


def _is_connected(n: int, edges) -> bool:
    if n == 0:
        return False
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n
