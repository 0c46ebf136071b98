"""Random graph generators shared by the tests."""

import dataclasses

import numpy as np

from dimerlab.planar import PlanarGraph, random_planar_graph


def random_grid_bipartite(rng, rows=3, cols=4, keep_vertex=0.85, keep_edge=0.8) -> PlanarGraph:
    """Random subgraph of a grid, colored by coordinate parity."""
    cells = [(i, j) for i in range(rows) for j in range(cols) if rng.random() < keep_vertex]
    index = {c: k for k, c in enumerate(cells)}
    edges = []
    for (i, j), k in index.items():
        for nb in ((i + 1, j), (i, j + 1)):
            if nb in index and rng.random() < keep_edge:
                edges.append((k, index[nb]))
    G = PlanarGraph.from_positions([(j, i) for i, j in cells], edges)
    return dataclasses.replace(G, colors=tuple((i + j) % 2 for i, j in cells))


def random_multigraph(rng, max_vertices=8):
    """Connected random multigraph as an ``(n, edges)`` pair."""
    n = int(rng.integers(1, max_vertices + 1))
    edges = [(int(rng.integers(0, k)), k) for k in range(1, n)]  # random tree
    for _ in range(int(rng.integers(0, 2 * n + 1))):
        u, v = (int(x) for x in rng.integers(0, n, 2))
        if u != v:
            edges.append((u, v))
    perm = rng.permutation(n)
    return n, [(int(perm[u]), int(perm[v])) for u, v in edges]


def random_connected_planar(rng, max_vertices=10) -> PlanarGraph:
    return random_planar_graph(int(rng.integers(2, max_vertices + 1)), rng, extra=float(rng.random()))
