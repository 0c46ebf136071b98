"""Random fundamental domains and the bundled test corpus."""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .errors import GraphValidationError
from .torus import ToroidalGraph, graph_to_json, make_toroidal_graph, parse_torus_graph

CORPUS_SEED = 20240611
CORPUS_SIZE = 5
_STEPS = ((1, 0), (0, 1), (1, -1))


def random_torus_graph(rng: np.random.Generator, m: int = 2, jitter: float = 0.15,
                       deletions: int | None = None, attempts: int = 200) -> ToroidalGraph:
    """A jittered m x m piece of the triangular lattice with some edges removed.

    Removals that would disconnect the graph or leave a face wrapping around the torus
    are rejected, so the result is always a valid cellular torus graph.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    labels, positions, edges = [], [], []
    for j in range(m):
        for i in range(m):
            labels.append(f"v{i}_{j}")
            dx, dy = rng.uniform(-jitter, jitter, 2)
            positions.append(((i + 0.5 + dx) / m, (j + 0.5 + dy) / m))
    for j in range(m):
        for i in range(m):
            for a, b in _STEPS:
                ti, tj = i + a, j + b
                shift = (ti // m, tj // m)
                edges.append((j * m + i, (tj % m) * m + ti % m, shift))
    G = make_toroidal_graph(labels, positions, edges)
    if deletions is None:
        deletions = int(rng.integers(0, m * m + 1))
    for _ in range(attempts):
        if deletions == 0:
            break
        k = int(rng.integers(len(edges)))
        trial = edges[:k] + edges[k + 1:]
        try:
            G = make_toroidal_graph(labels, positions, trial)
        except GraphValidationError:
            continue
        edges = trial
        deletions -= 1
    return G


def generate_corpus(seed: int = CORPUS_SEED, size: int = CORPUS_SIZE) -> list[ToroidalGraph]:
    rng = np.random.default_rng(seed)
    return [random_torus_graph(rng, m=2) for _ in range(size)]


def load_corpus() -> list[ToroidalGraph]:
    """The five random fundamental domains shipped with the package."""
    text = resources.files("dimerlab").joinpath("data/corpus.json").read_text()
    return [parse_torus_graph(item) for item in json.loads(text)]


def dump_corpus(graphs) -> str:
    return json.dumps([graph_to_json(G) for G in graphs], indent=1)
