"""Finite plane graphs, their dual overlays and random planar test graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import GraphValidationError
from .torus import Edge, FacialWalk, dart_tail, geometric_rotation, trace_faces

BLACK, WHITE = 0, 1


@dataclass(frozen=True, eq=False)
class PlanarGraph:
    """Finite multigraph with a plane rotation system.

    ``colors`` is set for bipartite graphs (0 black, 1 white); such graphs store every
    edge as ``(white, black)``.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[tuple[int, int], ...], ...]
    positions: tuple[tuple[float, float], ...] | None = None
    colors: tuple[int, ...] | None = None
    _faces: list = field(default=None, init=False, repr=False)

    @classmethod
    def from_positions(cls, positions, edges) -> "PlanarGraph":
        positions = tuple((float(x), float(y)) for x, y in positions)
        edges = tuple((int(u), int(v)) for u, v in edges)
        rot = geometric_rotation(positions, [Edge(u, v) for u, v in edges])
        return cls(len(positions), edges, rot, positions)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def faces(self) -> list[FacialWalk]:
        if self._faces is None:
            walks = trace_faces([Edge(u, v) for u, v in self.edges], self.rotation)
            object.__setattr__(self, "_faces", walks)
        return self._faces

    def components(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        comp = [-1] * self.n_vertices
        out = []
        for s in range(self.n_vertices):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            members, stack = [], [s]
            while stack:
                x = stack.pop()
                members.append(x)
                for y in adj[x]:
                    if comp[y] < 0:
                        comp[y] = comp[s]
                        stack.append(y)
            out.append(sorted(members))
        return out

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and len(self.components()) == 1

    def outer_face(self) -> int:
        """Index of the unbounded face: the walk with the most negative signed area."""
        if self.positions is None:
            raise GraphValidationError("outer face needs vertex positions")
        walks = self.faces()
        return min(range(len(walks)), key=lambda f: (self._walk_area(walks[f]), f))

    def _walk_area(self, walk) -> float:
        edges = [Edge(u, v) for u, v in self.edges]
        pts = [self.positions[dart_tail(edges, d)] for d in walk.darts]
        return sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1])) / 2

    def outer_faces(self) -> list[int]:
        """One unbounded walk per connected component (isolated vertices have none).

        With positions this is the walk of most negative signed area in the component;
        without, the last walk traced in it.
        """
        walks = self.faces()
        comp = {}
        for c, members in enumerate(self.components()):
            for x in members:
                comp[x] = c
        edges = [Edge(u, v) for u, v in self.edges]
        best: dict[int, int] = {}
        for f, walk in enumerate(walks):
            c = comp[dart_tail(edges, walk.darts[0])]
            if c not in best:
                best[c] = f
            elif self.positions is None:
                best[c] = f
            elif self._walk_area(walk) < self._walk_area(walks[best[c]]):
                best[c] = f
        return sorted(best.values())

    def delete_vertices(self, doomed: Sequence[int]) -> "PlanarGraph":
        doomed = set(doomed)
        keep = [x for x in range(self.n_vertices) if x not in doomed]
        new = {x: i for i, x in enumerate(keep)}
        edge_map, edges = {}, []
        for k, (u, v) in enumerate(self.edges):
            if u in new and v in new:
                edge_map[k] = len(edges)
                edges.append((new[u], new[v]))
        rotation = tuple(
            tuple((edge_map[k], end) for k, end in self.rotation[x] if k in edge_map) for x in keep
        )
        positions = None if self.positions is None else tuple(self.positions[x] for x in keep)
        colors = None if self.colors is None else tuple(self.colors[x] for x in keep)
        return PlanarGraph(len(keep), tuple(edges), rotation, positions, colors)

    def laplacian_rows(self) -> list[dict[int, int]]:
        rows = [dict() for _ in range(self.n_vertices)]
        for u, v in self.edges:
            if u == v:
                continue
            rows[u][u] = rows[u].get(u, 0) + 1
            rows[v][v] = rows[v].get(v, 0) + 1
            rows[u][v] = rows[u].get(v, 0) - 1
            rows[v][u] = rows[v].get(u, 0) - 1
        return rows


def temperley_graph(G: PlanarGraph, root: int | None = None) -> PlanarGraph:
    """Balanced bipartite graph whose dimer coverings match the spanning trees of ``G``.

    Overlays ``G`` with its dual (one white per edge), then deletes the dual vertex of
    the unbounded face and the primal vertex ``root``; by default the lowest-numbered
    vertex on the unbounded face.
    """
    if not G.is_connected():
        raise GraphValidationError("Temperley construction needs a connected graph")
    walks = G.faces()
    V, F, E = G.n_vertices, len(walks), G.n_edges
    outer = G.outer_face()
    edges_ = [Edge(u, v) for u, v in G.edges]
    if root is None:
        root = min(dart_tail(edges_, d) for d in walks[outer].darts)
    face_of = {d: f for f, walk in enumerate(walks) for d in walk.darts}
    white0 = V + F
    edges = []
    for k, (u, v) in enumerate(G.edges):
        w = white0 + k
        edges += [(w, u), (w, V + face_of[(k, 1)]), (w, v), (w, V + face_of[(k, 0)])]
    rotation = []
    for x in range(V):
        rotation.append(tuple((4 * k + (0 if end == 0 else 2), 1) for k, end in G.rotation[x]))
    for walk in walks:
        rotation.append(tuple((4 * k + (3 if d == 0 else 1), 1) for k, d in walk.darts))
    for k in range(E):
        rotation.append(tuple((4 * k + j, 0) for j in range(4)))
    colors = (BLACK,) * (V + F) + (WHITE,) * E
    full = PlanarGraph(V + F + E, tuple(edges), tuple(rotation), None, colors)
    return full.delete_vertices([root, V + outer])


def random_planar_graph(n_vertices: int, rng: np.random.Generator, extra: float = 0.5) -> PlanarGraph:
    """Connected straight-line plane graph on random points.

    A Delaunay triangulation is thinned to a random spanning tree plus each remaining
    edge kept with probability ``extra``.
    """
    pts = rng.random((n_vertices, 2))
    if n_vertices == 1:
        return PlanarGraph.from_positions(pts, [])
    if n_vertices == 2:
        return PlanarGraph.from_positions(pts, [(0, 1)])
    from scipy.spatial import Delaunay

    tri = Delaunay(pts)
    cand = set()
    for simplex in tri.simplices:
        for i in range(3):
            a, b = sorted((int(simplex[i]), int(simplex[(i + 1) % 3])))
            cand.add((a, b))
    cand = sorted(cand)
    order = rng.permutation(len(cand))
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for i in order:
        a, b = cand[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            chosen.append((a, b))
        elif rng.random() < extra:
            chosen.append((a, b))
    return PlanarGraph.from_positions(pts, sorted(chosen))
