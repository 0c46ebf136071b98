"""Biperiodic planar graphs stored as a fundamental domain on the torus.

A vertex has a position in ``[0, 1)^2``. An edge ``(u, v, shift)`` joins ``u`` in the
base copy to the translate of ``v`` by ``shift``. Rotation systems list, for each vertex,
its edge-ends in counterclockwise order; an edge-end ``(e, 0)`` sits at ``u`` and
``(e, 1)`` at ``v``, so it doubles as the dart leaving that vertex.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import GraphFormatError, GraphValidationError

Vec = tuple[int, int]
EdgeEnd = tuple[int, int]
Dart = tuple[int, int]

GEOM_EPS = 1e-12


class Edge(NamedTuple):
    u: int
    v: int
    shift: Vec = (0, 0)


def _add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def _sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def _neg(a: Vec) -> Vec:
    return (-a[0], -a[1])


class FacialWalk(NamedTuple):
    """Darts of a face in order (face on the left), with the lattice copy of each dart's
    tail relative to the first dart's tail."""

    darts: tuple[Dart, ...]
    copies: tuple[Vec, ...]

    def __len__(self):
        return len(self.darts)


def dart_tail(edges: Sequence[Edge], dart: Dart) -> int:
    e, d = dart
    return edges[e].v if d else edges[e].u


def dart_head(edges: Sequence[Edge], dart: Dart) -> int:
    e, d = dart
    return edges[e].u if d else edges[e].v


def dart_shift(edges: Sequence[Edge], dart: Dart) -> Vec:
    e, d = dart
    return _neg(edges[e].shift) if d else edges[e].shift


def trace_faces(edges: Sequence[Edge], rotation: Sequence[Sequence[EdgeEnd]]) -> list[FacialWalk]:
    """Face walks of a rotation system, each dart used once.

    After arriving at a vertex the walk leaves along the edge-end clockwise-next to the
    one it came in on, which keeps the face on the left.
    """
    where: dict[EdgeEnd, tuple[int, int]] = {}
    for x, ends in enumerate(rotation):
        for i, end in enumerate(ends):
            if end in where:
                raise GraphValidationError(f"edge-end {end} appears twice in the rotation")
            where[end] = (x, i)
    if len(where) != 2 * len(edges):
        raise GraphValidationError("rotation system does not cover every edge-end once")

    seen: set[Dart] = set()
    walks = []
    for start in sorted(where):
        if start in seen:
            continue
        darts, copies = [], []
        copy = (0, 0)
        dart = start
        while dart not in seen:
            seen.add(dart)
            darts.append(dart)
            copies.append(copy)
            copy = _add(copy, dart_shift(edges, dart))
            back = (dart[0], 1 - dart[1])
            x, i = where[back]
            ends = rotation[x]
            dart = ends[(i - 1) % len(ends)]
        if dart != start:
            raise GraphValidationError("face tracing did not close up")
        if copy != (0, 0):
            raise GraphValidationError("a face wraps around the torus; the embedding is not cellular")
        walks.append(FacialWalk(tuple(darts), tuple(copies)))
    return walks


def _connected(n_vertices: int, edges: Iterable[Edge]) -> bool:
    if n_vertices == 0:
        return False
    adj = [[] for _ in range(n_vertices)]
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n_vertices


@dataclass(frozen=True, eq=False)
class TorusGraph:
    """Common storage for graphs embedded on the torus."""

    labels: tuple[str, ...]
    positions: tuple[tuple[float, float], ...]
    edges: tuple[Edge, ...]
    rotation: tuple[tuple[EdgeEnd, ...], ...]
    _faces: list = field(default=None, init=False, repr=False, compare=False)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, x: int) -> int:
        return len(self.rotation[x])

    @property
    def max_degree(self) -> int:
        return max(len(r) for r in self.rotation)

    def faces(self) -> list[FacialWalk]:
        if self._faces is None:
            object.__setattr__(self, "_faces", trace_faces(self.edges, self.rotation))
        return self._faces

    def displacement(self, e: int) -> np.ndarray:
        """Vector from ``u`` to the shifted copy of ``v`` in the universal cover."""
        u, v, s = self.edges[e]
        return np.asarray(self.positions[v]) + np.asarray(s, float) - np.asarray(self.positions[u])

    def is_connected(self) -> bool:
        return _connected(self.n_vertices, self.edges)

    def index(self, label: str) -> int:
        return self.labels.index(label)


class ToroidalGraph(TorusGraph):
    """Fundamental-domain graph of a biperiodic planar graph (the Tait graph ``G_L``)."""

    @property
    def crossing_number(self) -> int:
        """Edges per fundamental domain, i.e. crossings of the quotient link."""
        return self.n_edges


@dataclass(frozen=True, eq=False)
class BipartiteTorusGraph(TorusGraph):
    """Balanced bipartite torus graph; every edge is stored as ``(white, black, shift)``.

    ``origin`` tags each vertex ``"primal"``, ``"dual"`` (both black) or ``"white"``.
    """

    origin: tuple[str, ...] = ()

    @property
    def blacks(self) -> list[int]:
        return [i for i, o in enumerate(self.origin) if o != "white"]

    @property
    def whites(self) -> list[int]:
        return [i for i, o in enumerate(self.origin) if o == "white"]

    def is_balanced(self) -> bool:
        return len(self.blacks) == len(self.whites)


# -- parsing ------------------------------------------------------------------


def _angle(vec) -> float:
    a = math.atan2(vec[1], vec[0])
    return a + 2 * math.pi if a < 0 else a


def _orient(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _segments_cross(p1, p2, q1, q2) -> bool:
    """True when the closed segments meet anywhere other than at a shared endpoint."""

    def same(a, b):
        return abs(a[0] - b[0]) < 1e-9 and abs(a[1] - b[1]) < 1e-9

    def on_segment(p, a, b):
        return (
            abs(_orient(a, b, p)) < 1e-9
            and min(a[0], b[0]) - 1e-9 <= p[0] <= max(a[0], b[0]) + 1e-9
            and min(a[1], b[1]) - 1e-9 <= p[1] <= max(a[1], b[1]) + 1e-9
        )

    shared = [(a, b) for a in (p1, p2) for b in (q1, q2) if same(a, b)]
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if abs(d1) < 1e-9 and abs(d2) < 1e-9:
        # collinear: overlap longer than a shared endpoint is a crossing
        axis = 0 if abs(p2[0] - p1[0]) >= abs(p2[1] - p1[1]) else 1
        lo1, hi1 = sorted((p1[axis], p2[axis]))
        lo2, hi2 = sorted((q1[axis], q2[axis]))
        return min(hi1, hi2) - max(lo1, lo2) > 1e-9
    if shared:
        return False
    if (d1 > 1e-9 and d2 < -1e-9 or d1 < -1e-9 and d2 > 1e-9) and (
        d3 > 1e-9 and d4 < -1e-9 or d3 < -1e-9 and d4 > 1e-9
    ):
        return True
    # a vertex lying in the relative interior of the other segment
    return any(on_segment(p, q1, q2) for p in (p1, p2)) or any(on_segment(q, p1, p2) for q in (q1, q2))


def check_noncrossing(positions, edges: Sequence[Edge]) -> None:
    segs = []
    for e in edges:
        a = np.asarray(positions[e.u], float)
        b = np.asarray(positions[e.v], float) + np.asarray(e.shift, float)
        segs.append((a, b))
    for i, j in itertools.combinations_with_replacement(range(len(segs)), 2):
        a1, a2 = segs[i]
        b1, b2 = segs[j]
        lo_a, hi_a = np.minimum(a1, a2), np.maximum(a1, a2)
        lo_b, hi_b = np.minimum(b1, b2), np.maximum(b1, b2)
        tx = range(math.ceil(lo_a[0] - hi_b[0] - 1e-9), math.floor(hi_a[0] - lo_b[0] + 1e-9) + 1)
        ty = range(math.ceil(lo_a[1] - hi_b[1] - 1e-9), math.floor(hi_a[1] - lo_b[1] + 1e-9) + 1)
        for t in itertools.product(tx, ty):
            if i == j and t == (0, 0):
                continue
            off = np.asarray(t, float)
            if _segments_cross(tuple(a1), tuple(a2), tuple(b1 + off), tuple(b2 + off)):
                raise GraphValidationError(f"edges {i} and {j} cross (translate {t})")


def geometric_rotation(positions, edges: Sequence[Edge]) -> tuple[tuple[EdgeEnd, ...], ...]:
    """Counterclockwise order of edge-ends by the direction of the straight edges."""
    buckets: list[list[tuple[float, EdgeEnd]]] = [[] for _ in positions]
    for k, e in enumerate(edges):
        d = np.asarray(positions[e.v], float) + np.asarray(e.shift, float) - np.asarray(positions[e.u], float)
        if np.hypot(*d) < GEOM_EPS:
            raise GraphValidationError(f"edge {k} has zero length")
        buckets[e.u].append((_angle(d), (k, 0)))
        buckets[e.v].append((_angle(-d), (k, 1)))
    rotation = []
    for x, items in enumerate(buckets):
        items.sort()
        angles = [a for a, _ in items]
        for a, b in zip(angles, angles[1:]):
            if b - a < 1e-12:
                raise GraphValidationError(f"two edges leave vertex {x} in the same direction")
        rotation.append(tuple(end for _, end in items))
    return tuple(rotation)


def make_toroidal_graph(labels, positions, edges, rotation=None, validate=True) -> ToroidalGraph:
    """Assemble a ToroidalGraph; geometry-derived rotation unless one is supplied."""
    edges = tuple(Edge(int(u), int(v), (int(s[0]), int(s[1]))) for u, v, s in edges)
    positions = tuple((float(x), float(y)) for x, y in positions)
    if rotation is None:
        rotation = geometric_rotation(positions, edges)
    G = ToroidalGraph(tuple(labels), positions, edges, tuple(tuple(r) for r in rotation))
    if validate:
        validate_torus_graph(G)
    return G


def validate_torus_graph(G: TorusGraph) -> None:
    if not G.n_vertices:
        raise GraphValidationError("graph has no vertices")
    if not G.is_connected():
        raise GraphValidationError("graph is disconnected")
    faces = G.faces()
    if G.n_vertices - G.n_edges + len(faces) != 0:
        raise GraphValidationError(
            f"V - E + F = {G.n_vertices - G.n_edges + len(faces)}, expected 0 on the torus"
        )


def parse_torus_graph(source: str | dict) -> ToroidalGraph:
    """Parse the JSON graph format::

        {"vertices": [{"id": "a", "pos": [x, y]}, ...],
         "edges": [{"u": "a", "v": "b", "shift": [dx, dy]}, ...]}
    """
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"graph text is not valid JSON: {exc}") from None
    else:
        data = source
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise GraphFormatError('graph must be an object with "vertices" and "edges"')
    labels, positions = [], []
    try:
        for item in data["vertices"]:
            labels.append(str(item["id"]))
            x, y = (float(c) for c in item["pos"])
            positions.append((x, y))
    except (KeyError, TypeError, ValueError):
        raise GraphFormatError("each vertex needs an id and a two-element pos") from None
    if len(set(labels)) != len(labels):
        raise GraphFormatError("duplicate vertex id")
    for x, y in positions:
        if not (0 <= x < 1 and 0 <= y < 1):
            raise GraphValidationError(f"vertex position ({x}, {y}) outside [0,1)^2")
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    try:
        for item in data["edges"]:
            u, v = str(item["u"]), str(item["v"])
            if u not in index or v not in index:
                raise GraphValidationError(f"edge refers to unknown vertex id {u if u not in index else v!r}")
            shift = item.get("shift", [0, 0])
            if len(shift) != 2 or any(float(s) != int(s) for s in shift):
                raise GraphFormatError("edge shift must be two integers")
            edges.append((index[u], index[v], (int(shift[0]), int(shift[1]))))
    except (KeyError, TypeError):
        raise GraphFormatError('each edge needs "u" and "v"') from None
    if not edges:
        raise GraphValidationError("graph has no edges")
    for k, (u, v, s) in enumerate(edges):
        if u == v and s == (0, 0):
            raise GraphValidationError(f"edge {k} is a contractible loop")
    check_noncrossing(positions, [Edge(*e) for e in edges])
    return make_toroidal_graph(labels, positions, edges)


BUILTINS = {
    # square grid: both Tait graphs of the square weave
    "weave": {
        "vertices": [{"id": "v", "pos": [0.5, 0.5]}],
        "edges": [
            {"u": "v", "v": "v", "shift": [1, 0]},
            {"u": "v", "v": "v", "shift": [0, 1]},
        ],
    },
    # triangular lattice, Tait graph of the triaxial link; the diagonal runs along
    # (1,-1) so that the homology monomials come out as z/w and w/z
    "triaxial": {
        "vertices": [{"id": "v", "pos": [0.5, 0.5]}],
        "edges": [
            {"u": "v", "v": "v", "shift": [1, 0]},
            {"u": "v", "v": "v", "shift": [0, 1]},
            {"u": "v", "v": "v", "shift": [1, -1]},
        ],
    },
}


def builtin(name: str) -> ToroidalGraph:
    try:
        return parse_torus_graph(BUILTINS[name])
    except KeyError:
        raise GraphFormatError(f"unknown builtin graph {name!r}; choose from {sorted(BUILTINS)}") from None


def load_graph(source: str | Path | dict | ToroidalGraph) -> ToroidalGraph:
    """Resolve ``builtin:NAME``, a path to a JSON file, raw JSON text or a dict."""
    if isinstance(source, ToroidalGraph):
        return source
    if isinstance(source, dict):
        return parse_torus_graph(source)
    text = str(source)
    if text.startswith("builtin:"):
        return builtin(text.split(":", 1)[1])
    if text.lstrip().startswith("{"):
        return parse_torus_graph(text)
    path = Path(text)
    if not path.exists():
        raise GraphFormatError(f"no such graph file: {text}")
    return parse_torus_graph(path.read_text())


def graph_to_json(G: TorusGraph) -> dict:
    return {
        "vertices": [{"id": lab, "pos": list(p)} for lab, p in zip(G.labels, G.positions)],
        "edges": [{"u": G.labels[e.u], "v": G.labels[e.v], "shift": list(e.shift)} for e in G.edges],
    }


# -- faces, dual, overlay ----------------------------------------------------------


def faces(G: TorusGraph) -> list[FacialWalk]:
    return G.faces()


@dataclass(frozen=True)
class _FaceData:
    face_of: dict          # dart -> face index
    face_copy: dict        # dart -> lattice copy of the face centre when the dart's tail is in copy 0
    centres: list          # canonical face-centre positions in [0,1)^2


def _face_data(G: TorusGraph) -> _FaceData:
    face_of, face_copy, centres = {}, {}, []
    for f, walk in enumerate(G.faces()):
        pts = np.array([np.asarray(G.positions[dart_tail(G.edges, d)]) + np.asarray(c, float)
                        for d, c in zip(walk.darts, walk.copies)])
        centroid = pts.mean(axis=0)
        offset = np.floor(centroid)
        centres.append(tuple(float(x) for x in centroid - offset))
        off = (int(offset[0]), int(offset[1]))
        for d, c in zip(walk.darts, walk.copies):
            face_of[d] = f
            face_copy[d] = _sub(off, c)
    return _FaceData(face_of, face_copy, centres)


def dual(G: ToroidalGraph) -> ToroidalGraph:
    """Planar dual on the torus: one vertex per face, one crossing edge per edge.

    The dual edge of ``e`` runs from the face left of ``e`` to the face on its right.
    Dual vertices sit at face centroids; the rotation is combinatorial.
    """
    fd = _face_data(G)
    edges = []
    for k, e in enumerate(G.edges):
        left, right = fd.face_of[(k, 0)], fd.face_of[(k, 1)]
        shift = _sub(_add(e.shift, fd.face_copy[(k, 1)]), fd.face_copy[(k, 0)])
        edges.append(Edge(left, right, shift))
    rotation = [tuple(walk.darts) for walk in G.faces()]
    labels = [f"f{i}" for i in range(len(rotation))]
    D = ToroidalGraph(tuple(labels), tuple(fd.centres), tuple(edges), tuple(rotation))
    validate_torus_graph(D)
    return D


def overlay(G: ToroidalGraph) -> BipartiteTorusGraph:
    """The bipartite overlay of ``G`` with its dual.

    Blacks are the primal vertices followed by the dual vertices; one white per primal
    edge follows. Overlay edge ``4k + j`` joins white ``k`` to, for j = 0..3, the tail
    of edge ``k``, its right face, its head and its left face, which is also the
    counterclockwise order around the white.
    """
    V, E = G.n_vertices, G.n_edges
    fd = _face_data(G)
    F = len(fd.centres)
    white0 = V + F
    labels = list(G.labels) + [f"f{i}" for i in range(F)] + [f"x{k}" for k in range(E)]
    origin = ["primal"] * V + ["dual"] * F + ["white"] * E
    positions = list(G.positions) + list(fd.centres)
    edges: list[Edge] = []
    for k, e in enumerate(G.edges):
        mid = np.asarray(G.positions[e.u]) + G.displacement(k) / 2
        off = np.floor(mid)
        positions.append(tuple(float(x) for x in mid - off))
        sw = (int(off[0]), int(off[1]))
        w = white0 + k
        left, right = V + fd.face_of[(k, 0)], V + fd.face_of[(k, 1)]
        copy_left = fd.face_copy[(k, 0)]
        copy_right = _add(e.shift, fd.face_copy[(k, 1)])
        edges.append(Edge(w, e.u, _sub((0, 0), sw)))
        edges.append(Edge(w, right, _sub(copy_right, sw)))
        edges.append(Edge(w, e.v, _sub(e.shift, sw)))
        edges.append(Edge(w, left, _sub(copy_left, sw)))
    rotation: list[tuple[EdgeEnd, ...]] = []
    for x in range(V):
        rotation.append(tuple((4 * k + (0 if end == 0 else 2), 1) for k, end in G.rotation[x]))
    for walk in G.faces():
        rotation.append(tuple((4 * k + (3 if d == 0 else 1), 1) for k, d in walk.darts))
    for k in range(E):
        rotation.append(tuple((4 * k + j, 0) for j in range(4)))
    B = BipartiteTorusGraph(tuple(labels), tuple(positions), tuple(edges), tuple(rotation), tuple(origin))
    validate_torus_graph(B)
    return B


def quotient(G: TorusGraph, n: int) -> TorusGraph:
    """The finite torus graph ``G / (n Lambda)``: n^2 copies of the fundamental domain.

    Vertex ``x`` in copy ``c`` gets index ``cell(c) * V + x`` and the copy of edge ``k``
    leaving copy ``c`` gets index ``cell(c) * E + k``, so copy (0, 0) keeps the original
    numbering.
    """
    if n < 1:
        raise ValueError("quotient order must be >= 1")
    if n == 1:
        return G
    V, E = G.n_vertices, G.n_edges
    cells = [(i, j) for j in range(n) for i in range(n)]

    def cell(c: Vec) -> int:
        return (c[1] % n) * n + (c[0] % n)

    labels, positions, edges = [], [], []
    for c in cells:
        for x in range(V):
            labels.append(f"{G.labels[x]}@{c[0]},{c[1]}")
            px, py = G.positions[x]
            positions.append(((px + c[0]) / n, (py + c[1]) / n))
    for c in cells:
        for e in G.edges:
            t = _add(c, e.shift)
            wrap = (t[0] // n, t[1] // n)
            edges.append(Edge(cell(c) * V + e.u, cell(t) * V + e.v, wrap))
    rotation = []
    for c in cells:
        for x in range(V):
            ends = []
            for k, end in G.rotation[x]:
                # copy of edge k whose ``end`` lies at (x, c)
                start = c if end == 0 else _sub(c, G.edges[k].shift)
                ends.append((cell(start) * E + k, end))
            rotation.append(tuple(ends))
    common = (tuple(labels), tuple(positions), tuple(edges), tuple(rotation))
    if isinstance(G, BipartiteTorusGraph):
        return BipartiteTorusGraph(*common, G.origin * (n * n))
    return type(G)(*common)


# -- isomorphism -----------------------------------------------------------------


def is_isomorphic(G: TorusGraph, H: TorusGraph) -> bool:
    """Isomorphism of periodic graphs with the same lattice.

    Searches for a vertex bijection plus a lattice offset per vertex carrying the edge
    multiset of ``G`` onto that of ``H`` (edges compared up to reversal). Exponential;
    meant for small fundamental domains.
    """
    if G.n_vertices != H.n_vertices or G.n_edges != H.n_edges:
        return False
    if sorted(map(len, G.rotation)) != sorted(map(len, H.rotation)):
        return False

    def key(u, v, s):
        return min((u, v, s), (v, u, _neg(s)))

    target: dict = {}
    for e in H.edges:
        k = key(*e)
        target[k] = target.get(k, 0) + 1
    by_pair: dict[tuple[int, int], list[Vec]] = {}
    for u, v, s in H.edges:
        by_pair.setdefault((u, v), []).append(s)
        by_pair.setdefault((v, u), []).append(_neg(s))

    # BFS order of G with a tree edge to an earlier vertex for each later one
    order, parent = [0], {0: None}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for e in G.edges:
            for a, b, s in ((e.u, e.v, e.shift), (e.v, e.u, _neg(e.shift))):
                if a == x and b not in parent:
                    parent[b] = (a, s)
                    order.append(b)
                    queue.append(b)

    def check(pi, t):
        seen: dict = {}
        for u, v, s in G.edges:
            k = key(pi[u], pi[v], _add(s, _sub(t[v], t[u])))
            seen[k] = seen.get(k, 0) + 1
        return seen == target

    def search(i, pi, t, used):
        if i == len(order):
            return check(pi, t)
        x = order[i]
        for y in range(H.n_vertices):
            if y in used or len(H.rotation[y]) != len(G.rotation[x]):
                continue
            if parent[x] is None:
                options = [(0, 0)]
            else:
                a, s = parent[x]
                options = {_add(_sub(sh, s), t[a]) for sh in by_pair.get((pi[a], y), [])}
            for off in options:
                pi[x], t[x] = y, off
                used.add(y)
                if search(i + 1, pi, t, used):
                    return True
                used.discard(y)
                del pi[x], t[x]
        return False

    return search(0, {}, {}, set())


# -- planar patches and Folner statistics --------------------------------------------


@dataclass(frozen=True, eq=False)
class PlanarPatch:
    """Finite piece ``H_n`` of the universal cover cut out by the n x n block of copies.

    ``vertices[i] = (x, (a, b))`` is vertex ``x`` of the fundamental domain in copy
    ``(a, b)``; ``boundary[i]`` marks vertices adjacent (in the infinite graph) to a vertex
    outside the patch. ``rotation`` is inherited from the torus embedding.
    """

    n: int
    vertices: tuple[tuple[int, Vec], ...]
    edges: tuple[tuple[int, int], ...]
    boundary: tuple[bool, ...]
    positions: tuple[tuple[float, float], ...]
    rotation: tuple[tuple[EdgeEnd, ...], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_boundary(self) -> int:
        return sum(self.boundary)

    def to_planar(self):
        from .planar import PlanarGraph

        return PlanarGraph(self.n_vertices, tuple(self.edges), self.rotation, self.positions)


def patch(G: ToroidalGraph, n: int) -> PlanarPatch:
    """Induced subgraph on copies ``[0, n)^2``, restricted to its largest component."""
    if n < 1:
        raise ValueError("patch size must be >= 1")
    cells = [(i, j) for j in range(n) for i in range(n)]
    nodes = [(x, c) for c in cells for x in range(G.n_vertices)]
    idx = {node: k for k, node in enumerate(nodes)}
    # (edge k of the domain, tail node, head node) for every edge inside the block
    block_edges = []
    for c in cells:
        for k, e in enumerate(G.edges):
            t = _add(c, e.shift)
            if 0 <= t[0] < n and 0 <= t[1] < n:
                block_edges.append((k, idx[(e.u, c)], idx[(e.v, t)]))

    adj: list[list[int]] = [[] for _ in nodes]
    for _, a, b in block_edges:
        adj[a].append(b)
        adj[b].append(a)
    comp = [-1] * len(nodes)
    sizes = []
    for s in range(len(nodes)):
        if comp[s] >= 0:
            continue
        comp[s] = len(sizes)
        stack, size = [s], 0
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if comp[y] < 0:
                    comp[y] = comp[s]
                    stack.append(y)
        sizes.append(size)
    best = max(range(len(sizes)), key=lambda c: (sizes[c], -c))
    keep = [k for k in range(len(nodes)) if comp[k] == best]
    new = {k: i for i, k in enumerate(keep)}

    edges, lookup = [], {}
    for k, a, b in block_edges:
        if a in new:
            lookup[(k, a, 0)] = lookup[(k, b, 1)] = len(edges)
            edges.append((new[a], new[b]))
    degree = [0] * len(keep)
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    boundary = tuple(degree[i] < G.degree(nodes[k][0]) for i, k in enumerate(keep))
    rotation = tuple(
        tuple((lookup[(ek, k, end)], end) for ek, end in G.rotation[nodes[k][0]] if (ek, k, end) in lookup)
        for k in keep
    )
    positions = tuple(
        (G.positions[x][0] + c[0], G.positions[x][1] + c[1]) for x, c in (nodes[k] for k in keep)
    )
    return PlanarPatch(n, tuple(nodes[k] for k in keep), tuple(edges), boundary, positions, rotation)


@dataclass(frozen=True)
class FolnerRow:
    n: int
    vertices: int
    edges: int
    boundary: int
    boundary_ratio: float
    edge_ratio: float


def folner_stats(G: ToroidalGraph, ns: Sequence[int]) -> list[FolnerRow]:
    if not ns:
        raise ValueError("need at least one patch size")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("patch sizes must be increasing")
    rows = []
    for n in ns:
        H = patch(G, n)
        rows.append(FolnerRow(n, H.n_vertices, H.n_edges, H.n_boundary,
                              H.n_boundary / H.n_vertices, H.n_edges / H.n_vertices))
    return rows
