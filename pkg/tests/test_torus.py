import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimerlab.corpus import generate_corpus, load_corpus, dump_corpus, random_torus_graph
from dimerlab.errors import GraphFormatError, GraphValidationError
from dimerlab.torus import (
    BUILTINS, builtin, dual, faces, folner_stats, graph_to_json, is_isomorphic, load_graph, overlay,
    parse_torus_graph, patch, quotient,
)


def graph_text(vertices, edges):
    return json.dumps({
        "vertices": [{"id": i, "pos": p} for i, p in vertices],
        "edges": [{"u": u, "v": v, "shift": s} for u, v, s in edges],
    })


class TestParse:
    def test_weave(self, weave):
        assert (weave.n_vertices, weave.n_edges) == (1, 2)

    def test_triaxial(self, triaxial):
        assert (triaxial.n_vertices, triaxial.n_edges) == (1, 3)
        assert triaxial.crossing_number == 3

    def test_unknown_vertex(self):
        with pytest.raises(GraphValidationError, match="unknown vertex"):
            parse_torus_graph(graph_text([("a", [0.5, 0.5])], [("a", "b", [1, 0])]))

    def test_malformed(self):
        with pytest.raises(GraphFormatError):
            parse_torus_graph("{not json")
        with pytest.raises(GraphFormatError):
            parse_torus_graph('{"vertices": []}')
        with pytest.raises(GraphFormatError):
            parse_torus_graph(graph_text([("a", [0.5])], [("a", "a", [1, 0])]))

    def test_position_out_of_range(self):
        with pytest.raises(GraphValidationError):
            parse_torus_graph(graph_text([("a", [1.5, 0.5])], [("a", "a", [1, 0])]))

    def test_contractible_loop(self):
        with pytest.raises(GraphValidationError):
            parse_torus_graph(graph_text([("a", [0.5, 0.5])], [("a", "a", [0, 0])]))

    def test_disconnected(self):
        verts = [("a", [0.25, 0.25]), ("b", [0.75, 0.75])]
        edges = [("a", "a", [1, 0]), ("a", "a", [0, 1]), ("b", "b", [1, 0]), ("b", "b", [0, 1])]
        with pytest.raises(GraphValidationError):
            parse_torus_graph(graph_text(verts, edges))

    def test_crossing_edges(self):
        # both diagonals of the unit square cross in the universal cover
        edges = [("a", "a", [1, 0]), ("a", "a", [0, 1]), ("a", "a", [1, 1]), ("a", "a", [1, -1])]
        with pytest.raises(GraphValidationError, match="cross"):
            parse_torus_graph(graph_text([("a", [0.5, 0.5])], edges))

    def test_not_cellular(self):
        # a single loop leaves an annulus
        with pytest.raises(GraphValidationError):
            parse_torus_graph(graph_text([("a", [0.5, 0.5])], [("a", "a", [1, 0])]))

    def test_rotation_is_angular(self, triaxial):
        # directions (1,0),(0,1),(1,-1) and their reverses, sorted counterclockwise
        ends = triaxial.rotation[0]
        assert ends == ((0, 0), (1, 0), (2, 1), (0, 1), (1, 1), (2, 0))

    def test_load_graph_sources(self, tmp_path, weave):
        path = tmp_path / "g.json"
        path.write_text(json.dumps(BUILTINS["weave"]))
        for src in ("builtin:weave", str(path), json.dumps(BUILTINS["weave"]), BUILTINS["weave"], weave):
            assert is_isomorphic(load_graph(src), weave)
        with pytest.raises(GraphFormatError):
            load_graph("builtin:cube")
        with pytest.raises(GraphFormatError):
            load_graph(str(tmp_path / "missing.json"))

    def test_json_round_trip(self, triaxial):
        again = parse_torus_graph(graph_to_json(triaxial))
        assert again.edges == triaxial.edges and again.rotation == triaxial.rotation


class TestFaces:
    def test_square(self, weave):
        walks = faces(weave)
        assert [len(w) for w in walks] == [4]

    def test_triangular(self, triaxial):
        assert sorted(len(w) for w in faces(triaxial)) == [3, 3]

    def test_overlay_faces_are_quads(self, weave, triaxial):
        for G in (weave, triaxial, *load_corpus()):
            B = overlay(G)
            walks = faces(B)
            sides = [d for w in walks for d in w.darts]
            assert len(sides) == len(set(sides)) == 2 * B.n_edges
            assert all(len(w) == 4 for w in walks)
            assert len(walks) == B.n_edges - B.n_vertices

    def test_euler_on_corpus(self):
        for G in load_corpus():
            assert G.n_vertices - G.n_edges + len(faces(G)) == 0
            assert sum(len(w) for w in faces(G)) == 2 * G.n_edges


class TestDual:
    def test_square_self_dual(self, weave):
        D = dual(weave)
        assert (D.n_vertices, D.n_edges) == (1, 2)
        assert is_isomorphic(D, weave)

    def test_triangular_to_hexagonal(self, triaxial):
        D = dual(triaxial)
        assert (D.n_vertices, D.n_edges) == (2, 3)
        assert all(D.degree(x) == 3 for x in range(2))
        assert not is_isomorphic(D, triaxial)

    def test_involution(self, weave, triaxial):
        for G in (weave, triaxial, *load_corpus()):
            assert is_isomorphic(dual(dual(G)), G)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6))
    def test_involution_random(self, seed):
        G = random_torus_graph(np.random.default_rng(seed), m=2)
        assert is_isomorphic(dual(dual(G)), G)


class TestOverlay:
    def test_weave(self, weave):
        B = overlay(weave)
        assert (len(B.blacks), len(B.whites), B.n_edges) == (2, 2, 8)

    def test_triaxial(self, triaxial):
        B = overlay(triaxial)
        assert (len(B.blacks), len(B.whites)) == (3, 3)

    def test_balanced_and_white_degree(self):
        for G in load_corpus():
            B = overlay(G)
            assert B.is_balanced() and len(B.whites) == G.n_edges
            assert all(B.degree(x) == 4 for x in B.whites)

    def test_white_rotation_alternates(self, triaxial):
        B = overlay(triaxial)
        for x in B.whites:
            kinds = []
            for e, end in B.rotation[x]:
                other = B.edges[e].v if end == 0 else B.edges[e].u
                kinds.append(B.origin[other])
            assert kinds[0] == kinds[2] != kinds[1] == kinds[3]


class TestQuotient:
    def test_identity(self, weave):
        B = overlay(weave)
        assert quotient(B, 1) is B

    def test_weave_overlay(self, weave):
        Q = quotient(overlay(weave), 2)
        assert (len(Q.blacks), len(Q.whites), Q.n_edges) == (8, 8, 32)

    def test_triangular(self, triaxial):
        Q = quotient(triaxial, 3)
        assert (Q.n_vertices, Q.n_edges) == (9, 27)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_scaling(self, n):
        for G in load_corpus():
            Q = quotient(G, n)
            assert Q.n_vertices == n * n * G.n_vertices and Q.n_edges == n * n * G.n_edges
            assert len(faces(Q)) == n * n * len(faces(G))

    def test_quotient_of_lattice_is_larger_lattice(self, weave):
        # the 2x2 quotient of the square lattice is itself a torus square grid
        Q = quotient(weave, 2)
        assert all(Q.degree(x) == 4 for x in range(4))


def brute_patch_edges(G, n):
    """Count universal-cover edges with both ends in the n x n block by geometry."""
    pts = {}
    for x, p in enumerate(G.positions):
        for i in range(n):
            for j in range(n):
                pts[(x, i, j)] = np.array(p) + (i, j)
    count = 0
    for e in G.edges:
        vec = np.array(G.positions[e.v]) + e.shift - np.array(G.positions[e.u])
        for (x, i, j), p in pts.items():
            if x != e.u:
                continue
            for (y, a, b), q in pts.items():
                if y == e.v and np.allclose(q - p, vec):
                    count += 1
    return count


class TestPatch:
    def test_square_2(self, weave):
        H = patch(weave, 2)
        assert (H.n_vertices, H.n_edges) == (4, 4)

    def test_square_10(self, weave):
        H = patch(weave, 10)
        assert (H.n_vertices, H.n_edges, H.n_boundary) == (100, 180, 36)

    def test_triangular_2(self, triaxial):
        H = patch(triaxial, 2)
        assert H.n_vertices == 4
        assert H.n_edges == brute_patch_edges(triaxial, 2) == 5

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_corpus_edges_match_geometry(self, n):
        for G in load_corpus()[:2]:
            H = patch(G, n)
            full = brute_patch_edges(G, n)
            assert H.n_edges <= full
            if H.n_vertices == n * n * G.n_vertices:
                assert H.n_edges == full

    def test_patch_is_connected(self):
        for G in load_corpus():
            assert patch(G, 3).to_planar().is_connected()

    def test_patch_is_plane(self, triaxial):
        P = patch(triaxial, 4).to_planar()
        assert P.n_vertices - P.n_edges + len(P.faces()) == 2


class TestFolner:
    def test_square_ratios(self, weave):
        rows = folner_stats(weave, [10, 20, 40])
        assert [r.boundary_ratio for r in rows] == [0.36, 0.19, 0.0975]
        assert [r.edge_ratio for r in rows] == [2 - 2 / n for n in (10, 20, 40)]
        assert abs(rows[-1].edge_ratio - 2) < 0.06

    def test_validation(self, weave):
        with pytest.raises(ValueError):
            folner_stats(weave, [])
        with pytest.raises(ValueError):
            folner_stats(weave, [4, 2])

    @pytest.mark.parametrize("name", ["weave", "triaxial"])
    def test_lemma_tolerances(self, name):
        G = builtin(name)
        d = G.max_degree
        target = G.n_edges / G.n_vertices
        for r in folner_stats(G, [4, 8, 16, 32, 64]):
            assert r.boundary_ratio <= 4 * d / r.n
            assert abs(r.edge_ratio - target) <= 4 * d / r.n


def test_corpus_bundle_matches_seed():
    assert dump_corpus(generate_corpus()) == dump_corpus(load_corpus())
