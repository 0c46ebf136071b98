import pytest

from dimerlab.errors import GraphValidationError, SizeCapError
from dimerlab.oracle import enum_dimers, enum_spanning_trees
from dimerlab.torus import overlay, patch
from dimerlab.treecount import tree_count_exact

from helpers import random_multigraph

C4 = (4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def complete(n):
    return n, [(i, j) for i in range(n) for j in range(i + 1, n)]


class TestDimers:
    def test_four_cycle(self):
        r = enum_dimers(C4)
        assert r.count == 2 and r.examined > 0 and r.elapsed >= 0

    def test_weave_overlay(self, weave):
        assert enum_dimers(overlay(weave)).count == 8

    def test_odd(self):
        assert enum_dimers((3, [(0, 1), (1, 2)])).count == 0

    def test_parallel_edges_count(self):
        assert enum_dimers((2, [(0, 1)] * 3)).count == 3

    def test_not_bipartite(self):
        with pytest.raises(GraphValidationError):
            enum_dimers(complete(3))

    def test_cap(self):
        n = 40
        with pytest.raises(SizeCapError):
            enum_dimers((n, [(i, i + 1) for i in range(n - 1)]))

    def test_path_matchings(self):
        # a path on 2k vertices has exactly one perfect matching
        assert enum_dimers((10, [(i, i + 1) for i in range(9)])).count == 1


class TestSpanningTrees:
    def test_triangle(self):
        assert enum_spanning_trees((3, [(0, 1), (1, 2), (2, 0)])).count == 3

    def test_cayley(self):
        for n in range(2, 7):
            assert enum_spanning_trees(complete(n)).count == n ** (n - 2)

    def test_grid_matches_matrix_tree(self, weave):
        H = patch(weave, 3)
        assert enum_spanning_trees(H).count == tree_count_exact(H) == 192

    def test_disconnected(self):
        with pytest.raises(GraphValidationError):
            enum_spanning_trees((3, [(0, 1)]))

    def test_cap(self):
        with pytest.raises(SizeCapError):
            enum_spanning_trees(complete(11))

    def test_loops_ignored(self):
        assert enum_spanning_trees((2, [(0, 1), (0, 0), (0, 1)])).count == 2

    def test_deletion_contraction(self, rng):
        for _ in range(30):
            n, edges = random_multigraph(rng, 7)
            if not edges:
                continue
            k = int(rng.integers(len(edges)))
            a, b = sorted(edges[k])
            rest = edges[:k] + edges[k + 1:]
            relabel = lambda x: a if x == b else (x - 1 if x > b else x)  # noqa: E731
            contracted = (n - 1, [(relabel(u), relabel(v)) for u, v in rest])
            tau = enum_spanning_trees((n, edges)).count
            try:
                deleted = enum_spanning_trees((n, rest)).count
            except GraphValidationError:
                deleted = 0
            assert tau == deleted + enum_spanning_trees(contracted).count

    def test_agrees_with_matrix_tree(self, rng):
        for _ in range(40):
            G = random_multigraph(rng, 8)
            assert enum_spanning_trees(G).count == tree_count_exact(G)
