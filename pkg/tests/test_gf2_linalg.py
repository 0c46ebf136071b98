import itertools

import numpy as np
import pytest

from dimerlab.gf2 import gf2_rank, solve_gf2
from dimerlab.linalg import bareiss_det, sparse_rational_det


def test_solve_simple():
    # x0 + x1 = 1, x1 = 1
    x = solve_gf2([0b11, 0b10], [1, 1], 2)
    assert x == 0b10


def test_inconsistent():
    assert solve_gf2([0b1, 0b1], [0, 1], 1) is None


def test_free_variables_zero():
    assert solve_gf2([0b011], [0], 3) == 0


def test_random_systems(rng):
    for _ in range(50):
        n, m = int(rng.integers(1, 10)), int(rng.integers(1, 10))
        rows = [int(rng.integers(0, 1 << n)) for _ in range(m)]
        truth = int(rng.integers(0, 1 << n))
        rhs = [bin(r & truth).count("1") & 1 for r in rows]
        x = solve_gf2(rows, rhs, n)
        assert x is not None
        assert all(bin(r & x).count("1") & 1 == b for r, b in zip(rows, rhs))
        assert gf2_rank(rows, n) <= min(n, m)


def test_bareiss_matches_numpy(rng):
    for k in range(1, 7):
        M = rng.integers(-4, 5, (k, k))
        assert bareiss_det(M.tolist()) == round(np.linalg.det(M))


def test_bareiss_zero_pivot_swaps():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [1, 0]]) == 0


def test_sparse_rational_det_laplacian(rng):
    # reduced Laplacian of K4 has determinant 16
    L = [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]]
    rows = [{j: v for j, v in enumerate(r) if v} for r in L]
    for order in itertools.permutations(range(3)):
        assert sparse_rational_det(rows, list(order)) == 16
