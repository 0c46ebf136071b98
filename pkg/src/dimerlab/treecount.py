"""Spanning-tree counts, knot determinants of alternating diagrams, and the
determinant-density sweep over growing patches."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.csgraph import reverse_cuthill_mckee

from .errors import GraphValidationError, SizeCapError
from .linalg import sparse_rational_det
from .oracle import as_multigraph, _is_connected
from .torus import ToroidalGraph, patch

EXACT_CAP = 400


def _laplacian(n: int, edges) -> scipy.sparse.csr_matrix:
    rows, cols, vals = [], [], []
    for u, v in edges:
        if u == v:
            continue
        rows += [u, v, u, v]
        cols += [u, v, v, u]
        vals += [1, 1, -1, -1]
    return scipy.sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()


def _reduced(n: int, edges, drop: int) -> scipy.sparse.csr_matrix:
    L = _laplacian(n, edges)
    keep = np.array([i for i in range(n) if i != drop])
    return L[keep][:, keep].tocsr()


def _bandwidth_order(A: scipy.sparse.csr_matrix) -> np.ndarray:
    return reverse_cuthill_mckee(A, symmetric_mode=True)


def tree_count_exact(G, cap: int = EXACT_CAP, drop: int | None = None) -> int:
    """Number of spanning trees: exact determinant of the Laplacian with one row and
    column removed (the last vertex unless ``drop`` is given)."""
    n, edges = as_multigraph(G)
    if n > cap:
        raise SizeCapError(f"{n} vertices exceeds the exact tree-count cap of {cap}")
    if not _is_connected(n, edges):
        raise GraphValidationError("spanning trees need a connected graph")
    if n == 1:
        return 1
    drop = n - 1 if drop is None else drop
    A = _reduced(n, edges, drop).tocoo()
    rows = [dict() for _ in range(n - 1)]
    for i, j, v in zip(A.row, A.col, A.data):
        rows[i][int(j)] = rows[i].get(int(j), 0) + int(v)
    order = _bandwidth_order(A.tocsr())
    return sparse_rational_det(rows, [int(k) for k in order])


def log_tree_count(G) -> float:
    """log tau(G) from a banded Cholesky factorization of the reduced Laplacian.

    Vertices are reordered by reverse Cuthill-McKee to keep the band narrow.
    """
    n, edges = as_multigraph(G)
    if n == 1:
        return 0.0
    A = _reduced(n, edges, n - 1)
    order = _bandwidth_order(A)
    A = A[order][:, order].tocoo()
    band = int(np.max(np.abs(A.row - A.col))) if A.nnz else 0
    ab = np.zeros((band + 1, n - 1))
    upper = A.row <= A.col
    ab[band + A.row[upper] - A.col[upper], A.col[upper]] = A.data[upper]
    try:
        U = scipy.linalg.cholesky_banded(ab, lower=False)
    except np.linalg.LinAlgError:
        raise GraphValidationError("reduced Laplacian is not positive definite; graph is disconnected") from None
    return 2.0 * float(np.sum(np.log(U[band])))


def knot_determinant(tait) -> int:
    """Determinant of the alternating link whose Tait graph is ``tait``."""
    return tree_count_exact(tait)


@dataclass(frozen=True)
class DensityRow:
    n: int
    vertices: int
    edges: int
    log_tau: float
    density: float
    two_pi_density: float


CSV_HEADER = ["n", "vertices", "edges", "log_tau", "density", "two_pi_density"]


def density_row(G: ToroidalGraph, n: int, exact_cap: int = EXACT_CAP) -> DensityRow:
    H = patch(G, n)
    if H.n_edges == 0:
        raise GraphValidationError(f"patch of size {n} has no edges")
    pair = (H.n_vertices, list(H.edges))
    if H.n_vertices <= exact_cap:
        log_tau = math.log(tree_count_exact(pair, cap=exact_cap))
    else:
        log_tau = log_tree_count(pair)
    density = log_tau / H.n_edges
    return DensityRow(n, H.n_vertices, H.n_edges, log_tau, density, 2 * math.pi * density)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DIMERLAB_THREADS", "1")))
    except ValueError:
        return 1


def density_sweep(G: ToroidalGraph, ns: Sequence[int], exact_cap: int = EXACT_CAP) -> list[DensityRow]:
    """log tau(H_n) / e(H_n) for the patches ``H_n = patch(G, n)``.

    Rows are independent and may run on ``DIMERLAB_THREADS`` workers; output order
    follows ``ns``.
    """
    ns = list(ns)
    if not ns:
        raise ValueError("need at least one patch size")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("patch sizes must be increasing")
    workers = min(_threads(), len(ns))
    if workers == 1:
        return [density_row(G, n, exact_cap) for n in ns]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(lambda n: density_row(G, n, exact_cap), ns))


def richardson(rows: Sequence[DensityRow]) -> float:
    """Extrapolate density to n -> infinity from the last two rows, assuming an O(1/n)
    leading correction."""
    if len(rows) < 2:
        raise ValueError("need two rows to extrapolate")
    a, b = rows[-2], rows[-1]
    return (b.n * b.density - a.n * a.density) / (b.n - a.n)


def rows_to_csv(rows: Sequence[DensityRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.n, r.vertices, r.edges, repr(r.log_tau), repr(r.density), repr(r.two_pi_density)])
    return buf.getvalue()


def rows_to_json(rows: Sequence[DensityRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)
