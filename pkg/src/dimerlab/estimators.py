"""Estimator-style wrappers: fit on a torus graph, transform patch sizes into numbers.

sklearn is imported here only, so the core package does not depend on it at import time.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import GraphFormatError
from .kasteleyn import char_poly, kasteleyn_signs, partition_toroidal
from .mahler import DEFAULT_TOL, mahler_2d
from .torus import ToroidalGraph, load_graph, overlay
from .treecount import EXACT_CAP, density_sweep


def check_graph(X) -> ToroidalGraph:
    """Coerce ``X`` (graph, ``builtin:NAME``, path, JSON text or dict) to a ToroidalGraph."""
    if X is None:
        raise GraphFormatError("no graph given")
    return load_graph(X)


def check_sizes(ns) -> list[int]:
    arr = np.atleast_1d(np.asarray(ns))
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a nonempty 1-d sequence of patch sizes")
    if not np.issubdtype(arr.dtype, np.number):
        raise ValueError("patch sizes must be numbers")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.round(arr)):
            raise ValueError("patch sizes must be integers")
    out = [int(n) for n in arr]
    if min(out) < 1:
        raise ValueError("patch sizes must be >= 1")
    return out


class ToroidalDimerModel(BaseEstimator):
    """Kasteleyn system of the overlay of a torus graph.

    After ``fit``: ``poly_`` (p(z, w)), ``normalized_poly_``, ``mahler_`` (a MahlerResult),
    ``crossing_number_`` and ``density_`` = m(p)/c(L).
    """

    def __init__(self, tol: float = DEFAULT_TOL, twist: tuple[int, int] = (1, 1)):
        self.tol = tol
        self.twist = twist

    def fit(self, X, y=None):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        G = check_graph(X)
        self.graph_ = G
        self.system_ = kasteleyn_signs(overlay(G), twist=tuple(self.twist))
        cp = char_poly(self.system_)
        self.poly_, self.normalized_poly_ = cp.poly, cp.normalized
        self.mahler_ = mahler_2d(self.poly_, self.tol)
        self.crossing_number_ = G.n_edges
        self.density_ = self.mahler_.value / self.crossing_number_
        return self

    def transform(self, X) -> np.ndarray:
        """log Z(G_n) / n^2 for each n in ``X``."""
        check_is_fitted(self, "system_")
        return np.array([math.log(partition_toroidal(self.system_, n)) / n**2 for n in check_sizes(X)])


class DeterminantDensity(TransformerMixin, BaseEstimator):
    """Spanning-tree densities of growing patches of a torus graph.

    ``fit`` records the limiting value m(p)/c(L); ``transform`` maps patch sizes to an
    array of shape (len(ns), 2): density and 2 pi times density.
    """

    def __init__(self, exact_cap: int = EXACT_CAP, tol: float = DEFAULT_TOL):
        self.exact_cap = exact_cap
        self.tol = tol

    def fit(self, X, y=None):
        model = ToroidalDimerModel(tol=self.tol).fit(X)
        self.graph_ = model.graph_
        self.limit_ = model.density_
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "limit_")
        self.rows_ = density_sweep(self.graph_, sorted(set(check_sizes(X))), self.exact_cap)
        by_n = {r.n: r for r in self.rows_}
        return np.array([[by_n[n].density, by_n[n].two_pi_density] for n in check_sizes(X)])

    def errors(self, X) -> np.ndarray:
        """|density(n) - limit| for each n."""
        return np.abs(self.transform(X)[:, 0] - self.limit_)
