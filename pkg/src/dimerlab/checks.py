"""Invariant suite run by ``dimerlab check``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .kasteleyn import (
    char_poly, direct_numeric_det, kasteleyn_signs, partition_planar, partition_toroidal,
    product_numeric, signs_satisfy,
)
from .mahler import mahler_2d
from .oracle import DIMER_CAP, enum_dimers
from .planar import temperley_graph
from .torus import ToroidalGraph, dual, folner_stats, is_isomorphic, overlay, patch, quotient
from .treecount import log_tree_count, tree_count_exact


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool | None  # None: skipped
    detail: str

    @property
    def status(self) -> str:
        return "skip" if self.passed is None else ("pass" if self.passed else "FAIL")


def _euler(G, rng):
    walks = G.faces()
    chi = G.n_vertices - G.n_edges + len(walks)
    total = sum(len(w) for w in walks)
    return chi == 0 and total == 2 * G.n_edges, f"V-E+F={chi}, sum of face lengths={total}, 2E={2 * G.n_edges}"


def _dual_involution(G, rng):
    D = dual(G)
    ok = D.n_vertices == len(G.faces()) and D.n_edges == G.n_edges and is_isomorphic(dual(D), G)
    return ok, f"dual has V={D.n_vertices}, E={D.n_edges}"


def _overlay_shape(G, rng):
    B = overlay(G)
    quads = all(len(w) == 4 for w in B.faces())
    deg4 = all(B.degree(x) == 4 for x in B.whites)
    ok = B.is_balanced() and quads and deg4 and len(B.whites) == G.n_edges
    return ok, f"{len(B.blacks)} black, {len(B.whites)} white, all faces quads: {quads}"


def _quotient_scaling(G, rng):
    Q = quotient(G, 2)
    ok = Q.n_vertices == 4 * G.n_vertices and Q.n_edges == 4 * G.n_edges and len(Q.faces()) == 4 * len(G.faces())
    return ok, f"n=2 quotient: V={Q.n_vertices}, E={Q.n_edges}"


def _signing(G, rng):
    K = kasteleyn_signs(overlay(G))
    return signs_satisfy(K.graph.faces(), K.signs), f"{K.signs.count(-1)} of {len(K.signs)} edges negative"


def _partition(G, rng):
    K = kasteleyn_signs(overlay(G))
    details, ok = [], True
    for n in (1, 2):
        lifted = K.lift(n).graph
        if lifted.n_vertices > 2 * DIMER_CAP:
            details.append(f"n={n} skipped ({lifted.n_vertices} vertices)")
            continue
        z, brute = partition_toroidal(K, n), enum_dimers(lifted).count
        ok &= z == brute
        details.append(f"n={n}: Z={z}, brute force={brute}")
    return ok, "; ".join(details)


def _product_formula(G, rng):
    K = kasteleyn_signs(overlay(G))
    p = char_poly(K).poly
    L = K.lift(2)
    z0, w0 = np.exp(2j * np.pi * rng.random(2))
    direct = direct_numeric_det(L, z0, w0)
    prod = product_numeric(p, 2, z0, w0)
    # det of the lifted matrix and the product agree up to the sign of a row/column permutation
    err = min(abs(direct - prod), abs(direct + prod)) / max(abs(prod), 1e-300)
    return err < 1e-6, f"relative difference {err:.2e} at n=2"


def _mahler_invariance(G, rng):
    p = char_poly(kasteleyn_signs(overlay(G))).poly
    tol = 1e-7
    base = mahler_2d(p, tol).value
    variants = [p.normalize(), p.swap(), p.invert_z()]
    diffs = [abs(mahler_2d(q, tol).value - base) for q in variants]
    return max(diffs) < 1e-5, f"m(p)={base:.8f}, max deviation {max(diffs):.1e}"


def _temperley(G, rng):
    H = patch(G, 2).to_planar()
    tau = tree_count_exact(H)
    Z = partition_planar(temperley_graph(H))
    return tau == Z, f"patch n=2: tau={tau}, dimer count={Z}"


def _log_tree(G, rng):
    H = patch(G, 6)
    exact = math.log(tree_count_exact(H))
    approx = log_tree_count(H)
    rel = abs(approx - exact) / exact
    return rel < 1e-9, f"patch n=6: relative error {rel:.1e}"


def _folner(G, rng):
    rows = folner_stats(G, [4, 8, 16])
    ratios = [r.boundary_ratio for r in rows]
    return all(b < a for a, b in zip(ratios, ratios[1:])), "boundary ratios " + ", ".join(f"{x:.4f}" for x in ratios)


CHECKS: list[tuple[str, Callable]] = [
    ("euler", _euler),
    ("dual-involution", _dual_involution),
    ("overlay-shape", _overlay_shape),
    ("quotient-scaling", _quotient_scaling),
    ("kasteleyn-faces", _signing),
    ("partition-vs-brute-force", _partition),
    ("product-formula", _product_formula),
    ("mahler-invariance", _mahler_invariance),
    ("temperley", _temperley),
    ("log-tree-count", _log_tree),
    ("folner", _folner),
]


def run_checks(G: ToroidalGraph, seed: int = 0) -> list[CheckResult]:
    """Run every invariant on ``G``; an exception inside a check counts as a failure."""
    rng = np.random.default_rng(seed)
    out = []
    for name, fn in CHECKS:
        try:
            passed, detail = fn(G, rng)
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(passed), detail))
    return out
