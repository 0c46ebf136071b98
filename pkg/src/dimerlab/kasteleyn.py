"""Kasteleyn signings, the matrix kappa(z, w), characteristic polynomials and dimer
partition functions on toroidal and planar bipartite graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import mpmath
import numpy as np

from .errors import GraphValidationError, RoundingError, SigningError
from .gf2 import solve_gf2
from .laurent import LaurentPoly2, lp_det, lp_eval
from .linalg import bareiss_det
from .oracle import enum_dimers
from .planar import BLACK, PlanarGraph
from .torus import BipartiteTorusGraph, Edge, FacialWalk, Vec, quotient

# evaluation points of the four spin structures, in SignCombination order
CORNERS = ((1, 1), (-1, 1), (1, -1), (-1, -1))


def face_equations(walks: Sequence[FacialWalk], n_edges: int) -> tuple[list[int], list[int]]:
    """Parity rows: a face of length l needs ``#minus = l/2 + 1 (mod 2)``."""
    rows, rhs = [], []
    for walk in walks:
        if len(walk) % 2:
            raise GraphValidationError("odd face in a bipartite graph")
        mask = 0
        for e, _ in walk.darts:
            mask ^= 1 << e
        rows.append(mask)
        rhs.append((len(walk) // 2 + 1) & 1)
    return rows, rhs


def signs_satisfy(walks: Sequence[FacialWalk], signs: Sequence[int]) -> bool:
    for walk in walks:
        minus = sum(1 for e, _ in walk.darts if signs[e] < 0)
        if minus % 2 != (len(walk) // 2 + 1) % 2:
            return False
    return True


def solve_signs(walks: Sequence[FacialWalk], n_edges: int, drop_last: bool = True) -> tuple[int, ...]:
    rows, rhs = face_equations(walks, n_edges)
    if drop_last and rows:
        rows, rhs = rows[:-1], rhs[:-1]
    x = solve_gf2(rows, rhs, n_edges)
    if x is None:
        raise SigningError("face parity system is inconsistent")
    signs = tuple(-1 if x >> e & 1 else 1 for e in range(n_edges))
    if not signs_satisfy(walks, signs):
        raise SigningError("signing violates a face condition")
    return signs


@dataclass(frozen=True)
class SignCombination:
    """Coefficients for p(1,1), p(-1,1), p(1,-1), p(-1,-1) in the toroidal count."""

    eps: tuple[int, int, int, int]

    def __post_init__(self):
        if any(e not in (1, -1) for e in self.eps):
            raise ValueError("sign coefficients must be +1 or -1")
        if sorted(self.eps).count(-1) not in (1, 3):
            raise ValueError("exactly one coefficient must differ from the other three")

    def apply(self, values: Sequence[int]) -> int:
        total = sum(e * v for e, v in zip(self.eps, values))
        if total % 2:
            raise SigningError(f"signed sum {total} is odd")
        return abs(total) // 2

    @property
    def odd_corner(self) -> tuple[int, int]:
        """The evaluation point carrying the distinguished sign."""
        minority = -1 if self.eps.count(-1) == 1 else 1
        return CORNERS[self.eps.index(minority)]

    def __str__(self):
        return "(" + ",".join("+" if e > 0 else "-" for e in self.eps) + ")"


# preference order when several combinations reproduce the brute-force count:
# the textbook pattern (-,+,+,+) first
CANDIDATES = tuple(
    SignCombination(tuple(-1 if i == j else 1 for i in range(4))) for j in range(4)
)


@dataclass(frozen=True, eq=False)
class KasteleynSystem:
    """A Kasteleyn-signed bipartite torus graph with homology exponents per edge.

    Edge ``k`` is stored white-to-black with a lattice shift ``s`` locating the black;
    oriented black to white it crosses the fundamental-domain walls with net
    displacement ``-s``, which is its exponent pair ``(z power, w power)``.
    """

    graph: BipartiteTorusGraph
    signs: tuple[int, ...]
    weights: tuple[Vec, ...]
    black_order: tuple[int, ...]
    white_order: tuple[int, ...]
    base: "KasteleynSystem | None" = None
    order: int = 1
    _calibration: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.black_order)

    def matrix(self) -> list[list[LaurentPoly2]]:
        """kappa(z, w): rows black, columns white."""
        brow = {b: i for i, b in enumerate(self.black_order)}
        wcol = {w: j for j, w in enumerate(self.white_order)}
        k = self.size
        acc = [[dict() for _ in range(k)] for _ in range(k)]
        for e, (w, b, _) in enumerate(self.graph.edges):
            cell = acc[brow[b]][wcol[w]]
            key = self.weights[e]
            cell[key] = cell.get(key, 0) + self.signs[e]
        return [[LaurentPoly2(c) for c in row] for row in acc]

    def numeric_matrix(self, z: complex, w: complex) -> np.ndarray:
        brow = {b: i for i, b in enumerate(self.black_order)}
        wcol = {x: j for j, x in enumerate(self.white_order)}
        out = np.zeros((self.size, self.size), dtype=complex)
        for e, (x, b, _) in enumerate(self.graph.edges):
            a, c = self.weights[e]
            out[brow[b], wcol[x]] += self.signs[e] * z**a * w**c
        return out

    def lift(self, n: int) -> "KasteleynSystem":
        """The signing pulled back to the quotient by ``n Lambda`` (signs copied per cell)."""
        if n == 1:
            return self
        Q = quotient(self.graph, n)
        E = self.graph.n_edges
        signs = tuple(self.signs[k % E] for k in range(Q.n_edges))
        weights = tuple(_sub0(e.shift) for e in Q.edges)
        return KasteleynSystem(Q, signs, weights, tuple(Q.blacks), tuple(Q.whites), self, n)


def _sub0(s: Vec) -> Vec:
    return (-s[0], -s[1])


def kasteleyn_signs(
    G: BipartiteTorusGraph,
    black_order: Sequence[int] | None = None,
    white_order: Sequence[int] | None = None,
    twist: tuple[int, int] = (1, 1),
) -> KasteleynSystem:
    """Kasteleyn signing by GF(2) elimination over the face parity equations.

    One equation is redundant on a closed surface and is dropped; free edges get +.
    ``twist = (tz, tw)`` multiplies the sign of an edge with exponents (a, b) by
    ``tz**a * tw**b``. That is again a Kasteleyn signing, with ``p(z, w)`` replaced by
    ``p(tz z, tw w)``, and is how one picks among the four spin classes.
    """
    if any(t not in (1, -1) for t in twist):
        raise ValueError("twist entries must be +1 or -1")
    if not G.is_balanced():
        raise GraphValidationError("graph is not balanced")
    for w, b, _ in G.edges:
        if G.origin[w] != "white" or G.origin[b] == "white":
            raise GraphValidationError("edges must run white to black")
    weights = tuple(_sub0(e.shift) for e in G.edges)
    signs = tuple(
        s * twist[0] ** (a % 2) * twist[1] ** (b % 2)
        for s, (a, b) in zip(solve_signs(G.faces(), G.n_edges), weights)
    )
    blacks = tuple(black_order) if black_order is not None else tuple(G.blacks)
    whites = tuple(white_order) if white_order is not None else tuple(G.whites)
    if sorted(blacks) != G.blacks or sorted(whites) != G.whites:
        raise ValueError("orderings must be permutations of the black and white vertices")
    return KasteleynSystem(G, signs, weights, blacks, whites)


class CharPoly(NamedTuple):
    poly: LaurentPoly2
    normalized: LaurentPoly2


def char_poly(K: KasteleynSystem, method: str = "auto") -> CharPoly:
    p = lp_det(K.matrix(), method=method)
    return CharPoly(p, p.normalize() if p else p)


def corner_values(p: LaurentPoly2) -> tuple[int, int, int, int]:
    """Exact p(+-1, +-1) in SignCombination order."""
    out = []
    for sz, sw in CORNERS:
        out.append(sum(c * sz ** (a % 2) * sw ** (b % 2) for (a, b), c in p.items()))
    return tuple(out)


def calibrate_signs(K: KasteleynSystem, n: int = 1, count: int | None = None) -> SignCombination:
    """Sign combination reproducing the brute-force dimer count of the n-th quotient.

    Results are cached on ``K`` per parity of ``n``: pulled back to an odd cover the
    spin structures keep their roles, on an even cover they all become alike, so the
    combination found at n = 1 serves every odd n and the one at n = 2 every even n.
    """
    parity = n % 2
    if parity in K._calibration:
        return K._calibration[parity]
    values = toroidal_corner_values(K, n)
    if count is None:
        count = enum_dimers(K.lift(n).graph).count
    matches = [s for s in CANDIDATES if _safe_apply(s, values) == count]
    if not matches:
        raise SigningError(f"no sign combination reproduces {count} dimer coverings from {values}")
    K._calibration[parity] = matches[0]
    return matches[0]


def _safe_apply(s: SignCombination, values) -> int | None:
    try:
        return s.apply(values)
    except SigningError:
        return None


def _roots(n: int, sign: int, prec_dps: int):
    """The n-th roots of ``sign`` (= +-1) at the working precision."""
    with mpmath.workdps(prec_dps):
        off = 0 if sign > 0 else 1
        return [mpmath.expjpi(mpmath.mpf(2 * j + off) / n) for j in range(n)]


def _corner_product(p: LaurentPoly2, n: int, sz: int, sw: int, dps: int) -> int:
    terms = list(p.items())
    with mpmath.workdps(dps):
        us = _roots(n, sz, dps)
        vs = _roots(n, sw, dps)
        acc = mpmath.mpc(1)
        for u in us:
            upow = {a: u ** a for a in {a for (a, _), _ in terms}}
            for v in vs:
                val = mpmath.mpc(0)
                for (a, b), c in terms:
                    val += c * upow[a] * v ** b
                acc *= val
        re = mpmath.nint(acc.real)
        residual = abs(acc - re)
        if residual > 0.25:
            raise RoundingError(f"corner product residual {mpmath.nstr(residual, 5)}")
        return int(re)


def _magnitude_bound(p: LaurentPoly2, n: int, sz: int, sw: int) -> float:
    """Upper bound (natural log) on partial products of |p(u, v)| over the root grid."""
    us = np.exp(1j * np.pi * (2 * np.arange(n) + (sz < 0)) / n)
    vs = np.exp(1j * np.pi * (2 * np.arange(n) + (sw < 0)) / n)
    U, Wg = np.meshgrid(us, vs, indexing="ij")
    vals = np.zeros_like(U)
    for (a, b), c in p.items():
        vals += c * U**a * Wg**b
    mags = np.abs(vals)
    return float(np.sum(np.log(np.maximum(mags, 1.0))))


def product_corner(p: LaurentPoly2, n: int, sz: int, sw: int, extra_digits: int = 30) -> int:
    """p_n(sz, sw) = prod of p(u, v) over u^n = sz, v^n = sw, rounded to an integer.

    Precision is set from a floating bound on the product size and raised if the
    rounding check fails.
    """
    bound = _magnitude_bound(p, n, sz, sw)
    dps = int(bound / math.log(10)) + int(math.log10(n * n + 1)) + extra_digits
    for attempt in range(4):
        try:
            return _corner_product(p, n, sz, sw, dps)
        except RoundingError:
            dps *= 2
    raise RoundingError(f"p_{n}({sz},{sw}) did not round to an integer")


def toroidal_corner_values(K: KasteleynSystem, n: int) -> tuple[int, int, int, int]:
    p = char_poly(K).poly
    if n == 1:
        return corner_values(p)
    return tuple(product_corner(p, n, sz, sw) for sz, sw in CORNERS)


def partition_toroidal(K: KasteleynSystem, n: int, combination: SignCombination | None = None) -> int:
    """Z(G_n) for the quotient by ``n Lambda`` via the four corner evaluations of p_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if combination is None:
        combination = calibrate_signs(K, 2 - n % 2)
    return combination.apply(toroidal_corner_values(K, n))


# -- planar --------------------------------------------------------------------


def planar_signs(G: PlanarGraph) -> tuple[int, ...]:
    """Kasteleyn signs of a plane bipartite graph: one parity equation per bounded face.

    A face walk counts a bridge twice, in its length and in its sign tally, which is
    what the condition needs on faces that are not bounded by a simple cycle.
    """
    outer = set(G.outer_faces())
    bounded = [w for f, w in enumerate(G.faces()) if f not in outer]
    return solve_signs(bounded, G.n_edges, drop_last=False)


def partition_planar(G: PlanarGraph) -> int:
    """Number of perfect matchings of a plane bipartite graph as |det kappa|."""
    if G.colors is None:
        raise GraphValidationError("planar partition function needs a black/white coloring")
    blacks = [x for x in range(G.n_vertices) if G.colors[x] == BLACK]
    whites = [x for x in range(G.n_vertices) if G.colors[x] != BLACK]
    if len(blacks) != len(whites):
        raise GraphValidationError(f"unbalanced: {len(blacks)} black vs {len(whites)} white")
    if not blacks:
        return 1
    if any(len(c) % 2 for c in G.components()):
        return 0
    signs = planar_signs(G)
    brow = {b: i for i, b in enumerate(blacks)}
    wcol = {w: j for j, w in enumerate(whites)}
    M = [[0] * len(whites) for _ in blacks]
    for e, (u, v) in enumerate(G.edges):
        b, w = (u, v) if G.colors[u] == BLACK else (v, u)
        if G.colors[w] == BLACK:
            raise GraphValidationError("edge joins two black vertices")
        M[brow[b]][wcol[w]] += signs[e]
    return abs(bareiss_det(M))


def direct_numeric_det(K: KasteleynSystem, z: complex, w: complex) -> complex:
    return complex(np.linalg.det(K.numeric_matrix(z, w)))


def product_numeric(p: LaurentPoly2, n: int, z: complex, w: complex) -> complex:
    """prod over u^n = z, v^n = w of p(u, v), in floating point."""
    r_z, t_z = abs(z) ** (1 / n), np.angle(z)
    r_w, t_w = abs(w) ** (1 / n), np.angle(w)
    out = 1 + 0j
    for j in range(n):
        u = r_z * np.exp(1j * (t_z + 2 * np.pi * j) / n)
        for k in range(n):
            v = r_w * np.exp(1j * (t_w + 2 * np.pi * k) / n)
            out *= lp_eval(p, u, v)
    return out


__all__ = [
    "CANDIDATES", "CORNERS", "CharPoly", "KasteleynSystem", "SignCombination", "calibrate_signs",
    "char_poly", "corner_values", "direct_numeric_det", "toroidal_corner_values", "kasteleyn_signs", "partition_planar",
    "partition_toroidal", "planar_signs", "product_corner", "product_numeric", "signs_satisfy", "solve_signs",
]
