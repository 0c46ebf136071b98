"""Exact two-variable Laurent polynomials with integer coefficients.

A polynomial is a finite map ``(a, b) -> c`` standing for ``sum c * z**a * w**b``.
Coefficients are Python ints, so determinants of Kasteleyn matrices stay exact.
"""

from __future__ import annotations

import re
from functools import reduce
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import PolynomialError, RoundingError

Exponent = tuple[int, int]

# Above this size the default determinant switches to evaluation/interpolation.
EXPANSION_MAX_DIM = 8
INTERPOLATION_RESIDUAL = 1e-6


class LaurentPoly2:
    """Immutable Laurent polynomial in ``z`` and ``w``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean = {}
        for (a, b), c in (terms or {}).items():
            c = int(c)
            if c:
                clean[(int(a), int(b))] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: int) -> "LaurentPoly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> "LaurentPoly2":
        return cls({(a, b): c})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly2":
        return parse_poly(text)

    # -- basic protocol -----------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly2({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        out: dict[Exponent, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise PolynomialError("negative powers are only defined for monomials")
            ((a, b), c), = self._terms.items()
            if abs(c) != 1:
                raise PolynomialError("negative powers need a unit coefficient")
            return LaurentPoly2({(a * n, b * n): c ** (-n)})
        result = LaurentPoly2.constant(1)
        for _ in range(n):
            result = result * self
        return result

    # -- evaluation and shape -----------------------------------------------
    def __call__(self, z, w):
        return lp_eval(self, z, w)

    def exponent_range(self, var: int) -> tuple[int, int]:
        """(min, max) exponent of variable ``var`` (0 for z, 1 for w)."""
        if not self._terms:
            raise PolynomialError("zero polynomial has no exponents")
        exps = [k[var] for k in self._terms]
        return min(exps), max(exps)

    def shift(self, da: int, db: int) -> "LaurentPoly2":
        return LaurentPoly2({(a + da, b + db): c for (a, b), c in self._terms.items()})

    def substitute_signs(self, sz: int, sw: int) -> "LaurentPoly2":
        """p(sz*z, sw*w) for sz, sw in {+1, -1}."""
        return LaurentPoly2(
            {(a, b): c * sz**(a % 2) * sw**(b % 2) for (a, b), c in self._terms.items()}
        )

    def swap(self) -> "LaurentPoly2":
        return LaurentPoly2({(b, a): c for (a, b), c in self._terms.items()})

    def invert_z(self) -> "LaurentPoly2":
        return LaurentPoly2({(-a, b): c for (a, b), c in self._terms.items()})

    def coefficients_in_w(self, z: complex) -> tuple[int, np.ndarray]:
        """Coefficients of ``p(z, .)`` in ascending w powers, and the lowest w power."""
        lo, hi = self.exponent_range(1)
        out = np.zeros(hi - lo + 1, dtype=complex)
        for (a, b), c in self._terms.items():
            out[b - lo] += c * z**a
        return lo, out

    def normalize(self) -> "LaurentPoly2":
        return lp_normalize(self)


PolyLike = Union[LaurentPoly2, int]


def _coerce(x) -> LaurentPoly2 | None:
    if isinstance(x, LaurentPoly2):
        return x
    if isinstance(x, int):
        return LaurentPoly2.constant(x)
    return None


ZERO = LaurentPoly2()
ONE = LaurentPoly2.constant(1)
Z = LaurentPoly2.monomial(1, 0)
W = LaurentPoly2.monomial(0, 1)


def lp_arith(op: str, p: LaurentPoly2, q: PolyLike | None = None) -> LaurentPoly2:
    """Dispatch ``add``, ``mul``, ``neg`` or ``scale`` on Laurent polynomials."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    if op == "scale":
        if not isinstance(q, int):
            raise PolynomialError("scale expects an integer factor")
        return p * q
    raise PolynomialError(f"unknown operation {op!r}")


def lp_eval(p: LaurentPoly2, z: complex, w: complex) -> complex:
    if z == 0 or w == 0:
        raise PolynomialError("Laurent polynomials are undefined at z=0 or w=0")
    total = 0j
    for (a, b), c in p.items():
        total += c * (z**a) * (w**b)
    return total


def lp_normalize(p: LaurentPoly2) -> LaurentPoly2:
    """Representative of ``p`` modulo units ``+-z^a w^b``.

    Minimum exponents become 0 and the lexicographically first coefficient is positive.
    """
    if p.is_zero():
        raise PolynomialError("cannot normalize the zero polynomial")
    amin, _ = p.exponent_range(0)
    bmin, _ = p.exponent_range(1)
    q = p.shift(-amin, -bmin)
    first = next(iter(q.items()))[1]
    return -q if first < 0 else q


# -- determinants -----------------------------------------------------------


def _as_matrix(M: Sequence[Sequence[PolyLike]]) -> list[list[LaurentPoly2]]:
    rows = []
    for row in M:
        out = []
        for x in row:
            e = _coerce(x)
            if e is None:
                raise PolynomialError(f"matrix entry {x!r} is not a Laurent polynomial")
            out.append(e)
        rows.append(out)
    k = len(rows)
    if k == 0 or any(len(r) != k for r in rows):
        raise PolynomialError("determinant needs a non-empty square matrix")
    return rows


def det_expansion(M: Sequence[Sequence[PolyLike]]) -> LaurentPoly2:
    """Exact determinant by Laplace expansion along rows, memoized on column subsets."""
    rows = _as_matrix(M)
    k = len(rows)
    memo: dict[int, LaurentPoly2] = {0: ONE}

    def minor(mask: int) -> LaurentPoly2:
        # rows k-|mask| .. k-1 against the columns in mask
        if mask in memo:
            return memo[mask]
        r = k - bin(mask).count("1")
        total = ZERO
        sign = 1
        for j in range(k):
            if not mask >> j & 1:
                continue
            entry = rows[r][j]
            if entry:
                sub = minor(mask & ~(1 << j))
                if sub:
                    total = total + entry * sub * sign
            sign = -sign
        memo[mask] = total
        return total

    return minor((1 << k) - 1)


def det_interpolation(M: Sequence[Sequence[PolyLike]]) -> LaurentPoly2:
    """Determinant by evaluation on a grid of roots of unity and inverse 2-D DFT."""
    rows = _as_matrix(M)
    k = len(rows)
    lo = [0, 0]
    hi = [0, 0]
    for row in rows:
        nonzero = [e for e in row if e]
        if not nonzero:
            return ZERO
        for var in (0, 1):
            lo[var] += min(e.exponent_range(var)[0] for e in nonzero)
            hi[var] += max(e.exponent_range(var)[1] for e in nonzero)
    nz, nw = hi[0] - lo[0] + 1, hi[1] - lo[1] + 1
    zs = np.exp(2j * np.pi * np.arange(nz) / nz)
    ws = np.exp(2j * np.pi * np.arange(nw) / nw)
    Zg, Wg = np.meshgrid(zs, ws, indexing="ij")
    A = np.zeros((nz, nw, k, k), dtype=complex)
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            for (a, b), c in e.items():
                A[:, :, i, j] += c * Zg**a * Wg**b
    vals = np.linalg.det(A) * Zg ** (-lo[0]) * Wg ** (-lo[1])
    coeffs = np.fft.fft2(vals) / (nz * nw)
    rounded = np.rint(coeffs.real)
    residual = float(np.abs(coeffs - rounded).max())
    scale = max(1.0, float(np.abs(rounded).max()))
    if residual > INTERPOLATION_RESIDUAL * scale:
        raise RoundingError(f"interpolated determinant residual {residual:.3g} too large")
    terms = {}
    for i in range(nz):
        for j in range(nw):
            c = int(rounded[i, j])
            if c:
                terms[(i + lo[0], j + lo[1])] = c
    return LaurentPoly2(terms)


def lp_det(M: Sequence[Sequence[PolyLike]], method: str = "auto") -> LaurentPoly2:
    """Exact determinant of a square matrix of Laurent polynomials.

    ``method`` is ``"expansion"``, ``"interpolation"`` or ``"auto"`` (expansion up to
    dimension 8, interpolation above).
    """
    if method == "auto":
        method = "expansion" if len(M) <= EXPANSION_MAX_DIM else "interpolation"
    if method == "expansion":
        return det_expansion(M)
    if method == "interpolation":
        return det_interpolation(M)
    raise PolynomialError(f"unknown determinant method {method!r}")


def evaluate_matrix(M: Sequence[Sequence[LaurentPoly2]], z: complex, w: complex) -> np.ndarray:
    return np.array([[lp_eval(e, z, w) for e in row] for row in M], dtype=complex)


# -- text grammar -----------------------------------------------------------

_TERM = re.compile(r"([+-])(\d*)\*?((?:[zw](?:\^-?\d+)?\*?)*)")
_FACTOR = re.compile(r"([zw])(?:\^(-?\d+))?")


def parse_poly(text: str) -> LaurentPoly2:
    """Parse e.g. ``"6 - z - z^-1 - w - w^-1 - z*w^-1 - z^-1*w"``.

    A whole expression may also be wrapped as ``-(...)``.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolynomialError("empty polynomial text")
    outer = 1
    m = re.fullmatch(r"([+-]?)\((.*)\)", s)
    if m:
        outer = -1 if m.group(1) == "-" else 1
        s = m.group(2)
    if s[0] not in "+-":
        s = "+" + s
    pos = 0
    terms: dict[Exponent, int] = {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise PolynomialError(f"cannot parse polynomial near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        a = b = 0
        for var, exp in _FACTOR.findall(m.group(3)):
            e = int(exp) if exp else 1
            if var == "z":
                a += e
            else:
                b += e
        terms[(a, b)] = terms.get((a, b), 0) + outer * sign * coeff
        pos = m.end()
    return LaurentPoly2(terms)


def _monomial_text(a: int, b: int) -> str:
    parts = []
    for var, e in (("z", a), ("w", b)):
        if e == 1:
            parts.append(var)
        elif e:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


def format_poly(p: LaurentPoly2) -> str:
    """Render in the text grammar, terms in lexicographic exponent order."""
    if p.is_zero():
        return "0"
    out = []
    for (a, b), c in p.items():
        mono = _monomial_text(a, b)
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def poly_to_json(p: LaurentPoly2) -> list[list[int]]:
    return [[a, b, c] for (a, b), c in p.items()]


def poly_from_json(items: Iterable[Sequence[int]]) -> LaurentPoly2:
    return LaurentPoly2({(int(a), int(b)): int(c) for a, b, c in items})


def product(polys: Iterable[LaurentPoly2]) -> LaurentPoly2:
    return reduce(lambda x, y: x * y, polys, ONE)
