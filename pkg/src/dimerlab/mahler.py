"""Mahler measures of one- and two-variable polynomials."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, PolynomialError
from .laurent import LaurentPoly2

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-6
START_POINTS = 64
MAX_POINTS = 2**20
# relative size below which a leading coefficient counts as vanished
DEGENERATE_LEAD = 1e-12


@dataclass(frozen=True)
class MahlerResult:
    value: float
    error_estimate: float
    grid_points: int
    refinements: int


def _trim(coeffs: np.ndarray) -> np.ndarray:
    """Drop vanishing leading (highest-degree) coefficients; ``coeffs`` is ascending."""
    scale = np.abs(coeffs).max()
    if scale == 0:
        raise PolynomialError("zero polynomial has no Mahler measure")
    hi = len(coeffs) - 1
    while hi > 0 and abs(coeffs[hi]) <= DEGENERATE_LEAD * scale:
        hi -= 1
    return coeffs[: hi + 1]


def polish_roots(coeffs_desc: np.ndarray, roots: np.ndarray, steps: int = 3) -> np.ndarray:
    """Newton refinement of roots of ``coeffs_desc`` (highest degree first)."""
    dcoeffs = np.polyder(coeffs_desc)
    r = roots.astype(complex)
    for _ in range(steps):
        f = np.polyval(coeffs_desc, r)
        df = np.polyval(dcoeffs, r)
        ok = np.abs(df) > 1e-300
        step = np.zeros_like(r)
        step[ok] = f[ok] / df[ok]
        # only accept steps that shrink the residual
        cand = r - step
        better = np.abs(np.polyval(coeffs_desc, cand)) < np.abs(f)
        r = np.where(better, cand, r)
    return r


def mahler_1d(coeffs: Sequence[complex], leading_index: int | None = None) -> float:
    """Mahler measure of ``sum coeffs[k] * z**k`` via Jensen's formula.

    ``leading_index`` selects the top coefficient explicitly; by default the last
    nonzero one is used. Roots come from the companion matrix and are Newton-polished.
    """
    c = np.asarray(coeffs, dtype=complex)
    if leading_index is not None:
        c = c[: leading_index + 1]
    if c.size == 0 or not np.any(c):
        raise PolynomialError("zero polynomial has no Mahler measure")
    c = _trim(c)
    nz = np.flatnonzero(c)
    c = c[nz[0]:]  # factor out powers of z, which have measure 0
    lead = c[-1]
    if len(c) == 1:
        return math.log(abs(lead))
    desc = c[::-1]
    roots = polish_roots(desc, np.roots(desc))
    return math.log(abs(lead)) + float(np.sum(np.log(np.maximum(np.abs(roots), 1.0))))


def _batch_measure(C: np.ndarray) -> np.ndarray:
    """Jensen measure for many polynomials at once.

    ``C`` has shape (m, d+1), ascending coefficients, all sharing the same degree with
    a nonvanishing leading coefficient.
    """
    m, k = C.shape
    lead = C[:, -1]
    out = np.log(np.abs(lead))
    d = k - 1
    if d == 0:
        return out
    monic = C[:, :-1] / lead[:, None]
    comp = np.zeros((m, d, d), dtype=complex)
    comp[:, 0, :] = -monic[:, ::-1]
    if d > 1:
        idx = np.arange(d - 1)
        comp[:, idx + 1, idx] = 1.0
    roots = np.linalg.eigvals(comp)
    # vectorized Newton polish on the monic polynomial
    desc = np.concatenate([np.ones((m, 1), dtype=complex), monic[:, ::-1]], axis=1)
    for _ in range(2):
        f = np.zeros_like(roots)
        df = np.zeros_like(roots)
        for j in range(d + 1):
            df = df * roots + f
            f = f * roots + desc[:, j : j + 1]
        safe = np.abs(df) > 1e-300
        step = np.where(safe, f / np.where(safe, df, 1), 0)
        cand = roots - step
        fc = np.zeros_like(roots)
        for j in range(d + 1):
            fc = fc * cand + desc[:, j : j + 1]
        roots = np.where(np.abs(fc) < np.abs(f), cand, roots)
    return out + np.sum(np.log(np.maximum(np.abs(roots), 1.0)), axis=1)


def fiber_measures(p: LaurentPoly2, thetas: np.ndarray) -> np.ndarray:
    """m(p(e^{i theta}, .)) for each theta, exact in w by Jensen's formula."""
    lo, hi = p.exponent_range(1)
    zs = np.exp(1j * thetas)
    C = np.zeros((len(thetas), hi - lo + 1), dtype=complex)
    for (a, b), c in p.items():
        C[:, b - lo] += c * zs**a
    out = np.empty(len(thetas))
    scale = np.abs(C).max(axis=1)
    lead_ok = np.abs(C[:, -1]) > DEGENERATE_LEAD * np.maximum(scale, 1e-300)
    if np.any(lead_ok):
        out[lead_ok] = _batch_measure(C[lead_ok])
    for i in np.flatnonzero(~lead_ok):
        out[i] = mahler_1d(C[i])
    return out


def _pairwise_sum(x: np.ndarray) -> float:
    # numpy's sum is pairwise for contiguous float arrays
    return float(np.add.reduce(np.ascontiguousarray(x, dtype=float)))


def trapezoid_mean(p: LaurentPoly2, n_points: int) -> float:
    """Periodic midpoint rule for the outer integral, offset by half a step."""
    thetas = (np.arange(n_points) + 0.5) * (2 * np.pi / n_points)
    return _pairwise_sum(fiber_measures(p, thetas)) / n_points


def mahler_2d(
    p: LaurentPoly2,
    tol: float = DEFAULT_TOL,
    start: int = START_POINTS,
    max_points: int = MAX_POINTS,
) -> MahlerResult:
    """Two-variable Mahler measure ``m(p)``.

    The inner integral over w is done exactly with Jensen's formula; the outer one over
    z uses a periodic trapezoid grid doubled until successive values agree within ``tol``.
    """
    if p.is_zero():
        raise PolynomialError("zero polynomial has no Mahler measure")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.exponent_range(1)[0] == p.exponent_range(1)[1]:
        # no w dependence: let Jensen's formula handle z exactly instead
        p = p.swap()
    amin, amax = p.exponent_range(0)
    if amin == amax:
        # no z dependence: a single fiber is exact
        value = float(fiber_measures(p, np.array([0.0]))[0])
        return MahlerResult(value, 0.0, 1, 0)
    n = start
    prev = trapezoid_mean(p, n)
    refinements = 0
    while n < max_points:
        n *= 2
        refinements += 1
        cur = trapezoid_mean(p, n)
        diff = abs(cur - prev)
        log.debug("mahler_2d n=%d value=%.12f diff=%.3g", n, cur, diff)
        if diff < tol:
            return MahlerResult(cur, diff, n, refinements)
        prev = cur
    raise ConvergenceError(
        f"Mahler measure not converged to {tol} with {n} points", best=MahlerResult(prev, diff, n, refinements)
    )


def det_density(p: LaurentPoly2, c_L: int, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """(m(p)/c_L, 2 pi m(p)/c_L): the determinant density and its 2-pi scaling."""
    if c_L < 1:
        raise ValueError("crossing number must be >= 1")
    m = mahler_2d(p, tol).value
    return m / c_L, 2 * math.pi * m / c_L
