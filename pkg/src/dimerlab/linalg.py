"""Exact integer determinants."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination (Bareiss) on a dense integer matrix."""
    a = [list(map(int, row)) for row in M]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def sparse_rational_det(rows: list[dict[int, int]], order: Sequence[int] | None = None) -> int:
    """Exact determinant of a sparse integer matrix whose result is known to be an integer.

    Rows are dicts ``column -> value``. Elimination runs over the rationals along
    ``order`` (pivot index sequence, applied symmetrically) so a bandwidth-reducing
    ordering keeps fill-in small. Pivoting stays on the diagonal, which is safe for the
    symmetric positive definite matrices this is used on.
    """
    n = len(rows)
    if order is None:
        order = range(n)
    pos = {old: new for new, old in enumerate(order)}
    work = [dict() for _ in range(n)]
    for old_i, row in enumerate(rows):
        work[pos[old_i]] = {pos[j]: Fraction(v) for j, v in row.items() if v}
    # column -> rows below the diagonal holding a nonzero there
    det = Fraction(1)
    col_rows: dict[int, set[int]] = {}
    for i, row in enumerate(work):
        for j in row:
            if j != i:
                col_rows.setdefault(j, set()).add(i)
    for k in range(n):
        piv_row = work[k]
        piv = piv_row.get(k, 0)
        if piv == 0:
            return 0
        det *= piv
        below = [i for i in col_rows.get(k, ()) if i > k]
        tail = {j: v for j, v in piv_row.items() if j > k}
        for i in below:
            ri = work[i]
            f = ri.pop(k) / piv
            for j, v in tail.items():
                nv = ri.get(j, 0) - f * v
                if nv:
                    ri[j] = nv
                    col_rows.setdefault(j, set()).add(i)
                else:
                    ri.pop(j, None)
        work[k] = {}
    if det.denominator != 1:
        raise ArithmeticError("determinant is not an integer")
    return int(det)
