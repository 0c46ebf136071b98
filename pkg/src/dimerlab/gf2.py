"""Gaussian elimination over GF(2) with rows stored as int bitmasks."""

from __future__ import annotations

from typing import Sequence


def solve_gf2(rows: Sequence[int], rhs: Sequence[int], n_vars: int) -> int | None:
    """Solve ``rows @ x = rhs`` over GF(2).

    Pivots are taken in ascending column order and free variables are set to 0, so the
    answer is deterministic. Returns the solution as a bitmask, or ``None`` if the
    system is inconsistent.
    """
    work = [(r, b & 1) for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int, int]] = []  # (column, row mask, rhs)
    for col in range(n_vars):
        bit = 1 << col
        idx = next((i for i, (r, _) in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        prow, pb = work.pop(idx)
        work = [((r ^ prow, b ^ pb) if r & bit else (r, b)) for r, b in work]
        pivots.append((col, prow, pb))
    if any(r == 0 and b for r, b in work):
        return None
    x = 0
    # back substitution; rows are already reduced below each pivot
    for col, prow, pb in reversed(pivots):
        rest = prow & ~(1 << col)
        val = pb ^ (bin(rest & x).count("1") & 1)
        if val:
            x |= 1 << col
    return x


def gf2_rank(rows: Sequence[int], n_vars: int) -> int:
    work = list(rows)
    rank = 0
    for col in range(n_vars):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        work = [r ^ prow if r & bit else r for r in work]
        rank += 1
    return rank
