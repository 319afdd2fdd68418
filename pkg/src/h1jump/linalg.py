"""Exact sparse Gaussian elimination over Q.

Rows are dicts ``{column: mpq}``.  Elimination processes columns left to
right, so the reduced row echelon form and the derived nullspace basis are
canonical for a given column order.
"""

from __future__ import annotations

import heapq

from .poly import ONE, ZERO


def rref(rows, ncols: int, rhs=None):
    """Reduce ``rows`` (optionally augmented by ``rhs``) to reduced echelon form.

    Returns ``(pivot_rows, pivots, inconsistent)`` where ``pivot_rows[i]`` has a
    leading 1 in column ``pivots[i]``.  With ``rhs`` the right-hand side is
    stored under the key ``ncols``.
    """
    work = []
    for i, r in enumerate(rows):
        r = {k: v for k, v in r.items() if v}
        if rhs is not None and rhs[i]:
            r[ncols] = rhs[i]
        if r:
            work.append(r)
    pivots = []
    reduced = []
    inconsistent = False
    # process pivot columns in increasing order
    by_col: dict = {}
    for r in work:
        by_col.setdefault(min(r), []).append(r)
    heap = sorted(by_col)
    heapq.heapify(heap)
    while heap:
        col = heapq.heappop(heap)
        bucket = by_col.pop(col, [])
        if not bucket:
            continue
        if col == ncols:
            inconsistent = True
            continue
        piv = bucket[0]
        inv = ONE / piv[col]
        piv = {k: v * inv for k, v in piv.items()}
        for r in bucket[1:]:
            f = r[col]
            for k, v in piv.items():
                nv = r.get(k, ZERO) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            if r:
                c = min(r)
                if c not in by_col:
                    heapq.heappush(heap, c)
                by_col.setdefault(c, []).append(r)
        pivots.append(col)
        reduced.append(piv)
    # back substitution
    for i in range(len(reduced) - 1, -1, -1):
        pc = pivots[i]
        pr = reduced[i]
        for j in range(i):
            r = reduced[j]
            f = r.get(pc)
            if f:
                for k, v in pr.items():
                    nv = r.get(k, ZERO) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
    return reduced, pivots, inconsistent


def nullspace(rows, ncols: int) -> list:
    """Basis of the kernel, one vector per free column in increasing order."""
    reduced, pivots, _ = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = {free: ONE}
        for pr, pc in zip(reduced, pivots):
            v = pr.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def solve(rows, rhs, ncols: int):
    """A particular solution with free variables set to zero, or ``None``."""
    reduced, pivots, bad = rref(rows, ncols, rhs)
    if bad:
        return None
    sol = {}
    for pr, pc in zip(reduced, pivots):
        v = pr.get(ncols)
        if v:
            sol[pc] = v
    return sol
