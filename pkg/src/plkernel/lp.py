"""A small exact linear-programming solver (simplex method over Fraction).

Only equality-standard form is supported: maximize c.x subject to
A x = b, x >= 0.  Bland's rule guarantees termination; everything is
exact rational arithmetic.  Problem sizes here are tiny (dozens of
variables), so no effort is spent on performance tricks.
"""

from __future__ import annotations

from fractions import Fraction

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


def _pivot(tab, basis, row, col):
    pv = tab[row][col]
    tab[row] = [x / pv for x in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[row])]
    basis[row] = col


def _run_simplex(tab, basis, ncols):
    """Bland's-rule simplex on a tableau whose last row is the objective."""
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        col = None
        for j in range(ncols):
            if obj[j] < 0:
                col = j
                break
        if col is None:
            return OPTIMAL
        row = None
        best = None
        for i in range(m):
            if tab[i][col] > 0:
                ratio = tab[i][-1] / tab[i][col]
                key = (ratio, basis[i])
                if best is None or key < best:
                    best = key
                    row = i
        if row is None:
            return UNBOUNDED
        _pivot(tab, basis, row, col)


def solve_lp(a_rows, b, c):
    """Maximize c.x subject to A x = b, x >= 0.

    Returns (status, value, x) where x is a tuple of Fractions when the
    status is OPTIMAL, else (status, None, None).
    """
    a = [[Fraction(x) for x in row] for row in a_rows]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    m, n = len(a), len(c)
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]

    # Phase 1: minimize the sum of artificial variables.
    ncols = n + m
    tab = []
    for i in range(m):
        row = a[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]]
        tab.append(row)
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= a[i][j]
        obj[-1] -= b[i]
    tab.append(obj)
    basis = [n + i for i in range(m)]
    _run_simplex(tab, basis, ncols)
    if tab[-1][-1] != 0:
        return INFEASIBLE, None, None
    # Drive remaining artificial variables out of the basis when possible.
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if tab[i][j] != 0:
                    _pivot(tab, basis, i, j)
                    break

    # Phase 2 on the original objective (drop artificial columns).
    rows = []
    keep = [i for i in range(m) if basis[i] < n or any(tab[i][j] != 0 for j in range(n))]
    for i in keep:
        rows.append(tab[i][:n] + [tab[i][-1]])
    basis2 = [basis[i] for i in keep]
    obj = [-x for x in c] + [Fraction(0)]
    tab2 = rows + [obj]
    for i, bi in enumerate(basis2):
        if bi < n and tab2[-1][bi] != 0:
            f = tab2[-1][bi]
            tab2[-1] = [x - f * y for x, y in zip(tab2[-1], tab2[i])]
    status = _run_simplex(tab2, basis2, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis2):
        if bi < n:
            x[bi] = tab2[i][-1]
    return OPTIMAL, tab2[-1][-1], tuple(x)


def feasible(a_rows, b) -> bool:
    """Is {x >= 0 : A x = b} nonempty?"""
    n = len(a_rows[0]) if a_rows else 0
    status, _, _ = solve_lp(a_rows, b, [Fraction(0)] * n)
    return status == OPTIMAL


def in_hull(point, points) -> bool:
    """Exact test: is `point` a convex combination of `points`?"""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    p = tuple(Fraction(x) for x in point)
    if not pts:
        return False
    n = len(p)
    a = [[pts[j][i] for j in range(len(pts))] for i in range(n)]
    a.append([Fraction(1)] * len(pts))
    b = list(p) + [Fraction(1)]
    return feasible(a, b)
