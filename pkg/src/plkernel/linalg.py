"""Exact linear algebra over the rationals.

All routines work on lists of rows whose entries are ``fractions.Fraction``
(plain ints are accepted and upgraded).  Nothing here ever touches floating
point; results are bit-reproducible.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple[Fraction, ...]


def as_vec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def vec_sub(a, b) -> Vec:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b, strict=True))


def vec_add(a, b) -> Vec:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b, strict=True))


def vec_scale(c, a) -> Vec:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in a)


def dot(a, b) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b, strict=True)), Fraction(0))


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns (rref rows, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    _, pivots = rref([list(r) for r in rows])
    return len(pivots)


def det(rows) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        pv = m[c][c]
        result *= pv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * result


def solve(a_rows, b) -> Vec | None:
    """One solution of A x = b, or None if the system is inconsistent.

    When the solution space is positive-dimensional the free variables are
    set to zero, so the answer is deterministic.
    """
    if not a_rows:
        return ()
    ncols = len(a_rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a_rows, b, strict=True)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = red[r][-1]
    return tuple(x)


def nullspace(rows) -> list[Vec]:
    """Basis of the right nullspace of A."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref([list(r) for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def affinely_independent(points) -> bool:
    """True iff the given points span a simplex of dimension len(points)-1."""
    pts = [as_vec(p) for p in points]
    if len(pts) <= 1:
        return True
    diffs = [list(vec_sub(p, pts[0])) for p in pts[1:]]
    return rank(diffs) == len(pts) - 1


def affine_rank(points) -> int:
    """Dimension of the affine hull of the points (-1 for the empty set)."""
    pts = [as_vec(p) for p in points]
    if not pts:
        return -1
    if len(pts) == 1:
        return 0
    diffs = [list(vec_sub(p, pts[0])) for p in pts[1:]]
    return rank(diffs)


def barycentric_coordinates(point, simplex_points) -> Vec | None:
    """Coordinates of `point` w.r.t. an affinely independent point tuple.

    Returns None when the point is outside the affine hull.  The coordinates
    sum to 1 but may be negative (the point need not be inside the simplex).
    """
    pts = [as_vec(p) for p in simplex_points]
    p = as_vec(point)
    n = len(p)
    # rows: each ambient coordinate, plus the normalization row
    rows = [[pts[j][i] for j in range(len(pts))] for i in range(n)]
    rows.append([Fraction(1)] * len(pts))
    rhs = list(p) + [Fraction(1)]
    sol = solve(rows, rhs)
    if sol is None:
        return None
    # solve() is exact, but double-check reconstruction for safety
    for i in range(n):
        if sum(sol[j] * pts[j][i] for j in range(len(pts))) != p[i]:
            return None
    return sol
