"""Exact convex-polytope primitives over the rationals.

Polytopes show up here in two guises: as vertex lists (convex position) and
as H-systems {x : E x = f, A x <= b}.  All predicates are exact; point
order is always the lexicographic order on coordinate tuples so that every
construction is deterministic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial, gcd

from . import linalg, lp
from .linalg import Vec, as_vec, dot, vec_sub


def hull_vertices(points) -> list[Vec]:
    """Extreme points of the convex hull, sorted lexicographically."""
    pts = sorted(set(as_vec(p) for p in points))
    # affinely independent point sets are entirely extreme
    if len(pts) <= 1 or linalg.affinely_independent(pts):
        return pts
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1 :]
        if not lp.in_hull(p, others):
            out.append(p)
    return out


def simplex_h_rep(points):
    """H-representation of the simplex on affinely independent `points`.

    Returns (equalities, inequalities) where equalities is a list of
    (a, c) meaning a.x = c cutting out the affine hull, and inequalities
    is a list of (a, c) meaning a.x >= c, one per facet: the i-th
    inequality is the barycentric coordinate of the i-th point.
    """
    pts = [as_vec(p) for p in points]
    if not pts:
        raise ValueError("empty simplex")
    n = len(pts[0])
    diffs = [list(vec_sub(p, pts[0])) for p in pts[1:]]
    eqs = []
    for a in linalg.nullspace(diffs) if diffs else [tuple(Fraction(1) if j == i else Fraction(0) for j in range(n)) for i in range(n)]:
        eqs.append((a, dot(a, pts[0])))
    ineqs = []
    for i in range(len(pts)):
        # affine functional (a, c): a.v_j + c = delta_ij
        rows = [list(p) + [Fraction(1)] for p in pts]
        rhs = [Fraction(1) if j == i else Fraction(0) for j in range(len(pts))]
        sol = linalg.solve(rows, rhs)
        a, c = sol[:-1], sol[-1]
        ineqs.append((a, -c))  # a.x + c >= 0  <=>  a.x >= -c
    return eqs, ineqs


def barycentric_polytope_vertices(p_points, q_points) -> list[Vec]:
    """Vertices of hull(P) ∩ hull(Q), both given as simplex vertex lists.

    Works in joint barycentric coordinates (lambda, mu) >= 0 with
    sum(lambda) = sum(mu) = 1 and V.lambda = W.mu, enumerating basic
    feasible solutions.
    """
    P = [as_vec(p) for p in p_points]
    Q = [as_vec(q) for q in q_points]
    if not P or not Q:
        return []
    n = len(P[0])
    nl, nm = len(P), len(Q)
    rows = []
    rhs = []
    for i in range(n):
        rows.append([P[j][i] for j in range(nl)] + [-Q[j][i] for j in range(nm)])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * nl + [Fraction(0)] * nm)
    rhs.append(Fraction(1))
    rows.append([Fraction(0)] * nl + [Fraction(1)] * nm)
    rhs.append(Fraction(1))
    sols = enumerate_basic_solutions(rows, rhs)
    pts = []
    for s in sols:
        lam = s[:nl]
        x = tuple(sum(lam[j] * P[j][i] for j in range(nl)) for i in range(n))
        pts.append(x)
    return hull_vertices(pts)


def _int_solve_square(aug):
    """Solve an integer square system from augmented rows via fraction-free
    Gauss-Jordan; returns Fractions or None when singular."""
    a = [list(row) for row in aug]
    r = len(a)
    prev = 1
    for k in range(r):
        piv = next((i for i in range(k, r) if a[i][k] != 0), None)
        if piv is None:
            return None
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        pv = a[k][k]
        for i in range(r):
            if i == k:
                continue
            f = a[i][k]
            a[i] = [(pv * a[i][j] - f * a[k][j]) // prev for j in range(r + 1)]
        prev = pv
    return [Fraction(a[i][r], a[i][i]) for i in range(r)]


def enumerate_basic_solutions(a_rows, b) -> list[Vec]:
    """All basic feasible solutions of {x >= 0 : A x = b}."""
    if not a_rows:
        return []
    n = len(a_rows[0])
    # clear denominators once; everything below is integer arithmetic
    int_rows = []
    for row, bv in zip(a_rows, b):
        row = [Fraction(x) for x in row]
        bv = Fraction(bv)
        den = 1
        for x in row + [bv]:
            den = den * x.denominator // gcd(den, x.denominator)
        int_rows.append(([int(x * den) for x in row], int(bv * den)))
    # a row basis of the equation system, found by greedy elimination
    r = linalg.rank([row for row, _ in int_rows])
    pivot_rows: list[int] = []
    cur_rank = 0
    for i in range(len(int_rows)):
        cand = [int_rows[j][0] for j in pivot_rows] + [int_rows[i][0]]
        if linalg.rank(cand) > cur_rank:
            pivot_rows.append(i)
            cur_rank += 1
        if cur_rank == r:
            break
    base_rows = [int_rows[i] for i in pivot_rows]
    sols = set()
    for basis in itertools.combinations(range(n), r):
        aug = [[row[j] for j in basis] + [bv] for row, bv in base_rows]
        sol = _int_solve_square(aug)
        if sol is None or any(v < 0 for v in sol):
            continue
        full = [Fraction(0)] * n
        for j, c in zip(basis, sol):
            full[j] = c
        # verify against all equations (the solve used a row basis only)
        ok = all(
            sum(row[k] * full[k] for k in range(n) if full[k]) == bv
            for row, bv in int_rows
        )
        if ok:
            sols.add(tuple(full))
    return sorted(sols)


def h_polytope_vertices(eqs, ineqs) -> list[Vec]:
    """Vertices of {x : a.x = c for (a,c) in eqs, a.x >= c for (a,c) in ineqs}.

    Brute-force tight-set enumeration; intended for small systems only.
    """
    if eqs:
        n = len(eqs[0][0])
    elif ineqs:
        n = len(ineqs[0][0])
    else:
        return []
    eq_rows = [list(a) for a, _ in eqs]
    eq_rhs = [c for _, c in eqs]
    base_rank = linalg.rank(eq_rows) if eq_rows else 0
    need = n - base_rank
    verts = set()
    for subset in itertools.combinations(range(len(ineqs)), need):
        rows = eq_rows + [list(ineqs[i][0]) for i in subset]
        rhs = eq_rhs + [ineqs[i][1] for i in subset]
        if linalg.rank(rows) != n:
            continue
        sol = linalg.solve(rows, rhs)
        if sol is None:
            continue
        if all(dot(a, sol) >= c for a, c in ineqs) and all(
            dot(a, sol) == c for a, c in eqs
        ):
            verts.add(sol)
    return sorted(verts)


def intersect_simplices(p_points, q_points) -> list[Vec]:
    """Vertex list of the intersection of two simplices (possibly empty)."""
    return barycentric_polytope_vertices(p_points, q_points)


def is_common_face_intersection(p_points, q_points, shared_points) -> bool:
    """Exact test that hull(P) ∩ hull(Q) equals hull(shared_points).

    Uses a facet-reduction loop (cheap dot products) and falls back to
    exact vertex enumeration when neither simplex can be reduced.
    """
    P = [as_vec(p) for p in p_points]
    Q = [as_vec(q) for q in q_points]
    shared = sorted(set(as_vec(s) for s in shared_points))

    while True:
        if not P or not Q:
            return not shared
        if sorted(P) == sorted(Q):
            return sorted(P) == shared
        reduced = False
        for cur, other in ((P, Q), (Q, P)):
            _, ineqs = simplex_h_rep(cur)
            for i, (a, c) in enumerate(ineqs):
                vals = [dot(a, q) for q in other]
                # facet i is {x in cur : a.x = c}; cur lies in {a.x >= c}
                if all(v <= c for v in vals):
                    if all(v < c for v in vals):
                        return not shared  # disjoint
                    facet = [p for j, p in enumerate(cur) if j != i]
                    on_wall = [q for q, v in zip(other, vals) if v == c]
                    if cur is P:
                        P, Q = facet, on_wall
                    else:
                        Q, P = facet, on_wall
                    reduced = True
                    break
            if reduced:
                break
        if reduced:
            continue
        # Deep intersection: resolve by exact vertex enumeration.
        verts = intersect_simplices(P, Q)
        return verts == shared


def chart_coordinates(points, basis_points) -> list[Vec]:
    """Coordinates of `points` in the affine chart spanned by basis_points.

    basis_points must be affinely independent; the chart sends
    basis_points[0] to the origin and basis_points[i] to e_i.  Raises if a
    point is outside the affine hull.
    """
    out = []
    for p in points:
        bc = linalg.barycentric_coordinates(p, basis_points)
        if bc is None:
            raise ValueError("point outside affine hull of chart basis")
        out.append(tuple(bc[1:]))
    return out


def affine_basis(points) -> list[Vec]:
    """Greedy lex-first affinely independent subset spanning the points."""
    pts = sorted(set(as_vec(p) for p in points))
    basis: list[Vec] = []
    for p in pts:
        if linalg.affinely_independent(basis + [p]):
            basis.append(p)
    return basis


def simplex_volume_in_chart(chart_pts) -> Fraction:
    """Volume of a full-dimensional simplex given by chart coordinates."""
    d = len(chart_pts) - 1
    if d == 0:
        return Fraction(1)
    diffs = [list(vec_sub(p, chart_pts[0])) for p in chart_pts[1:]]
    return abs(linalg.det(diffs)) / factorial(d)


def relative_volume(simplex_points, chart_basis) -> Fraction:
    """Volume of a simplex measured in the chart of `chart_basis`."""
    coords = chart_coordinates(simplex_points, chart_basis)
    if len(coords) != len(chart_basis):
        return Fraction(0)
    return simplex_volume_in_chart(coords)


def placing_triangulation(points) -> list[tuple[int, ...]]:
    """Triangulate the hull of `points` by lexicographic placing.

    `points` must be in convex position (each point a hull vertex); this is
    exactly what hull_vertices / vertex enumeration produce.  Returns the
    top-dimensional simplices as sorted index tuples into the lex-sorted
    point list (callers should pass points already sorted; we sort again
    defensively).
    """
    pts = sorted(set(as_vec(p) for p in points))
    if not pts:
        return []
    basis = affine_basis(pts)
    d = len(basis) - 1
    coords = {i: chart_coordinates([p], basis)[0] for i, p in enumerate(pts)}
    if d == 0:
        return [(0,)]

    simplices: list[tuple[int, ...]] = [(0,)]
    placed = [0]
    cur_dim = 0
    for idx in range(1, len(pts)):
        placed_pts = [pts[i] for i in placed]
        new_rank = linalg.affine_rank(placed_pts + [pts[idx]])
        if new_rank > cur_dim:
            simplices = [tuple(sorted(s + (idx,))) for s in simplices]
            cur_dim = new_rank
        else:
            # point lies in the current affine hull, strictly outside the
            # current hull (convex position); cone over visible facets
            visible = _visible_boundary_facets(simplices, placed, idx, coords, cur_dim)
            for f in visible:
                simplices.append(tuple(sorted(f + (idx,))))
        placed.append(idx)
    return sorted(simplices)


def _visible_boundary_facets(simplices, placed, new_idx, coords, dim):
    """Boundary facets of the current triangulation visible from a point."""
    count: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s in simplices:
        for f in itertools.combinations(s, dim):
            count.setdefault(tuple(sorted(f)), []).append(s)
    visible = []
    for f, owners in sorted(count.items()):
        if len(owners) != 1:
            continue
        s = owners[0]
        inner = [v for v in s if v not in f][0]
        # hyperplane through facet f (within the span of the current hull)
        fpts = [coords[i] for i in f]
        sub_rows = [list(vec_sub(p, fpts[0])) for p in fpts[1:]]
        # restrict to the affine span of the current point set
        span_pts = [coords[i] for i in placed]
        normals = _facet_normal(sub_rows, fpts[0], span_pts)
        if normals is None:
            continue
        a, c = normals
        side_inner = dot(a, coords[inner]) - c
        side_new = dot(a, coords[new_idx]) - c
        if side_inner == 0 or side_new == 0:
            continue
        if (side_inner > 0) != (side_new > 0):
            visible.append(f)
    return visible


def _facet_normal(facet_diff_rows, facet_origin, span_pts):
    """A linear functional vanishing on the facet, nonzero on the hull span."""
    span_origin = span_pts[0]
    span_dirs = [list(vec_sub(p, span_origin)) for p in span_pts[1:]]
    n = len(facet_origin)
    # want a with a.(facet directions) = 0, a in row space of span directions
    # solve within span: a = sum t_k * span_dir_k with a.(facet diffs) = 0
    span_basis = []
    for dvec in span_dirs:
        if linalg.rank(span_basis + [dvec]) > len(span_basis):
            span_basis.append(dvec)
    if not span_basis:
        return None
    rows = []
    for fd in facet_diff_rows:
        rows.append([dot(sb, fd) for sb in span_basis])
    if rows:
        null = linalg.nullspace(rows)
    else:
        null = [tuple(Fraction(1) if j == 0 else Fraction(0) for j in range(len(span_basis)))]
    for t in null:
        a = tuple(
            sum(t[k] * Fraction(span_basis[k][i]) for k in range(len(span_basis)))
            for i in range(n)
        )
        if any(x != 0 for x in a):
            return a, dot(a, facet_origin)
    return None
