from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from plkernel import linalg

F = Fraction


def test_rref_identity():
    rows = [[F(2), F(0)], [F(0), F(3)]]
    red, pivots = linalg.rref(rows)
    assert red == [[F(1), F(0)], [F(0), F(1)]]
    assert pivots == [0, 1]


def test_rank_and_det():
    assert linalg.rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert linalg.det([[F(1), F(2)], [F(3), F(4)]]) == F(-2)
    assert linalg.det([[F(0)]]) == 0


def test_solve_exact():
    a = [[F(1), F(1)], [F(1), F(-1)]]
    x = linalg.solve(a, [F(3), F(1)])
    assert x == (F(2), F(1))
    assert linalg.solve([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)]) is None


def test_nullspace_dimension():
    ns = linalg.nullspace([[F(1), F(1), F(1)]])
    assert len(ns) == 2
    for v in ns:
        assert sum(v) == 0


def test_affine_independence():
    assert linalg.affinely_independent([(F(0), F(0)), (F(1), F(0)), (F(0), F(1))])
    assert not linalg.affinely_independent([(F(0), F(0)), (F(1), F(1)), (F(2), F(2))])
    assert linalg.affine_rank([(F(0), F(0)), (F(2), F(2)), (F(5), F(5))]) == 1


def test_barycentric_coordinates_roundtrip():
    tri = [(F(0), F(0)), (F(2), F(0)), (F(0), F(2))]
    lam = linalg.barycentric_coordinates((F(1), F(1, 2)), tri)
    assert lam is not None and sum(lam) == 1
    back = [sum(l * p[k] for l, p in zip(lam, tri)) for k in range(2)]
    assert tuple(back) == (F(1), F(1, 2))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_vanishes_iff_rank_deficient(m):
    rows = [[F(x) for x in row] for row in m]
    assert (linalg.det(rows) == 0) == (linalg.rank(rows) < 3)
