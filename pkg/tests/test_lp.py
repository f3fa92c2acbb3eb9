from fractions import Fraction

from plkernel import lp

F = Fraction


def test_solve_lp_optimal():
    # max x0 + x1 s.t. x0 + x1 <= 4 written as equality with a slack
    status, value, x = lp.solve_lp([[F(1), F(1), F(1)]], [F(4)], [F(1), F(1), F(0)])
    assert status == "optimal"
    assert value == 4
    assert x[0] + x[1] == 4


def test_solve_lp_infeasible():
    status, value, x = lp.solve_lp([[F(1)]], [F(-1)], [F(1)])
    assert status == "infeasible"
    assert value is None and x is None


def test_feasible():
    assert lp.feasible([[F(1), F(1)]], [F(2)])
    assert not lp.feasible([[F(1), F(1)]], [F(-1)])


def test_in_hull_exact_boundary():
    tri = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]
    assert lp.in_hull((F(1, 3), F(1, 3)), tri)
    assert lp.in_hull((F(1, 2), F(1, 2)), tri)  # on the edge
    assert not lp.in_hull((F(1, 2) + F(1, 10**12), F(1, 2)), tri)
