from fractions import Fraction

import pytest

from supconvex.exactlp import ExactSimplexSolver, solve_lp


def test_known_optimum():
    # max 3x + 2y  s.t.  x + y = 4, x - y = 2  ->  x = 3, y = 1
    columns = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    status, value, x = solve_lp(
        columns, [Fraction(3), Fraction(2)], [Fraction(4), Fraction(2)]
    )
    assert status == "optimal"
    assert value == 11
    assert x == {0: Fraction(3), 1: Fraction(1)}


def test_nonnegativity_binds():
    # max x + y  s.t.  x + 2y = 2  over x, y >= 0  ->  x = 2, y = 0
    columns = [[Fraction(1)], [Fraction(2)]]
    status, value, x = solve_lp(columns, [Fraction(1), Fraction(1)], [Fraction(2)])
    assert status == "optimal"
    assert value == 2
    assert x == {0: Fraction(2)}


def test_infeasible():
    # x + y = -1 has no nonnegative solution
    columns = [[Fraction(1)], [Fraction(1)]]
    status, value, x = solve_lp(columns, [Fraction(1), Fraction(1)], [Fraction(-1)])
    assert status == "infeasible"
    assert value is None and x is None


def test_unbounded():
    # max 2x - y  s.t.  x - y = 0: x = y = t grows the objective forever
    columns = [[Fraction(1)], [Fraction(-1)]]
    status, value, x = solve_lp(columns, [Fraction(2), Fraction(-1)], [Fraction(0)])
    assert status == "unbounded"


def test_degenerate_terminates():
    # Zero rhs makes every vertex maximally degenerate; Bland's rule
    # must still terminate with a definite status.
    columns = [
        [Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(1)],
        [Fraction(1), Fraction(1)],
        [Fraction(1), Fraction(-1)],
    ]
    status, _value, _x = solve_lp(
        columns,
        [Fraction(1), Fraction(1), Fraction(1), Fraction(1)],
        [Fraction(0), Fraction(0)],
    )
    assert status in ("optimal", "unbounded")


def test_warm_start_matches_cold():
    columns = [
        [Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(1)],
        [Fraction(1), Fraction(1)],
        [Fraction(2), Fraction(1)],
    ]
    objective = [Fraction(1), Fraction(2), Fraction(4), Fraction(5)]
    solver = ExactSimplexSolver(columns, objective)
    cold = solver.solve([Fraction(3), Fraction(2)])
    assert cold.status == "optimal"
    # Re-solve a nearby rhs starting from the previous optimal basis.
    warm = solver.solve([Fraction(3), Fraction(3)], basis=cold.basis)
    fresh = ExactSimplexSolver(columns, objective).solve([Fraction(3), Fraction(3)])
    assert warm.status == fresh.status == "optimal"
    assert warm.value == fresh.value


def test_exact_rationals_no_drift():
    # 1/3 coefficients: answers must be exact, not floating approximations.
    columns = [[Fraction(1, 3)], [Fraction(2, 3)]]
    status, value, x = solve_lp(columns, [Fraction(1), Fraction(1)], [Fraction(1)])
    assert status == "optimal"
    assert value == 3
    assert x == {0: Fraction(3)}


def test_input_validation():
    with pytest.raises(ValueError):
        ExactSimplexSolver([], [])
    with pytest.raises(ValueError):
        ExactSimplexSolver([[Fraction(1)], [Fraction(1), Fraction(2)]], [1, 1])
    with pytest.raises(ValueError):
        ExactSimplexSolver([[Fraction(1)]], [1, 2])
    solver = ExactSimplexSolver([[Fraction(1)]], [Fraction(1)])
    with pytest.raises(ValueError):
        solver.solve([Fraction(1), Fraction(2)])
