from fractions import Fraction as F

import pytest

from addmin.breakpoints import ProblemInstance
from addmin.oracle import check_constrained, check_eigenpair, check_super, grid_scan


def test_spec_examples(ex_eigen):
    v = check_eigenpair(ex_eigen, (0.1, 0.1))
    assert v.holds and v.lambda_inferred == pytest.approx(2)
    assert check_eigenpair(ex_eigen, (1, 0.7), lam=1).holds
    v = check_eigenpair(ex_eigen, (1, 1), lam=1)
    assert not v.holds and v.max_residual == pytest.approx(0.3)


def test_inferred_lambda_needs_consistent_ratios(ex_eigen):
    v = check_eigenpair(ex_eigen, (1, 1))
    assert not v.holds


def test_small_coordinate_rows():
    # x_2 = 0 but row 2 is positive: not an eigenvector for any λ
    inst = ProblemInstance.from_values([["0.5", "0"], ["0.5", "0"]])
    assert not check_eigenpair(inst, (1, 0)).holds
    inst = ProblemInstance.from_values([["0.5", "0"], ["0", "0"]])
    assert check_eigenpair(inst, (1, 0)).holds


def test_errors(ex_eigen):
    with pytest.raises(ValueError):
        check_eigenpair(ex_eigen, (0, 0))
    with pytest.raises(ValueError):
        check_eigenpair(ex_eigen, (0.1, 0.1), tol=0)
    with pytest.raises(ValueError):
        check_eigenpair(ex_eigen, (1.5, 0.1))


def test_constrained_and_super(ex_constrained, ex_super_demand):
    assert check_constrained(ex_constrained, (1, 0.7)).holds
    assert not check_constrained(ex_constrained, (0.1, 0.1)).holds
    assert check_super(ex_super_demand, (0.35, 0.35), 1).holds
    assert not check_super(ex_super_demand, (0.2, 0.2), 1).holds     # misses b
    assert not check_super(ex_super_demand, (0.35, 0.35), 1.1).holds


def test_grid_zero_matrix():
    inst = ProblemInstance.from_values([[0, 0], [0, 0]])
    hits = grid_scan(inst, "0.5")
    assert [x for x, _ in hits] == [
        (0, F(1, 2)), (0, 1), (F(1, 2), 0), (F(1, 2), F(1, 2)), (F(1, 2), 1), (1, 0), (1, F(1, 2)), (1, 1)
    ]
    assert all(lam == 0 for _, lam in hits)


def test_grid_super_segment(ex_super):
    hits = grid_scan(ex_super, "0.05", mode="super", lam=1)
    assert [x for x, _ in hits] == [(F(k, 20), F(k, 20)) for k in range(1, 9)]


def test_grid_eigen_example(ex_eigen):
    hits = grid_scan(ex_eigen, "0.1")
    pts = {x for x, _ in hits}
    assert (F(1, 10), F(1, 10)) in pts and (1, F(7, 10)) in pts


def test_grid_guards(ex_eigen, ex_super):
    big = ProblemInstance.from_values([[0] * 4 for _ in range(4)])
    with pytest.raises(ValueError):
        grid_scan(big, "0.5")
    with pytest.raises(ValueError):
        grid_scan(ex_eigen, "0.3")
    with pytest.raises(ValueError):
        grid_scan(ex_super, "0.1", mode="super")
    with pytest.raises(ValueError):
        grid_scan(ex_eigen, "0.1", mode="constrained")


def test_grid_is_deterministic(ex_eigen):
    assert grid_scan(ex_eigen, "0.02") == grid_scan(ex_eigen, "0.02")
