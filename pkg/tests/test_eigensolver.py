import random
from fractions import Fraction as F

import pytest

from addmin.breakpoints import ProblemInstance, compute_Q_K
from addmin.eigensolver import CellLimitError, membership, solve_constrained, solve_eigen
from addmin.exactnum import LambdaSet
from addmin.paramsolve import Curve, Pencil

from .conftest import lattice_instance


def test_eigen_example(ex_eigen):
    rep = solve_eigen(ex_eigen)
    assert rep.lambda_set == LambdaSet.interval(1, 2)
    assert rep.stats.cells_enumerated == 9
    assert rep.stats.cells_nonempty == 5
    cells = [f.cell_index for f in rep.families]
    assert cells == [(1, 1), (2, 1), (3, 1), (3, 2), (3, 3)]


def test_constrained_example(ex_constrained):
    rep = solve_constrained(ex_constrained)
    assert rep.lambda_set == LambdaSet.interval(1, F(3, 2))
    assert rep.stats.cells_enumerated == 6
    sets = {f.cell_index: f.lambda_set for f in rep.families}
    assert sets == {
        (2, 1): LambdaSet.interval(F(7, 5), F(3, 2)),
        (2, 2): LambdaSet.interval(F(7, 6), F(7, 5)),
        (2, 3): LambdaSet.interval(1, F(7, 6)),
    }


def test_infeasible_constrained():
    inst = ProblemInstance.from_values([["0.1", "0.1"], ["0.5", "0.5"]], ["0.5", "0.5"])
    rep = solve_constrained(inst)
    assert not rep.feasible and rep.lambda_set.is_empty() and rep.families == ()


def test_eigen_ignores_demand(ex_constrained, ex_eigen):
    assert solve_eigen(ex_constrained).lambda_set == solve_eigen(ex_eigen).lambda_set


def test_zero_matrix():
    rep = solve_eigen(ProblemInstance.from_values([[0, 0], [0, 0]]))
    assert rep.lambda_set == LambdaSet.point(0)
    (fam,) = rep.families
    assert isinstance(fam, Pencil) and len(fam.basis) == 2


def test_all_ones():
    rep = solve_eigen(ProblemInstance.from_values([[1, 1], [1, 1]]))
    assert rep.lambda_set == LambdaSet.point(2)


def test_golden_ratio_approx():
    rep = solve_eigen(ProblemInstance.from_values([[0, 1], [1, 1]]))
    assert any(isinstance(f, Pencil) and f.approx for f in rep.families)
    assert not rep.lambda_set.exact


def test_cell_guard():
    rng = random.Random(1)
    n = 10
    A = [[F(rng.randint(1, 99), 100) for _ in range(n)] for _ in range(n)]
    inst = ProblemInstance.from_values(A)
    with pytest.raises(CellLimitError):
        solve_eigen(inst)
    with pytest.raises(CellLimitError):
        solve_eigen(ProblemInstance.from_values([["0.4", "0.6"], ["0.2", "0.5"]]), max_cells=8)


@pytest.mark.parametrize("seed", range(10))
def test_cell_count_identity(seed):
    inst = lattice_instance(seed, n=2 + seed % 2)
    rep = solve_eigen(inst)
    expected = 1
    for tj in compute_Q_K(inst).t:
        expected *= tj + 1
    assert rep.stats.cells_enumerated == expected


def test_parallel_matches_sequential(monkeypatch, ex_eigen):
    seq = solve_eigen(ex_eigen)
    monkeypatch.setenv("ADDMIN_THREADS", "2")
    par = solve_eigen(ex_eigen)
    assert par == seq


def test_membership_examples(ex_eigen):
    rep = solve_eigen(ex_eigen)
    m = membership(ex_eigen, ("1", "0.7"), report=rep)
    assert m.lam == 1 and m.family.cell_index == (3, 3)
    m = membership(ex_eigen, ("0.1", "0.1"))
    assert m.lam == 2 and isinstance(m.family, Pencil)
    assert membership(ex_eigen, ("0.5", "0.35")) is None
    assert membership(ex_eigen, (0, 0)) is None


def test_membership_with_tolerance_on_irrational_curve(ex_eigen):
    rep = solve_eigen(ex_eigen)
    lam = 1.8
    x = (0.2 / (lam - 1) ** 2, 0.2 / (lam - 1))
    m = membership(ex_eigen, x, report=rep, tol=1e-9)
    assert m is not None and isinstance(m.family, Curve)
    assert m.family.cell_index == (2, 1)


def test_membership_constrained(ex_constrained):
    m = membership(ex_constrained, ("1", "0.7"), mode="constrained")
    assert m is not None and m.lam == 1
    # (0.1, 0.1) is an eigenvector but misses the demand
    assert membership(ex_constrained, ("0.1", "0.1"), mode="constrained") is None
