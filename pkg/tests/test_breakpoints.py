from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addmin.breakpoints import (
    InfeasibleError,
    InstanceError,
    ProblemInstance,
    compute_alpha_check,
    compute_D_P,
    compute_Q_K,
    feasible_by_ones,
)


def test_q_and_k_for_eigen_example(ex_eigen):
    t = compute_Q_K(ex_eigen)
    assert t.Q == ((0, F(1, 5), F(2, 5), 1), (0, F(1, 2), F(3, 5), 1))
    assert t.K == ((1, 2, 3), (1, 2, 3))
    assert t.t == (2, 2)
    assert t.cell_count() == 9


def test_zeros_and_ones_are_not_breakpoints():
    inst = ProblemInstance.from_values([[0, 1], [1, "0.3"]])
    t = compute_Q_K(inst)
    assert t.Q == ((0, 1), (0, F(3, 10), 1))
    assert t.K == ((1,), (1, 2))


def test_constrained_tables(ex_constrained):
    assert feasible_by_ones(ex_constrained)
    assert compute_alpha_check(ex_constrained) == (F(1, 5), F(2, 5))
    t = compute_D_P(ex_constrained)
    assert t.D == ((F(1, 5), F(2, 5), 1), (F(2, 5), F(1, 2), F(3, 5), 1))
    assert t.P == ((1, 2), (1, 2, 3))
    assert t.cell_count(constrained=True) == 6
    assert t.n_star == frozenset()


def test_pinned_column():
    # row 0 needs x_1 = 1 to reach its demand
    inst = ProblemInstance.from_values([["1", "0.5"], ["0.3", "0.3"]], ["1.5", "0.1"])
    t = compute_D_P(inst)
    assert t.alpha_check[0] == 1
    assert t.n_star == frozenset({0})
    assert t.P[0] == (0,)


def test_infeasible_demand():
    inst = ProblemInstance.from_values([["0.1", "0.1"], ["0.5", "0.5"]], ["0.5", "0.5"])
    assert not feasible_by_ones(inst)
    with pytest.raises(InfeasibleError):
        compute_D_P(inst)


def test_demand_required(ex_eigen):
    with pytest.raises(ValueError, match="demand vector required"):
        compute_alpha_check(ex_eigen)


@pytest.mark.parametrize(
    "A, b, field",
    [
        ([["0.4", "1.2"], ["0", "0"]], None, "A[0][1]"),
        ([["0.4", "x"], ["0", "0"]], None, "A[0][1]"),
        ([["0.4", "0.1"], ["0"]], None, "A[1]"),
        ([], None, "A"),
        ([["0.4", "0.1"], ["0", "0"]], ["0.5"], "b"),
        ([["0.4", "0.1"], ["0", "0"]], ["0.5", "0"], "b[1]"),
        ([["0.4", "0.1"], ["0", "0"]], ["3", "1"], "b[0]"),
        ([["-0.1", "0.1"], ["0", "0"]], None, "A[0][0]"),
    ],
)
def test_validation_names_field(A, b, field):
    with pytest.raises(InstanceError) as e:
        ProblemInstance.from_values(A, b)
    assert e.value.field == field
    assert field in str(e.value)


lattice = st.integers(0, 20).map(lambda k: F(k, 20))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(lattice, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.integers(1, 20).map(lambda k: F(k, 20)), min_size=n, max_size=n),
)))
def test_alpha_check_is_a_lower_bound(data):
    A, b = data
    inst = ProblemInstance.from_values(A, b)
    if not feasible_by_ones(inst):
        return
    alpha = compute_alpha_check(inst)
    n = inst.n
    # brute force on the 1/20 grid: every solution of A⊙x ≥ b dominates α̌
    import itertools
    for x in itertools.product([F(k, 10) for k in range(11)], repeat=n):
        vals = [sum(min(a, xj) for a, xj in zip(row, x)) for row in A]
        if all(v >= bi for v, bi in zip(vals, b)):
            assert all(xj >= aj for xj, aj in zip(x, alpha))
