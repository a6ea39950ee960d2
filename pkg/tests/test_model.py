import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batchlp import (
    GeneralLP,
    InfeasibleBounds,
    StandardFormLP,
    Status,
    standard_form,
    standardize,
    validate,
    vertex_enumerate_general,
)
from batchlp.simplex import solve


def test_min_sense_negates_objective():
    glp = GeneralLP.build("min", [-1.0], [[1.0]], ["<="], [3.0])
    lp, vmap = standardize(glp)
    assert lp.c.tolist() == [1.0]
    assert lp.A.tolist() == [[1.0]]
    assert lp.b.tolist() == [3.0]
    out = solve(lp)
    assert out.objective_value == pytest.approx(3.0)
    assert vmap.recover_objective(out.objective_value) == pytest.approx(-3.0)


def test_equality_split_into_two_rows():
    glp = GeneralLP.build("max", [1.0, 0.0], [[1.0, 1.0]], ["="], [2.0])
    lp, _ = standardize(glp)
    assert lp.A.tolist() == [[1.0, 1.0], [-1.0, -1.0]]
    assert lp.b.tolist() == [2.0, -2.0]


def test_bound_shift_and_recovery():
    glp = GeneralLP.build("max", [1.0], np.zeros((0, 1)), [], [],
                          lower=[1.0], upper=[5.0])
    lp, vmap = standardize(glp)
    # shifted variable lives in [0, 4], expressed as one extra row
    assert lp.A.tolist() == [[1.0]]
    assert lp.b.tolist() == [4.0]
    out = solve(lp)
    assert out.objective_value == pytest.approx(4.0)
    mapped = vmap.recover_outcome(out)
    assert mapped.objective_value == pytest.approx(5.0)
    assert mapped.primal_point.tolist() == pytest.approx([5.0])
    assert vertex_enumerate_general(glp).objective_value == pytest.approx(5.0)


def test_constraint_free_problems():
    zero = GeneralLP.build("max", [0.0], np.zeros((0, 1)), [], [])
    lp, _ = standardize(zero)
    assert lp.m == 0
    assert solve(lp).status is Status.OPTIMAL
    growing = GeneralLP.build("max", [1.0], np.zeros((0, 1)), [], [])
    lp, _ = standardize(growing)
    assert solve(lp).status is Status.UNBOUNDED


def test_free_variable_split_grows_columns():
    glp = GeneralLP.build("max", [1.0, 2.0], [[1.0, 1.0]], ["<="], [4.0],
                          lower=[-np.inf, 0.0])
    lp, vmap = standardize(glp)
    assert lp.n == 3
    assert vmap.minus_col[0] == 1
    assert vmap.minus_col[1] == -1
    point = vmap.recover_point(np.array([0.0, 2.5, 1.0]))
    assert point.tolist() == pytest.approx([-2.5, 1.0])


def test_upper_bound_on_free_variable():
    glp = GeneralLP.build("max", [1.0], np.zeros((0, 1)), [], [],
                          lower=[-np.inf], upper=[7.0])
    lp, vmap = standardize(glp)
    out = solve(lp)
    mapped = vmap.recover_outcome(out)
    assert mapped.objective_value == pytest.approx(7.0)


def test_inconsistent_bounds_raise():
    glp = GeneralLP.build("max", [1.0], np.zeros((0, 1)), [], [],
                          lower=[2.0], upper=[1.0])
    with pytest.raises(InfeasibleBounds):
        standardize(glp)


def test_empty_objective_allowed():
    glp = GeneralLP.build("min", [0.0], [[1.0]], ["<="], [1.0])
    lp, _ = standardize(glp)
    assert solve(lp).status is Status.OPTIMAL


def test_validate_ok():
    lp = standard_form([1.0, 2.0], [[1, 0], [0, 1], [1, 1]], [1, 2, 3])
    assert validate(lp) == []


def test_validate_ragged_row():
    lp = StandardFormLP(c=np.array([1.0, 2.0]), A=[[1.0], [1.0, 2.0]],
                        b=np.array([1.0, 2.0]))
    assert "row 0 has 1 coefficients, expected 2" in validate(lp)


def test_validate_nan_in_b():
    lp = standard_form([1.0], [[1.0]], [np.nan])
    assert any("b[0]" in v for v in validate(lp))


def test_validate_reports_row_count_mismatch():
    lp = StandardFormLP(c=np.array([1.0]), A=np.ones((2, 1)), b=np.array([1.0]))
    assert any("A has 2 rows" in v for v in validate(lp))


@st.composite
def general_lps(draw):
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 3))
    coeff = st.integers(-6, 6)
    rows = np.array([[draw(coeff) for _ in range(n)] for _ in range(k)], dtype=float)
    rhs = np.array([draw(st.integers(-8, 8)) for _ in range(k)], dtype=float)
    rels = [draw(st.sampled_from(["<=", ">=", "="])) for _ in range(k)]
    c = np.array([draw(coeff) for _ in range(n)], dtype=float)
    lower = np.zeros(n)
    upper = np.full(n, np.inf)
    for j in range(n):
        kind = draw(st.integers(0, 3))
        if kind == 1:
            lower[j] = draw(st.integers(-4, 2))
            upper[j] = lower[j] + draw(st.integers(0, 6))
        elif kind == 2:
            lower[j] = -np.inf
            upper[j] = draw(st.integers(-2, 6))
        elif kind == 3:
            lower[j] = draw(st.integers(-4, 0))
    sense = draw(st.sampled_from(["min", "max"]))
    return GeneralLP.build(sense, c, rows, rels, rhs, lower, upper)


@settings(max_examples=120)
@given(general_lps())
def test_standardize_round_trip_matches_general_oracle(glp):
    reference = vertex_enumerate_general(glp)
    lp, vmap = standardize(glp)
    mapped = vmap.recover_outcome(solve(lp))
    # Feasibility status is preserved exactly; optima agree to 1e-6 relative.
    assert mapped.status is reference.status
    if mapped.status is Status.OPTIMAL:
        scale = max(1.0, abs(reference.objective_value))
        assert abs(mapped.objective_value - reference.objective_value) <= 1e-6 * scale
