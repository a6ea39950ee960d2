import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batchlp import BoxLP, InvalidBox, corner_enumerate, solve_box, solve_box_batch


def test_worked_example():
    sol = solve_box(BoxLP.build([0.0, 1.0], [2.0, 3.0], [1.0, -1.0]))
    assert sol.value == pytest.approx(1.0)
    assert sol.point.tolist() == [2.0, 1.0]


def test_zero_direction():
    sol = solve_box(BoxLP.build([-1.0, -2.0], [5.0, 6.0], [0.0, 0.0]))
    assert sol.value == 0.0
    assert sol.point.tolist() == [5.0, 6.0]     # zero coordinates take the upper bound


def test_invalid_box():
    with pytest.raises(InvalidBox):
        solve_box(BoxLP.build([2.0], [1.0], [1.0]))
    with pytest.raises(InvalidBox):
        solve_box(BoxLP.build([0.0], [np.inf], [1.0]))


@st.composite
def boxes(draw):
    n = draw(st.integers(1, 12))
    lower = np.array([draw(st.integers(-8, 8)) for _ in range(n)], dtype=float)
    width = np.array([draw(st.integers(0, 9)) for _ in range(n)], dtype=float)
    direction = np.array([draw(st.integers(-5, 5)) for _ in range(n)], dtype=float)
    return BoxLP(lower, lower + width, direction)


@settings(max_examples=150)
@given(boxes())
def test_matches_corner_enumeration(box):
    assert solve_box(box).value == pytest.approx(corner_enumerate(box), abs=1e-9)


@given(boxes())
def test_zero_direction_coordinates_do_not_matter(box):
    zeroed = np.where(box.direction == 0)[0]
    if zeroed.size == 0:
        return
    flipped_point = solve_box(box).point.copy()
    flipped_point[zeroed] = box.lower[zeroed]
    assert float(box.direction @ flipped_point) == pytest.approx(solve_box(box).value)


def test_empty_batch():
    assert solve_box_batch([]) == []


def test_batch_equals_individual_calls():
    rng = np.random.default_rng(1)
    batch = [BoxLP(lo, lo + rng.uniform(0, 4, 3), rng.uniform(-2, 2, 3))
             for lo in rng.uniform(-4, 4, (3, 3))]
    results = solve_box_batch(batch)
    for box, got in zip(batch, results):
        want = solve_box(box)
        assert got.value == want.value
        assert np.array_equal(got.point, want.point)


def test_batch_invariant_under_worker_count():
    rng = np.random.default_rng(2)
    batch = [BoxLP(lo, lo + rng.uniform(0, 4, 4), rng.uniform(-2, 2, 4))
             for lo in rng.uniform(-4, 4, (64, 4))]
    single = solve_box_batch(batch, workers=1)
    pooled = solve_box_batch(batch, workers=4)
    assert [s.value for s in single] == [p.value for p in pooled]
    for s, p in zip(single, pooled):
        assert np.array_equal(s.point, p.point)


def test_batch_records_invalid_elements_in_place():
    good = BoxLP.build([0.0], [1.0], [2.0])
    bad = BoxLP.build([3.0], [1.0], [2.0])
    results = solve_box_batch([good, bad, good])
    assert results[0].value == pytest.approx(2.0)
    assert isinstance(results[1], InvalidBox)
    assert results[2].value == pytest.approx(2.0)
