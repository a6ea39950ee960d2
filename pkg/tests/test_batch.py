import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batchlp import (
    BatchConfig,
    BatchTooLarge,
    HeterogeneousBatch,
    batch_solve,
    gen_random_lps,
    lp_memory_bytes,
    plan_chunks,
)
from batchlp.simplex import SolverLimits, solve


class TestMemoryModel:
    def test_reference_shape(self):
        assert lp_memory_bytes(m=5, n=5, num_slack=5, num_artificial=0) == 768

    def test_degenerate_dimensions(self):
        assert lp_memory_bytes(m=0, n=0, num_slack=0, num_artificial=0) == 48

    def test_linear_in_data_size(self):
        full = lp_memory_bytes(7, 3, 7, 2, data_size_bytes=8)
        half = lp_memory_bytes(7, 3, 7, 2, data_size_bytes=4)
        assert full == 2 * half


class TestPlanChunks:
    def test_worked_example(self):
        plan = plan_chunks(3000, 768, BatchConfig(memory_budget_bytes=1_000_000))
        assert plan.batch_size == 1302
        assert plan.sizes == (1302, 1302, 396)
        assert plan.bounds == ((0, 1302), (1302, 2604), (2604, 3000))

    def test_empty(self):
        assert plan_chunks(0, 10, BatchConfig()).bounds == ()

    def test_single_chunk_when_batch_fits(self):
        plan = plan_chunks(5, 10, BatchConfig(memory_budget_bytes=1000))
        assert plan.bounds == ((0, 5),)

    def test_single_lp_over_budget(self):
        with pytest.raises(BatchTooLarge):
            plan_chunks(1, 2000, BatchConfig(memory_budget_bytes=1000))

    @settings(max_examples=200)
    @given(st.integers(0, 5000), st.integers(1, 4000), st.integers(1, 10_000_000))
    def test_exact_cover(self, count, lp_bytes, budget):
        if lp_bytes > budget:
            with pytest.raises(BatchTooLarge):
                plan_chunks(count, lp_bytes, BatchConfig(memory_budget_bytes=budget))
            return
        plan = plan_chunks(count, lp_bytes, BatchConfig(memory_budget_bytes=budget))
        assert plan.batch_size == budget // lp_bytes or count == 0
        covered = [i for start, end in plan.bounds for i in (start, end)]
        # contiguous, ordered, no gaps or overlaps
        assert covered == sorted(covered)
        flat = []
        for start, end in plan.bounds:
            assert end > start
            flat.extend(range(start, end))
        assert flat == list(range(count))
        if count:
            assert plan.count == math.ceil(count / plan.batch_size)


class TestConfig:
    def test_invariants(self):
        with pytest.raises(ValueError):
            BatchConfig(memory_budget_bytes=0)
        with pytest.raises(ValueError):
            BatchConfig(worker_count=0)


def outcome_key(outcome):
    point = None if outcome.primal_point is None else tuple(outcome.primal_point.tolist())
    return (outcome.status, outcome.objective_value, point,
            outcome.iterations_phase1, outcome.iterations_phase2)


class TestBatchSolve:
    def test_empty_batch(self):
        report = batch_solve([])
        assert report.outcomes == []
        assert report.plan.bounds == ()

    def test_singleton_matches_direct_solve(self):
        lp = gen_random_lps(4, 1, seed=5)[0]
        report = batch_solve([lp])
        assert outcome_key(report.outcomes[0]) == outcome_key(solve(lp))

    def test_identical_lps_identical_outcomes(self):
        lp = gen_random_lps(3, 1, seed=8)[0]
        report = batch_solve([lp] * 100)
        keys = {outcome_key(o) for o in report.outcomes}
        assert len(keys) == 1

    def test_elementwise_law(self):
        lps = gen_random_lps(5, 40, seed=11)
        report = batch_solve(lps)
        for lp, outcome in zip(lps, report.outcomes):
            assert outcome_key(outcome) == outcome_key(solve(lp))

    def test_heterogeneous_shapes_rejected(self):
        lps = [gen_random_lps(3, 1, seed=0)[0], gen_random_lps(4, 1, seed=0)[0]]
        with pytest.raises(HeterogeneousBatch):
            batch_solve(lps)

    def test_chunking_does_not_change_results(self):
        lps = gen_random_lps(4, 30, seed=2)
        whole = batch_solve(lps)
        lp_bytes = lp_memory_bytes(4, 4, 4, 0)
        tight = BatchConfig(memory_budget_bytes=lp_bytes * 7)
        chunked = batch_solve(lps, tight)
        assert chunked.plan.count == math.ceil(30 / 7)
        assert [outcome_key(o) for o in whole.outcomes] == \
            [outcome_key(o) for o in chunked.outcomes]
        assert sum(chunked.plan.sizes) == 30

    def test_worker_pool_matches_serial(self):
        lps = gen_random_lps(4, 24, seed=4, feasible_start=False)
        serial = batch_solve(lps, BatchConfig(worker_count=1))
        pooled = batch_solve(lps, BatchConfig(worker_count=3))
        assert [outcome_key(o) for o in serial.outcomes] == \
            [outcome_key(o) for o in pooled.outcomes]

    def test_report_bookkeeping(self):
        lps = gen_random_lps(3, 12, seed=6)
        report = batch_solve(lps, BatchConfig(
            memory_budget_bytes=lp_memory_bytes(3, 3, 3, 0) * 5))
        assert len(report.outcomes) == 12
        assert len(report.chunk_seconds) == report.plan.count
        assert report.total_seconds > 0
        assert report.lps_per_second > 0
        assert report.status_counts() == {"optimal": 12}

    def test_limits_flow_through(self):
        lps = gen_random_lps(6, 3, seed=9)
        report = batch_solve(lps, BatchConfig(limits=SolverLimits(max_iterations=1)))
        assert {o.status.value for o in report.outcomes} == {"iteration_limit"}

    def test_budget_accounts_for_artificials(self):
        # negated-b batches need artificial columns; the plan must use the
        # larger per-LP footprint
        lps = gen_random_lps(3, 4, seed=10, feasible_start=False)
        base = lp_memory_bytes(3, 3, 3, 0)
        wide = lp_memory_bytes(3, 3, 3, 3)
        assert wide > base
        report = batch_solve(lps, BatchConfig(memory_budget_bytes=wide))
        assert report.plan.batch_size == 1
        with pytest.raises(BatchTooLarge):
            batch_solve(lps, BatchConfig(memory_budget_bytes=base))
