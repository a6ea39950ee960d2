"""Memory-budgeted chunking and parallel execution of LP batches.

A batch of same-shaped LPs is cut into contiguous chunks sized so the live
tableaux of one chunk fit the configured memory budget; chunks run back to
back, and within a chunk the LPs are distributed over a worker pool.  Chunk
boundaries and worker counts are throughput knobs only: outcomes are placed
at their input index and are bit-identical however the work is split.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Sequence

import numpy as np

from .model import SolveOutcome, StandardFormLP
from .simplex import SolverLimits, solve


# Column ceiling a one-block-per-LP GPU port would face (1024 threads per
# block covering cols = n + slack + arti + 2): roughly 511x511 LPs with a
# feasible start, 340x340 when phase 1 is needed.  Informational only; the
# CPU solver has no such limit and never enforces this.
REFERENCE_GPU_BLOCK_COLS = 1024


class BatchTooLarge(Exception):
    """A single LP's tableau exceeds the memory budget."""


class HeterogeneousBatch(Exception):
    """The LPs in a batch do not all share one (m, n) shape."""


@dataclass(frozen=True)
class BatchConfig:
    """Knobs for one batched run.

    ``memory_budget_bytes`` caps the tableau bytes live at once (it governs
    chunking only, never results); ``worker_count`` sizes the process pool;
    ``data_size_bytes`` is the width of one stored coefficient.
    """

    memory_budget_bytes: int = 1 << 30
    worker_count: int = 1
    limits: SolverLimits = field(default_factory=SolverLimits)
    data_size_bytes: int = 8

    def __post_init__(self):
        if self.memory_budget_bytes <= 0:
            raise ValueError("memory_budget_bytes must be positive")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")


@dataclass(frozen=True)
class ChunkPlan:
    """Contiguous [start, end) pieces covering the batch, in order."""

    batch_size: int
    bounds: tuple[tuple[int, int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(end - start for start, end in self.bounds)

    @property
    def count(self) -> int:
        return len(self.bounds)


@dataclass
class BatchReport:
    outcomes: list[SolveOutcome]
    plan: ChunkPlan
    chunk_seconds: list[float]
    total_seconds: float

    @property
    def lps_per_second(self) -> float:
        if self.total_seconds <= 0:
            return float("inf")
        return len(self.outcomes) / self.total_seconds

    def status_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for outcome in self.outcomes:
            key = outcome.status.value
            counts[key] = counts.get(key, 0) + 1
        return counts


def lp_memory_bytes(m: int, n: int, num_slack: int, num_artificial: int,
                    data_size_bytes: int = 8) -> int:
    """Bytes one LP occupies while being solved.

    (m+1) rows times cols = n + num_slack + num_artificial + 2 tableau cells,
    plus two cols-long scratch arrays for the argmax / min-ratio scans.
    """
    cols = n + num_slack + num_artificial + 2
    return (m + 1) * cols * data_size_bytes + 2 * cols * data_size_bytes


def plan_chunks(count: int, lp_bytes: int, config: BatchConfig) -> ChunkPlan:
    """Cut [0, count) into contiguous chunks of at most floor(S / lp_bytes) LPs.

    All chunks are full-sized except a possibly smaller final remainder.
    Raises BatchTooLarge when even a single LP exceeds the budget.
    """
    if lp_bytes > config.memory_budget_bytes:
        raise BatchTooLarge(
            f"one LP needs {lp_bytes} bytes but the budget is {config.memory_budget_bytes}")
    if count == 0:
        return ChunkPlan(batch_size=0, bounds=())
    batch_size = config.memory_budget_bytes // lp_bytes
    if count <= batch_size:
        return ChunkPlan(batch_size=batch_size, bounds=((0, count),))
    total = math.ceil(count / batch_size)
    bounds = tuple(
        (i * batch_size, min((i + 1) * batch_size, count)) for i in range(total)
    )
    return ChunkPlan(batch_size=batch_size, bounds=bounds)


def _solve_slice(lps: Sequence[StandardFormLP], limits: SolverLimits) -> list[SolveOutcome]:
    return [solve(lp, limits) for lp in lps]


def batch_solve(lps: Sequence[StandardFormLP], config: BatchConfig = BatchConfig()) -> BatchReport:
    """Solve every LP of a same-shaped batch, chunked and parallelized.

    Outcomes land at their input index; a non-optimal status is recorded in
    place, never aborting the batch.  Raises HeterogeneousBatch when shapes
    differ.
    """
    lps = list(lps)
    shapes = {(lp.m, lp.n) for lp in lps}
    if len(shapes) > 1:
        raise HeterogeneousBatch(f"batch mixes LP shapes {sorted(shapes)}")

    if lps:
        m, n = next(iter(shapes))
        worst_artificial = max(int(np.sum(np.asarray(lp.b) < 0)) for lp in lps)
        lp_bytes = lp_memory_bytes(m, n, num_slack=m, num_artificial=worst_artificial,
                                   data_size_bytes=config.data_size_bytes)
    else:
        lp_bytes = 1
    plan = plan_chunks(len(lps), lp_bytes, config)

    outcomes: list[SolveOutcome | None] = [None] * len(lps)
    chunk_seconds: list[float] = []
    started = time.perf_counter()
    pool = None
    try:
        if config.worker_count > 1 and lps:
            pool = ProcessPoolExecutor(max_workers=config.worker_count)
        for start, end in plan.bounds:
            chunk_start = time.perf_counter()
            chunk = lps[start:end]
            if pool is None:
                results = _solve_slice(chunk, config.limits)
            else:
                # One task per LP; map preserves order so placement is by index.
                task = partial(solve, limits=config.limits)
                chunksize = max(1, len(chunk) // (config.worker_count * 4))
                results = list(pool.map(task, chunk, chunksize=chunksize))
            outcomes[start:end] = results
            chunk_seconds.append(time.perf_counter() - chunk_start)
    finally:
        if pool is not None:
            pool.shutdown()
    total = time.perf_counter() - started
    return BatchReport(outcomes=outcomes, plan=plan,
                       chunk_seconds=chunk_seconds, total_seconds=total)
