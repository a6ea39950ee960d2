"""Closed-form LP solving over hyper-rectangle feasible regions.

Maximizing a direction over an axis-aligned box decomposes coordinate-wise:
pick the lower bound where the direction is negative, the upper bound
otherwise, and sum the products.  No simplex machinery involved.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class InvalidBox(Exception):
    """Some lower bound exceeds its upper bound, or a bound is not finite."""


@dataclass(frozen=True)
class BoxLP:
    lower: np.ndarray
    upper: np.ndarray
    direction: np.ndarray

    @property
    def n(self) -> int:
        return len(self.direction)

    @classmethod
    def build(cls, lower, upper, direction) -> "BoxLP":
        return cls(np.asarray(lower, dtype=float),
                   np.asarray(upper, dtype=float),
                   np.asarray(direction, dtype=float))


@dataclass(frozen=True)
class BoxSolution:
    value: float
    point: np.ndarray


def solve_box(box: BoxLP) -> BoxSolution:
    """Maximize direction.x over the box; returns the value and a maximizer.

    Zero-direction coordinates take the upper bound, so the returned point is
    one of possibly many maximizers.
    """
    lo, hi = box.lower, box.upper
    # lo + hi is finite iff both ends are; comparisons reject NaN as well.
    if not ((lo <= hi) & np.isfinite(lo + hi)).all():
        _raise_invalid(lo, hi)
    point = np.where(box.direction < 0, lo, hi)
    return BoxSolution(value=float(box.direction @ point), point=point)


def _raise_invalid(lo: np.ndarray, hi: np.ndarray) -> None:
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        raise InvalidBox("box bounds must be finite")
    j = int(np.argmax(lo > hi))
    raise InvalidBox(f"lower[{j}] = {lo[j]} > upper[{j}] = {hi[j]}")


def _solve_or_record(box: BoxLP) -> BoxSolution | InvalidBox:
    try:
        return solve_box(box)
    except InvalidBox as err:
        return err


def solve_box_batch(boxes: Sequence[BoxLP], workers: int = 1) -> list[BoxSolution | InvalidBox]:
    """Element-wise ``solve_box`` over a batch.

    Output order always matches input order; invalid boxes land in their slot
    as the InvalidBox instance instead of aborting the batch.  ``workers`` is
    a throughput knob only and never changes the results.
    """
    if workers <= 1 or len(boxes) < 2:
        return [_solve_or_record(b) for b in boxes]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(boxes) // (workers * 4))
        return list(pool.map(_solve_or_record, boxes, chunksize=chunk))
