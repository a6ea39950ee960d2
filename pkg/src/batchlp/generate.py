"""Random dense LP workloads for benchmarks and randomized tests.

Coefficients are uniform integers stored as doubles: A and b from [1, 1000],
c from [1, 500].  Such instances are feasible at the origin; negating every b
(``feasible_start=False``) forces the two-phase path instead.
"""

from __future__ import annotations

import numpy as np

from .model import StandardFormLP


def gen_random_lps(dim: int, count: int, seed: int,
                   feasible_start: bool = True) -> list[StandardFormLP]:
    """Generate ``count`` square LPs with ``dim`` variables and constraints.

    Per LP the draw order is A, then b, then c, so a fixed seed reproduces
    the exact batch.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = np.random.default_rng(seed)
    lps = []
    for _ in range(count):
        A = rng.integers(1, 1001, size=(dim, dim)).astype(float)
        b = rng.integers(1, 1001, size=dim).astype(float)
        c = rng.integers(1, 501, size=dim).astype(float)
        if not feasible_start:
            b = -b
        lps.append(StandardFormLP(c=c, A=A, b=b))
    return lps
