#!/usr/bin/env python3
"""Cross-check the simplex solver against the vertex-enumeration oracle on
random instances, covering the feasible-start and forced-phase-1 regimes.

    python scripts/verify_random.py --trials 500 --seed 42
"""

import argparse
import sys
import time

import numpy as np

from batchlp import Status, check_certificate, vertex_enumerate
from batchlp.model import StandardFormLP
from batchlp.simplex import solve


def trial(rng: np.random.Generator, negate_b: bool) -> str:
    n = int(rng.integers(2, 7))
    m = int(rng.integers(3, 9))
    A = rng.integers(1, 101, size=(m, n)).astype(float)
    b = rng.integers(1, 101, size=m).astype(float)
    if negate_b:
        b = -b
    lp = StandardFormLP(c=rng.integers(1, 101, size=n).astype(float), A=A, b=b)
    got = solve(lp)
    want = vertex_enumerate(lp)
    if got.status is not want.status:
        return f"status {got.status.value} != oracle {want.status.value}"
    if got.status is Status.OPTIMAL:
        scale = max(1.0, abs(want.objective_value))
        if abs(got.objective_value - want.objective_value) > 1e-6 * scale:
            return f"value {got.objective_value} != oracle {want.objective_value}"
        if not check_certificate(lp, got).certified:
            return "certificate failed"
    return ""


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    started = time.perf_counter()
    failures = 0
    for k in range(args.trials):
        message = trial(rng, negate_b=k % 3 == 2)
        if message:
            failures += 1
            print(f"trial {k}: {message}")
    elapsed = time.perf_counter() - started
    print(f"{args.trials} trials, {failures} failures, {elapsed:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
