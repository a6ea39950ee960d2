"""Shared helpers: naive reference scans, random instances, fixture paths."""

from pathlib import Path

import numpy as np

from batchlp import StandardFormLP, Tableau, build_tableau
from batchlp.tableau import DEFAULT_TOL, SENTINEL, PivotChoice, pivot

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def naive_entering(t: Tableau, tol: float = DEFAULT_TOL):
    """Sequential scan mirroring choose_entering, via the scalar accessor."""
    basic = {int(b) for b in t.basis()}
    best = None
    best_value = tol
    for j in range(t.nv):
        if j in basic or not t.selectable[j]:
            continue
        value = t.value(t.m, j)
        if value > best_value:
            best, best_value = j, value
    return best


def naive_leaving(t: Tableau, entering_col: int, tol: float = DEFAULT_TOL):
    """Sequential min-ratio scan with the same sentinel semantics."""
    best = None
    best_ratio = SENTINEL
    for i in range(t.m):
        a = t.value(i, entering_col)
        ratio = t.value(i, t.rhs_col) / a if a > tol else SENTINEL
        if ratio < best_ratio:
            best, best_ratio = i, ratio
    return best


def random_lp(rng: np.random.Generator, n_range=(2, 7), m_range=(3, 9),
              low=1, high=101, negate_b=False) -> StandardFormLP:
    n = int(rng.integers(*n_range))
    m = int(rng.integers(*m_range))
    A = rng.integers(low, high, size=(m, n)).astype(float)
    b = rng.integers(low, high, size=m).astype(float)
    c = rng.integers(low, high, size=n).astype(float)
    if negate_b:
        b = -b
    return StandardFormLP(c=c, A=A, b=b)


def random_tableau(rng: np.random.Generator) -> Tableau:
    """Arbitrary tableau contents with frequent ties, for scan equivalence."""
    n = int(rng.integers(1, 6))
    m = int(rng.integers(1, 6))
    t = Tableau(n=n, m=m, num_slack=m, num_artificial=0)
    t.grid[:, : t.nv + 1] = rng.integers(-3, 4, size=(t.p, t.nv + 1)).astype(float)
    basis = rng.choice(t.nv, size=m, replace=False)
    for i, col in enumerate(basis):
        t.set_basis_entry(i, int(col))
    return t


def random_feasible_state(rng: np.random.Generator) -> Tableau:
    """A tableau mid-solve: built from a feasible-start LP, a few legal pivots in."""
    from batchlp.tableau import choose_entering, choose_leaving

    t = build_tableau(random_lp(rng))
    for _ in range(int(rng.integers(0, 3))):
        e = choose_entering(t)
        if e is None:
            break
        l = choose_leaving(t, e)
        if l is None:
            break
        pivot(t, PivotChoice(e, l, float(t.grid[l, e])))
    return t
