"""Two-phase simplex driver: auxiliary phase, objective restoration, phase 2.

``solve`` is a pure function of the LP and its limits: identical inputs give
bit-identical outcomes, so many solves can safely run concurrently on
distinct tableaux.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SolveOutcome, StandardFormLP, Status, validate
from .tableau import (
    DEFAULT_TOL,
    PivotChoice,
    Tableau,
    build_tableau,
    choose_entering,
    choose_entering_bland,
    choose_leaving,
    pivot,
)

PHASE1_ZERO_TOL = 1e-7   # absolute test that the auxiliary optimum is zero
DEGENERATE_RATIO_TOL = 1e-9
# A basic artificial is pivoted out only on a comfortably sized element;
# rows whose selectable entries are all below this are redundant, and a
# pivot there would divide the (near-zero) phase-1 level by a tiny number.
REDUNDANT_ROW_TOL = 1e-7


@dataclass(frozen=True)
class SolverLimits:
    """Iteration budget and anti-cycling policy.

    ``max_iterations`` applies per phase and defaults to 50*(m+n).  With
    ``anti_cycling`` on, the driver switches entering selection to Bland's
    rule after ``degenerate_pivot_limit`` consecutive zero-ratio pivots
    (default m) and switches back once a pivot makes progress.
    """

    max_iterations: int | None = None
    anti_cycling: bool = True
    degenerate_pivot_limit: int | None = None

    def __post_init__(self):
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    def iterations_for(self, m: int, n: int) -> int:
        if self.max_iterations is not None:
            return self.max_iterations
        return 50 * (m + n)

    def bland_trigger(self, m: int) -> int:
        if self.degenerate_pivot_limit is not None:
            return self.degenerate_pivot_limit
        return max(m, 1)


def _run_phase(t: Tableau, limits: SolverLimits, tol: float = DEFAULT_TOL) -> tuple[str, int]:
    """Pivot until optimal/unbounded or the budget runs out.

    Returns ("optimal" | "unbounded" | "iteration_limit", pivots performed).
    """
    max_iter = limits.iterations_for(t.m, t.n)
    trigger = limits.bland_trigger(t.m)
    degenerate_run = 0
    use_bland = False
    for it in range(max_iter):
        if use_bland:
            e = choose_entering_bland(t, tol)
        else:
            e = choose_entering(t, tol)
        if e is None:
            return "optimal", it
        l = choose_leaving(t, e, tol)
        if l is None:
            return "unbounded", it
        ratio = t.rhs[l] / t.grid[l, e]
        pivot(t, PivotChoice(e, l, float(t.grid[l, e])))
        if ratio <= DEGENERATE_RATIO_TOL:
            degenerate_run += 1
            if limits.anti_cycling and degenerate_run >= trigger:
                use_bland = True
        else:
            degenerate_run = 0
            use_bland = False
    return "iteration_limit", max_iter


def build_auxiliary(t: Tableau) -> Tableau:
    """Replace the last row with the phase-1 objective maximize -sum(artificials).

    The artificial rows are added into the objective row (price-out) so the
    basic artificials start with zero reduced cost; the objective cell starts
    at minus the sum of the artificial rows' right-hand sides.
    """
    if t.num_artificial == 0:
        raise ValueError("auxiliary objective requires at least one artificial column")
    c_aux = np.zeros(t.nv)
    c_aux[t.n + t.num_slack:] = -1.0
    _price_out(t, c_aux)
    return t


def restore_objective(t: Tableau, c: np.ndarray) -> Tableau:
    """Restore the original objective after a successful phase 1.

    Artificial columns become non-selectable.  Any artificial still basic (at
    zero level) is pivoted out on the first adequate pivot in its row; a row
    with no such pivot is redundant and is left alone -- its artificial stays
    basic at zero and can never re-enter play.
    """
    t.selectable[t.n + t.num_slack:] = False
    for row in range(t.m):
        col = t.basis_entry(row)
        if not t.is_artificial(col):
            continue
        entries = np.abs(t.grid[row, : t.nv])
        entries[~t.selectable] = 0.0
        j = int(np.argmax(entries))
        if entries[j] > REDUNDANT_ROW_TOL:
            pivot(t, PivotChoice(j, row, float(t.grid[row, j])))
    c_ext = np.zeros(t.nv)
    c_ext[: t.n] = c
    _price_out(t, c_ext)
    return t


def _price_out(t: Tableau, c_ext: np.ndarray) -> None:
    """Rebuild the last row as c_ext reduced against the current basis."""
    rc = c_ext.copy()
    obj = 0.0
    for row in range(t.m):
        cb = c_ext[t.basis_entry(row)]
        if cb != 0.0:
            rc -= cb * t.grid[row, : t.nv]
            obj += cb * t.grid[row, t.rhs_col]
    t.reduced_costs[:] = rc
    t.objective_value = obj


def _extract_point(t: Tableau, n: int) -> np.ndarray:
    x = np.zeros(t.nv)
    basis = t.basis()
    if t.m:
        x[basis] = t.rhs
    return x[:n]


def solve(lp: StandardFormLP, limits: SolverLimits = SolverLimits()) -> SolveOutcome:
    """Two-phase simplex solve of a validated standard-form LP.

    Runs phase 1 only when the initial tableau needs artificial variables;
    declares Infeasible when the auxiliary optimum is nonzero.  Exceeding the
    iteration budget in either phase yields an IterationLimit outcome, never
    an exception.
    """
    violations = validate(lp)
    if violations:
        raise ValueError("invalid LP: " + "; ".join(violations))

    t = build_tableau(lp)
    iters1 = 0
    if t.num_artificial > 0:
        build_auxiliary(t)
        state, iters1 = _run_phase(t, limits)
        if state == "iteration_limit":
            return SolveOutcome(Status.ITERATION_LIMIT, iterations_phase1=iters1)
        if state == "unbounded":
            # The auxiliary objective is bounded above by zero by construction.
            raise RuntimeError("phase-1 auxiliary objective reported unbounded")
        if abs(t.objective_value) > PHASE1_ZERO_TOL:
            return SolveOutcome(Status.INFEASIBLE, iterations_phase1=iters1)
        restore_objective(t, lp.c)

    state, iters2 = _run_phase(t, limits)
    if state == "iteration_limit":
        return SolveOutcome(Status.ITERATION_LIMIT,
                            iterations_phase1=iters1, iterations_phase2=iters2)
    if state == "unbounded":
        return SolveOutcome(Status.UNBOUNDED,
                            iterations_phase1=iters1, iterations_phase2=iters2)
    point = _extract_point(t, lp.n)
    return SolveOutcome(
        Status.OPTIMAL,
        objective_value=float(lp.c @ point),
        primal_point=point,
        iterations_phase1=iters1,
        iterations_phase2=iters2,
    )
