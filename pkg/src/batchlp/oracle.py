"""Independent brute-force reference solvers, used by tests and `verify`.

Everything here stays deliberately independent of the tableau machinery:
vertices come from enumerating active-constraint subsets and solving the
resulting linear systems, unboundedness from enumerating extreme rays of the
recession cone, and certificates from a from-scratch basis reconstruction.
Budgets are small by design; exceeding one raises OracleBudget.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .boxlp import BoxLP
from .model import GeneralLP, Relation, Sense, SolveOutcome, StandardFormLP, Status

ORACLE_TOL = 1e-7       # looser than the solver's 1e-9, absorbs elimination round-off
_RAY_TOL = 1e-9
_FEASIBILITY_BOX = 1e9  # bounding box for the secondary feasibility LP


class OracleBudget(Exception):
    """Problem size exceeds the oracle's combinatorial budget."""


@dataclass(frozen=True)
class Certificate:
    """From-scratch optimality evidence for a claimed Optimal outcome."""

    max_reduced_cost: float
    max_violation: float
    max_negativity: float
    tolerance: float = ORACLE_TOL

    @property
    def certified(self) -> bool:
        return (self.max_reduced_cost <= self.tolerance
                and self.max_violation <= self.tolerance
                and self.max_negativity <= self.tolerance)


def _combinations(total: int, size: int) -> np.ndarray:
    combos = list(itertools.combinations(range(total), size))
    return np.asarray(combos, dtype=np.intp).reshape(len(combos), size)


def _candidate_vertices(normals: np.ndarray, offsets: np.ndarray, n: int) -> np.ndarray:
    """Solve every n-subset of hyperplanes; keep residual-verified solutions."""
    combos = _combinations(len(normals), n)
    if combos.shape[0] == 0:
        return np.zeros((0, n))
    mats = normals[combos]                    # (k, n, n)
    rhs = offsets[combos]                     # (k, n)
    dets = np.linalg.det(mats)
    solvable = np.abs(dets) > 0.0
    if not solvable.any():
        return np.zeros((0, n))
    sols = np.linalg.solve(mats[solvable], rhs[solvable][..., None])[..., 0]
    residual = np.abs(np.einsum("kij,kj->ki", mats[solvable], sols) - rhs[solvable])
    scale = (1.0
             + np.abs(rhs[solvable]).max(axis=1, initial=0.0)
             + np.abs(mats[solvable]).max(axis=(1, 2), initial=0.0)
             * np.abs(sols).max(axis=1, initial=0.0))
    ok = residual.max(axis=1, initial=0.0) <= ORACLE_TOL * scale
    return sols[ok]


def _has_improving_ray(cone_normals: np.ndarray, c: np.ndarray, tol: float = _RAY_TOL) -> bool:
    """True when the pointed cone {d : N d <= 0} contains a ray with c.d > 0.

    Extreme rays are null directions of (n-1)-subsets of the cone normals
    with rank exactly n-1; the cone has an improving direction iff one of
    its extreme rays improves.
    """
    n = c.shape[0]
    row_scale = 1.0 + np.abs(cone_normals).max(axis=1, initial=0.0)
    improve_floor = tol * max(1.0, float(np.linalg.norm(c)))

    if n == 1:
        dirs = np.asarray([[1.0], [-1.0]])
    else:
        combos = _combinations(len(cone_normals), n - 1)
        if combos.shape[0] == 0:
            return False
        subs = cone_normals[combos]                       # (k, n-1, n)
        _, s, vh = np.linalg.svd(subs)
        smax = s.max(axis=1, initial=0.0)
        rank = (s > smax[:, None] * n * np.finfo(float).eps).sum(axis=1)
        dirs = vh[rank == n - 1, -1, :]                   # unit null directions
        if dirs.shape[0] == 0:
            return False
        dirs = np.vstack([dirs, -dirs])

    inside = np.all(dirs @ cone_normals.T <= tol * row_scale[None, :], axis=1)
    gains = dirs @ c
    return bool(np.any(inside & (gains > improve_floor)))


def _box_feasible(A: np.ndarray, b: np.ndarray, n: int) -> bool:
    res = linprog(c=np.zeros(n), A_ub=A, b_ub=b,
                  bounds=[(0, _FEASIBILITY_BOX)] * n, method="highs")
    return res.status != 2


def vertex_enumerate(lp: StandardFormLP, tol: float = ORACLE_TOL) -> SolveOutcome:
    """Reference solve by enumerating all candidate vertices.

    Hyperplanes are the m constraint rows plus the n nonnegativity planes;
    every n-subset is solved by elimination with partial pivoting and the
    feasible solutions are ranked by objective.  Unboundedness is detected by
    an extreme-ray test on the recession cone; infeasibility requires both an
    empty vertex list and a failed bounding-box feasibility LP.
    """
    n, m = lp.n, lp.m
    if n > 8 or m + n > 24:
        raise OracleBudget(f"n={n}, m={m} outside the n<=8, m+n<=24 budget")
    A = np.asarray(lp.A, dtype=float).reshape(m, n)
    b = np.asarray(lp.b, dtype=float)
    c = np.asarray(lp.c, dtype=float)

    normals = np.vstack([A, np.eye(n)])
    offsets = np.concatenate([b, np.zeros(n)])
    points = _candidate_vertices(normals, offsets, n)

    if points.shape[0]:
        slack = b[None, :] - points @ A.T if m else np.zeros((len(points), 0))
        row_tol = tol * np.maximum(1.0, np.abs(b)) if m else np.zeros(0)
        feasible = np.all(slack >= -row_tol[None, :], axis=1) & np.all(points >= -tol, axis=1)
        points = points[feasible]

    if points.shape[0] == 0:
        if _box_feasible(A, b, n):
            raise RuntimeError("no feasible vertex found for a nonempty polyhedron")
        return SolveOutcome(Status.INFEASIBLE)

    cone = np.vstack([A, -np.eye(n)])
    if _has_improving_ray(cone, c):
        return SolveOutcome(Status.UNBOUNDED)
    values = points @ c
    best = int(np.argmax(values))
    point = np.clip(points[best], 0.0, None)
    return SolveOutcome(Status.OPTIMAL, objective_value=float(values[best]),
                        primal_point=point)


def corner_enumerate(box: BoxLP, max_dim: int = 20) -> float:
    """Max of direction.x over all 2^n corners of the box."""
    n = box.n
    if n > max_dim:
        raise OracleBudget(f"n={n} exceeds the corner-enumeration budget {max_dim}")
    if n == 0:
        return 0.0
    best = -np.inf
    bits = np.arange(n)
    for start in range(0, 2 ** n, 65536):
        idx = np.arange(start, min(start + 65536, 2 ** n))
        take_upper = (idx[:, None] >> bits[None, :]) & 1
        corners = np.where(take_upper.astype(bool), box.upper[None, :], box.lower[None, :])
        best = max(best, float(np.max(corners @ box.direction)))
    return best


def check_certificate(lp: StandardFormLP, outcome: SolveOutcome,
                      tol: float = ORACLE_TOL) -> Certificate:
    """Recompute feasibility and reduced costs from scratch for an Optimal claim.

    A basis is reconstructed from the primal point (strictly positive
    structural variables and slacks are basic, completed greedily with
    zero-level columns), dual prices come from solving B^T y = c_B, and the
    reported reduced cost is the maximum over all structural and slack
    columns.  Degenerate optima admit dual-infeasible bases, so a positive
    reduced cost on a primal-feasible point triggers a second attempt that
    searches for complementary-slackness prices directly; only when that
    search is infeasible does the basis-route number stand.  Nothing is read
    from the solver's tableau.
    """
    if not outcome.is_optimal():
        raise ValueError("certificate checks apply to Optimal outcomes only")
    n, m = lp.n, lp.m
    A = np.asarray(lp.A, dtype=float).reshape(m, n)
    b = np.asarray(lp.b, dtype=float)
    c = np.asarray(lp.c, dtype=float)
    x = np.asarray(outcome.primal_point, dtype=float)

    residual = A @ x - b if m else np.zeros(0)
    max_violation = max(0.0, float(np.max(residual, initial=0.0)))
    max_negativity = max(0.0, float(np.max(-x, initial=0.0)))

    if m == 0:
        return Certificate(max_reduced_cost=float(np.max(c, initial=0.0)),
                           max_violation=max_violation,
                           max_negativity=max_negativity,
                           tolerance=tol)

    columns = np.hstack([A, np.eye(m)])          # (m, n+m)
    c_ext = np.concatenate([c, np.zeros(m)])
    level = np.concatenate([x, b - A @ x])
    positive = [j for j in range(n + m) if level[j] > tol]

    basic: list[int] = []
    rank = 0
    for j in itertools.chain(positive, (j for j in range(n + m) if j not in positive)):
        if rank == m:
            break
        trial = columns[:, basic + [j]]
        if np.linalg.matrix_rank(trial) > rank:
            basic.append(j)
            rank += 1
    B = columns[:, basic]
    y = np.linalg.solve(B.T, c_ext[basic])
    max_reduced = float(np.max(c_ext - columns.T @ y))

    if max_reduced > tol and max_violation <= tol and max_negativity <= tol:
        y = _complementary_prices(A, c, level, tol)
        if y is not None:
            max_reduced = float(np.max(c_ext - columns.T @ y))
    return Certificate(max_reduced_cost=max_reduced,
                       max_violation=max_violation,
                       max_negativity=max_negativity,
                       tolerance=tol)


def _complementary_prices(A: np.ndarray, c: np.ndarray, level: np.ndarray,
                          tol: float) -> np.ndarray | None:
    """Prices y >= 0 with A^T y >= c, tight on the point's support, zero on
    its slack rows; None when no such prices exist (the point is not optimal)."""
    m, n = A.shape
    support = level[:n] > tol
    a_eq = A.T[support] if support.any() else None
    b_eq = c[support] if support.any() else None
    loose = ~support
    a_ub = -A.T[loose] if loose.any() else None
    b_ub = -c[loose] if loose.any() else None
    bounds = [(0.0, 0.0) if level[n + i] > tol else (0.0, None) for i in range(m)]
    res = linprog(c=np.zeros(m), A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                  bounds=bounds, method="highs")
    return res.x if res.status == 0 else None


# -- general-form oracle (feeds the standardize round-trip checks) ----------


def _general_hyperplanes(glp: GeneralLP) -> tuple[np.ndarray, np.ndarray]:
    normals = [glp.rows] if glp.num_rows else []
    offsets = [glp.rhs] if glp.num_rows else []
    n = glp.num_vars
    for j in range(n):
        for bound in (glp.lower[j], glp.upper[j]):
            if np.isfinite(bound):
                e = np.zeros(n)
                e[j] = 1.0
                normals.append(e[None, :])
                offsets.append(np.asarray([bound]))
    if not normals:
        return np.zeros((0, n)), np.zeros(0)
    return np.vstack(normals), np.concatenate(offsets)


def _general_feasible(glp: GeneralLP, points: np.ndarray, tol: float) -> np.ndarray:
    ok = np.ones(len(points), dtype=bool)
    for row, rel, rhs in zip(glp.rows, glp.relations, glp.rhs):
        lhs = points @ row
        slack = tol * max(1.0, abs(rhs))
        if rel is Relation.LE:
            ok &= lhs <= rhs + slack
        elif rel is Relation.GE:
            ok &= lhs >= rhs - slack
        else:
            ok &= np.abs(lhs - rhs) <= slack
    for j in range(glp.num_vars):
        if np.isfinite(glp.lower[j]):
            ok &= points[:, j] >= glp.lower[j] - tol * max(1.0, abs(glp.lower[j]))
        if np.isfinite(glp.upper[j]):
            ok &= points[:, j] <= glp.upper[j] + tol * max(1.0, abs(glp.upper[j]))
    return ok


def _general_cone_normals(glp: GeneralLP) -> np.ndarray:
    n = glp.num_vars
    rows = []
    for row, rel in zip(glp.rows, glp.relations):
        if rel is not Relation.GE:
            rows.append(row)
        if rel is not Relation.LE:
            rows.append(-row)
    for j in range(n):
        if np.isfinite(glp.lower[j]):
            e = np.zeros(n)
            e[j] = -1.0
            rows.append(e)
        if np.isfinite(glp.upper[j]):
            e = np.zeros(n)
            e[j] = 1.0
            rows.append(e)
    return np.vstack(rows) if rows else np.zeros((0, n))


def _general_scipy_feasible(glp: GeneralLP) -> bool:
    n = glp.num_vars
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row, rel, rhs in zip(glp.rows, glp.relations, glp.rhs):
        if rel is Relation.LE:
            a_ub.append(row); b_ub.append(rhs)
        elif rel is Relation.GE:
            a_ub.append(-row); b_ub.append(-rhs)
        else:
            a_eq.append(row); b_eq.append(rhs)
    bounds = [(None if not np.isfinite(lo) else lo,
               None if not np.isfinite(hi) else hi)
              for lo, hi in zip(glp.lower, glp.upper)]
    res = linprog(c=np.zeros(n),
                  A_ub=np.asarray(a_ub) if a_ub else None,
                  b_ub=np.asarray(b_ub) if b_ub else None,
                  A_eq=np.asarray(a_eq) if a_eq else None,
                  b_eq=np.asarray(b_eq) if b_eq else None,
                  bounds=bounds, method="highs")
    return res.status != 2


def vertex_enumerate_general(glp: GeneralLP, tol: float = ORACLE_TOL,
                             max_systems: int = 300_000) -> SolveOutcome:
    """Vertex-enumeration solve of a GeneralLP in its own sense and values.

    Requires a pointed feasible region unless the objective is constant along
    every free direction, in which case those directions are pinned to zero
    (the optimum is unchanged) and the enumeration reruns.
    """
    n = glp.num_vars
    sign = 1.0 if glp.sense is Sense.MAX else -1.0
    c_max = sign * glp.c

    cone = _general_cone_normals(glp)
    if cone.shape[0]:
        _, s, vh = np.linalg.svd(cone)
        rank = int(np.sum(s > s.max(initial=0.0) * max(cone.shape) * np.finfo(float).eps))
    else:
        rank, vh = 0, np.eye(n)
    lineality = vh[rank:]
    if lineality.shape[0]:
        if np.any(np.abs(lineality @ c_max) > _RAY_TOL * max(1.0, float(np.linalg.norm(c_max)))):
            if _general_scipy_feasible(glp):
                return SolveOutcome(Status.UNBOUNDED)
            return SolveOutcome(Status.INFEASIBLE)
        pinned = GeneralLP(
            sense=glp.sense, c=glp.c,
            rows=np.vstack([glp.rows, lineality]),
            relations=glp.relations + (Relation.EQ,) * len(lineality),
            rhs=np.concatenate([glp.rhs, np.zeros(len(lineality))]),
            lower=glp.lower, upper=glp.upper,
            row_names=glp.row_names + tuple(f"__pin{i}" for i in range(len(lineality))),
            col_names=glp.col_names)
        return vertex_enumerate_general(pinned, tol=tol, max_systems=max_systems)

    normals, offsets = _general_hyperplanes(glp)
    if math.comb(len(normals), n) > max_systems:
        raise OracleBudget(
            f"{len(normals)} hyperplanes in dimension {n} exceed the system budget")
    points = _candidate_vertices(normals, offsets, n)
    if points.shape[0]:
        points = points[_general_feasible(glp, points, tol)]
    if points.shape[0] == 0:
        if _general_scipy_feasible(glp):
            raise RuntimeError("no feasible vertex found for a nonempty pointed polyhedron")
        return SolveOutcome(Status.INFEASIBLE)
    if _has_improving_ray(cone, c_max):
        return SolveOutcome(Status.UNBOUNDED)
    values = points @ c_max
    best = int(np.argmax(values))
    return SolveOutcome(Status.OPTIMAL,
                        objective_value=float(sign * values[best]),
                        primal_point=points[best])
