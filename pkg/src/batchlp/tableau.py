"""Column-major dense simplex tableau and the three per-iteration steps.

Layout: the tableau has p = m + 1 rows and q = n + num_slack + num_artificial
+ 2 columns, stored as one flat float64 array in column-major order (element
(i, j) lives at offset j*p + i).  Columns 0..nv-1 hold the structural, slack
and artificial variables, where nv = n + num_slack + num_artificial.  The two
auxiliary columns follow: column nv is the right-hand side (its last-row cell
is the current objective value) and column nv+1 stores the basic-variable
index of each constraint row.  The last row holds the reduced costs of the
variable columns.

Sign conventions:

* Rows are normalized at construction so every right-hand side is >= 0; rows
  with a negative input b are negated (flipping their slack coefficient to
  -1) and receive a +1 artificial column.  The ratio test is therefore
  rhs_i / t[i, e] restricted to t[i, e] > 0.
* A column is worth entering while its reduced cost is positive; optimality
  is "all reduced costs <= tol".
* The objective cell stores the current objective in its positive sense.
  Under the uniform elimination formula that cell would accumulate the
  negated objective, so ``pivot`` applies the sign-corrected update
  obj += rc_e * new_pivot_rhs to that one cell.

Ratios that are negative or undefined are replaced by SENTINEL, a constant
far above any legitimate ratio, so the min-ratio scan needs no branches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import StandardFormLP

SENTINEL = 1e308
DEFAULT_TOL = 1e-9
PIVOT_TOLERANCE = 1e-10


class DegeneratePivot(Exception):
    """Pivot element magnitude at or below the pivot tolerance."""


@dataclass(frozen=True)
class PivotChoice:
    """One pivot: entering column e, leaving row l, pivot element t[l, e]."""

    entering_col: int
    leaving_row: int
    pivot_element: float


class Tableau:
    def __init__(self, n: int, m: int, num_slack: int, num_artificial: int):
        self.n = n
        self.m = m
        self.num_slack = num_slack
        self.num_artificial = num_artificial
        self.p = m + 1
        self.nv = n + num_slack + num_artificial
        self.q = self.nv + 2
        self.rhs_col = self.nv
        self.basis_col = self.nv + 1
        self.values = np.zeros(self.p * self.q)
        # Fortran-order reshape of the flat buffer: grid[i, j] is values[j*p+i].
        self.grid = self.values.reshape((self.p, self.q), order="F")
        # Columns choose_entering may return; artificials are cleared here
        # when the original objective is restored after phase 1.
        self.selectable = np.ones(self.nv, dtype=bool)

    # -- element accessors (the column-major offset law) ------------------

    def value(self, i: int, j: int) -> float:
        return float(self.values[j * self.p + i])

    def set_value(self, i: int, j: int, v: float) -> None:
        self.values[j * self.p + i] = v

    # -- views and bookkeeping --------------------------------------------

    @property
    def rhs(self) -> np.ndarray:
        return self.grid[: self.m, self.rhs_col]

    @property
    def reduced_costs(self) -> np.ndarray:
        return self.grid[self.m, : self.nv]

    @property
    def objective_value(self) -> float:
        return float(self.grid[self.m, self.rhs_col])

    @objective_value.setter
    def objective_value(self, v: float) -> None:
        self.grid[self.m, self.rhs_col] = v

    def basis(self) -> np.ndarray:
        return self.grid[: self.m, self.basis_col].astype(np.int64)

    def basis_entry(self, row: int) -> int:
        return int(self.grid[row, self.basis_col])

    def set_basis_entry(self, row: int, col: int) -> None:
        self.grid[row, self.basis_col] = col

    def is_artificial(self, col: int) -> bool:
        return col >= self.n + self.num_slack

    def copy(self) -> "Tableau":
        t = Tableau(self.n, self.m, self.num_slack, self.num_artificial)
        t.values[:] = self.values
        t.selectable[:] = self.selectable
        return t

    def dump(self) -> str:
        """Row-major plain-text rendering of the tableau, for debugging."""
        headers = (
            [f"x{j}" for j in range(self.n)]
            + [f"s{j}" for j in range(self.num_slack)]
            + [f"a{j}" for j in range(self.num_artificial)]
            + ["rhs", "basis"]
        )
        width = 12
        lines = ["".join(h.rjust(width) for h in [""] + headers)]
        for i in range(self.p):
            label = f"row{i}" if i < self.m else "obj"
            cells = [label.rjust(width)]
            for j in range(self.q):
                if j == self.basis_col:
                    cells.append(("-" if i >= self.m else str(self.basis_entry(i))).rjust(width))
                else:
                    cells.append(f"{self.value(i, j):.6g}".rjust(width))
            lines.append("".join(cells))
        return "\n".join(lines) + "\n"


def build_tableau(lp: StandardFormLP) -> Tableau:
    """Initial tableau: one slack per row; artificials only where b < 0.

    Rows with negative b are negated first, so artificials enter with a +1
    coefficient and every stored right-hand side is nonnegative.  The initial
    basis is the slack of each nonnegated row and the artificial of each
    negated one.  The last row starts as the raw objective coefficients with
    objective cell 0.
    """
    m, n = lp.m, lp.n
    A = np.asarray(lp.A, dtype=float).reshape(m, n)
    b = np.asarray(lp.b, dtype=float)
    c = np.asarray(lp.c, dtype=float)
    negated = b < 0
    num_artificial = int(negated.sum())
    t = Tableau(n=n, m=m, num_slack=m, num_artificial=num_artificial)

    if m:
        sign = np.where(negated, -1.0, 1.0)
        t.grid[:m, :n] = A * sign[:, None]
        t.grid[:m, t.rhs_col] = b * sign
        rows = np.arange(m)
        t.grid[rows, n + rows] = sign
        arti = 0
        for i in range(m):
            if negated[i]:
                col = n + m + arti
                t.grid[i, col] = 1.0
                arti += 1
            else:
                col = n + i
            t.set_basis_entry(i, col)
    t.grid[m, :n] = c
    return t


def choose_entering(t: Tableau, tol: float = DEFAULT_TOL) -> int | None:
    """Dantzig's rule: the selectable non-basic column with the largest
    reduced cost, lowest index on ties; None when all are <= tol (optimal)."""
    mask = t.selectable.copy()
    mask[t.basis()] = False
    if not mask.any():
        return None
    costs = np.where(mask, t.reduced_costs, -np.inf)
    e = int(np.argmax(costs))
    if costs[e] <= tol:
        return None
    return e


def choose_entering_bland(t: Tableau, tol: float = DEFAULT_TOL) -> int | None:
    """Bland's rule: the lowest-index selectable non-basic column with a
    positive reduced cost."""
    mask = t.selectable.copy()
    mask[t.basis()] = False
    candidates = np.nonzero(mask & (t.reduced_costs > tol))[0]
    if candidates.size == 0:
        return None
    return int(candidates[0])


def choose_leaving(t: Tableau, entering_col: int, tol: float = DEFAULT_TOL) -> int | None:
    """Min-ratio test with sentinel ratios.

    ratio_i = rhs_i / t[i, e] where t[i, e] > tol, SENTINEL otherwise; returns
    the argmin row (lowest index on ties) or None when every ratio is the
    sentinel, i.e. the column is unbounded.
    """
    if t.m == 0:
        return None
    col = t.grid[: t.m, entering_col]
    ratios = np.full(t.m, SENTINEL)
    np.divide(t.rhs, col, out=ratios, where=col > tol)
    leaving = int(np.argmin(ratios))
    if ratios[leaving] >= SENTINEL:
        return None
    return leaving


def pivot(t: Tableau, choice: PivotChoice,
          pivot_tolerance: float = PIVOT_TOLERANCE) -> Tableau:
    """Exchange basis variables in place and return the tableau.

    The pivot row (rhs included) is divided by the pivot element; every other
    row i, the last row included, becomes row_i - t[i, e] * new_pivot_row.
    The objective cell alone gets the sign-corrected update so it keeps the
    positive-sense objective (see module docstring).  basis[l] becomes e.
    """
    e, l = choice.entering_col, choice.leaving_row
    pe = float(t.grid[l, e])
    if abs(pe) <= pivot_tolerance:
        raise DegeneratePivot(f"pivot element {pe!r} at ({l}, {e}) below tolerance")

    width = t.nv + 1  # variable columns plus the rhs column
    arith = t.grid[:, :width]
    factors = arith[:, e].copy()
    factors[l] = 0.0
    obj_before = t.objective_value
    rc_e = factors[t.m]

    arith[l, :] /= pe
    new_pivot_row = arith[l, :]
    arith -= factors[:, None] * new_pivot_row[None, :]
    t.objective_value = obj_before + rc_e * new_pivot_row[t.rhs_col]
    t.set_basis_entry(l, e)
    return t
