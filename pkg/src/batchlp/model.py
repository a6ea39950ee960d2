"""LP data model and reduction of general-form problems to maximization standard form.

The solver core works exclusively on ``StandardFormLP``: maximize c.x subject
to A.x <= b and x >= 0, stored as dense float64 arrays.  ``standardize`` lowers
a ``GeneralLP`` (min/max sense, <=/>=/= rows, variable bounds) into that form
and returns a ``VariableMap`` that can undo the lowering on points and
objective values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class Sense(Enum):
    MIN = "min"
    MAX = "max"


class Relation(Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Status(Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"
    ITERATION_LIMIT = "iteration_limit"


class InfeasibleBounds(Exception):
    """A variable's lower bound exceeds its upper bound."""


@dataclass(frozen=True)
class GeneralLP:
    """A general-form LP: optional sense, mixed-relation rows, variable bounds.

    Treated as immutable after construction; the arrays must not be mutated.
    """

    sense: Sense
    c: np.ndarray                      # (n,)
    rows: np.ndarray                   # (k, n)
    relations: tuple[Relation, ...]    # length k
    rhs: np.ndarray                    # (k,)
    lower: np.ndarray                  # (n,), -inf allowed
    upper: np.ndarray                  # (n,), +inf allowed
    row_names: tuple[str, ...] = ()
    col_names: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.c.shape[0]
        k = self.rhs.shape[0]
        if self.rows.shape != (k, n):
            raise ValueError(f"rows has shape {self.rows.shape}, expected ({k}, {n})")
        if len(self.relations) != k:
            raise ValueError(f"{len(self.relations)} relations for {k} rows")
        if self.lower.shape != (n,) or self.upper.shape != (n,):
            raise ValueError("bounds must both have length n")
        if not self.row_names:
            object.__setattr__(self, "row_names", tuple(f"r{i}" for i in range(k)))
        if not self.col_names:
            object.__setattr__(self, "col_names", tuple(f"x{j}" for j in range(n)))
        if len(set(self.row_names)) != k or len(set(self.col_names)) != n:
            raise ValueError("row/column names must be unique")

    @property
    def num_vars(self) -> int:
        return self.c.shape[0]

    @property
    def num_rows(self) -> int:
        return self.rhs.shape[0]

    @classmethod
    def build(cls, sense, c, rows, relations, rhs, lower=None, upper=None,
              row_names=(), col_names=()) -> "GeneralLP":
        """Construct from plain sequences; bounds default to [0, +inf)."""
        c = np.asarray(c, dtype=float)
        n = c.shape[0]
        rows = np.asarray(rows, dtype=float).reshape(-1, n)
        rhs = np.asarray(rhs, dtype=float)
        rels = tuple(r if isinstance(r, Relation) else Relation(r) for r in relations)
        lower = np.zeros(n) if lower is None else np.asarray(lower, dtype=float)
        upper = np.full(n, np.inf) if upper is None else np.asarray(upper, dtype=float)
        sense = sense if isinstance(sense, Sense) else Sense(sense)
        return cls(sense, c, rows, rels, rhs, lower, upper,
                   tuple(row_names), tuple(col_names))


@dataclass(frozen=True)
class StandardFormLP:
    """maximize c.x  s.t.  A.x <= b,  x >= 0.

    Stores whatever it is given; use ``standard_form`` to coerce inputs and
    ``validate`` to check consistency.  All numeric storage is float64.
    """

    c: np.ndarray   # (n,)
    A: np.ndarray   # (m, n)
    b: np.ndarray   # (m,)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m(self) -> int:
        return len(self.b)


def standard_form(c, A, b) -> StandardFormLP:
    """Coerce sequences into a float64 StandardFormLP."""
    c = np.asarray(c, dtype=float)
    b = np.asarray(b, dtype=float)
    A = np.asarray(A, dtype=float).reshape(len(b), len(c))
    return StandardFormLP(c=c, A=A, b=b)


@dataclass(frozen=True)
class SolveOutcome:
    """Terminal state of one solve.

    ``objective_value`` and ``primal_point`` are present iff status is
    OPTIMAL; iteration counts cover the two simplex phases separately.
    """

    status: Status
    objective_value: float | None = None
    primal_point: np.ndarray | None = None
    iterations_phase1: int = 0
    iterations_phase2: int = 0

    def is_optimal(self) -> bool:
        return self.status is Status.OPTIMAL


@dataclass(frozen=True)
class VariableMap:
    """Undo record for ``standardize``.

    Each original variable j maps to standard columns ``plus_col[j]`` and, for
    variables split into positive/negative parts, ``minus_col[j]`` (-1 when
    unsplit).  ``shift[j]`` is the lower-bound shift that was subtracted.
    ``offset`` is c.shift, the constant the shifting added to the original
    objective, and ``sense`` the original optimization direction.
    """

    sense: Sense
    offset: float
    shift: np.ndarray
    plus_col: np.ndarray
    minus_col: np.ndarray
    num_standard_vars: int

    def recover_point(self, x_std: np.ndarray) -> np.ndarray:
        x = x_std[self.plus_col].astype(float).copy()
        split = self.minus_col >= 0
        x[split] -= x_std[self.minus_col[split]]
        return x + self.shift

    def recover_objective(self, standard_value: float) -> float:
        sign = 1.0 if self.sense is Sense.MAX else -1.0
        return sign * standard_value + self.offset

    def recover_outcome(self, outcome: SolveOutcome) -> SolveOutcome:
        """Map a standard-form outcome back to the original problem."""
        if not outcome.is_optimal():
            return outcome
        return SolveOutcome(
            status=outcome.status,
            objective_value=self.recover_objective(outcome.objective_value),
            primal_point=self.recover_point(outcome.primal_point),
            iterations_phase1=outcome.iterations_phase1,
            iterations_phase2=outcome.iterations_phase2,
        )


def standardize(glp: GeneralLP) -> tuple[StandardFormLP, VariableMap]:
    """Lower a GeneralLP to maximization standard form.

    Minimization negates the objective; >= rows are negated to <=; = rows are
    split into a <=/>= pair; a finite lower bound l substitutes x' = x - l; a
    finite upper bound becomes an extra <= row; variables unbounded below are
    split into differences of nonnegative parts.

    Raises InfeasibleBounds when any lower bound exceeds its upper bound.
    """
    n = glp.num_vars
    bad = np.nonzero(glp.lower > glp.upper)[0]
    if bad.size:
        j = int(bad[0])
        raise InfeasibleBounds(
            f"variable {glp.col_names[j]!r}: lower {glp.lower[j]} > upper {glp.upper[j]}")

    plus_col = np.zeros(n, dtype=int)
    minus_col = np.full(n, -1, dtype=int)
    shift = np.zeros(n)
    next_col = 0
    for j in range(n):
        plus_col[j] = next_col
        next_col += 1
        if np.isfinite(glp.lower[j]):
            shift[j] = glp.lower[j]
        else:
            minus_col[j] = next_col
            next_col += 1
    n_std = next_col

    def widen(row: np.ndarray) -> np.ndarray:
        wide = np.zeros(n_std)
        wide[plus_col] = row
        split = minus_col >= 0
        wide[minus_col[split]] = -row[split]
        return wide

    out_rows: list[np.ndarray] = []
    out_rhs: list[float] = []
    for row, rel, rhs in zip(glp.rows, glp.relations, glp.rhs):
        wide = widen(row)
        shifted_rhs = rhs - float(row @ shift)
        if rel is not Relation.GE:
            out_rows.append(wide)
            out_rhs.append(shifted_rhs)
        if rel is not Relation.LE:
            out_rows.append(-wide)
            out_rhs.append(-shifted_rhs)

    # Finite upper bounds become explicit rows in the shifted variables.
    for j in range(n):
        if np.isfinite(glp.upper[j]):
            row = np.zeros(n_std)
            row[plus_col[j]] = 1.0
            if minus_col[j] >= 0:
                row[minus_col[j]] = -1.0
            out_rows.append(row)
            out_rhs.append(float(glp.upper[j] - shift[j]))

    c_std = widen(glp.c)
    if glp.sense is Sense.MIN:
        c_std = -c_std

    m = len(out_rhs)
    A = np.vstack(out_rows) if m else np.zeros((0, n_std))
    lp = StandardFormLP(c=c_std, A=A, b=np.asarray(out_rhs, dtype=float))
    vmap = VariableMap(
        sense=glp.sense,
        offset=float(glp.c @ shift),
        shift=shift,
        plus_col=plus_col,
        minus_col=minus_col,
        num_standard_vars=n_std,
    )
    return lp, vmap


def validate(lp: StandardFormLP) -> list[str]:
    """Consistency report for a StandardFormLP; empty list means ok.

    Never raises: dimension mismatches and non-finite entries are returned as
    human-readable violation strings.
    """
    violations: list[str] = []
    try:
        n = len(lp.c)
    except TypeError:
        return ["c is not a vector"]
    c = np.asarray(lp.c, dtype=float)
    if not np.all(np.isfinite(c)):
        for j in np.nonzero(~np.isfinite(c))[0]:
            violations.append(f"c[{j}] is not finite")

    rows = list(lp.A)
    try:
        m = len(lp.b)
    except TypeError:
        return violations + ["b is not a vector"]
    if len(rows) != m:
        violations.append(f"A has {len(rows)} rows, expected {m}")
    for i, row in enumerate(rows):
        try:
            row = np.atleast_1d(np.asarray(row, dtype=float))
        except (TypeError, ValueError):
            violations.append(f"row {i} is not numeric")
            continue
        if len(row) != n:
            violations.append(f"row {i} has {len(row)} coefficients, expected {n}")
            continue
        if not np.all(np.isfinite(row)):
            for j in np.nonzero(~np.isfinite(row))[0]:
                violations.append(f"A[{i}][{j}] is not finite")
    b = np.asarray(lp.b, dtype=float)
    for i in np.nonzero(~np.isfinite(b))[0]:
        violations.append(f"b[{i}] is not finite")
    return violations
