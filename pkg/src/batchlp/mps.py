"""Reader for MPS linear-program files, fixed or free format.

Parsing is whitespace-delimited and section-ordered (NAME, OBJSENSE, ROWS,
COLUMNS, RHS, RANGES, BOUNDS, ENDATA).  ``parse_mps`` is total: any text
input yields either an ``MpsModel`` or a ``ParseError`` carrying the line
number.  ``lower_to_general`` turns the parsed model into a ``GeneralLP``
with the MPS default minimization sense; ranged rows become two inequality
rows following the published RANGES conventions.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .model import GeneralLP, Relation, Sense

_SECTIONS = {"NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"}
_ROW_TYPES = {"N", "L", "G", "E"}
_BOUND_TYPES = {"UP", "LO", "FX", "FR", "MI", "PL", "BV", "UI", "LI"}
_VALUELESS_BOUNDS = {"FR", "MI", "PL", "BV"}


class ParseError(Exception):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnsupportedFeature(Exception):
    """The file uses integer/binary features this dense LP reader rejects."""


@dataclass
class MpsModel:
    name: str = ""
    objective_sense: Sense = Sense.MIN
    objective_row: str | None = None
    row_types: dict[str, str] = field(default_factory=dict)     # name -> L/G/E
    row_order: list[str] = field(default_factory=list)
    column_order: list[str] = field(default_factory=list)
    entries: dict[tuple[str, str], float] = field(default_factory=dict)
    rhs: dict[str, float] = field(default_factory=dict)
    ranges: dict[str, float] = field(default_factory=dict)
    bounds: list[tuple[str, str, float | None]] = field(default_factory=list)
    integral_columns: set[str] = field(default_factory=set)


def _number(token: str, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"malformed numeric {token!r}", line_no) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite numeric {token!r}", line_no)
    return value


def _pairs(fields: list[str], line_no: int, declared: dict, kind: str):
    """Split an RHS/RANGES data line into (name, value) pairs.

    An odd field count means the leading token is a set name; an even count
    means the pairs start immediately.
    """
    start = 1 if len(fields) % 2 == 1 else 0
    out = []
    for k in range(start, len(fields), 2):
        name = fields[k]
        if name not in declared:
            raise ParseError(f"{kind} entry references undeclared row {name!r}", line_no)
        out.append((name, _number(fields[k + 1], line_no)))
    return out


def parse_mps(text: str) -> MpsModel:
    """Parse MPS text into an MpsModel, raising ParseError on any defect."""
    model = MpsModel()
    section: str | None = None
    integral = False
    seen_endata = False
    declared_rows: dict[str, str] = {}
    line_no = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("*"):
            continue
        fields = line.split()

        unindented = not line[0].isspace()
        # A header line carries at most the section keyword plus one name
        # token; longer unindented lines are free-format data that happens to
        # start with a keyword-like name.
        is_header = (unindented and fields[0].upper() in _SECTIONS
                     and (fields[0].upper() in ("NAME", "OBJSENSE") or len(fields) <= 2))
        if is_header:
            section = fields[0].upper()
            if section == "ENDATA":
                seen_endata = True
                break
            if section == "NAME":
                model.name = fields[1] if len(fields) > 1 else ""
            elif section == "OBJSENSE" and len(fields) > 1:
                model.objective_sense = _parse_sense(fields[1], line_no)
                section = None
            continue
        # Free-format files may not indent data lines, so an unindented
        # unknown token is an error only outside a section.
        if section is None or section == "NAME":
            if unindented:
                raise ParseError(f"unknown section {fields[0]!r}", line_no)
            raise ParseError("data line outside any section", line_no)

        if section == "OBJSENSE":
            model.objective_sense = _parse_sense(fields[0], line_no)
        elif section == "ROWS":
            _parse_row(model, declared_rows, fields, line_no)
        elif section == "COLUMNS":
            integral = _parse_column(model, declared_rows, fields, line_no, integral)
        elif section == "RHS":
            for name, value in _pairs(fields, line_no, declared_rows, "RHS"):
                if name in model.rhs:
                    warnings.warn(f"duplicate RHS for row {name!r}; keeping the last value")
                model.rhs[name] = value
        elif section == "RANGES":
            for name, value in _pairs(fields, line_no, declared_rows, "RANGES"):
                if declared_rows[name] == "N":
                    warnings.warn(f"RANGES entry on objective row {name!r} ignored")
                    continue
                model.ranges[name] = value
        elif section == "BOUNDS":
            _parse_bound(model, fields, line_no)

    if not seen_endata:
        raise ParseError("missing ENDATA", max(line_no, 1))
    if model.objective_row is None:
        raise ParseError("no objective (type N) row declared", max(line_no, 1))
    return model


def _parse_sense(token: str, line_no: int) -> Sense:
    word = token.upper()
    if word in ("MAX", "MAXIMIZE"):
        return Sense.MAX
    if word in ("MIN", "MINIMIZE"):
        return Sense.MIN
    raise ParseError(f"unknown OBJSENSE {token!r}", line_no)


def _parse_row(model: MpsModel, declared: dict, fields: list[str], line_no: int) -> None:
    if len(fields) < 2:
        raise ParseError("ROWS line needs a type and a name", line_no)
    row_type = fields[0].upper()
    name = fields[1]
    if row_type not in _ROW_TYPES:
        raise ParseError(f"unknown row type {fields[0]!r}", line_no)
    if name in declared:
        raise ParseError(f"duplicate row name {name!r}", line_no)
    declared[name] = row_type
    if row_type == "N":
        if model.objective_row is None:
            model.objective_row = name
        else:
            warnings.warn(f"extra objective row {name!r} ignored")
        return
    model.row_types[name] = row_type
    model.row_order.append(name)


def _parse_column(model: MpsModel, declared: dict, fields: list[str],
                  line_no: int, integral: bool) -> bool:
    if len(fields) >= 3 and fields[1] == "'MARKER'":
        marker = fields[2].strip("'").upper()
        if marker == "INTORG":
            return True
        if marker == "INTEND":
            return False
        raise ParseError(f"unknown marker {fields[2]!r}", line_no)
    if len(fields) < 3 or (len(fields) - 1) % 2 != 0:
        raise ParseError("COLUMNS line needs a column name and (row, value) pairs", line_no)
    column = fields[0]
    if column not in model.column_order:
        model.column_order.append(column)
    if integral:
        model.integral_columns.add(column)
    for k in range(1, len(fields), 2):
        row = fields[k]
        if row not in declared:
            raise ParseError(f"COLUMNS entry references undeclared row {row!r}", line_no)
        value = _number(fields[k + 1], line_no)
        key = (column, row)
        if key in model.entries:
            warnings.warn(f"duplicate entry for ({column}, {row}); values summed")
            model.entries[key] += value
        else:
            model.entries[key] = value
    return integral


def _parse_bound(model: MpsModel, fields: list[str], line_no: int) -> None:
    if len(fields) < 2:
        raise ParseError("BOUNDS line too short", line_no)
    bound_type = fields[0].upper()
    if bound_type not in _BOUND_TYPES:
        raise ParseError(f"unknown bound type {fields[0]!r}", line_no)
    needs_value = bound_type not in _VALUELESS_BOUNDS
    rest = fields[1:]
    # The bound-set name is optional; detect its absence by field shape.
    if needs_value:
        if len(rest) >= 3:
            var, value = rest[1], _number(rest[2], line_no)
        elif len(rest) == 2 and rest[0] in model.column_order:
            var, value = rest[0], _number(rest[1], line_no)
        else:
            raise ParseError("bound entry needs a variable and a value", line_no)
    else:
        var = rest[1] if len(rest) >= 2 and rest[1] in model.column_order else rest[0]
        value = None
    if var not in model.column_order:
        raise ParseError(f"BOUNDS entry references undeclared column {var!r}", line_no)
    model.bounds.append((bound_type, var, value))


def lower_to_general(model: MpsModel) -> GeneralLP:
    """Lower a parsed MPS model to a GeneralLP.

    Sense defaults to minimization; the default variable domain is [0, +inf).
    An L/G/E row with a RANGES entry becomes a <=/>= pair bracketing the
    interval the range defines.  Integer markers and BV/UI/LI bounds raise
    UnsupportedFeature.
    """
    if model.integral_columns:
        names = ", ".join(sorted(model.integral_columns)[:3])
        raise UnsupportedFeature(f"integer columns not supported (e.g. {names})")
    for bound_type, var, _ in model.bounds:
        if bound_type in ("BV", "UI", "LI"):
            raise UnsupportedFeature(f"{bound_type} bound on {var!r} not supported")

    columns = model.column_order
    n = len(columns)
    col_index = {name: j for j, name in enumerate(columns)}

    c = np.zeros(n)
    for (column, row), value in model.entries.items():
        if row == model.objective_row:
            c[col_index[column]] = value
    if model.objective_row in model.rhs:
        warnings.warn("RHS entry on the objective row ignored")

    rows, relations, rhs_values, row_names = [], [], [], []

    def emit(coeffs, relation, rhs, name):
        rows.append(coeffs)
        relations.append(relation)
        rhs_values.append(rhs)
        row_names.append(name)

    for name in model.row_order:
        coeffs = np.zeros(n)
        for (column, row), value in model.entries.items():
            if row == name:
                coeffs[col_index[column]] = value
        row_type = model.row_types[name]
        rhs = model.rhs.get(name, 0.0)
        if name not in model.ranges:
            relation = {"L": Relation.LE, "G": Relation.GE, "E": Relation.EQ}[row_type]
            emit(coeffs, relation, rhs, name)
            continue
        r = model.ranges[name]
        if row_type == "L":
            lo, hi = rhs - abs(r), rhs
        elif row_type == "G":
            lo, hi = rhs, rhs + abs(r)
        else:
            lo, hi = (rhs, rhs + r) if r >= 0 else (rhs + r, rhs)
        emit(coeffs, Relation.LE, hi, name)
        emit(coeffs.copy(), Relation.GE, lo, f"{name}__rng")

    lower = np.zeros(n)
    upper = np.full(n, np.inf)
    for bound_type, var, value in model.bounds:
        j = col_index[var]
        if bound_type == "UP":
            upper[j] = value
            if value < 0 and lower[j] == 0:
                warnings.warn(f"negative UP bound on {var!r} with default lower bound 0")
        elif bound_type == "LO":
            lower[j] = value
        elif bound_type == "FX":
            lower[j] = upper[j] = value
        elif bound_type == "FR":
            lower[j], upper[j] = -np.inf, np.inf
        elif bound_type == "MI":
            lower[j] = -np.inf
        elif bound_type == "PL":
            upper[j] = np.inf

    k = len(rows)
    return GeneralLP(
        sense=model.objective_sense,
        c=c,
        rows=np.vstack(rows) if k else np.zeros((0, n)),
        relations=tuple(relations),
        rhs=np.asarray(rhs_values, dtype=float),
        lower=lower,
        upper=upper,
        row_names=tuple(row_names),
        col_names=tuple(columns),
    )
