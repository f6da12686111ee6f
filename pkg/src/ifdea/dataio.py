"""DMU datasets, imputation-policy documents and efficiency reports.

Dataset CSV::

    name,I:I1,I:I2,O:O1
    Goa,491.53,6941,3659
    Sikkim,*,5358,1146
    Demo,"(1,2,3;0.5,4)",10,20

``*`` marks a missing cell; TIFN cells use ``(pL,pM,pU;p'L,p'U)``.

Policy document (``section.key = value`` per line, ``#`` comments)::

    model.epsilon = 1e-7
    model.tolerance = 1e-4
    impute.I1.Sikkim.lower = 20
    impute.I1.Sikkim.upper = 16800
    report.format = csv
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .ifn import TIFN, TIFNError, format_real, parse_tifn

__all__ = [
    "MISSING",
    "Cell",
    "DmuRecord",
    "Dataset",
    "DataError",
    "Bounds",
    "ImputationPolicy",
    "RunConfig",
    "DEFAULT_EPSILON",
    "DEFAULT_TOLERANCE",
    "parse_dataset",
    "write_dataset",
    "parse_policy",
    "write_policy",
    "write_report",
    "REPORT_COLUMNS",
]

MISSING_MARKER = "*"


class _Missing:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MISSING"

    def __reduce__(self):
        return (_Missing, ())


MISSING = _Missing()
Cell = Union[float, TIFN, _Missing]

# 1e-6 makes the output normalization infeasible on large-valued data
# (sum of outputs times epsilon exceeds 1), see README.
DEFAULT_EPSILON = 1e-7
DEFAULT_TOLERANCE = 1e-4


class DataError(ValueError):
    """Invalid dataset or policy content; carries 1-based coordinates when known."""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class DmuRecord:
    id: int
    name: str
    inputs: tuple
    outputs: tuple


@dataclass(frozen=True)
class Dataset:
    input_names: tuple[str, ...]
    output_names: tuple[str, ...]
    records: tuple[DmuRecord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_names", tuple(self.input_names))
        object.__setattr__(self, "output_names", tuple(self.output_names))
        object.__setattr__(self, "records", tuple(self.records))
        if not self.records:
            raise DataError("dataset has no DMUs")
        if not self.input_names:
            raise DataError("dataset has no inputs")
        if not self.output_names:
            raise DataError("dataset has no outputs")
        for rec in self.records:
            if len(rec.inputs) != len(self.input_names) or len(rec.outputs) != len(self.output_names):
                raise DataError(f"DMU {rec.name!r} arity does not match the header")

    @classmethod
    def from_arrays(cls, X, Y, names=None, input_names=None, output_names=None) -> Dataset:
        """Build a dataset from row-per-DMU input and output tables."""
        X = [list(row) for row in X]
        Y = [list(row) for row in Y]
        n = len(X)
        names = list(names) if names is not None else [f"DMU{j + 1}" for j in range(n)]
        m = len(X[0]) if n else 0
        s = len(Y[0]) if n else 0
        input_names = input_names or [f"I{i + 1}" for i in range(m)]
        output_names = output_names or [f"O{r + 1}" for r in range(s)]

        def cell(v):
            return v if isinstance(v, (TIFN, _Missing)) else float(v)

        records = [
            DmuRecord(j + 1, names[j], tuple(cell(v) for v in X[j]), tuple(cell(v) for v in Y[j]))
            for j in range(n)
        ]
        return cls(tuple(input_names), tuple(output_names), tuple(records))

    @property
    def n_dmus(self) -> int:
        return len(self.records)

    def variables(self):
        """Yield ``(role, index, name)`` for every column; role is ``"input"`` or ``"output"``."""
        for i, name in enumerate(self.input_names):
            yield "input", i, name
        for r, name in enumerate(self.output_names):
            yield "output", r, name

    def column(self, role: str, index: int) -> list:
        attr = "inputs" if role == "input" else "outputs"
        return [getattr(rec, attr)[index] for rec in self.records]

    def missing_cells(self) -> list[tuple[str, str]]:
        """``(variable name, DMU name)`` for each missing cell, in file order."""
        out = []
        for rec in self.records:
            for name, v in zip(self.input_names + self.output_names, rec.inputs + rec.outputs):
                if v is MISSING:
                    out.append((name, rec.name))
        return out

    @property
    def is_crisp(self) -> bool:
        return all(isinstance(v, float) for rec in self.records for v in rec.inputs + rec.outputs)


def _parse_cell(text: str, row: int, col: int) -> Cell:
    text = text.strip()
    if text == MISSING_MARKER:
        return MISSING
    if text.startswith("("):
        try:
            return parse_tifn(text)
        except TIFNError as exc:
            raise DataError(str(exc), row, col) from None
    try:
        value = float(text)
    except ValueError:
        raise DataError(f"unparseable cell {text!r}", row, col) from None
    if not math.isfinite(value):
        raise DataError(f"non-finite cell {text!r}", row, col)
    if value <= 0:
        raise DataError(f"nonpositive cell {text!r}", row, col)
    return value


def parse_dataset(text: str) -> Dataset:
    """Parse dataset CSV text. Rows and columns in errors are 1-based, header = row 1."""
    reader = csv.reader(io.StringIO(text))
    rows = [(k + 1, r) for k, r in enumerate(reader)]
    rows = [(k, r) for k, r in rows if any(c.strip() for c in r)]
    if not rows:
        raise DataError("empty dataset file", 1)
    header_row, header = rows[0]
    header = [h.strip() for h in header]
    if header[0].lower() != "name":
        raise DataError("first header cell must be 'name'", header_row, 1)
    roles = []
    input_names, output_names = [], []
    seen = set()
    for col, h in enumerate(header[1:], start=2):
        if h.startswith("I:"):
            role, name = "input", h[2:].strip()
        elif h.startswith("O:"):
            role, name = "output", h[2:].strip()
        else:
            raise DataError(f"header {h!r} lacks an I: or O: prefix", header_row, col)
        if not name or "." in name:
            raise DataError(f"invalid variable name {name!r}", header_row, col)
        if name in seen:
            raise DataError(f"duplicate variable {name!r}", header_row, col)
        seen.add(name)
        roles.append(role)
        (input_names if role == "input" else output_names).append(name)
    if not rows[1:]:
        raise DataError("dataset has no DMUs", header_row)
    if not input_names or not output_names:
        raise DataError("dataset needs at least one input and one output", header_row)

    records = []
    names = set()
    for dmu_id, (k, row) in enumerate(rows[1:], start=1):
        if len(row) != len(header):
            raise DataError(f"expected {len(header)} cells, found {len(row)}", k)
        name = row[0].strip()
        if not name:
            raise DataError("empty DMU name", k, 1)
        if name in names:
            raise DataError(f"duplicate DMU name {name!r}", k, 1)
        names.add(name)
        ins, outs = [], []
        for col, (role, text) in enumerate(zip(roles, row[1:]), start=2):
            (ins if role == "input" else outs).append(_parse_cell(text, k, col))
        records.append(DmuRecord(dmu_id, name, tuple(ins), tuple(outs)))
    return Dataset(tuple(input_names), tuple(output_names), tuple(records))


def _format_cell(v: Cell) -> str:
    if v is MISSING:
        return MISSING_MARKER
    if isinstance(v, TIFN):
        return str(v)
    return format_real(v)


def write_dataset(dataset: Dataset) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name"] + [f"I:{n}" for n in dataset.input_names] + [f"O:{n}" for n in dataset.output_names])
    for rec in dataset.records:
        w.writerow([rec.name] + [_format_cell(v) for v in rec.inputs + rec.outputs])
    return buf.getvalue()


@dataclass(frozen=True)
class Bounds:
    """Decision-maker non-membership support ``[lower, upper]`` for one missing cell."""

    lower: float
    upper: float


@dataclass(frozen=True)
class ImputationPolicy:
    """Maps ``(variable name, DMU name)`` to :class:`Bounds`."""

    bounds: dict = field(default_factory=dict)

    def __contains__(self, key) -> bool:
        return key in self.bounds

    def __getitem__(self, key) -> Bounds:
        return self.bounds[key]

    def __len__(self) -> int:
        return len(self.bounds)


@dataclass(frozen=True)
class RunConfig:
    policy: ImputationPolicy = field(default_factory=ImputationPolicy)
    epsilon: float = DEFAULT_EPSILON
    tolerance: float = DEFAULT_TOLERANCE
    report_format: str = "csv"
    raw_objective: bool = False


_BOOL = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def parse_policy(text: str) -> RunConfig:
    """Parse a policy document into a :class:`RunConfig`.

    Errors carry the 1-based line number as ``row``.
    """
    partial: dict[tuple[str, str], dict[str, tuple[float, int]]] = {}
    opts: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DataError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not value:
            raise DataError(f"empty value for {key!r}", lineno)
        if key.startswith("impute."):
            body = key[len("impute."):]
            var, sep, rest = body.partition(".")
            dmu, sep2, which = rest.rpartition(".")
            if not (sep and sep2 and var and dmu) or which not in ("lower", "upper"):
                raise DataError(f"malformed imputation key {key!r}", lineno)
            entry = partial.setdefault((var, dmu), {})
            if which in entry:
                raise DataError(f"duplicate key {key!r}", lineno)
            entry[which] = (_real(value, lineno), lineno)
        elif key in ("model.epsilon", "model.tolerance"):
            x = _real(value, lineno)
            if x <= 0:
                raise DataError(f"{key} must be positive", lineno)
            opts[key.split(".")[1]] = x
        elif key == "report.format":
            if value not in ("csv", "jsonl"):
                raise DataError(f"report.format must be csv or jsonl, got {value!r}", lineno)
            opts["report_format"] = value
        elif key == "report.raw_objective":
            if value.lower() not in _BOOL:
                raise DataError(f"expected a boolean for {key}, got {value!r}", lineno)
            opts["raw_objective"] = _BOOL[value.lower()]
        else:
            raise DataError(f"unknown key {key!r}", lineno)

    bounds = {}
    for (var, dmu), entry in partial.items():
        if "lower" not in entry or "upper" not in entry:
            missing = "upper" if "lower" in entry else "lower"
            line = next(iter(entry.values()))[1]
            raise DataError(f"impute.{var}.{dmu} lacks its {missing} bound", line)
        (lo, _), (hi, line) = entry["lower"], entry["upper"]
        if lo > hi:
            raise DataError(f"impute.{var}.{dmu}: lower {lo!r} exceeds upper {hi!r}", line)
        bounds[(var, dmu)] = Bounds(lo, hi)
    return RunConfig(policy=ImputationPolicy(bounds), **opts)


def _real(text: str, lineno: int) -> float:
    try:
        x = float(text)
    except ValueError:
        raise DataError(f"not a number: {text!r}", lineno) from None
    if not math.isfinite(x):
        raise DataError(f"not a finite number: {text!r}", lineno)
    return x


def write_policy(config: RunConfig) -> str:
    lines = [
        f"model.epsilon = {config.epsilon!r}",
        f"model.tolerance = {config.tolerance!r}",
        f"report.format = {config.report_format}",
        f"report.raw_objective = {'true' if config.raw_objective else 'false'}",
    ]
    for (var, dmu), b in config.policy.bounds.items():
        lines.append(f"impute.{var}.{dmu}.lower = {b.lower!r}")
        lines.append(f"impute.{var}.{dmu}.upper = {b.upper!r}")
    return "\n".join(lines) + "\n"


REPORT_COLUMNS = ("id", "name", "objective", "score", "score_3dp", "classification", "model")


def _report_rows(results, raw_objective: bool, as_text: bool):
    for res in results:
        ok = res.error is None
        e, score = res.objective_value, res.reported_score
        if as_text:
            values = (f"{e:.6f}", repr(score), f"{score:.3f}", repr(e)) if ok else ("",) * 4
        else:
            values = (round(e, 6), score, round(score, 3), e) if ok else (None,) * 4
        row = {
            "id": res.dmu_id,
            "name": res.name,
            "objective": values[0],
            "score": values[1],
            "score_3dp": values[2],
            "classification": res.classification,
            "model": res.model_kind,
        }
        if raw_objective:
            row["objective_raw"] = values[3]
        yield row


def write_report(results, fmt: str = "csv", raw_objective: bool = False) -> str:
    """Serialize efficiency results as CSV or JSON lines, one record per DMU."""
    if not results:
        raise ValueError("no results to report")
    columns = list(REPORT_COLUMNS) + (["objective_raw"] if raw_objective else [])
    if fmt == "csv":
        rows = _report_rows(results, raw_objective, as_text=True)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "jsonl":
        rows = _report_rows(results, raw_objective, as_text=False)
        return "".join(json.dumps(row) + "\n" for row in rows)
    raise ValueError(f"unknown report format {fmt!r}")
