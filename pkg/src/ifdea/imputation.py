"""Missing-value imputation with TIFNs built from column statistics.

A missing cell becomes ``(min, median, max; lower, upper)``: the membership
support spans the observed range of its column, the mode is the column
median and the non-membership support is set by the decision maker.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, replace

from .dataio import MISSING, Bounds, DataError, Dataset, ImputationPolicy
from .ifn import TIFN, expected_value, tifn_from_crisp

__all__ = [
    "ColumnStats",
    "ImputationError",
    "column_stats",
    "dataset_stats",
    "impute_missing_tifn",
    "crisp_impute",
    "prepare_dataset",
    "normalize_columns",
]


class ImputationError(DataError):
    """A missing cell cannot be imputed (no observations, no or invalid bounds)."""


@dataclass(frozen=True)
class ColumnStats:
    minimum: float
    median: float
    maximum: float


def column_stats(values) -> ColumnStats:
    """Min, median and max of the observed values of one column.

    Even counts use the mean of the two middle values.
    """
    values = [float(v) for v in values]
    if not values:
        raise ImputationError("no observed values: a fully missing variable cannot be imputed")
    return ColumnStats(min(values), statistics.median(values), max(values))


def _observed(column) -> list[float]:
    # TIFN cells are represented by their mode
    return [v.mode if isinstance(v, TIFN) else v for v in column if v is not MISSING]


def dataset_stats(dataset: Dataset) -> dict[str, ColumnStats]:
    """Per-variable statistics over observed cells, in header order."""
    out = {}
    for role, idx, name in dataset.variables():
        try:
            out[name] = column_stats(_observed(dataset.column(role, idx)))
        except ImputationError:
            raise ImputationError(f"variable {name!r} has no observed values") from None
    return out


def impute_missing_tifn(stats: ColumnStats, bounds: Bounds, cell: str = "") -> TIFN:
    """TIFN ``(min, median, max; bounds.lower, bounds.upper)``."""
    label = f" for {cell}" if cell else ""
    if bounds.lower > stats.minimum:
        raise ImputationError(
            f"non-membership lower bound {bounds.lower!r}{label} exceeds column minimum {stats.minimum!r}"
        )
    if bounds.upper < stats.maximum:
        raise ImputationError(
            f"non-membership upper bound {bounds.upper!r}{label} is below column maximum {stats.maximum!r}"
        )
    return TIFN(stats.minimum, stats.median, stats.maximum, bounds.lower, bounds.upper)


def crisp_impute(imputed: TIFN) -> float:
    """Crisp replacement for a missing cell: the expected value of its TIFN."""
    return expected_value(imputed)


def prepare_dataset(raw: Dataset, policy: ImputationPolicy, target: str) -> Dataset:
    """Complete ``raw`` for the ``"crisp"`` or ``"fif"`` model.

    ``fif``: every observed crisp cell becomes a degenerate TIFN and every
    missing cell its imputation TIFN.  ``crisp``: missing cells get the
    expected value of their imputation TIFN; observed cells are unchanged.
    """
    if target not in ("crisp", "fif"):
        raise ValueError(f"unknown target {target!r}")
    missing = raw.missing_cells()
    uncovered = [cell for cell in missing if cell not in policy]
    if uncovered:
        listing = ", ".join(f"{var}@{dmu}" for var, dmu in uncovered)
        raise ImputationError(f"missing cells without policy bounds: {listing}")

    stats = dataset_stats(raw) if missing else {}
    names = raw.input_names + raw.output_names

    def convert(var: str, dmu: str, v):
        if v is MISSING:
            tifn = impute_missing_tifn(stats[var], policy[(var, dmu)], f"{var}@{dmu}")
            return tifn if target == "fif" else crisp_impute(tifn)
        if target == "fif" and not isinstance(v, TIFN):
            return tifn_from_crisp(v)
        return v

    records = []
    m = len(raw.input_names)
    for rec in raw.records:
        cells = [convert(var, rec.name, v) for var, v in zip(names, rec.inputs + rec.outputs)]
        records.append(replace(rec, inputs=tuple(cells[:m]), outputs=tuple(cells[m:])))
    return Dataset(raw.input_names, raw.output_names, tuple(records))


def normalize_columns(dataset: Dataset) -> Dataset:
    """Divide every column by its largest component value.

    Scores with epsilon > 0 are not units-invariant, so this shifts them by
    terms of order epsilon.
    """
    if dataset.missing_cells():
        raise ImputationError("normalize a prepared dataset, not one with missing cells")
    scales = {}
    for role, idx, name in dataset.variables():
        col = dataset.column(role, idx)
        scales[name] = max(v.nonmem_upper if isinstance(v, TIFN) else v for v in col)

    def scaled(v, k):
        return v * (1.0 / k) if isinstance(v, TIFN) else v / k

    records = []
    for rec in dataset.records:
        ins = tuple(scaled(v, scales[n]) for v, n in zip(rec.inputs, dataset.input_names))
        outs = tuple(scaled(v, scales[n]) for v, n in zip(rec.outputs, dataset.output_names))
        records.append(replace(rec, inputs=ins, outputs=outs))
    return Dataset(dataset.input_names, dataset.output_names, tuple(records))
