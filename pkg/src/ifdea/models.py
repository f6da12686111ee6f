"""Input-minimization BCC multiplier models, crisp and fully intuitionistic fuzzy.

For DMU ``k`` the crisp model is::

    min   sum_i x_ik u_i + u0
    s.t.  sum_r y_rk v_r = 1
          sum_i x_ij u_i - sum_r y_rj v_r + u0 >= 0     for every DMU j
          u_i, v_r >= eps,  u0 free

The fuzzy model replaces every datum and weight by a TIFN and defuzzifies
each TIFN expression by its expected value, giving an LP in five components
per weight, ordered ``(nl, l, m, u, nu)`` = ``(w'L, wL, wM, wU, w'U)``.

The optimal objective ``E*`` is at least 1; the reported score is ``1/E*``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dataio import DEFAULT_EPSILON, DEFAULT_TOLERANCE, MISSING, DataError, Dataset
from .ifn import TIFN, tifn_from_crisp
from .lp import OPTIMAL, Constraint, LinearProgram, LpSolution, solve

__all__ = [
    "CRISP",
    "FIF",
    "EFFICIENT",
    "INEFFICIENT",
    "FAILED",
    "ModelError",
    "EvaluationError",
    "WeightSolution",
    "EfficiencyResult",
    "build_crisp_imbcc",
    "build_fifimbcc",
    "score_and_classify",
    "evaluate_dmu",
    "evaluate_all",
]

log = logging.getLogger(__name__)

CRISP = "crisp"
FIF = "fif"
EFFICIENT = "efficient"
INEFFICIENT = "inefficient"
FAILED = "failed"

COMPONENTS = ("nl", "l", "m", "u", "nu")
COMPONENT_WEIGHTS = (1 / 8, 1 / 8, 4 / 8, 1 / 8, 1 / 8)
# output component subtracted in each slot of the per-DMU constraint
_REVERSED = (4, 3, 2, 1, 0)


class ModelError(DataError):
    """Dataset cannot be turned into a DEA model."""


class EvaluationError(RuntimeError):
    """The LP of one DMU did not reach an optimum."""


@dataclass(frozen=True)
class WeightSolution:
    """Optimal multipliers: one tuple per input, per output, and the intercept.

    Crisp tuples have length 1; fuzzy ones hold the five components in
    ascending chain order.
    """

    inputs: tuple[tuple[float, ...], ...]
    outputs: tuple[tuple[float, ...], ...]
    intercept: tuple[float, ...]


@dataclass(frozen=True)
class EfficiencyResult:
    dmu_id: int
    name: str
    objective_value: float
    reported_score: float
    classification: str
    weights: Optional[WeightSolution]
    model_kind: str
    error: Optional[str] = None


def _check_k(dataset: Dataset, k: int) -> None:
    if not 0 <= k < dataset.n_dmus:
        raise IndexError(f"DMU index {k} out of range for {dataset.n_dmus} DMUs")


def _crisp_matrix(dataset: Dataset):
    X = np.empty((dataset.n_dmus, len(dataset.input_names)))
    Y = np.empty((dataset.n_dmus, len(dataset.output_names)))
    for j, rec in enumerate(dataset.records):
        for target, cells, names in ((X, rec.inputs, dataset.input_names), (Y, rec.outputs, dataset.output_names)):
            for i, v in enumerate(cells):
                where = f"{names[i]} of DMU {rec.name!r}"
                if v is MISSING:
                    raise ModelError(f"missing cell {where}; impute first", row=rec.id)
                if isinstance(v, TIFN):
                    if not v.is_degenerate:
                        raise ModelError(f"fuzzy cell {where} in a crisp model", row=rec.id)
                    v = v.mode
                if not v > 0:
                    raise ModelError(f"nonpositive cell {where}: {v!r}", row=rec.id)
                target[j, i] = v
    return X, Y


def _fuzzy_tensor(dataset: Dataset):
    """Arrays of shape (n, m, 5) and (n, s, 5) holding each cell's chain."""
    n = dataset.n_dmus
    X = np.empty((n, len(dataset.input_names), 5))
    Y = np.empty((n, len(dataset.output_names), 5))
    for j, rec in enumerate(dataset.records):
        for target, cells, names in ((X, rec.inputs, dataset.input_names), (Y, rec.outputs, dataset.output_names)):
            for i, v in enumerate(cells):
                where = f"{names[i]} of DMU {rec.name!r}"
                if v is MISSING:
                    raise ModelError(f"missing cell {where}; impute first", row=rec.id)
                if not isinstance(v, TIFN):
                    v = tifn_from_crisp(v)
                if not v.nonmem_lower > 0:
                    raise ModelError(f"cell {where} needs a positive non-membership lower bound", row=rec.id)
                target[j, i] = v.chain()
    return X, Y


def _crisp_program(X, Y, k: int, eps: float, names) -> LinearProgram:
    n, m = X.shape
    s = Y.shape[1]
    objective = np.concatenate([X[k], np.zeros(s), [1.0]])
    cons = [Constraint(np.concatenate([np.zeros(m), Y[k], [0.0]]), "=", 1.0)]
    for j in range(n):
        cons.append(Constraint(np.concatenate([X[j], -Y[j], [1.0]]), ">=", 0.0))
    bounds = [eps] * (m + s) + [None]
    return LinearProgram(objective, cons, bounds, variable_names=names)


def _crisp_names(dataset: Dataset) -> tuple[str, ...]:
    return tuple(
        [f"u[{n}]" for n in dataset.input_names] + [f"v[{n}]" for n in dataset.output_names] + ["u0"]
    )


def build_crisp_imbcc(dataset: Dataset, k: int, eps: float = DEFAULT_EPSILON) -> LinearProgram:
    """Crisp IMBCC program for the DMU at position ``k`` (0-based).

    Variables: one weight per input, one per output, then the free intercept.
    """
    _check_k(dataset, k)
    if not eps > 0:
        raise ValueError("eps must be positive")
    X, Y = _crisp_matrix(dataset)
    return _crisp_program(X, Y, k, eps, _crisp_names(dataset))


def _fif_names(dataset: Dataset) -> tuple[str, ...]:
    names = []
    for prefix, group in (("u", dataset.input_names), ("v", dataset.output_names)):
        names += [f"{prefix}[{g}].{c}" for g in group for c in COMPONENTS]
    names += [f"u0.{c}" for c in COMPONENTS]
    return tuple(names)


def _fif_program(X, Y, k: int, eps: float, names) -> LinearProgram:
    n, m, _ = X.shape
    s = Y.shape[1]
    w = COMPONENT_WEIGHTS
    nvar = 5 * (m + s + 1)
    u0 = 5 * (m + s)

    def u(i, c):
        return 5 * i + c

    def v(r, c):
        return 5 * (m + r) + c

    objective = np.zeros(nvar)
    norm = np.zeros(nvar)
    for c in range(5):
        for i in range(m):
            objective[u(i, c)] += w[c] * X[k, i, c]
        objective[u0 + c] += w[c]
        for r in range(s):
            norm[v(r, c)] += w[c] * Y[k, r, c]
    cons = [Constraint(norm, "=", 1.0)]
    for j in range(n):
        row = np.zeros(nvar)
        for c in range(5):
            oc = _REVERSED[c]
            for i in range(m):
                row[u(i, c)] += w[c] * X[j, i, c]
            for r in range(s):
                row[v(r, oc)] -= w[c] * Y[j, r, oc]
            row[u0 + c] += w[c]
        cons.append(Constraint(row, ">=", 0.0))
    for g in range(m + s + 1):
        for c in range(4):
            row = np.zeros(nvar)
            row[5 * g + c] = 1.0
            row[5 * g + c + 1] = -1.0
            cons.append(Constraint(row, "<=", 0.0))
    bounds = [eps] * (5 * (m + s)) + [None] * 5
    return LinearProgram(objective, cons, bounds, variable_names=names)


def build_fifimbcc(dataset: Dataset, k: int, eps: float = DEFAULT_EPSILON) -> LinearProgram:
    """Defuzzified fully fuzzy IMBCC program for the DMU at position ``k``.

    Crisp cells are promoted to degenerate TIFNs.  Variable layout: five
    components per input weight, five per output weight, five for the
    intercept, each group in ascending chain order.
    """
    _check_k(dataset, k)
    if not eps > 0:
        raise ValueError("eps must be positive")
    X, Y = _fuzzy_tensor(dataset)
    return _fif_program(X, Y, k, eps, _fif_names(dataset))


def score_and_classify(
    solution: LpSolution,
    tolerance: float = DEFAULT_TOLERANCE,
    *,
    model_kind: str = CRISP,
    n_inputs: Optional[int] = None,
    n_outputs: Optional[int] = None,
    dmu_id: int = 0,
    name: str = "",
) -> EfficiencyResult:
    """Turn an optimal LP solution into an :class:`EfficiencyResult`.

    Weights are extracted when the input/output counts are given.
    """
    if solution.status != OPTIMAL:
        raise EvaluationError(f"LP status {solution.status}")
    e = float(solution.objective_value)
    efficient = abs(e - 1.0) <= tolerance
    weights = None
    if n_inputs is not None and n_outputs is not None and solution.variable_values is not None:
        x = np.asarray(solution.variable_values, dtype=float)
        width = 1 if model_kind == CRISP else 5
        groups = [tuple(float(t) for t in x[width * g: width * (g + 1)]) for g in range(n_inputs + n_outputs + 1)]
        weights = WeightSolution(tuple(groups[:n_inputs]), tuple(groups[n_inputs:-1]), groups[-1])
    return EfficiencyResult(
        dmu_id=dmu_id,
        name=name,
        objective_value=e,
        reported_score=1.0 / e,
        classification=EFFICIENT if efficient else INEFFICIENT,
        weights=weights,
        model_kind=model_kind,
    )


def _failed(rec, model_kind: str, message: str) -> EfficiencyResult:
    return EfficiencyResult(rec.id, rec.name, float("nan"), float("nan"), FAILED, None, model_kind, message)


def evaluate_dmu(dataset: Dataset, k: int, model_kind: str = CRISP,
                 eps: float = DEFAULT_EPSILON, tolerance: float = DEFAULT_TOLERANCE) -> EfficiencyResult:
    build = build_crisp_imbcc if model_kind == CRISP else build_fifimbcc
    lp = build(dataset, k, eps)
    rec = dataset.records[k]
    return score_and_classify(
        solve(lp), tolerance, model_kind=model_kind,
        n_inputs=len(dataset.input_names), n_outputs=len(dataset.output_names),
        dmu_id=rec.id, name=rec.name,
    )


def evaluate_all(dataset: Dataset, model_kind: str = CRISP, eps: float = DEFAULT_EPSILON,
                 tolerance: float = DEFAULT_TOLERANCE, workers: int = 1) -> list[EfficiencyResult]:
    """Score every DMU; results are in DMU order regardless of ``workers``.

    Data problems raise :class:`ModelError` before any solve.  A DMU whose LP
    fails is reported with classification ``"failed"`` and the batch goes on.
    """
    if model_kind not in (CRISP, FIF):
        raise ValueError(f"unknown model kind {model_kind!r}")
    if not eps > 0:
        raise ValueError("eps must be positive")
    if model_kind == CRISP:
        X, Y = _crisp_matrix(dataset)
        names = _crisp_names(dataset)
        program = _crisp_program
    else:
        X, Y = _fuzzy_tensor(dataset)
        names = _fif_names(dataset)
        program = _fif_program
    m, s = len(dataset.input_names), len(dataset.output_names)

    def one(k: int) -> EfficiencyResult:
        rec = dataset.records[k]
        solution = solve(program(X, Y, k, eps, names))
        try:
            return score_and_classify(solution, tolerance, model_kind=model_kind,
                                      n_inputs=m, n_outputs=s, dmu_id=rec.id, name=rec.name)
        except EvaluationError as exc:
            log.info("DMU %s (%s): %s", rec.id, rec.name, exc)
            return _failed(rec, model_kind, str(exc))

    indices = range(dataset.n_dmus)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, indices))
    return [one(k) for k in indices]
