"""Dense two-phase simplex for small linear programs.

Problems are stated as ``minimize c @ x + constant`` subject to rows
``a @ x {<=, =, >=} b`` and per-variable lower bounds (``None`` = free).
Pivoting follows Bland's rule, so the method terminates on degenerate
problems, which DEA multiplier models produce in abundance.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "Constraint",
    "LinearProgram",
    "LpSolution",
    "LPInputError",
    "solve",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "ITERATION_LIMIT",
]

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"

RELATIONS = ("<=", "=", ">=")

FEASIBILITY_TOL = 1e-9
OPTIMALITY_TOL = 1e-9
PIVOT_TOL = 1e-10


class LPInputError(ValueError):
    """Malformed linear program (dimension mismatch, bad relation, non-finite data)."""


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[float, ...]
    relation: str
    rhs: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(float(a) for a in self.coefficients))
        object.__setattr__(self, "rhs", float(self.rhs))
        if self.relation not in RELATIONS:
            raise LPInputError(f"unknown relation {self.relation!r}")
        if not math.isfinite(self.rhs):
            raise LPInputError("constraint rhs must be finite")
        if not all(math.isfinite(a) for a in self.coefficients):
            raise LPInputError("constraint coefficients must be finite")


@dataclass(frozen=True)
class LinearProgram:
    """Minimization LP; ``lower_bounds[j] is None`` marks a free variable."""

    objective: tuple[float, ...]
    constraints: tuple[Constraint, ...]
    lower_bounds: tuple[Optional[float], ...]
    constant: float = 0.0
    variable_names: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective", tuple(float(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(
            self, "lower_bounds", tuple(None if lb is None else float(lb) for lb in self.lower_bounds)
        )
        n = len(self.objective)
        if len(self.lower_bounds) != n:
            raise LPInputError(f"{len(self.lower_bounds)} bounds for {n} variables")
        for i, con in enumerate(self.constraints):
            if len(con.coefficients) != n:
                raise LPInputError(f"constraint {i} has {len(con.coefficients)} coefficients, expected {n}")
        if self.variable_names is not None:
            object.__setattr__(self, "variable_names", tuple(self.variable_names))
            if len(self.variable_names) != n:
                raise LPInputError("variable_names length mismatch")
        if not all(math.isfinite(c) for c in self.objective):
            raise LPInputError("objective coefficients must be finite")

    @property
    def n_variables(self) -> int:
        return len(self.objective)

    def names(self) -> tuple[str, ...]:
        return self.variable_names or tuple(f"x{j + 1}" for j in range(self.n_variables))

    def to_lp_text(self) -> str:
        """Plain-text dump in an LP-file-like layout, for cross-checking elsewhere."""
        names = self.names()

        def expr(coefs: Sequence[float]) -> str:
            terms = [f"{'-' if a < 0 else '+'} {abs(a)!r} {v}" for a, v in zip(coefs, names) if a != 0]
            return " ".join(terms) if terms else "0"

        lines = ["Minimize", f" obj: {expr(self.objective)}"]
        if self.constant:
            lines[-1] += f" + {self.constant!r} constant"
        lines.append("Subject To")
        for i, con in enumerate(self.constraints):
            lines.append(f" c{i + 1}: {expr(con.coefficients)} {con.relation} {con.rhs!r}")
        lines.append("Bounds")
        for v, lb in zip(names, self.lower_bounds):
            lines.append(f" {v} free" if lb is None else f" {v} >= {lb!r}")
        lines.append("End")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LpSolution:
    status: str
    objective_value: float = math.nan
    variable_values: Optional[np.ndarray] = field(default=None, compare=False)
    iterations: int = 0


def _equilibrate(A: np.ndarray, passes: int = 4):
    """Geometric row/column scaling; returns (row_scale, col_scale)."""
    m, n = A.shape
    r = np.ones(m)
    s = np.ones(n)
    absA = np.abs(A)
    for _ in range(passes):
        B = absA * r[:, None] * s[None, :]
        with np.errstate(divide="ignore"):
            rmax = B.max(axis=1, initial=0.0)
            rmin = np.where(B > 0, B, np.inf).min(axis=1, initial=np.inf)
        ok = rmax > 0
        r[ok] /= np.sqrt(rmax[ok] * rmin[ok])
        B = absA * r[:, None] * s[None, :]
        cmax = B.max(axis=0, initial=0.0)
        cmin = np.where(B > 0, B, np.inf).min(axis=0, initial=np.inf)
        ok = cmax > 0
        s[ok] /= np.sqrt(cmax[ok] * cmin[ok])
    # finish with max-row scaling so every row has a unit entry
    B = absA * r[:, None] * s[None, :]
    rmax = B.max(axis=1, initial=0.0)
    ok = rmax > 0
    r[ok] /= rmax[ok]
    return r, s


class _Tableau:
    """Working state of one simplex run."""

    def __init__(self, T: np.ndarray, basis: list[int], n_struct: int, artificial: np.ndarray,
                 max_iterations: int):
        self.T = T  # m x (ncols + 1); last column is the rhs
        self.basis = basis
        self.n_struct = n_struct
        self.artificial = artificial  # bool per column
        self.iterations = 0
        self.max_iterations = max_iterations

    def pivot(self, r: int, q: int, d: np.ndarray) -> None:
        T = self.T
        T[r] /= T[r, q]
        col = T[:, q].copy()
        col[r] = 0.0
        nz = np.nonzero(col)[0]
        if nz.size:
            T[nz] -= np.outer(col[nz], T[r])
        d -= d[q] * T[r]
        self.basis[r] = q
        self.iterations += 1

    def run(self, d: np.ndarray, allowed: np.ndarray, tol_d: float) -> str:
        """Minimize with reduced-cost row ``d`` (last entry holds -objective)."""
        T = self.T
        while True:
            if self.iterations >= self.max_iterations:
                return ITERATION_LIMIT
            candidates = np.nonzero((d[:-1] < -tol_d) & allowed)[0]
            if candidates.size == 0:
                return OPTIMAL
            q = int(candidates[0])  # Bland: lowest index
            col = T[:, q]
            rows = np.nonzero(col > PIVOT_TOL)[0]
            if rows.size == 0:
                return UNBOUNDED
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            r = min(ties, key=lambda i: self.basis[i])  # Bland: lowest basic index
            self.pivot(int(r), q, d)


def solve(lp: LinearProgram, *, max_iterations: Optional[int] = None) -> LpSolution:
    """Solve ``lp`` with the two-phase simplex method.

    Infeasibility and unboundedness are reported through ``status``; only a
    malformed program raises (``LPInputError``).
    """
    n = lp.n_variables
    m = len(lp.constraints)
    A = np.array([c.coefficients for c in lp.constraints], dtype=float).reshape(m, n)
    b = np.array([c.rhs for c in lp.constraints], dtype=float)
    rel = [c.relation for c in lp.constraints]
    c = np.array(lp.objective, dtype=float)

    # x = shift + P @ z with z >= 0; free variables become z+ - z-
    shift = np.array([0.0 if lb is None else lb for lb in lp.lower_bounds])
    free = [j for j, lb in enumerate(lp.lower_bounds) if lb is None]
    P = np.hstack([np.eye(n), -np.eye(n)[:, free]]) if free else np.eye(n)
    A_z = A @ P
    b_z = b - A @ shift
    c_z = P.T @ c
    constant = lp.constant + float(c @ shift)
    nz = P.shape[1]

    if m == 0:
        if np.any(c_z < 0):
            return LpSolution(UNBOUNDED)
        return LpSolution(OPTIMAL, constant, shift.copy(), 0)

    row_scale, col_scale = _equilibrate(A_z) if A_z.size else (np.ones(m), np.ones(nz))
    A_s = A_z * row_scale[:, None] * col_scale[None, :]
    b_s = b_z * row_scale
    c_s = c_z * col_scale

    # make every rhs nonnegative
    for i in range(m):
        if b_s[i] < 0:
            A_s[i] = -A_s[i]
            b_s[i] = -b_s[i]
            rel[i] = {"<=": ">=", ">=": "<=", "=": "="}[rel[i]]

    n_slack = sum(r != "=" for r in rel)
    n_art = sum(r != "<=" for r in rel)
    ncols = nz + n_slack + n_art
    T = np.zeros((m, ncols + 1))
    T[:, :nz] = A_s
    T[:, -1] = b_s
    artificial = np.zeros(ncols, dtype=bool)
    basis = [0] * m
    k_slack = nz
    k_art = nz + n_slack
    for i, r in enumerate(rel):
        if r == "<=":
            T[i, k_slack] = 1.0
            basis[i] = k_slack
            k_slack += 1
        else:
            if r == ">=":
                T[i, k_slack] = -1.0
                k_slack += 1
            T[i, k_art] = 1.0
            artificial[k_art] = True
            basis[i] = k_art
            k_art += 1

    initial = T[:, :ncols].copy()
    rows = list(range(m))

    if max_iterations is None:
        max_iterations = 10 * (m + n) ** 2 + 50
    tab = _Tableau(T, basis, nz, artificial, max_iterations)

    # phase 1: minimize the sum of artificials
    if n_art:
        d1 = np.zeros(ncols + 1)
        d1[:ncols][artificial] = 1.0
        for i, j in enumerate(basis):
            if artificial[j]:
                d1 -= T[i]
        status = tab.run(d1, np.ones(ncols, dtype=bool), OPTIMALITY_TOL)
        if status == ITERATION_LIMIT:
            return LpSolution(ITERATION_LIMIT, iterations=tab.iterations)
        infeas = -d1[-1]
        if infeas > FEASIBILITY_TOL * max(1.0, float(np.abs(b_s).max())):
            return LpSolution(INFEASIBLE, iterations=tab.iterations)
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = []
        for i in range(m):
            if artificial[tab.basis[i]]:
                row = np.abs(tab.T[i, :ncols])
                row[artificial] = 0.0
                q = int(np.argmax(row))
                if row[q] > PIVOT_TOL:
                    tab.pivot(i, q, d1)
                    keep.append(i)
            else:
                keep.append(i)
        if len(keep) < m:
            tab.T = tab.T[keep]
            tab.basis = [tab.basis[i] for i in keep]
            rows = keep
        tab.T[:, -1] = np.maximum(tab.T[:, -1], 0.0)

    # phase 2
    cost = np.zeros(ncols + 1)
    cost[:nz] = c_s
    d2 = cost.copy()
    for i, j in enumerate(tab.basis):
        if cost[j] != 0.0:
            d2 -= cost[j] * tab.T[i]
    allowed = ~artificial
    tol_d = OPTIMALITY_TOL * max(1.0, float(np.abs(c_s).max(initial=0.0)))
    status = tab.run(d2, allowed, tol_d)
    if status != OPTIMAL:
        return LpSolution(status, iterations=tab.iterations)

    # recover the basic solution; re-solve the basis system for accuracy
    y = np.zeros(ncols)
    y[tab.basis] = tab.T[:, -1]
    B = initial[np.ix_(rows, tab.basis)]
    try:
        refined = np.linalg.solve(B, b_s[rows])
        if np.all(np.isfinite(refined)):
            y[tab.basis] = np.maximum(refined, 0.0)
    except np.linalg.LinAlgError:
        log.debug("basis refinement skipped: singular basis matrix")
    z = y[:nz] * col_scale
    x = shift + P @ z
    value = float(c @ x) + lp.constant
    return LpSolution(OPTIMAL, value, x, tab.iterations)

