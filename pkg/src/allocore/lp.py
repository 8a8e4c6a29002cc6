"""Dense exact-rational linear programming.

A two-phase primal simplex over fractions.Fraction with Bland's
anti-cycling rule. Problems are stated as maximization with mixed
<=, ==, >= rows and optional per-variable lower bounds (None = free).
Free variables are split into differences of nonnegatives internally, so
every returned optimum is a vertex of the feasible region augmented by
the bound constraints. No floating point is used anywhere.

Instances at the intended scale are tiny (at most a few thousand rows,
a few dozen structural columns), so the implementation favours exactness
and determinism over speed: fixed variable order, ascending row order,
no presolve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .games import as_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)

LE = "<="
EQ = "=="
GE = ">="
_RELATIONS = (LE, EQ, GE)


@dataclass(frozen=True, slots=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, slots=True)
class LpSolution:
    status: LpStatus
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class LpProblem:
    """max objective . x subject to rows and optional variable lower bounds."""

    def __init__(
        self,
        num_vars: int,
        objective: Sequence[object],
        lower_bounds: Sequence[object | None] | None = None,
    ):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        self.num_vars = num_vars
        self.objective = tuple(as_rational(v) for v in objective)
        if len(self.objective) != num_vars:
            raise ValueError("objective length does not match num_vars")
        if lower_bounds is None:
            self.lower_bounds: list[Fraction | None] = [None] * num_vars
        else:
            if len(lower_bounds) != num_vars:
                raise ValueError("lower_bounds length does not match num_vars")
            self.lower_bounds = [
                None if b is None else as_rational(b) for b in lower_bounds
            ]
        self.constraints: list[Constraint] = []

    def add(self, coeffs: Sequence[object], relation: str, rhs: object) -> None:
        row = tuple(as_rational(v) for v in coeffs)
        if len(row) != self.num_vars:
            raise ValueError("coefficient vector length does not match num_vars")
        if relation not in _RELATIONS:
            raise ValueError(f"relation must be one of {_RELATIONS}")
        self.constraints.append(Constraint(row, relation, as_rational(rhs)))


@dataclass(frozen=True, slots=True)
class VerifyResult:
    feasible: bool
    violated_constraints: tuple[int, ...]
    violated_bounds: tuple[int, ...]


def verify_point(problem: LpProblem, point: Sequence[object]) -> VerifyResult:
    """Exact feasibility report for a candidate point."""
    x = [as_rational(v) for v in point]
    if len(x) != problem.num_vars:
        raise ValueError("point length does not match num_vars")
    bad_rows = []
    for idx, con in enumerate(problem.constraints):
        lhs = sum((c * v for c, v in zip(con.coeffs, x) if c), _ZERO)
        if con.relation == LE:
            ok = lhs <= con.rhs
        elif con.relation == GE:
            ok = lhs >= con.rhs
        else:
            ok = lhs == con.rhs
        if not ok:
            bad_rows.append(idx)
    bad_bounds = [
        i
        for i, (v, lb) in enumerate(zip(x, problem.lower_bounds))
        if lb is not None and v < lb
    ]
    return VerifyResult(not bad_rows and not bad_bounds, tuple(bad_rows), tuple(bad_bounds))


class _Tableau:
    """Simplex tableau with unit basis columns maintained by pivoting."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int, cost: list[Fraction]) -> Fraction:
        """Pivot on (r, c); returns the objective gain cost[c] * new rhs[r]."""
        prow = self.rows[r]
        piv = prow[c]
        if piv != 1:
            inv = _ONE / piv
            for j, v in enumerate(prow):
                if v:
                    prow[j] = v * inv
            self.rhs[r] *= inv
        nz = [j for j, v in enumerate(prow) if v]
        br = self.rhs[r]
        for rr, row in enumerate(self.rows):
            if rr == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                if br:
                    self.rhs[rr] -= f * br
        gain = _ZERO
        f = cost[c]
        if f:
            for j in nz:
                cost[j] -= f * prow[j]
            gain = f * br
        self.basis[r] = c
        return gain

    def run_simplex(self, cost: list[Fraction], allowed_cols: int) -> str:
        """Bland-rule primal simplex; mutates tableau/cost in place.

        Returns "optimal" or "unbounded". Columns >= allowed_cols are
        never entered (used to freeze artificial columns in phase 2).
        """
        rows, rhs, basis = self.rows, self.rhs, self.basis
        while True:
            enter = -1
            for j in range(allowed_cols):
                if cost[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best_ratio: Fraction | None = None
            for r, row in enumerate(rows):
                a = row[enter]
                if a > 0:
                    ratio = rhs[r] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[leave])
                    ):
                        best_ratio = ratio
                        leave = r
            if leave < 0:
                return "unbounded"
            self.pivot(leave, enter, cost)


def solve(problem: LpProblem) -> LpSolution:
    """Exact optimum, or an Infeasible/Unbounded verdict.

    Deterministic: identical problems yield bit-identical solutions.
    """
    n = problem.num_vars
    # Column layout: one column per bounded variable (shifted by its lower
    # bound), two per free variable (positive and negative parts).
    col_var: list[tuple[int, int]] = []  # (variable index, sign)
    shift: list[Fraction] = []
    for i, lb in enumerate(problem.lower_bounds):
        if lb is None:
            col_var.append((i, 1))
            col_var.append((i, -1))
            shift.append(_ZERO)
        else:
            col_var.append((i, 1))
            shift.append(lb)
    nstruct = len(col_var)

    m = len(problem.constraints)
    nslack = sum(1 for con in problem.constraints if con.relation != EQ)
    width = nstruct + nslack

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack_col_of_row: list[int | None] = []
    slack_idx = 0
    for con in problem.constraints:
        row = [_ZERO] * width
        for j, (i, sign) in enumerate(col_var):
            c = con.coeffs[i]
            if c:
                row[j] = c if sign > 0 else -c
        b = con.rhs - sum(
            (con.coeffs[i] * shift[i] for i in range(n) if shift[i]), _ZERO
        )
        if con.relation == EQ:
            scol = None
        else:
            scol = nstruct + slack_idx
            row[scol] = _ONE if con.relation == LE else -_ONE
            slack_idx += 1
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        slack_col_of_row.append(scol)

    # Initial basis: use the slack where it survived with coefficient +1,
    # otherwise an artificial column (appended after all real columns).
    basis: list[int] = [-1] * m
    art_rows: list[int] = []
    for r in range(m):
        scol = slack_col_of_row[r]
        if scol is not None and rows[r][scol] == 1:
            basis[r] = scol
        else:
            art_rows.append(r)
    nart = len(art_rows)
    if nart:
        for row in rows:
            row.extend([_ZERO] * nart)
        for k, r in enumerate(art_rows):
            rows[r][width + k] = _ONE
            basis[r] = width + k

    tab = _Tableau(rows, rhs, basis)

    if nart:
        # Phase 1: maximize -(sum of artificials), starting value -(sum b_r).
        cost = [_ZERO] * (width + nart)
        zval = _ZERO
        for r in art_rows:
            row = rows[r]
            for j in range(width):
                if row[j]:
                    cost[j] += row[j]
            zval -= rhs[r]
        verdict = tab.run_simplex(cost, width + nart)
        if verdict != "optimal":  # the phase-1 objective is bounded by 0
            raise AssertionError("phase 1 cannot be unbounded")
        # Recompute the attained value exactly from the basic solution.
        attained = _ZERO
        for r in range(m):
            if basis[r] >= width:
                attained -= rhs[r]
        if attained < 0:
            return LpSolution(LpStatus.INFEASIBLE)
        # Drive remaining artificials out of the basis; drop redundant rows.
        r = 0
        while r < len(rows):
            if basis[r] >= width:
                prow = rows[r]
                pivot_col = next((j for j in range(width) if prow[j]), None)
                if pivot_col is None:
                    del rows[r], rhs[r], basis[r]
                    continue
                tab.pivot(r, pivot_col, cost)
            r += 1
        for row in rows:
            del row[width:]

    # Phase 2: reduce the real objective against the current basis.
    obj = [_ZERO] * width
    for j, (i, sign) in enumerate(col_var):
        c = problem.objective[i]
        if c:
            obj[j] = c if sign > 0 else -c
    cost = list(obj)
    for r, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            row = tab.rows[r]
            for j in range(width):
                if row[j]:
                    cost[j] -= f * row[j]
            cost[bcol] = _ZERO  # exact by construction; avoid drift
    verdict = tab.run_simplex(cost, width)
    if verdict == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED)

    y = [_ZERO] * width
    for r, bcol in enumerate(tab.basis):
        y[bcol] = tab.rhs[r]
    x = [shift[i] for i in range(n)]
    for j, (i, sign) in enumerate(col_var):
        if y[j]:
            x[i] += y[j] if sign > 0 else -y[j]
    value = sum((c * v for c, v in zip(problem.objective, x) if c), _ZERO)
    point = tuple(x)

    check = verify_point(problem, point)
    if not check.feasible:  # exact arithmetic: this would be a solver bug
        raise AssertionError(
            f"simplex returned an infeasible point: rows {check.violated_constraints}, "
            f"bounds {check.violated_bounds}"
        )
    return LpSolution(LpStatus.OPTIMAL, value, point)
