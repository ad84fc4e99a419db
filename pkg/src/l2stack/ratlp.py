"""Exact rational linear programming (dense two-phase simplex, Bland's rule).

Problems are stated as ``maximize c.x`` subject to rows ``a.x (<=|=|>=) b``,
with every variable either nonnegative or free.  Optimal outcomes carry a
dual vector ``y`` (one entry per row) satisfying

* y_i >= 0 on ``<=`` rows, y_i <= 0 on ``>=`` rows, free on ``=`` rows,
* (A^T y)_j >= c_j for nonnegative x_j and (A^T y)_j == c_j for free x_j,
* b.y == c.x,

all of which :func:`check_certificate` re-verifies by substitution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "LinearProgram",
    "LPOutcome",
    "LPStatus",
    "LPError",
    "solve_lp",
    "check_certificate",
    "lp_from_dense",
]

_RELATIONS = ("<=", "=", ">=")


class LPError(ValueError):
    pass


class LPStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple[Fraction, ...]
    constraints: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]
    free: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        rows = []
        for k, con in enumerate(self.constraints):
            try:
                row, rel, rhs = con
            except (TypeError, ValueError):
                raise LPError(f"constraint {k} must be a (row, relation, rhs) triple") from None
            if rel == "==":
                rel = "="
            if rel not in _RELATIONS:
                raise LPError(f"constraint {k} has unknown relation {rel!r}")
            if len(row) != n:
                raise LPError(f"constraint {k} has {len(row)} coefficients, objective has {n}")
            rows.append((tuple(Fraction(a) for a in row), rel, Fraction(rhs)))
        object.__setattr__(self, "constraints", tuple(rows))
        free = frozenset(int(j) for j in self.free)
        if any(not 0 <= j < n for j in free):
            raise LPError(f"free variable index out of range 0..{n - 1}")
        object.__setattr__(self, "free", free)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def lower_bounds(self) -> tuple[Fraction | None, ...]:
        """0 for nonnegative variables, None for free ones (lower bound -inf)."""
        return tuple(None if j in self.free else Fraction(0) for j in range(self.num_vars))


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    dual: tuple[Fraction, ...] | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _Tableau:
    def __init__(self, rows, ncols, basis, allowed):
        self.rows = rows            # each row: ncols coefficients + rhs
        self.ncols = ncols
        self.basis = basis
        self.allowed = allowed      # columns that may enter
        self.pivots = 0
        self.z = None

    def set_costs(self, cost):
        z = list(cost) + [Fraction(0)]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                for k, v in enumerate(row):
                    if v:
                        z[k] -= cb * v
        # z[-1] holds -(objective value)
        self.z = z

    def pivot(self, p, j):
        prow = self.rows[p]
        piv = prow[j]
        if piv != 1:
            prow = [v / piv for v in prow]
            self.rows[p] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i != p:
                f = row[j]
                if f:
                    for k in nz:
                        row[k] -= f * prow[k]
        f = self.z[j]
        if f:
            z = self.z
            for k in nz:
                z[k] -= f * prow[k]
        self.basis[p] = j
        self.pivots += 1

    def run(self) -> bool:
        """Iterate to optimality; False if unbounded."""
        while True:
            j = next((k for k in self.allowed if self.z[k] > 0), None)
            if j is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[j]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], j)


def solve_lp(lp: LinearProgram) -> LPOutcome:
    n = lp.num_vars
    cons = lp.constraints
    m = len(cons)

    # structural columns: one per nonnegative variable, two per free variable
    colmap = []
    for j in range(n):
        colmap.append((j, 1))
        if j in lp.free:
            colmap.append((j, -1))
    nstruct = len(colmap)

    flips, rels = [], []
    for row, rel, rhs in cons:
        # zero-rhs >= rows become <= rows so that they get a slack instead of an artificial
        if rhs < 0 or (rhs == 0 and rel == ">="):
            flips.append(-1)
            rels.append({"<=": ">=", ">=": "<=", "=": "="}[rel])
        else:
            flips.append(1)
            rels.append(rel)

    extra = []          # (row, sign, is_artificial)
    unit_col = [0] * m  # column carrying +e_i for dual extraction
    for i, rel in enumerate(rels):
        if rel == "<=":
            unit_col[i] = nstruct + len(extra)
            extra.append((i, 1, False))
        elif rel == ">=":
            extra.append((i, -1, False))
            unit_col[i] = nstruct + len(extra)
            extra.append((i, 1, True))
        else:
            unit_col[i] = nstruct + len(extra)
            extra.append((i, 1, True))
    ncols = nstruct + len(extra)
    artificial = {nstruct + k for k, (_, _, art) in enumerate(extra) if art}

    zero = Fraction(0)
    rows = []
    for i, (row, _, rhs) in enumerate(cons):
        f = flips[i]
        r = [f * row[j] * s for j, s in colmap] + [zero] * len(extra) + [f * rhs]
        rows.append(r)
    for k, (i, s, _) in enumerate(extra):
        rows[i][nstruct + k] = Fraction(s)
    basis = list(unit_col)

    tab = _Tableau(rows, ncols, basis, [k for k in range(ncols) if k not in artificial])

    if artificial:
        tab.allowed = list(range(ncols))
        tab.set_costs([Fraction(-1) if k in artificial else zero for k in range(ncols)])
        tab.run()
        if tab.z[-1] != 0:
            return LPOutcome(LPStatus.INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis where possible
        for i in range(m):
            if tab.basis[i] in artificial:
                j = next((k for k in range(ncols) if k not in artificial and tab.rows[i][k] != 0), None)
                if j is not None:
                    tab.pivot(i, j)
        tab.allowed = [k for k in range(ncols) if k not in artificial]

    cost = [zero] * ncols
    for k, (j, s) in enumerate(colmap):
        cost[k] = s * lp.objective[j]
    tab.set_costs(cost)
    if not tab.run():
        return LPOutcome(LPStatus.UNBOUNDED, pivots=tab.pivots)

    xs = [zero] * ncols
    for i, b in enumerate(tab.basis):
        xs[b] = tab.rows[i][-1]
    x = [zero] * n
    for k, (j, s) in enumerate(colmap):
        x[j] += s * xs[k]
    value = sum((c * v for c, v in zip(lp.objective, x)), zero)
    dual = tuple(-flips[i] * tab.z[unit_col[i]] for i in range(m))
    return LPOutcome(LPStatus.OPTIMAL, value=value, x=tuple(x), dual=dual, pivots=tab.pivots)


def check_certificate(lp: LinearProgram, out: LPOutcome) -> bool:
    """Exact re-verification of primal feasibility, dual feasibility and strong duality."""
    if not out.optimal:
        return False
    x, y = out.x, out.dual
    if len(x) != lp.num_vars or len(y) != len(lp.constraints):
        return False
    zero = Fraction(0)
    if any(x[j] < 0 for j in range(lp.num_vars) if j not in lp.free):
        return False
    for (row, rel, rhs), yi in zip(lp.constraints, y):
        lhs = sum((a * v for a, v in zip(row, x)), zero)
        if rel == "<=" and not (lhs <= rhs and yi >= 0):
            return False
        if rel == ">=" and not (lhs >= rhs and yi <= 0):
            return False
        if rel == "=" and lhs != rhs:
            return False
    for j in range(lp.num_vars):
        aty = sum((row[j] * yi for (row, _, _), yi in zip(lp.constraints, y)), zero)
        c = lp.objective[j]
        if j in lp.free:
            if aty != c:
                return False
        elif aty < c:
            return False
    primal = sum((c * v for c, v in zip(lp.objective, x)), zero)
    dual_value = sum((rhs * yi for (_, _, rhs), yi in zip(lp.constraints, y)), zero)
    return primal == dual_value == out.value


def lp_from_dense(c: Sequence, rows: Sequence[Sequence], rels: Sequence[str], rhs: Sequence,
                  free: Sequence[int] = ()) -> LinearProgram:
    return LinearProgram(tuple(c), tuple(zip(map(tuple, rows), rels, rhs)), frozenset(free))
