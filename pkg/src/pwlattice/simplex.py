"""Exact two-phase simplex over rational data.

Every tableau row is stored as a vector of integers with one shared positive
denominator, so pivoting is integer cross-multiplication followed by a gcd
renormalization; no floating point appears anywhere.  Bland's rule selects
both the entering column and the leaving row, which guarantees termination.

Variables are unrestricted in sign (each is split internally into a
difference of two nonnegative columns).  Constraints are ``coeffs . x <= rhs``
or ``coeffs . x == rhs``.  The solver maximizes; callers negate to minimize.

Dual multipliers are read off the final objective row: one per constraint,
nonnegative for inequality rows at an optimum (they form the exact
certificate ``sum_i y_i * row_i`` dominating the objective).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

LE = "le"
EQ = "eq"

_MAX_PIVOTS = 1_000_000  # defensive only; Bland's rule terminates on its own


@dataclass(frozen=True)
class SimplexResult:
    status: str
    objective: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    duals: tuple[Fraction, ...] | None = None


def _renorm(ints: list[int], den: int) -> tuple[list[int], int]:
    """Divide a row by the gcd of its entries and denominator."""
    g = den
    for v in ints:
        if v:
            g = gcd(g, v)
            if g == 1:
                return ints, den
    if g > 1:
        return [v // g for v in ints], den // g
    return ints, den


class _Tableau:
    """Dense integer tableau; ``rows[i] / dens[i]`` is the exact row."""

    def __init__(self, rows, dens, basis, enter_limit):
        self.rows: list[list[int]] = rows
        self.dens: list[int] = dens
        self.basis: list[int] = basis
        self.row_ids: list[int] = list(range(len(rows)))
        self.enter_limit = enter_limit  # artificial columns may never enter
        self.obj: list[int] = []
        self.obj_den = 1

    def set_objective(self, neg_costs: list[int], den: int) -> None:
        """Install an objective row and price out the current basis."""
        self.obj = neg_costs
        self.obj_den = den
        for i, row in enumerate(self.rows):
            self._eliminate_from_obj(row, self.dens[i], self.basis[i])

    def _eliminate_from_obj(self, row: list[int], den: int, col: int) -> None:
        f = self.obj[col]
        if f == 0:
            return
        new = [a * den - f * b for a, b in zip(self.obj, row)]
        self.obj, self.obj_den = _renorm(new, self.obj_den * den)

    def pivot(self, p: int, q: int) -> None:
        rows = self.rows
        dens = self.dens
        prow = rows[p]
        piv = prow[q]
        for i, row in enumerate(rows):
            if i == p:
                continue
            f = row[q]
            if f:
                new = [a * piv - f * b for a, b in zip(row, prow)]
                rows[i], dens[i] = _renorm(new, dens[i] * piv)
        f = self.obj[q]
        if f:
            new = [a * piv - f * b for a, b in zip(self.obj, prow)]
            self.obj, self.obj_den = _renorm(new, self.obj_den * piv)
        rows[p], dens[p] = _renorm(prow, piv)
        self.basis[p] = q

    def optimize(self) -> str:
        """Run Bland pivots until optimal or unbounded."""
        rhs = len(self.obj) - 1
        rows = self.rows
        for _ in range(_MAX_PIVOTS):
            obj = self.obj
            q = -1
            for j in range(self.enter_limit):
                if obj[j] < 0:
                    q = j
                    break
            if q < 0:
                return OPTIMAL
            p = -1
            b_num = b_den = 0
            basis = self.basis
            for i, row in enumerate(rows):
                a = row[q]
                if a > 0:
                    r = row[rhs]
                    if p < 0:
                        p, b_num, b_den = i, r, a
                    else:
                        cmp = r * b_den - b_num * a
                        if cmp < 0 or (cmp == 0 and basis[i] < basis[p]):
                            p, b_num, b_den = i, r, a
            if p < 0:
                return UNBOUNDED
            self.pivot(p, q)
        raise RuntimeError("simplex pivot limit exceeded")  # pragma: no cover

    def objective_value(self) -> Fraction:
        return Fraction(self.obj[-1], self.obj_den)


def _scale_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int, int]:
    """Clear denominators; returns (integer coeffs, integer rhs, denominator)."""
    den = 1
    for c in coeffs:
        den = lcm(den, Fraction(c).denominator)
    den = lcm(den, Fraction(rhs).denominator)
    scaled = [int(c * den) for c in coeffs]
    return scaled, int(rhs * den), den


def solve(
    num_vars: int,
    constraints: Sequence[tuple[Sequence[Fraction], Fraction, str]],
    objective: Sequence[Fraction],
) -> SimplexResult:
    """Maximize ``objective . x`` over the constraints; ``x`` is free.

    ``constraints`` entries are ``(coeffs, rhs, kind)`` with kind LE or EQ.
    """
    if num_vars < 1:
        raise ValueError("at least one variable is required")
    m = len(constraints)
    nstruct = 2 * num_vars

    slack_of: dict[int, int] = {}
    ncols = nstruct
    for i, (_, _, kind) in enumerate(constraints):
        if kind == LE:
            slack_of[i] = ncols
            ncols += 1
    art_start = ncols

    flipped = [False] * m
    art_of: dict[int, int] = {}
    for i, (_, rhs, kind) in enumerate(constraints):
        if rhs < 0:
            flipped[i] = True
        if kind == EQ or flipped[i]:
            art_of[i] = ncols
            ncols += 1
    rhs_col = ncols

    rows: list[list[int]] = []
    dens: list[int] = []
    basis: list[int] = []
    for i, (coeffs, rhs, kind) in enumerate(constraints):
        if len(coeffs) != num_vars:
            raise ValueError("constraint dimension mismatch")
        ints, rhs_int, den = _scale_row(coeffs, rhs)
        sgn = -1 if flipped[i] else 1
        row = [0] * (ncols + 1)
        for j, v in enumerate(ints):
            if v:
                row[2 * j] = sgn * v
                row[2 * j + 1] = -sgn * v
        if i in slack_of:
            row[slack_of[i]] = sgn * den
        if i in art_of:
            row[art_of[i]] = den
        row[rhs_col] = sgn * rhs_int
        rows.append(row)
        dens.append(den)
        basis.append(art_of.get(i, slack_of.get(i, -1)))

    tab = _Tableau(rows, dens, basis, art_start)

    if art_of:
        phase1 = [0] * (ncols + 1)
        for col in art_of.values():
            phase1[col] = 1
        tab.set_objective(phase1, 1)
        status = tab.optimize()
        assert status == OPTIMAL  # phase-I objective is bounded above by 0
        if tab.obj[rhs_col] != 0:
            return SimplexResult(INFEASIBLE)
        _drive_out_artificials(tab, art_start)

    obj = [0] * (ncols + 1)
    oden = 1
    for c in objective:
        oden = lcm(oden, Fraction(c).denominator)
    for j, c in enumerate(objective):
        v = int(c * oden)
        if v:
            obj[2 * j] = -v
            obj[2 * j + 1] = v
    tab.set_objective(obj, oden)
    status = tab.optimize()
    if status == UNBOUNDED:
        return SimplexResult(UNBOUNDED)

    point = [Fraction(0)] * num_vars
    for i, row in enumerate(tab.rows):
        col = tab.basis[i]
        if col < nstruct:
            val = Fraction(row[rhs_col], tab.dens[i])
            if col % 2:
                point[col // 2] -= val
            else:
                point[col // 2] += val

    duals = []
    alive = set(tab.row_ids)
    for i in range(m):
        if i not in alive:
            duals.append(Fraction(0))  # row was redundant and dropped
        elif i in slack_of:
            duals.append(Fraction(tab.obj[slack_of[i]], tab.obj_den))
        else:
            val = Fraction(tab.obj[art_of[i]], tab.obj_den)
            duals.append(-val if flipped[i] else val)

    return SimplexResult(
        OPTIMAL,
        objective=tab.objective_value(),
        point=tuple(point),
        duals=tuple(duals),
    )


def _drive_out_artificials(tab: _Tableau, art_start: int) -> None:
    """Pivot basic artificials out; drop rows that are fully redundant."""
    p = 0
    while p < len(tab.rows):
        if tab.basis[p] >= art_start:
            row = tab.rows[p]
            q = next((j for j in range(art_start) if row[j] != 0), -1)
            if q < 0:
                del tab.rows[p], tab.dens[p], tab.basis[p], tab.row_ids[p]
                continue
            if row[q] < 0:
                tab.rows[p] = [-v for v in row]  # rhs is 0 here
            tab.pivot(p, q)
        p += 1
