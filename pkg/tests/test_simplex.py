"""Solver checks against an independent vertex-enumeration oracle.

The oracle solves small bounded LPs by enumerating all d-subsets of
constraint boundaries, solving each linear system by exact Gaussian
elimination, and maximizing over the feasible vertices.  It shares no code
with the simplex.
"""

from fractions import Fraction
from itertools import combinations
import random

from pwlattice.simplex import EQ, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, solve


def gauss_solve(matrix, rhs):
    """Solve a square system exactly; returns None if singular."""
    n = len(matrix)
    a = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1, 1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def oracle_max(num_vars, rows, objective):
    """Expected (status, optimum) for a bounded instance with LE rows only."""
    best = None
    for subset in combinations(range(len(rows)), num_vars):
        mat = [rows[i][0] for i in subset]
        rhs = [rows[i][1] for i in subset]
        point = gauss_solve(mat, rhs)
        if point is None:
            continue
        if all(
            sum(c * x for c, x in zip(coeffs, point)) <= b for coeffs, b, _ in rows
        ):
            val = sum(c * x for c, x in zip(objective, point))
            if best is None or val > best:
                best = val
    if best is None:
        return (INFEASIBLE, None)
    return (OPTIMAL, best)


def frac(a, b=1):
    return Fraction(a, b)


class TestKnownInstances:
    def test_single_upper_bound(self):
        res = solve(1, [((frac(1),), frac(3), LE)], (frac(1),))
        assert res.status == OPTIMAL
        assert res.objective == 3
        assert res.point == (3,)

    def test_two_bounds_sum(self):
        rows = [((frac(1), frac(0)), frac(1), LE), ((frac(0), frac(1)), frac(2), LE)]
        res = solve(2, rows, (frac(1), frac(1)))
        assert res.status == OPTIMAL
        assert res.objective == 3

    def test_unbounded(self):
        res = solve(1, [((frac(-1),), frac(0), LE)], (frac(1),))
        assert res.status == UNBOUNDED

    def test_infeasible(self):
        rows = [((frac(1),), frac(0), LE), ((frac(-1),), frac(-1), LE)]
        res = solve(1, rows, (frac(1),))
        assert res.status == INFEASIBLE

    def test_no_constraints_zero_objective(self):
        res = solve(2, [], (frac(0), frac(0)))
        assert res.status == OPTIMAL
        assert res.objective == 0

    def test_no_constraints_unbounded(self):
        res = solve(2, [], (frac(1), frac(0)))
        assert res.status == UNBOUNDED

    def test_equality_row(self):
        rows = [((frac(1),), frac(2), EQ), ((frac(1),), frac(5), LE)]
        res = solve(1, rows, (frac(1),))
        assert res.status == OPTIMAL
        assert res.objective == 2
        assert res.point == (2,)

    def test_redundant_equalities_drop(self):
        rows = [
            ((frac(1), frac(1)), frac(1), EQ),
            ((frac(2), frac(2)), frac(2), EQ),
            ((frac(1), frac(0)), frac(1), LE),
            ((frac(-1), frac(0)), frac(1), LE),
        ]
        res = solve(2, rows, (frac(1), frac(0)))
        assert res.status == OPTIMAL
        assert res.objective == 1
        assert res.point[0] + res.point[1] == 1

    def test_negative_rhs_feasible(self):
        rows = [((frac(1),), frac(-2), LE), ((frac(-1),), frac(5), LE)]
        res = solve(1, rows, (frac(1),))
        assert res.status == OPTIMAL
        assert res.objective == -2

    def test_fractional_data(self):
        rows = [((frac(2, 3), frac(1, 5)), frac(7, 4), LE),
                ((frac(-1), frac(0)), frac(0), LE),
                ((frac(0), frac(-1)), frac(0), LE)]
        res = solve(2, rows, (frac(1), frac(0)))
        assert res.status == OPTIMAL
        assert res.objective == frac(21, 8)

    def test_inconsistent_equalities(self):
        rows = [((frac(1),), frac(0), EQ), ((frac(1),), frac(1), EQ)]
        res = solve(1, rows, (frac(1),))
        assert res.status == INFEASIBLE


def random_boxed_instance(rng, num_vars):
    """Random LE rows plus a box keeping the feasible set bounded."""
    rows = []
    for _ in range(rng.randint(1, 6)):
        coeffs = tuple(
            Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(num_vars)
        )
        rhs = Fraction(rng.randint(-8, 8), rng.randint(1, 3))
        rows.append((coeffs, rhs, LE))
    span = Fraction(rng.randint(3, 9))
    for j in range(num_vars):
        unit = [Fraction(0)] * num_vars
        unit[j] = Fraction(1)
        rows.append((tuple(unit), span, LE))
        unit = [Fraction(0)] * num_vars
        unit[j] = Fraction(-1)
        rows.append((tuple(unit), span, LE))
    objective = tuple(
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(num_vars)
    )
    return rows, objective


class TestAgainstOracle:
    def test_random_bounded_instances(self):
        rng = random.Random(20240911)
        for trial in range(120):
            num_vars = rng.randint(1, 3)
            rows, objective = random_boxed_instance(rng, num_vars)
            want_status, want_opt = oracle_max(num_vars, rows, objective)
            res = solve(num_vars, rows, objective)
            assert res.status == want_status, f"trial {trial}"
            if want_status == OPTIMAL:
                assert res.objective == want_opt, f"trial {trial}"
                got = sum(c * x for c, x in zip(objective, res.point))
                assert got == want_opt
                for coeffs, rhs, _ in rows:
                    assert sum(c * x for c, x in zip(coeffs, res.point)) <= rhs


class TestDualCertificates:
    def test_duals_certify_optimum(self):
        rng = random.Random(77001)
        checked = 0
        while checked < 60:
            num_vars = rng.randint(1, 3)
            rows, objective = random_boxed_instance(rng, num_vars)
            res = solve(num_vars, rows, objective)
            if res.status != OPTIMAL:
                continue
            checked += 1
            assert all(y >= 0 for y in res.duals)
            for j in range(num_vars):
                combo = sum(y * rows[i][0][j] for i, y in enumerate(res.duals))
                assert combo == objective[j]
            bound = sum(y * rows[i][1] for i, y in enumerate(res.duals))
            assert bound == res.objective

    def test_duals_with_equalities(self):
        rows = [
            ((frac(1), frac(1)), frac(2), EQ),
            ((frac(1), frac(0)), frac(3), LE),
            ((frac(0), frac(1)), frac(3), LE),
        ]
        objective = (frac(2), frac(1))
        res = solve(2, rows, objective)
        assert res.status == OPTIMAL
        assert res.objective == 5  # y = 2 - x makes the objective x + 2, maxed at x = 3
        for j in range(2):
            combo = sum(y * rows[i][0][j] for i, y in enumerate(res.duals))
            assert combo == objective[j]
        bound = sum(y * rows[i][1] for i, y in enumerate(res.duals))
        assert bound == res.objective
        assert all(res.duals[i] >= 0 for i in (1, 2))
