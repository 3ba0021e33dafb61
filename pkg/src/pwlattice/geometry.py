"""Exact rational geometry: affine functionals, halfspaces, polyhedra,
canonical hyperplanes, and the LP predicates built on the simplex core.

All coordinates and coefficients are :class:`fractions.Fraction`; every
predicate here is decided exactly.  Strict feasibility ("is there a point
with every inequality strictly satisfied?") is decided by maximizing a slack
variable added to every inequality, capped at 1, and asking for a positive
optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyRegionError, ZeroNormalError
from .simplex import EQ, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, solve

Rational = Fraction
Point = tuple[Fraction, ...]


def frac(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, and Fractions; floats are refused."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int, or string")
    return Fraction(value)


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(frac(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class AffineFunc:
    """``g(x) = coeffs . x + offset``."""

    coeffs: tuple[Fraction, ...]
    offset: Fraction

    @classmethod
    def of(cls, coeffs: Iterable, offset=0) -> "AffineFunc":
        return cls(vec(coeffs), frac(offset))

    @classmethod
    def constant(cls, dim: int, value) -> "AffineFunc":
        return cls((Fraction(0),) * dim, frac(value))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != len(self.coeffs):
            raise ValueError("point dimension mismatch")
        return dot(self.coeffs, point) + self.offset

    def __sub__(self, other: "AffineFunc") -> "AffineFunc":
        return AffineFunc(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
            self.offset - other.offset,
        )

    def scale(self, factor) -> "AffineFunc":
        f = frac(factor)
        return AffineFunc(tuple(c * f for c in self.coeffs), self.offset * f)

    def is_zero(self) -> bool:
        return self.offset == 0 and all(c == 0 for c in self.coeffs)

    def has_zero_gradient(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@dataclass(frozen=True)
class Halfspace:
    """``normal . x <= bound`` (or ``<`` when strict)."""

    normal: tuple[Fraction, ...]
    bound: Fraction
    strict: bool = False

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ZeroNormalError("halfspace normal must be nonzero")

    @classmethod
    def of(cls, normal: Iterable, bound, strict: bool = False) -> "Halfspace":
        return cls(vec(normal), frac(bound), strict)

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        v = dot(self.normal, point)
        return v < self.bound if self.strict else v <= self.bound

    def strictly_satisfied_by(self, point: Sequence[Fraction]) -> bool:
        return dot(self.normal, point) < self.bound

    def closed(self) -> "Halfspace":
        return Halfspace(self.normal, self.bound, False) if self.strict else self


@dataclass(frozen=True)
class Polyhedron:
    """Closed convex set as an intersection of closed halfspaces."""

    dim: int
    halfspaces: tuple[Halfspace, ...]

    def __post_init__(self):
        for hs in self.halfspaces:
            if len(hs.normal) != self.dim:
                raise ValueError("halfspace dimension mismatch")
            if hs.strict:
                raise ValueError("polyhedra are intersections of closed halfspaces")

    @classmethod
    def of(cls, dim: int, halfspaces: Iterable[Halfspace]) -> "Polyhedron":
        return cls(dim, tuple(halfspaces))

    @classmethod
    def box(cls, bounds: Sequence[tuple]) -> "Polyhedron":
        """Axis-aligned box from per-coordinate (lo, hi) pairs."""
        dim = len(bounds)
        halfspaces = []
        for j, (lo, hi) in enumerate(bounds):
            unit = [Fraction(0)] * dim
            unit[j] = Fraction(1)
            halfspaces.append(Halfspace(tuple(unit), frac(hi)))
            unit = [Fraction(0)] * dim
            unit[j] = Fraction(-1)
            halfspaces.append(Halfspace(tuple(unit), -frac(lo)))
        return cls(dim, tuple(halfspaces))

    def contains(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.dim:
            raise ValueError("point dimension mismatch")
        return all(hs.satisfied_by(point) for hs in self.halfspaces)

    def strictly_contains(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.dim:
            raise ValueError("point dimension mismatch")
        return all(hs.strictly_satisfied_by(point) for hs in self.halfspaces)

    def with_halfspaces(self, extra: Iterable[Halfspace]) -> "Polyhedron":
        return Polyhedron(self.dim, self.halfspaces + tuple(extra))


@dataclass(frozen=True)
class Hyperplane:
    """``normal . x = offset`` with the first nonzero normal entry equal to 1.

    ``generators`` records which component pairs (i, j), i < j, produced the
    hyperplane; their differences are nonzero scalar multiples of it.
    """

    normal: tuple[Fraction, ...]
    offset: Fraction
    generators: frozenset[tuple[int, int]] = frozenset()

    def value_at(self, point: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, point) - self.offset

    def side_of(self, point: Sequence[Fraction]) -> int:
        v = self.value_at(point)
        return (v > 0) - (v < 0)

    def halfspace(self, side: int, strict: bool = False) -> Halfspace:
        """Closed (or strict) halfspace on the given side of the hyperplane."""
        if side > 0:
            return Halfspace(tuple(-c for c in self.normal), -self.offset, strict)
        return Halfspace(self.normal, self.offset, strict)

    def key(self) -> tuple:
        return (self.normal, self.offset)


def normalize_hyperplane(a: Iterable, b, generators=()) -> Hyperplane:
    """Canonical hyperplane for ``a . x = b``; scales so the first nonzero
    normal coordinate is 1.  Raises ZeroNormalError when ``a`` is zero."""
    normal = vec(a)
    offset = frac(b)
    lead = next((c for c in normal if c != 0), None)
    if lead is None:
        raise ZeroNormalError("hyperplane normal must be nonzero")
    inv = 1 / lead
    return Hyperplane(
        tuple(c * inv for c in normal), offset * inv, frozenset(generators)
    )


@dataclass(frozen=True)
class LpResult:
    """Outcome of maximizing an affine functional over a polyhedron."""

    status: str  # "optimal" | "unbounded" | "infeasible"
    optimum: Fraction | None = None
    argmax: Point | None = None
    duals: tuple[Fraction, ...] | None = None


def lp_optimize(objective: AffineFunc, constraints: Polyhedron) -> LpResult:
    """Exact maximum of ``objective`` over ``constraints`` with a witness
    point and one dual multiplier per halfspace."""
    if objective.dim != constraints.dim:
        raise ValueError("objective dimension mismatch")
    rows = [(hs.normal, hs.bound, LE) for hs in constraints.halfspaces]
    res = solve(constraints.dim, rows, objective.coeffs)
    if res.status == INFEASIBLE:
        return LpResult("infeasible")
    if res.status == UNBOUNDED:
        return LpResult("unbounded")
    return LpResult(
        "optimal",
        optimum=res.objective + objective.offset,
        argmax=res.point,
        duals=res.duals,
    )


def check_dual_certificate(
    objective: AffineFunc, constraints: Polyhedron, result: LpResult
) -> bool:
    """Exact check that the duals dominate the objective at the optimum."""
    if result.status != "optimal" or result.duals is None:
        return False
    y = result.duals
    if any(v < 0 for v in y):
        return False
    for j in range(constraints.dim):
        combo = sum(
            (yi * hs.normal[j] for yi, hs in zip(y, constraints.halfspaces)),
            Fraction(0),
        )
        if combo != objective.coeffs[j]:
            return False
    bound = sum(
        (yi * hs.bound for yi, hs in zip(y, constraints.halfspaces)), Fraction(0)
    )
    return bound + objective.offset == result.optimum


def strict_point(
    dim: int,
    halfspaces: Sequence[Halfspace],
    equalities: Sequence[tuple[Sequence[Fraction], Fraction]] = (),
) -> Point | None:
    """A point satisfying every halfspace strictly (and the equalities
    exactly), found by maximizing a shared slack capped at 1; None if the
    strict system is infeasible."""
    rows = []
    zero = Fraction(0)
    one = Fraction(1)
    for hs in halfspaces:
        rows.append((tuple(hs.normal) + (one,), hs.bound, LE))
    rows.append(((zero,) * dim + (one,), one, LE))
    for coeffs, rhs in equalities:
        rows.append((tuple(coeffs) + (zero,), rhs, EQ))
    objective = (zero,) * dim + (one,)
    res = solve(dim + 1, rows, objective)
    if res.status != OPTIMAL or res.objective <= 0:
        return None
    return res.point[:dim]


def interior_point(p: Polyhedron) -> Point | None:
    """A strictly interior point of ``p``, or None when no interior exists."""
    return strict_point(p.dim, p.halfspaces)


def is_feasible(p: Polyhedron) -> bool:
    res = lp_optimize(AffineFunc.constant(p.dim, 0), p)
    return res.status == "optimal"


@dataclass(frozen=True)
class FunctionalRange:
    """Exact inf/sup of an affine functional; None marks an infinite end."""

    lower: Fraction | None
    upper: Fraction | None

    def is_zero(self) -> bool:
        return self.lower == 0 and self.upper == 0


def functional_range_on(g: AffineFunc, p: Polyhedron) -> FunctionalRange:
    """Range of ``g`` over ``p`` via two LPs; raises EmptyRegionError when
    ``p`` is empty.  ``g`` vanishes identically on ``p`` iff the range is
    [0, 0]."""
    if g.dim != p.dim:
        raise ValueError("functional dimension mismatch")
    hi = lp_optimize(g, p)
    if hi.status == "infeasible":
        raise EmptyRegionError("polyhedron is empty")
    lo = lp_optimize(g.scale(-1), p)
    lower = None if lo.status == "unbounded" else -lo.optimum
    upper = None if hi.status == "unbounded" else hi.optimum
    return FunctionalRange(lower, upper)


def vanishes_on(g: AffineFunc, p: Polyhedron) -> bool:
    """True when g == 0 everywhere on nonempty p."""
    return functional_range_on(g, p).is_zero()


def coordinate_range(p: Polyhedron, axis: int) -> FunctionalRange:
    unit = [Fraction(0)] * p.dim
    unit[axis] = Fraction(1)
    return functional_range_on(AffineFunc(tuple(unit), Fraction(0)), p)


def is_bounded(p: Polyhedron) -> bool:
    """True when every coordinate has a finite range (empty sets count)."""
    try:
        for axis in range(p.dim):
            r = coordinate_range(p, axis)
            if r.lower is None or r.upper is None:
                return False
    except EmptyRegionError:
        return True
    return True


def is_subset(inner: Polyhedron, outer: Polyhedron) -> bool:
    """Exact containment test: sup of each outer functional over inner stays
    within its bound.  An empty inner set is a subset of anything."""
    if inner.dim != outer.dim:
        raise ValueError("dimension mismatch")
    for hs in outer.halfspaces:
        res = lp_optimize(AffineFunc(hs.normal, Fraction(0)), inner)
        if res.status == "infeasible":
            return True
        if res.status == "unbounded" or res.optimum > hs.bound:
            return False
    return True
