"""Shared fixtures: the small named functions used throughout the suite."""

from fractions import Fraction

import pytest

from pwlattice.geometry import AffineFunc, Halfspace, Polyhedron
from pwlattice.model import Piece, PwlFunction


def interval(lo, hi) -> Polyhedron:
    return Polyhedron.box([(lo, hi)])


@pytest.fixture
def fixture_a() -> PwlFunction:
    """|x| on [-1, 1] from two pieces."""
    return PwlFunction.of(
        interval(-1, 1),
        [
            (interval(-1, 0), AffineFunc.of((-1,), 0)),
            (interval(0, 1), AffineFunc.of((1,), 0)),
        ],
    )


@pytest.fixture
def fixture_b() -> PwlFunction:
    """clamp(x, 0, 1) on [-2, 2] from three pieces."""
    return PwlFunction.of(
        interval(-2, 2),
        [
            (interval(-2, 0), AffineFunc.of((0,), 0)),
            (interval(0, 1), AffineFunc.of((1,), 0)),
            (interval(1, 2), AffineFunc.of((0,), 1)),
        ],
    )


@pytest.fixture
def fixture_d() -> PwlFunction:
    """max(x1, x2) on [-1, 1]^2 from two triangle pieces."""
    box = Polyhedron.box([(-1, 1), (-1, 1)])
    lower = box.with_halfspaces([Halfspace.of((-1, 1), 0)])  # x2 <= x1
    upper = box.with_halfspaces([Halfspace.of((1, -1), 0)])  # x1 <= x2
    return PwlFunction.of(
        box,
        [
            (lower, AffineFunc.of((1, 0), 0)),
            (upper, AffineFunc.of((0, 1), 0)),
        ],
    )


@pytest.fixture
def square() -> Polyhedron:
    return Polyhedron.box([(-1, 1), (-1, 1)])


def rational_grid_points(rng, p: Polyhedron, count: int, scale: int = 4096):
    """Deterministic exact rational points inside a bounded polyhedron.

    Samples the bounding box on a fine lattice and keeps points in ``p``.
    """
    from pwlattice.geometry import coordinate_range

    ranges = [coordinate_range(p, axis) for axis in range(p.dim)]
    points = []
    while len(points) < count:
        cand = tuple(
            r.lower + (r.upper - r.lower) * Fraction(rng.randint(0, scale), scale)
            for r in ranges
        )
        if p.contains(cand):
            points.append(cand)
    return points
