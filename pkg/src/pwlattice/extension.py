"""Extensions: degree-1 homogeneous (radial) extension of boundary data on a
polytope, extension of a function to a larger domain through its max-min
representation, and exact import of single-hidden-layer ReLU networks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, build_hyperplanes, enumerate_cells
from .errors import (
    CenterNotInteriorError,
    DegenerateDomainError,
    EmptyRegionError,
    InconsistentBoundaryDataError,
    TargetDoesNotContainDomainError,
    UnboundedDomainError,
)
from .geometry import (
    AffineFunc,
    Halfspace,
    Point,
    Polyhedron,
    dot,
    frac,
    functional_range_on,
    interior_point,
    is_bounded,
    is_subset,
    normalize_hyperplane,
    strict_point,
    vec,
)
from .latticizer import build_representation, lattice_to_pwl
from .model import PwlFunction


@dataclass(frozen=True)
class BoundaryPwl:
    """Affine data on every facet of a bounded polytope, star-shaped
    from ``center``.

    ``facet_data`` pairs a halfspace index with an ambient affine func that
    agrees with the boundary values on that facet; funcs of touching facets
    must agree on the shared face.
    """

    polytope: Polyhedron
    center: Point
    facet_data: tuple[tuple[int, AffineFunc], ...]

    def func_for(self, facet: int) -> AffineFunc:
        for idx, func in self.facet_data:
            if idx == facet:
                return func
        raise InconsistentBoundaryDataError(f"facet {facet} has no data")


def radial_extend(b: BoundaryPwl) -> PwlFunction:
    """The piecewise linear function on the polytope that vanishes at the
    center and restricts to the facet data on the boundary.

    Each facet's piece is the cone over the facet from the center; its func
    is the unique affine function that is zero at the center and matches the
    facet data on the facet's supporting hyperplane (along any ray from the
    center, values scale linearly with the ray parameter).
    """
    poly = b.polytope
    center = vec(b.center)
    if len(center) != poly.dim:
        raise ValueError("center dimension mismatch")
    if not poly.strictly_contains(center):
        raise CenterNotInteriorError("center must satisfy every halfspace strictly")
    if not is_bounded(poly):
        raise UnboundedDomainError("radial extension needs a bounded polytope")

    m = len(poly.halfspaces)
    given = sorted(idx for idx, _ in b.facet_data)
    if given != list(range(m)):
        raise InconsistentBoundaryDataError(
            "facet data must name each halfspace index exactly once"
        )
    funcs = [b.func_for(i) for i in range(m)]
    for func in funcs:
        if func.dim != poly.dim:
            raise ValueError("facet func dimension mismatch")

    # data must be a single continuous function on the boundary
    for i in range(m):
        for j in range(i + 1, m):
            face = poly.with_halfspaces(
                [
                    _flip(poly.halfspaces[i]),
                    _flip(poly.halfspaces[j]),
                ]
            )
            try:
                span = functional_range_on(funcs[i] - funcs[j], face)
            except EmptyRegionError:
                continue
            if not span.is_zero():
                raise InconsistentBoundaryDataError(
                    f"facet funcs {i} and {j} disagree on their shared face"
                )

    depth = [
        hs.bound - dot(hs.normal, center) for hs in poly.halfspaces
    ]  # all positive
    pieces = []
    for i, hs in enumerate(poly.halfspaces):
        cone_rows = []
        for j, other in enumerate(poly.halfspaces):
            if j == i:
                continue
            normal = tuple(
                depth[i] * bn - depth[j] * an
                for an, bn in zip(hs.normal, other.normal)
            )
            if all(c == 0 for c in normal):
                continue  # coincident facet directions; no separating wall
            cone_rows.append(Halfspace(normal, dot(normal, center)))
        region = poly.with_halfspaces(cone_rows)
        ray_coord = AffineFunc(
            tuple(c / depth[i] for c in hs.normal),
            -dot(hs.normal, center) / depth[i],
        )  # 0 at the center, 1 on the facet's hyperplane
        value_at_center = funcs[i](center)
        func = AffineFunc(
            tuple(
                fc + value_at_center * rc
                for fc, rc in zip(funcs[i].coeffs, ray_coord.coeffs)
            ),
            funcs[i].offset - value_at_center + value_at_center * ray_coord.offset,
        )
        pieces.append((region, func))
    return PwlFunction.of(poly, pieces)


def _flip(hs: Halfspace) -> Halfspace:
    """Reverse halfspace; intersecting with the original pins its boundary."""
    return Halfspace(tuple(-c for c in hs.normal), -hs.bound)


def extend_to_space(f: PwlFunction, target: Polyhedron) -> PwlFunction:
    """Extend ``f`` to a larger bounded domain through its representation;
    the result agrees with ``f`` exactly on the original domain."""
    if target.dim != f.dim:
        raise ValueError("target dimension mismatch")
    if interior_point(target) is None:
        raise DegenerateDomainError("target has no interior point")
    if not is_bounded(target):
        raise UnboundedDomainError(
            "extension targets must be bounded; the polynomial itself is the "
            "whole-space object"
        )
    if not is_subset(f.domain, target):
        raise TargetDoesNotContainDomainError("target must contain the domain")
    return lattice_to_pwl(build_representation(f), target)


@dataclass(frozen=True)
class ReluNet1:
    """One hidden ReLU layer: ``x -> w2 . relu(W1 x + b1) + b2``."""

    W1: tuple[tuple[Fraction, ...], ...]
    b1: tuple[Fraction, ...]
    w2: tuple[Fraction, ...]
    b2: Fraction

    def __post_init__(self):
        h = len(self.W1)
        if h < 1:
            raise ValueError("at least one hidden unit is required")
        width = len(self.W1[0])
        if any(len(row) != width for row in self.W1):
            raise ValueError("ragged weight matrix")
        if len(self.b1) != h or len(self.w2) != h:
            raise ValueError("bias/readout length mismatch")

    @classmethod
    def of(cls, W1, b1, w2, b2) -> "ReluNet1":
        return cls(tuple(vec(row) for row in W1), vec(b1), vec(w2), frac(b2))

    @property
    def input_dim(self) -> int:
        return len(self.W1[0])

    def forward(self, x: Sequence[Fraction]) -> Fraction:
        acc = self.b2
        for row, bias, weight in zip(self.W1, self.b1, self.w2):
            pre = dot(row, x) + bias
            if pre > 0:
                acc += weight * pre
        return acc


def import_relu(net: ReluNet1, box: Polyhedron, *, threads: int = 1) -> PwlFunction:
    """Exact piecewise linear form of the network on a bounded box.

    Only neurons with nonzero input row and nonzero readout weight induce
    arrangement hyperplanes; zero-row neurons contribute the constant
    ``w2_i * max(0, b1_i)`` and neurons whose hyperplane misses the box
    interior have a fixed activation there.
    """
    if net.input_dim != box.dim:
        raise ValueError("network input dimension mismatch")
    center = interior_point(box)
    if center is None:
        raise DegenerateDomainError("box has no interior point")
    if not is_bounded(box):
        raise UnboundedDomainError("cell enumeration requires a bounded box")

    constant = net.b2
    always_active: list[int] = []
    crossing: list[tuple[int, tuple, int]] = []  # (neuron, hyperplane key, orientation)
    hyperplanes: list = []
    keys: dict[tuple, int] = {}
    witnesses: list[Point] = []
    for i, (row, bias, weight) in enumerate(zip(net.W1, net.b1, net.w2)):
        if all(c == 0 for c in row):
            if bias > 0:
                constant += weight * bias
            continue
        if weight == 0:
            continue
        hyp = normalize_hyperplane(row, -bias)
        lead = next(c for c in row if c != 0)
        orientation = 1 if lead > 0 else -1
        key = hyp.key()
        if key in keys:
            crossing.append((i, key, orientation))
            continue
        wit = strict_point(box.dim, box.halfspaces, [(hyp.normal, hyp.offset)])
        if wit is not None:
            keys[key] = len(hyperplanes)
            hyperplanes.append(hyp)
            witnesses.append(wit)
            crossing.append((i, key, orientation))
        else:
            pre = dot(row, center) + bias
            if pre > 0:
                always_active.append(i)

    arr = Arrangement(box, tuple(hyperplanes), (), tuple(witnesses))
    complex = enumerate_cells(arr, threads=threads)
    pieces = []
    for cell in complex.cells:
        active = list(always_active)
        for i, key, orientation in crossing:
            if orientation * cell.signs[keys[key]] > 0:
                active.append(i)
        coeffs = [Fraction(0)] * box.dim
        offset = constant
        for i in active:
            weight = net.w2[i]
            for j, c in enumerate(net.W1[i]):
                coeffs[j] += weight * c
            offset += weight * net.b1[i]
        region = box.with_halfspaces(
            hyp.halfspace(s) for hyp, s in zip(arr.hyperplanes, cell.signs)
        )
        pieces.append((region, AffineFunc(tuple(coeffs), offset)))
    return PwlFunction.of(box, pieces)
