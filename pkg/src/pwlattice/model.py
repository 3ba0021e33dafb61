"""Piecewise linear functions as finite covers of a convex domain by
polyhedral pieces carrying affine funcs: validation, exact evaluation, and
extraction of the distinct component family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangement import Arrangement, enumerate_cells
from .errors import (
    EmptyRegionError,
    NoCoveringPieceError,
    OutsideDomainError,
)
from .geometry import (
    AffineFunc,
    Point,
    Polyhedron,
    functional_range_on,
    interior_point,
    is_subset,
    normalize_hyperplane,
    strict_point,
)
from .parallel import parallel_map

DEGENERATE_DOMAIN = "DEGENERATE_DOMAIN"
PIECE_OUTSIDE_DOMAIN = "PIECE_OUTSIDE_DOMAIN"
OVERLAP_MISMATCH = "OVERLAP_MISMATCH"
COVER_GAP = "COVER_GAP"
CONTINUITY_BREAK = "CONTINUITY_BREAK"


@dataclass(frozen=True)
class Piece:
    region: Polyhedron
    func: AffineFunc


@dataclass(frozen=True)
class PwlFunction:
    """A cover of ``domain`` by (region, func) pieces.

    Structural coherence (dimensions match) is enforced on construction;
    semantic validity (cover, continuity, consistent overlaps) is what
    :func:`validate_pwl` checks.
    """

    domain: Polyhedron
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a piecewise linear function needs at least one piece")
        for piece in self.pieces:
            if piece.region.dim != self.domain.dim or piece.func.dim != self.domain.dim:
                raise ValueError("piece dimension mismatch")

    @classmethod
    def of(cls, domain: Polyhedron, pairs: Iterable[tuple[Polyhedron, AffineFunc]]):
        return cls(domain, tuple(Piece(r, f) for r, f in pairs))

    @property
    def dim(self) -> int:
        return self.domain.dim


@dataclass(frozen=True)
class Violation:
    kind: str
    pieces: tuple[int, ...]
    message: str
    witness: Point | None = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


@dataclass(frozen=True)
class ComponentSet:
    """Distinct affine funcs of the pieces, in first-occurrence order."""

    components: tuple[AffineFunc, ...]
    piece_to_component: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.components)


def extract_components(f: PwlFunction) -> ComponentSet:
    """Deduplicated component family; every piece maps to its component."""
    components: list[AffineFunc] = []
    index: dict[tuple, int] = {}
    mapping = []
    for piece in f.pieces:
        key = (piece.func.coeffs, piece.func.offset)
        at = index.get(key)
        if at is None:
            at = len(components)
            index[key] = at
            components.append(piece.func)
        mapping.append(at)
    return ComponentSet(tuple(components), tuple(mapping))


def eval_pwl(f: PwlFunction, x: Sequence[Fraction]) -> Fraction:
    """Value of the covered function at ``x``; any covering piece agrees."""
    if len(x) != f.dim:
        raise ValueError("point dimension mismatch")
    if not f.domain.contains(x):
        raise OutsideDomainError(f"point {tuple(x)} is outside the domain")
    for piece in f.pieces:
        if piece.region.contains(x):
            return piece.func(x)
    raise NoCoveringPieceError(f"no piece covers {tuple(x)}; the cover has a gap")


def validate_pwl(f: PwlFunction, *, threads: int = 1) -> ValidationReport:
    """Check the cover axioms; an empty report means the function is valid.

    COVER_GAP enumerates the arrangement of all piece-facet hyperplanes that
    meet the domain interior and demands that every cell witness lie in some
    piece.  CONTINUITY_BREAK demands that funcs of intersecting pieces agree
    on the whole intersection (range of the difference is exactly [0, 0]).
    """
    violations: list[Violation] = []
    if interior_point(f.domain) is None:
        violations.append(
            Violation(DEGENERATE_DOMAIN, (), "domain has no interior point")
        )
        return ValidationReport(tuple(violations))

    for i, piece in enumerate(f.pieces):
        if not is_subset(piece.region, f.domain):
            violations.append(
                Violation(
                    PIECE_OUTSIDE_DOMAIN, (i,), f"piece {i} leaves the domain"
                )
            )

    pairs = [
        (i, j)
        for i in range(len(f.pieces))
        for j in range(i + 1, len(f.pieces))
        if f.pieces[i].func != f.pieces[j].func
    ]

    def check_pair(pair):
        i, j = pair
        found: list[Violation] = []
        a, b = f.pieces[i], f.pieces[j]
        overlap = a.region.with_halfspaces(b.region.halfspaces)
        inside = strict_point(f.dim, overlap.halfspaces)
        if inside is not None:
            found.append(
                Violation(
                    OVERLAP_MISMATCH,
                    (i, j),
                    f"pieces {i} and {j} overlap with different funcs",
                    inside,
                )
            )
        try:
            span = functional_range_on(a.func - b.func, overlap)
        except EmptyRegionError:
            return found
        if not span.is_zero():
            found.append(
                Violation(
                    CONTINUITY_BREAK,
                    (i, j),
                    f"funcs of pieces {i} and {j} disagree on their intersection",
                )
            )
        return found

    for found in parallel_map(check_pair, pairs, threads):
        violations.extend(found)

    violations.extend(_cover_gaps(f, threads))
    violations.sort(key=lambda v: (v.pieces, v.kind))
    return ValidationReport(tuple(violations))


def _cover_gaps(f: PwlFunction, threads: int) -> list[Violation]:
    """Witness-based exact cover check inside the domain."""
    merged: dict[tuple, object] = {}
    for piece in f.pieces:
        for hs in piece.region.halfspaces:
            hyp = normalize_hyperplane(hs.normal, hs.bound)
            merged.setdefault(hyp.key(), hyp)

    def crosses(hyp) -> bool:
        return (
            strict_point(f.dim, f.domain.halfspaces, [(hyp.normal, hyp.offset)])
            is not None
        )

    candidates = list(merged.values())
    kept = [
        hyp
        for hyp, ok in zip(candidates, parallel_map(crosses, candidates, threads))
        if ok
    ]
    arr = Arrangement(f.domain, tuple(kept))
    complex = enumerate_cells(arr, threads=threads)
    out = []
    for cell in complex.cells:
        if not any(piece.region.contains(cell.witness) for piece in f.pieces):
            out.append(
                Violation(
                    COVER_GAP,
                    (),
                    "a full-dimensional region of the domain is uncovered",
                    cell.witness,
                )
            )
    return out
