"""Hyperplane arrangements over a convex domain: equality hyperplanes of
component pairs, exhaustive sign-vector cell enumeration with exact interior
witnesses, and the separation-set metric with its geodesics.

Cells are the full-dimensional connected components of the domain interior
minus the hyperplanes.  Each carries a sign vector (+1/-1 per hyperplane,
oriented by ``normal . x - offset`` in canonical form) and a strictly
interior rational witness.  Cell ids are the lexicographic ranks of the sign
vectors with -1 ordered before +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateDomainError, NoPathError
from .geometry import (
    AffineFunc,
    Halfspace,
    Hyperplane,
    Point,
    Polyhedron,
    dot,
    interior_point,
    normalize_hyperplane,
    strict_point,
)
from .parallel import parallel_map


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes meeting the domain interior, with on-plane witnesses."""

    domain: Polyhedron
    hyperplanes: tuple[Hyperplane, ...]
    components: tuple[AffineFunc, ...] = ()
    witnesses: tuple[Point, ...] = ()

    def __post_init__(self):
        if len(self.witnesses) not in (0, len(self.hyperplanes)):
            raise ValueError("one witness per hyperplane expected")


@dataclass(frozen=True)
class Cell:
    """One full-dimensional region, identified by its sign vector."""

    id: int
    signs: tuple[int, ...]
    witness: Point
    mask: int = field(compare=False, default=0)  # bit k set iff signs[k] > 0


@dataclass(frozen=True)
class SeparationResult:
    hyperplanes: tuple[int, ...]
    distance: int


class CellComplex:
    """All cells of an arrangement, with sign-vector lookups."""

    def __init__(self, arrangement: Arrangement, cells: Sequence[Cell]):
        self.arrangement = arrangement
        self.cells = tuple(cells)
        self._by_signs = {c.signs: c for c in self.cells}

    def __len__(self) -> int:
        return len(self.cells)

    def cell(self, cell_id: int) -> Cell:
        return self.cells[cell_id]

    def by_signs(self, signs: Sequence[int]) -> Cell | None:
        return self._by_signs.get(tuple(signs))

    def neighbors(self, cell: Cell) -> list[Cell]:
        """Cells at separation distance exactly one."""
        out = []
        for k in range(len(cell.signs)):
            flipped = list(cell.signs)
            flipped[k] = -flipped[k]
            other = self._by_signs.get(tuple(flipped))
            if other is not None:
                out.append(other)
        return out


def _component_pair_hyperplanes(components: Sequence[AffineFunc]):
    """Canonical zero-set hyperplane per pair, keyed for coincidence merging."""
    merged: dict[tuple, dict] = {}
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            diff = components[i] - components[j]
            if diff.has_zero_gradient():
                continue  # parallel components never agree (or are identical)
            hyp = normalize_hyperplane(diff.coeffs, -diff.offset)
            entry = merged.setdefault(
                hyp.key(), {"hyperplane": hyp, "generators": set()}
            )
            entry["generators"].add((i, j))
    return merged


def build_hyperplanes(
    components, gamma: Polyhedron, *, threads: int = 1
) -> Arrangement:
    """Arrangement of component-equality hyperplanes meeting the interior of
    ``gamma``; coincident hyperplanes merge and accumulate generator pairs."""
    comps = tuple(getattr(components, "components", components))
    if len(comps) < 2:
        raise ValueError("at least two components are required")
    center = interior_point(gamma)
    if center is None:
        raise DegenerateDomainError("domain has no interior point")
    merged = _component_pair_hyperplanes(comps)

    def probe(entry) -> Point | None:
        hyp: Hyperplane = entry["hyperplane"]
        cand = _project_onto(center, hyp)
        if cand is not None and gamma.strictly_contains(cand):
            return cand
        return strict_point(
            gamma.dim, gamma.halfspaces, [(hyp.normal, hyp.offset)]
        )

    entries = list(merged.values())
    witnesses = parallel_map(probe, entries, threads)
    kept = []
    kept_witnesses = []
    for entry, wit in zip(entries, witnesses):
        if wit is not None:
            hyp = entry["hyperplane"]
            kept.append(
                Hyperplane(hyp.normal, hyp.offset, frozenset(entry["generators"]))
            )
            kept_witnesses.append(wit)
    return Arrangement(gamma, tuple(kept), comps, tuple(kept_witnesses))


def _project_onto(point: Point, hyp: Hyperplane) -> Point | None:
    """Exact orthogonal projection of ``point`` onto the hyperplane."""
    val = hyp.value_at(point)
    nn = sum((c * c for c in hyp.normal), Fraction(0))
    if nn == 0:
        return None
    t = val / nn
    return tuple(x - t * c for x, c in zip(point, hyp.normal))


_REFLECT_FACTORS = (Fraction(9, 8), Fraction(2), Fraction(4))


def _strictly_inside(point: Point, rows) -> bool:
    for normal, bound in rows:
        if dot(normal, point) >= bound:
            return False
    return True


def enumerate_cells(arr: Arrangement, *, threads: int = 1) -> CellComplex:
    """Exhaustive full-dimensional cell enumeration by incremental
    sign-prefix extension.

    The side of each hyperplane containing the parent witness is certified by
    that witness; the opposite side first tries an exact reflection
    candidate, then falls back to the strict-feasibility slack LP, which also
    proves infeasible extensions infeasible.
    """
    gamma = arr.domain
    base = interior_point(gamma)
    if base is None:
        raise DegenerateDomainError("domain has no interior point")
    dom_rows = [(hs.normal, hs.bound) for hs in gamma.halfspaces]

    partials: list[tuple[tuple[int, ...], Point, list]] = [((), base, [])]
    for hyp in arr.hyperplanes:
        def extend(partial):
            signs, witness, sign_rows = partial
            val = hyp.value_at(witness)
            out = []
            if val != 0:
                side = 1 if val > 0 else -1
                hs = hyp.halfspace(side)
                out.append((signs + (side,), witness, sign_rows + [(hs.normal, hs.bound)]))
                probe_sides = (-side,)
            else:
                probe_sides = (1, -1)
            for side in probe_sides:
                hs = hyp.halfspace(side)
                rows = sign_rows + [(hs.normal, hs.bound)]
                cand = None
                if val != 0:
                    cand = _reflect_candidate(witness, hyp, val, dom_rows, rows)
                if cand is None:
                    halfspaces = list(gamma.halfspaces)
                    halfspaces.extend(
                        Halfspace(n, b) for n, b in rows
                    )
                    cand = strict_point(gamma.dim, halfspaces)
                if cand is not None:
                    out.append((signs + (side,), cand, rows))
            return out

        results = parallel_map(extend, partials, threads)
        partials = [child for group in results for child in group]

    partials.sort(key=lambda item: item[0])
    cells = []
    for cid, (signs, witness, _) in enumerate(partials):
        mask = 0
        for k, s in enumerate(signs):
            if s > 0:
                mask |= 1 << k
        cells.append(Cell(cid, signs, witness, mask))
    return CellComplex(arr, cells)


def _reflect_candidate(witness, hyp, val, dom_rows, sign_rows):
    """Exact point across the hyperplane that stays strictly feasible, if one
    of a few reflection depths works; None defers to the LP."""
    nn = sum((c * c for c in hyp.normal), Fraction(0))
    base = val / nn
    for factor in _REFLECT_FACTORS:
        t = factor * base
        cand = tuple(x - t * c for x, c in zip(witness, hyp.normal))
        if _strictly_inside(cand, dom_rows) and _strictly_inside(cand, sign_rows):
            return cand
    return None


def separation(complex: CellComplex, p: Cell, q: Cell) -> SeparationResult:
    """Hyperplanes separating two cells, and their count (the tope metric)."""
    indices = tuple(k for k, (a, b) in enumerate(zip(p.signs, q.signs)) if a != b)
    return SeparationResult(indices, len(indices))


def geodesic(complex: CellComplex, p: Cell, q: Cell) -> list[Cell]:
    """Shortest unit-step chain from p to q via BFS on the adjacency
    relation; its length always equals the separation distance."""
    want = separation(complex, p, q).distance
    if p.signs == q.signs:
        return [p]
    parent: dict[tuple, tuple | None] = {p.signs: None}
    frontier = [p]
    steps = 0
    while frontier and steps <= want:
        steps += 1
        nxt = []
        for cell in frontier:
            for other in complex.neighbors(cell):
                if other.signs in parent:
                    continue
                parent[other.signs] = cell.signs
                if other.signs == q.signs:
                    path = [other]
                    back = cell.signs
                    while back is not None:
                        path.append(complex.by_signs(back))
                        back = parent[back]
                    path.reverse()
                    if len(path) != want + 1:
                        raise NoPathError(
                            "BFS distance disagrees with separation distance"
                        )
                    return path
                nxt.append(other)
        frontier = nxt
    raise NoPathError("no unit-step chain found; cell enumeration is corrupt")
