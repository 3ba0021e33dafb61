"""Max-min representation machinery: per-cell component orders, dominant
components, the per-cell index sets whose mins join into the representation,
symbolic verification of exact equality on the whole domain, the two-sided
inequality witness for cell pairs, and the converse compilation from a
polynomial back to a piecewise linear function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangement import (
    Arrangement,
    Cell,
    CellComplex,
    build_hyperplanes,
    enumerate_cells,
)
from .errors import (
    AmbiguousMatchError,
    ComponentMismatchError,
    DegenerateDomainError,
    DomainMismatchError,
    NoMatchError,
    NoWitnessError,
    TieDetectedError,
    UnboundedDomainError,
)
from .geometry import AffineFunc, Polyhedron, interior_point, is_bounded
from .model import ComponentSet, PwlFunction, eval_pwl, extract_components
from .parallel import parallel_map


@dataclass(frozen=True)
class LatticePolynomial:
    """``max over terms of (min over the term's components)``.

    Terms are index subsets of the component family.  Until
    :func:`simplify` runs, duplicate or superset terms are permitted (the
    construction emits one term per cell).
    """

    components: tuple[AffineFunc, ...]
    terms: tuple[frozenset[int], ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a polynomial needs at least one component")
        if not self.terms:
            raise ValueError("a polynomial needs at least one term")
        n = len(self.components)
        for term in self.terms:
            if not term:
                raise ValueError("terms must be nonempty index sets")
            if any(i < 0 or i >= n for i in term):
                raise ValueError("term index out of range")

    @property
    def dim(self) -> int:
        return self.components[0].dim


def evaluate_lattice(poly: LatticePolynomial, x: Sequence[Fraction]) -> Fraction:
    """Exact value of the max-min expression; total on all of R^d."""
    values = [g(x) for g in poly.components]
    return max(min(values[i] for i in term) for term in poly.terms)


def simplify(poly: LatticePolynomial) -> LatticePolynomial:
    """Drop duplicate terms and strict supersets of other terms.

    A superset's min is pointwise <= the subset's min, so it never attains
    the max; values are unchanged everywhere on R^d.
    """
    unique: list[frozenset[int]] = []
    seen = set()
    for term in poly.terms:
        if term not in seen:
            seen.add(term)
            unique.append(term)
    kept = [
        term
        for term in unique
        if not any(other != term and other < term for other in unique)
    ]
    return LatticePolynomial(poly.components, tuple(kept))


@dataclass(frozen=True)
class CellOrder:
    """Component indices in strictly ascending value order on one cell."""

    cell_id: int
    order: tuple[int, ...]


class FunctionAnalysis:
    """A function attached to its arrangement: exact component values at
    every cell witness, the function's own values there, and the dominant
    component per cell."""

    def __init__(self, func: PwlFunction, components: ComponentSet, complex: CellComplex):
        self.func = func
        self.components = components
        self.complex = complex
        comps = components.components
        self.values: list[tuple[Fraction, ...]] = []
        self.f_values: list[Fraction] = []
        self.dominants: list[int] = []
        for cell in complex.cells:
            row = tuple(g(cell.witness) for g in comps)
            fv = eval_pwl(func, cell.witness)
            matches = [i for i, v in enumerate(row) if v == fv]
            if not matches:
                raise NoMatchError(
                    f"no component matches the function at cell {cell.id}"
                )
            if len(matches) > 1:
                raise AmbiguousMatchError(
                    f"components {matches} all match at cell {cell.id}; "
                    "the witness lies on a missed hyperplane"
                )
            self.values.append(row)
            self.f_values.append(fv)
            self.dominants.append(matches[0])

    def order_of(self, cell: Cell) -> tuple[int, ...]:
        row = self.values[cell.id]
        return tuple(sorted(range(len(row)), key=row.__getitem__))


def analyze(f: PwlFunction, *, threads: int = 1) -> FunctionAnalysis:
    """Build the component-equality arrangement of ``f`` and attach ``f``."""
    comps = extract_components(f)
    if len(comps) >= 2:
        arr = build_hyperplanes(comps.components, f.domain, threads=threads)
    else:
        if interior_point(f.domain) is None:
            raise DegenerateDomainError("domain has no interior point")
        arr = Arrangement(f.domain, (), comps.components)
    complex = enumerate_cells(arr, threads=threads)
    return FunctionAnalysis(f, comps, complex)


def cell_order(complex: CellComplex, cell: Cell, components=None) -> CellOrder:
    """Components sorted ascending by value on the cell; a tie means the
    witness or the arrangement is corrupt."""
    comps = tuple(
        getattr(components, "components", components)
        if components is not None
        else complex.arrangement.components
    )
    values = [g(cell.witness) for g in comps]
    order = sorted(range(len(comps)), key=values.__getitem__)
    for a, b in zip(order, order[1:]):
        if values[a] == values[b]:
            raise TieDetectedError(
                f"components {a} and {b} tie at the witness of cell {cell.id}"
            )
    return CellOrder(cell.id, tuple(order))


def dominant_component(f: PwlFunction, components, cell: Cell) -> int:
    """The unique component equal to ``f`` on the cell."""
    comps = tuple(getattr(components, "components", components))
    fv = eval_pwl(f, cell.witness)
    matches = [i for i, g in enumerate(comps) if g(cell.witness) == fv]
    if not matches:
        raise NoMatchError(f"no component matches the function at cell {cell.id}")
    if len(matches) > 1:
        raise AmbiguousMatchError(
            f"components {matches} all match at cell {cell.id}"
        )
    return matches[0]


@dataclass(frozen=True)
class LatticizeResult:
    """Representation plus the proof's intermediate objects."""

    polynomial: LatticePolynomial
    raw_terms: tuple[frozenset[int], ...]  # one per cell, in cell order
    analysis: FunctionAnalysis | None


def latticize(
    f: PwlFunction,
    *,
    simplify_terms: bool = True,
    threads: int = 1,
    analysis: FunctionAnalysis | None = None,
) -> LatticizeResult:
    """Per cell P emit ``{i : g_i >= f on P}`` and join the mins.

    With a single component the representation is the trivial ``{{0}}`` and
    no arrangement is built.
    """
    comps = extract_components(f) if analysis is None else analysis.components
    if len(comps) == 1 and analysis is None:
        poly = LatticePolynomial(comps.components, (frozenset({0}),))
        return LatticizeResult(poly, poly.terms, None)
    if analysis is None:
        analysis = analyze(f, threads=threads)
    raw: list[frozenset[int]] = []
    for cell in analysis.complex.cells:
        row = analysis.values[cell.id]
        fv = analysis.f_values[cell.id]
        raw.append(frozenset(i for i, v in enumerate(row) if v >= fv))
    poly = LatticePolynomial(comps.components, tuple(raw))
    if simplify_terms:
        poly = simplify(poly)
    return LatticizeResult(poly, tuple(raw), analysis)


def build_representation(f: PwlFunction, *, threads: int = 1) -> LatticePolynomial:
    """The max-min representation of ``f`` over its own components."""
    return latticize(f, threads=threads).polynomial


def build_representation_vector(
    fs: Sequence[PwlFunction], *, threads: int = 1
) -> list[LatticePolynomial]:
    """Componentwise representation of a vector-valued function; every
    coordinate function must share a domain."""
    if not fs:
        return []
    first = fs[0].domain
    for f in fs[1:]:
        if f.domain != first:
            raise DomainMismatchError("coordinate functions have different domains")
    return [build_representation(f, threads=threads) for f in fs]


@dataclass(frozen=True)
class CellCheck:
    cell_id: int
    ok: bool
    dominant: int
    reduced_max: int
    offending_terms: tuple[int, ...]


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    checks: tuple[CellCheck, ...]

    def failures(self) -> tuple[CellCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def verify_symbolic(
    f: PwlFunction,
    poly: LatticePolynomial,
    *,
    analysis: FunctionAnalysis | None = None,
    threads: int = 1,
) -> VerificationReport:
    """Cell-by-cell exact proof that the polynomial equals ``f`` on the
    whole domain.

    On each cell every term reduces to its minimal component under the
    cell's order; the polynomial passes there iff the maximal reduced
    component is the cell's dominant.  Because both sides are continuous,
    agree on every cell, and the cells' union is dense in the domain,
    a global pass is exact equality on all of the domain.
    """
    if analysis is None:
        analysis = analyze(f, threads=threads)
    if poly.components != analysis.components.components:
        raise ComponentMismatchError(
            "polynomial components differ from the function's components"
        )
    checks = []
    for cell in analysis.complex.cells:
        row = analysis.values[cell.id]
        dom = analysis.dominants[cell.id]
        reduced = [min(term, key=row.__getitem__) for term in poly.terms]
        best = max(reduced, key=row.__getitem__)
        offending = tuple(
            j for j, r in enumerate(reduced) if row[r] > row[dom]
        )
        checks.append(
            CellCheck(cell.id, best == dom, dom, best, offending)
        )
    return VerificationReport(all(c.ok for c in checks), tuple(checks))


class LemmaWitnessFinder:
    """Finds, for cells P and Q, an index k with ``g_k <= f`` on P and
    ``g_k >= f`` on Q.

    ``brute`` scans indices ascending.  ``inductive`` walks a geodesic
    neighbor R of P with d(R, Q) = d(P, Q) - 1, takes that pair's witness r,
    and keeps r when ``g_r <= f`` on P, else returns P's dominant.
    """

    def __init__(self, analysis: FunctionAnalysis):
        self.analysis = analysis
        self._memo: dict[tuple[int, int], int] = {}
        n = len(analysis.components.components)
        self._low = []
        self._high = []
        for row, fv in zip(analysis.values, analysis.f_values):
            low = 0
            high = 0
            for i in range(n):
                if row[i] <= fv:
                    low |= 1 << i
                if row[i] >= fv:
                    high |= 1 << i
            self._low.append(low)
            self._high.append(high)

    def find(self, p: Cell, q: Cell, strategy: str = "brute") -> int:
        if strategy == "brute":
            k = self._brute(p.id, q.id)
        elif strategy == "inductive":
            k = self._inductive(p.id, q.id)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        if not (self._low[p.id] >> k & 1 and self._high[q.id] >> k & 1):
            raise NoWitnessError(
                f"index {k} fails the two-sided check for cells {p.id}, {q.id}"
            )
        return k

    def _brute(self, pi: int, qi: int) -> int:
        mask = self._low[pi] & self._high[qi]
        if not mask:
            raise NoWitnessError(
                f"no index satisfies both inequalities for cells {pi}, {qi}"
            )
        return (mask & -mask).bit_length() - 1

    def _inductive(self, pi: int, qi: int) -> int:
        memo = self._memo
        cached = memo.get((pi, qi))
        if cached is not None:
            return cached
        dominants = self.analysis.dominants
        if pi == qi:
            memo[(pi, qi)] = dominants[pi]
            return dominants[pi]
        complex = self.analysis.complex
        cells = complex.cells
        p_cell, q_cell = cells[pi], cells[qi]
        differing = [
            k for k, (a, b) in enumerate(zip(p_cell.signs, q_cell.signs)) if a != b
        ]
        if len(differing) == 1:
            dp, dq = dominants[pi], dominants[qi]
            if dp == dq:
                k = dp
            else:
                row = self.analysis.values[pi]
                k = dp if row[dp] < row[dq] else dq
            memo[(pi, qi)] = k
            return k
        neighbor = None
        for bit in differing:
            flipped = list(p_cell.signs)
            flipped[bit] = -flipped[bit]
            neighbor = complex.by_signs(tuple(flipped))
            if neighbor is not None:
                break
        if neighbor is None:
            raise NoWitnessError(
                f"no geodesic neighbor of cell {pi} toward cell {qi}"
            )
        r = self._inductive(neighbor.id, qi)
        row = self.analysis.values[pi]
        k = r if row[r] <= self.analysis.f_values[pi] else dominants[pi]
        memo[(pi, qi)] = k
        return k


def lemma_witness(
    f: PwlFunction,
    complex: CellComplex,
    p: Cell,
    q: Cell,
    strategy: str = "brute",
) -> int:
    """One-shot convenience wrapper around :class:`LemmaWitnessFinder`."""
    comps = extract_components(f)
    analysis = FunctionAnalysis(f, comps, complex)
    return LemmaWitnessFinder(analysis).find(p, q, strategy)


def lattice_to_pwl(
    poly: LatticePolynomial, gamma: Polyhedron, *, threads: int = 1
) -> PwlFunction:
    """Compile a polynomial into a piecewise linear function on ``gamma``.

    Enumerates the arrangement of the components' pairwise-equality
    hyperplanes meeting the interior of ``gamma``; on each cell the
    expression collapses to a single component, which becomes the piece's
    func on the cell's closure.
    """
    if len(set(poly.components)) != len(poly.components):
        raise ValueError("components must be pairwise distinct")
    if poly.dim != gamma.dim:
        raise ValueError("domain dimension mismatch")
    if interior_point(gamma) is None:
        raise DegenerateDomainError("domain has no interior point")
    if not is_bounded(gamma):
        raise UnboundedDomainError("cell enumeration requires a bounded domain")
    if len(poly.components) >= 2:
        arr = build_hyperplanes(poly.components, gamma, threads=threads)
    else:
        arr = Arrangement(gamma, (), poly.components)
    complex = enumerate_cells(arr, threads=threads)
    pieces = []
    for cell in complex.cells:
        row = [g(cell.witness) for g in poly.components]
        reduced = [min(term, key=row.__getitem__) for term in poly.terms]
        winner = max(reduced, key=row.__getitem__)
        closure = gamma.with_halfspaces(
            hyp.halfspace(s) for hyp, s in zip(arr.hyperplanes, cell.signs)
        )
        pieces.append((closure, poly.components[winner]))
    return PwlFunction.of(gamma, pieces)
