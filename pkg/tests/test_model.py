"""PWL model checks: validation kinds, exact evaluation, component extraction."""

from fractions import Fraction
import random

import pytest

from pwlattice.errors import OutsideDomainError
from pwlattice.geometry import AffineFunc, Halfspace, Polyhedron
from pwlattice.model import (
    COVER_GAP,
    CONTINUITY_BREAK,
    DEGENERATE_DOMAIN,
    OVERLAP_MISMATCH,
    PIECE_OUTSIDE_DOMAIN,
    PwlFunction,
    eval_pwl,
    extract_components,
    validate_pwl,
)

from conftest import interval, rational_grid_points


class TestValidate:
    def test_fixture_a_is_valid(self, fixture_a):
        assert validate_pwl(fixture_a).ok

    def test_fixture_b_is_valid(self, fixture_b):
        assert validate_pwl(fixture_b).ok

    def test_fixture_d_is_valid(self, fixture_d):
        assert validate_pwl(fixture_d).ok

    def test_continuity_break(self):
        f = PwlFunction.of(
            interval(-1, 1),
            [
                (interval(-1, 0), AffineFunc.of((-1,), 0)),
                (interval(0, 1), AffineFunc.of((1,), 1)),
            ],
        )
        report = validate_pwl(f)
        assert CONTINUITY_BREAK in report.kinds()

    def test_cover_gap(self):
        f = PwlFunction.of(
            interval(-1, 1),
            [(interval(-1, 0), AffineFunc.of((1,), 0))],
        )
        report = validate_pwl(f)
        assert COVER_GAP in report.kinds()

    def test_degenerate_domain(self):
        flat = Polyhedron.of(
            1, [Halfspace.of((1,), 0), Halfspace.of((-1,), 0)]
        )
        f = PwlFunction.of(flat, [(flat, AffineFunc.of((1,), 0))])
        report = validate_pwl(f)
        assert report.kinds() == {DEGENERATE_DOMAIN}

    def test_piece_outside_domain(self):
        f = PwlFunction.of(
            interval(-1, 1),
            [
                (interval(-1, 1), AffineFunc.of((1,), 0)),
                (interval(0, 2), AffineFunc.of((1,), 0)),
            ],
        )
        report = validate_pwl(f)
        assert PIECE_OUTSIDE_DOMAIN in report.kinds()

    def test_overlap_mismatch(self):
        f = PwlFunction.of(
            interval(-1, 1),
            [
                (interval(-1, 1), AffineFunc.of((1,), 0)),
                (interval(-1, 1), AffineFunc.of((-1,), 0)),
            ],
        )
        report = validate_pwl(f)
        assert OVERLAP_MISMATCH in report.kinds()
        assert CONTINUITY_BREAK in report.kinds()

    def test_consistent_overlap_allowed(self):
        f = PwlFunction.of(
            interval(-1, 1),
            [
                (interval(-1, Fraction(1, 2)), AffineFunc.of((1,), 0)),
                (interval(0, 1), AffineFunc.of((1,), 0)),
            ],
        )
        assert validate_pwl(f).ok

    def test_lower_dimensional_piece_is_continuity_checked(self):
        point_region = Polyhedron.of(
            1, [Halfspace.of((1,), 0), Halfspace.of((-1,), 0)]
        )
        bad = PwlFunction.of(
            interval(-1, 1),
            [
                (interval(-1, 0), AffineFunc.of((-1,), 0)),
                (interval(0, 1), AffineFunc.of((1,), 0)),
                (point_region, AffineFunc.of((0,), 5)),
            ],
        )
        report = validate_pwl(bad)
        assert CONTINUITY_BREAK in report.kinds()


class TestEval:
    def test_inside_piece(self, fixture_a):
        assert eval_pwl(fixture_a, (Fraction(1, 2),)) == Fraction(1, 2)

    def test_boundary_agreement(self, fixture_a):
        assert eval_pwl(fixture_a, (Fraction(0),)) == 0

    def test_outside_domain(self, fixture_a):
        with pytest.raises(OutsideDomainError):
            eval_pwl(fixture_a, (Fraction(2),))

    def test_pairwise_agreement_is_quantified(self, fixture_b):
        # well-definedness: proven by validate_pwl's range checks, spot-check here
        assert validate_pwl(fixture_b).ok
        for x in (Fraction(0), Fraction(1)):
            values = {
                piece.func((x,))
                for piece in fixture_b.pieces
                if piece.region.contains((x,))
            }
            assert len(values) == 1


class TestExtractComponents:
    def test_fixture_a(self, fixture_a):
        comps = extract_components(fixture_a)
        assert comps.components == (AffineFunc.of((-1,), 0), AffineFunc.of((1,), 0))
        assert comps.piece_to_component == (0, 1)

    def test_fixture_b(self, fixture_b):
        comps = extract_components(fixture_b)
        assert [c.coeffs[0] for c in comps.components] == [0, 1, 0]
        assert [c.offset for c in comps.components] == [0, 0, 1]

    def test_duplicate_funcs_dedupe(self):
        g = AffineFunc.of((1,), 0)
        f = PwlFunction.of(
            interval(-1, 1), [(interval(-1, 0), g), (interval(0, 1), g)]
        )
        comps = extract_components(f)
        assert comps.components == (g,)
        assert comps.piece_to_component == (0, 0)

    def test_resubstitution_reproduces_function(self, fixture_d):
        comps = extract_components(fixture_d)
        rng = random.Random(424242)
        for x in rational_grid_points(rng, fixture_d.domain, 100):
            direct = eval_pwl(fixture_d, x)
            via_components = None
            for idx, piece in enumerate(fixture_d.pieces):
                if piece.region.contains(x):
                    via_components = comps.components[comps.piece_to_component[idx]](x)
                    break
            assert via_components == direct
