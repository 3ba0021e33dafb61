"""Extension checks: radial boundary extension, domain extension, ReLU import."""

from fractions import Fraction
import random

import pytest

from pwlattice.errors import (
    CenterNotInteriorError,
    InconsistentBoundaryDataError,
    TargetDoesNotContainDomainError,
)
from pwlattice.extension import (
    BoundaryPwl,
    ReluNet1,
    extend_to_space,
    import_relu,
    radial_extend,
)
from pwlattice.geometry import AffineFunc, Polyhedron, strict_point
from pwlattice.latticizer import build_representation, verify_symbolic
from pwlattice.model import eval_pwl, validate_pwl

from conftest import interval, rational_grid_points


def segment_boundary(center=0, left=2, right=3) -> BoundaryPwl:
    poly = interval(-1, 1)  # halfspaces: x <= 1 then -x <= 1
    return BoundaryPwl(
        poly,
        (Fraction(center),),
        (
            (0, AffineFunc.of((0,), right)),
            (1, AffineFunc.of((0,), left)),
        ),
    )


def square_boundary_ones() -> BoundaryPwl:
    poly = Polyhedron.box([(-1, 1), (-1, 1)])
    data = tuple(
        (idx, AffineFunc.of((0, 0), 1)) for idx in range(len(poly.halfspaces))
    )
    return BoundaryPwl(poly, (Fraction(0), Fraction(0)), data)


class TestRadialExtend:
    def test_segment_pieces(self):
        f = radial_extend(segment_boundary())
        assert validate_pwl(f).ok
        assert {p.func for p in f.pieces} == {
            AffineFunc.of((3,), 0),
            AffineFunc.of((-2,), 0),
        }
        assert eval_pwl(f, (Fraction(1),)) == 3
        assert eval_pwl(f, (Fraction(-1),)) == 2
        assert eval_pwl(f, (Fraction(0),)) == 0

    def test_square_max_norm(self):
        f = radial_extend(square_boundary_ones())
        assert validate_pwl(f).ok
        assert {p.func for p in f.pieces} == {
            AffineFunc.of((1, 0), 0),
            AffineFunc.of((-1, 0), 0),
            AffineFunc.of((0, 1), 0),
            AffineFunc.of((0, -1), 0),
        }
        for x, want in [
            ((Fraction(1), Fraction(1, 3)), 1),
            ((Fraction(-1, 2), Fraction(1, 4)), Fraction(1, 2)),
            ((Fraction(0), Fraction(0)), 0),
        ]:
            assert eval_pwl(f, x) == want

    def test_zero_boundary_data(self):
        poly = Polyhedron.box([(-1, 1), (-1, 1)])
        data = tuple((i, AffineFunc.of((0, 0), 0)) for i in range(4))
        f = radial_extend(BoundaryPwl(poly, (Fraction(0), Fraction(0)), data))
        assert all(p.func == AffineFunc.of((0, 0), 0) for p in f.pieces)

    def test_homogeneity_about_center(self):
        # boundary values of one ambient affine func are consistent edge data
        g = AffineFunc.of((3, 1), 1)
        b = BoundaryPwl(
            Polyhedron.box([(-1, 1), (-1, 1)]),
            (Fraction(1, 4), Fraction(-1, 8)),
            tuple((idx, g) for idx in range(4)),
        )
        f = radial_extend(b)
        assert validate_pwl(f).ok
        a = b.center
        assert eval_pwl(f, a) == 0
        rng = random.Random(1207)
        for x in rational_grid_points(rng, f.domain, 25):
            fx = eval_pwl(f, x)
            for t in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)):
                scaled = tuple(ai + t * (xi - ai) for ai, xi in zip(a, x))
                assert eval_pwl(f, scaled) == t * fx

    def test_boundary_agreement_at_facet_points(self):
        b = square_boundary_ones()
        f = radial_extend(b)
        poly = b.polytope
        for idx, func in b.facet_data:
            hs = poly.halfspaces[idx]
            others = [h for k, h in enumerate(poly.halfspaces) if k != idx]
            witness = strict_point(2, others, [(hs.normal, hs.bound)])
            assert witness is not None
            assert eval_pwl(f, witness) == func(witness)

    def test_center_must_be_interior(self):
        b = segment_boundary()
        bad = BoundaryPwl(b.polytope, (Fraction(1),), b.facet_data)
        with pytest.raises(CenterNotInteriorError):
            radial_extend(bad)

    def test_inconsistent_corner_data(self):
        poly = Polyhedron.box([(-1, 1), (-1, 1)])
        data = (
            (0, AffineFunc.of((0, 0), 1)),
            (1, AffineFunc.of((0, 0), 2)),  # clashes with facet 0 at the corner
            (2, AffineFunc.of((0, 0), 1)),
            (3, AffineFunc.of((0, 0), 1)),
        )
        with pytest.raises(InconsistentBoundaryDataError):
            radial_extend(BoundaryPwl(poly, (Fraction(0), Fraction(0)), data))

    def test_missing_facet_data(self):
        poly = Polyhedron.box([(-1, 1)])
        with pytest.raises(InconsistentBoundaryDataError):
            radial_extend(
                BoundaryPwl(poly, (Fraction(0),), ((0, AffineFunc.of((0,), 1)),))
            )

    def test_representation_of_extension_verifies(self):
        f = radial_extend(square_boundary_ones())
        poly = build_representation(f)
        assert verify_symbolic(f, poly).passed


class TestExtendToSpace:
    def test_absolute_value_to_wider_interval(self, fixture_a):
        g = extend_to_space(fixture_a, interval(-5, 5))
        assert validate_pwl(g).ok
        assert eval_pwl(g, (Fraction(5),)) == 5
        assert eval_pwl(g, (Fraction(-5),)) == 5
        rng = random.Random(3177)
        for x in rational_grid_points(rng, fixture_a.domain, 50):
            assert eval_pwl(g, x) == eval_pwl(fixture_a, x)

    def test_clamp_to_wider_interval(self, fixture_b):
        g = extend_to_space(fixture_b, interval(-10, 10))
        assert eval_pwl(g, (Fraction(10),)) == 1
        assert eval_pwl(g, (Fraction(-10),)) == 0
        assert eval_pwl(g, (Fraction(1, 2),)) == Fraction(1, 2)

    def test_same_domain_identity(self, fixture_a):
        g = extend_to_space(fixture_a, fixture_a.domain)
        rng = random.Random(88)
        for x in rational_grid_points(rng, fixture_a.domain, 40):
            assert eval_pwl(g, x) == eval_pwl(fixture_a, x)

    def test_target_must_contain_domain(self, fixture_b):
        with pytest.raises(TargetDoesNotContainDomainError):
            extend_to_space(fixture_b, interval(0, 1))


def relu_net() -> ReluNet1:
    return ReluNet1.of([[1]], [0], [1], 0)


def absolute_value_net() -> ReluNet1:
    return ReluNet1.of([[1], [-1]], [0, 0], [1, 1], 0)


class TestImportRelu:
    def test_single_relu(self):
        f = import_relu(relu_net(), interval(-2, 2))
        assert validate_pwl(f).ok
        assert [p.func for p in f.pieces] == [
            AffineFunc.of((0,), 0),
            AffineFunc.of((1,), 0),
        ]

    def test_absolute_value(self):
        f = import_relu(absolute_value_net(), interval(-2, 2))
        assert validate_pwl(f).ok
        assert eval_pwl(f, (Fraction(-3, 2),)) == Fraction(3, 2)
        assert eval_pwl(f, (Fraction(3, 2),)) == Fraction(3, 2)

    def test_zero_readout_single_piece(self):
        net = ReluNet1.of([[1], [-1]], [0, 1], [0, 0], 7)
        f = import_relu(net, interval(-2, 2))
        assert len(f.pieces) == 1
        assert f.pieces[0].func == AffineFunc.of((0,), 7)

    def test_zero_row_neuron_constant(self):
        net = ReluNet1.of([[0], [1]], [3, 0], [2, 1], 1)
        f = import_relu(net, interval(-1, 1))
        # the zero-row neuron adds 2 * max(0, 3) = 6 everywhere
        assert eval_pwl(f, (Fraction(-1),)) == 7
        assert eval_pwl(f, (Fraction(1),)) == 8

    def test_forward_pass_agreement(self):
        rng = random.Random(5202)
        nets = [
            relu_net(),
            absolute_value_net(),
            ReluNet1.of(
                [[1, 2], [-1, 1], [0, 1]],
                [Fraction(1, 2), 0, -1],
                [1, Fraction(-3, 2), 2],
                Fraction(1, 4),
            ),
        ]
        for net in nets:
            box = Polyhedron.box([(-2, 2)] * net.input_dim)
            f = import_relu(net, box)
            assert validate_pwl(f).ok
            for x in rational_grid_points(rng, box, 100):
                assert eval_pwl(f, x) == net.forward(x)

    def test_hyperplane_missing_interior_fixed_activation(self):
        net = ReluNet1.of([[1]], [-5, ], [1], 0)  # active only past x = 5
        f = import_relu(net, interval(-1, 1))
        assert len(f.pieces) == 1
        assert f.pieces[0].func == AffineFunc.of((0,), 0)
        net2 = ReluNet1.of([[1]], [5], [1], 0)  # active on the whole box
        f2 = import_relu(net2, interval(-1, 1))
        assert len(f2.pieces) == 1
        assert f2.pieces[0].func == AffineFunc.of((1,), 5)

    def test_pipeline_closure(self):
        f = import_relu(absolute_value_net(), interval(-2, 2))
        poly = build_representation(f)
        assert verify_symbolic(f, poly).passed

    def test_piece_count_bounded_by_patterns(self):
        net = ReluNet1.of(
            [[1, 0], [0, 1], [1, 1]], [0, 0, 0], [1, 1, 1], 0
        )
        f = import_relu(net, Polyhedron.box([(-1, 1), (-1, 1)]))
        assert len(f.pieces) <= 2 ** 3
