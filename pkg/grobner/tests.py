from django.test import SimpleTestCase

from sympy.polys.domains import QQ

from arith.models import VarContext
from arith.utils import seeded_stream, total_degree
from .exceptions import DegenerateLinearForm, InvalidSystem, NotZeroDimensional
from .models import GroebnerBasis, ParametricSystem
from .utils import (
    buchberger,
    choose_eliminating_poly,
    detect_assumption_c,
    detect_assumption_e,
    elimination_ideal_generator,
    is_groebner_basis,
    normal_form,
    quotient_basis,
    reduce_gb_over_K,
    specialize_basis,
    system_basis,
    to_coefficient_ring,
    x_leading,
)


def fixture_system():
    context = VarContext(('y1', 'y2', 'y3'), ('x1', 'x2'))
    x1, x2, y1, y2, y3 = context.ring.gens
    return ParametricSystem(context, (x1**2 + x2**2 - y1, x1 * x2 + y2 * x2 + y3 * x1))


def toy_system():
    context = VarContext(('y1', 'y2'), ('x',))
    x, y1, y2 = context.ring.gens
    return ParametricSystem(context, (x**2 + y1 * x + y2,))


class ParametricSystemTests(SimpleTestCase):
    def test_counts(self):
        sys = fixture_system()
        self.assertEqual((sys.m, sys.n, sys.t, sys.d), (2, 2, 3, 2))

    def test_rejects_empty_and_zero(self):
        context = VarContext(('y1',), ('x',))
        with self.assertRaises(InvalidSystem):
            ParametricSystem(context, ())
        with self.assertRaises(InvalidSystem):
            ParametricSystem(context, (context.ring.zero,))

    def test_specialize_and_reorder(self):
        sys = fixture_system()
        specialized = sys.specialize((1, 0, 0))
        x1, x2 = specialized.context.ring.gens
        self.assertEqual(specialized.polys, (x1**2 + x2**2 - 1, x1 * x2))
        reordered = sys.reordered(('x2', 'x1'))
        self.assertEqual(reordered.context.variables, ('x2', 'x1'))
        self.assertEqual(reordered.polys[0].as_expr(), sys.polys[0].as_expr())


class BuchbergerTests(SimpleTestCase):
    def test_already_reduced(self):
        context = VarContext(('y1',), ('x1',))
        x1, _ = context.ring.gens
        gb = buchberger([x1 - 1], context=context)
        self.assertEqual(gb.generators, (x1 - 1,))

    def test_fixture_basis(self):
        sys = fixture_system()
        x1, x2, y1, y2, y3 = sys.context.ring.gens
        gb = system_basis(sys)
        expected = {
            x2**3 + y3 * x2**2 + (y2**2 - y1) * x2 + y2 * y3 * x1 - y1 * y3,
            x1**2 + x2**2 - y1,
            x1 * x2 + x1 * y3 + x2 * y2,
        }
        self.assertEqual(set(gb.generators), expected)
        self.assertEqual(gb.generators[0].LM, (0, 3, 0, 0, 0))
        self.assertTrue(is_groebner_basis(gb.generators))

    def test_deterministic(self):
        sys = fixture_system()
        self.assertEqual(system_basis(sys), system_basis(sys))

    def test_x_leading(self):
        context = VarContext(('y1', 'y2'), ('x',))
        x, y1, y2 = context.ring.gens
        lm, lc = x_leading(y1 * x**2 + y2 * x**2 + x + y2, 1)
        self.assertEqual(lm, (2,))
        p1, p2 = lc.ring.gens
        self.assertEqual(lc, p1 + p2)

    def test_assumption_detection(self):
        gb = system_basis(fixture_system())
        self.assertTrue(detect_assumption_c(gb))
        self.assertTrue(detect_assumption_e(gb))

        context = VarContext(('y1', 'y2'), ('x',))
        x, y1, y2 = context.ring.gens
        gb = buchberger([y1 * x**2 + x + y2], context=context)
        self.assertFalse(detect_assumption_c(gb))
        gb = buchberger([x**2 + y1**3], context=context)
        self.assertTrue(detect_assumption_c(gb))
        self.assertFalse(detect_assumption_e(gb))


class NormalFormTests(SimpleTestCase):
    def setUp(self):
        self.sys = fixture_system()
        self.gb = system_basis(self.sys)
        self.basis = quotient_basis(self.gb)
        self.context = self.sys.context

    def test_basis_monomials_are_irreducible(self):
        ring = self.context.ring
        for monomial in self.basis.monomials:
            b = ring({monomial + (0, 0, 0): 1})
            vector = normal_form(b, self.gb, self.basis)
            self.assertEqual(vector.count(self.context.coefficient_domain.one), 1)
            self.assertEqual(vector[self.basis.index[monomial]], self.context.coefficient_domain.one)

    def test_single_division_step(self):
        x1, x2, y1, y2, y3 = self.context.ring.gens
        self.assertEqual(normal_form(x1**2, self.gb), to_coefficient_ring(y1 - x2**2, self.context))

    def test_generators_reduce_to_zero(self):
        for g in self.sys.polys + self.gb.generators:
            self.assertFalse(normal_form(g, self.gb))

    def test_idempotent(self):
        x1, x2, y1, y2, y3 = self.context.ring.gens
        p = x1**3 * x2 + y2 * x2**4 - y3 * x1**2
        once = normal_form(p, self.gb)
        self.assertEqual(once.rem([to_coefficient_ring(g, self.context) for g in self.gb]), once)


class QuotientBasisTests(SimpleTestCase):
    def test_fixture(self):
        basis = quotient_basis(system_basis(fixture_system()))
        self.assertEqual(basis.monomials, ((0, 0), (0, 1), (1, 0), (0, 2)))
        self.assertEqual(basis.labels(), ('1', 'x2', 'x1', 'x2^2'))
        self.assertEqual(basis.delta, 4)
        self.assertEqual(basis.degrees, (0, 1, 1, 2))

    def test_toy(self):
        basis = quotient_basis(system_basis(toy_system()))
        self.assertEqual(basis.monomials, ((0,), (1,)))

    def test_parameter_free_point(self):
        context = VarContext(('y1',), ('x1', 'x2'))
        x1, x2, _ = context.ring.gens
        basis = quotient_basis(system_basis(ParametricSystem(context, (x1, x2))))
        self.assertEqual(basis.monomials, ((0, 0),))

    def test_not_zero_dimensional(self):
        context = VarContext(('y1',), ('x1', 'x2'))
        x1, x2, y1 = context.ring.gens
        with self.assertRaises(NotZeroDimensional) as ctx:
            quotient_basis(system_basis(ParametricSystem(context, (x1 * x2 - y1,))))
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_specialized_basis_keeps_staircase(self):
        sys = fixture_system()
        gb = system_basis(sys)
        basis = quotient_basis(gb)
        rng = seeded_stream(10, 'specialized-basis')
        for _ in range(10):
            eta = tuple(QQ(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3))
            specialized = specialize_basis(gb, eta)
            self.assertTrue(is_groebner_basis(specialized.generators))
            self.assertEqual(quotient_basis(specialized).monomials, basis.monomials)


class ReduceOverFieldTests(SimpleTestCase):
    def test_distinct_leading_monomials_unchanged(self):
        gb = system_basis(fixture_system())
        self.assertEqual(reduce_gb_over_K(gb).generators, gb.generators)

    def test_duplicate_dropped(self):
        sys = fixture_system()
        gb = system_basis(sys)
        y1 = sys.context.ring.gens[2]
        padded = GroebnerBasis(gb.generators + (y1 * gb.generators[1],), gb.order, False, gb.context)
        reduced = reduce_gb_over_K(padded)
        self.assertEqual(reduced.generators, gb.generators)
        self.assertEqual(quotient_basis(reduced).monomials, quotient_basis(gb).monomials)


class EliminationTests(SimpleTestCase):
    def test_fixture_projection_on_x2(self):
        sys = fixture_system()
        result = elimination_ideal_generator(sys, (0, 1))
        u, y1, y2, y3 = result.poly.ring.gens
        expected = u**4 + 2 * y3 * u**3 + (y2**2 + y3**2 - y1) * u**2 - 2 * y1 * y3 * u - y1 * y3**2
        self.assertEqual(result.poly, expected)
        self.assertEqual(result.degree, 4)
        self.assertLessEqual(total_degree(result.poly), sys.d ** sys.n)

    def test_toy(self):
        result = elimination_ideal_generator(toy_system(), (1,))
        u, y1, y2 = result.poly.ring.gens
        self.assertEqual(result.poly, u**2 + y1 * u + y2)

    def test_degenerate_form_is_resampled(self):
        context = VarContext(('y1',), ('x1', 'x2'))
        x1, x2, y1 = context.ring.gens
        # x2 takes only two values on four solutions
        sys = ParametricSystem(context, (x1**2 - y1, x2**2 - 1))
        with self.assertRaises(DegenerateLinearForm):
            elimination_ideal_generator(sys, (0, 1))
        chosen = choose_eliminating_poly(sys, seed=11)
        self.assertEqual(chosen.degree, 4)
        self.assertNotEqual(chosen.linear_form, (0, 1))

    def test_zero_form_rejected(self):
        with self.assertRaises(DegenerateLinearForm):
            elimination_ideal_generator(fixture_system(), (0, 0))
