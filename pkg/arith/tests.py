from django.test import SimpleTestCase

from sympy.polys.domains import QQ

from .exceptions import (
    ContextError,
    ContextMismatch,
    DuplicatePoint,
    InexactDivision,
    InsufficientGrid,
    InterpolationMismatch,
    LengthMismatch,
    ParseError,
    UndeclaredIdentifier,
    ZeroPolynomialError,
)
from .models import VarContext
from .utils import (
    add,
    evaluate,
    exact_divide,
    gcd,
    grevlex_ring,
    grid_points,
    held_out_points,
    interpolate,
    multiply,
    normalize,
    parse_poly,
    render,
    seeded_stream,
    specialize,
    squarefree_part,
    subtract,
    total_degree,
)


def random_poly(ring, rng, degree=3, terms=4, size=5):
    p = ring.zero
    for _ in range(terms):
        monom = [0] * ring.ngens
        for _ in range(rng.randint(0, degree)):
            monom[rng.randrange(ring.ngens)] += 1
        p += ring({tuple(monom): rng.randint(-size, size)})
    return p


class VarContextTests(SimpleTestCase):
    def test_names_order_variables_then_aux_then_params(self):
        context = VarContext(('y1', 'y2'), ('x1', 'x2')).with_aux()
        self.assertEqual(context.names, ('x1', 'x2', 'u', 'y1', 'y2'))
        self.assertEqual((context.n, context.t), (2, 2))

    def test_aux_name_avoids_collisions(self):
        context = VarContext(('u',), ('x',)).with_aux('u')
        self.assertEqual(context.aux, 'u1')

    def test_rejects_duplicate_and_malformed_names(self):
        with self.assertRaises(ContextError):
            VarContext(('x',), ('x',))
        with self.assertRaises(ContextError):
            VarContext(('y1',), ('1x',))
        with self.assertRaises(ContextError):
            VarContext(('y',), ())

    def test_block_order_compares_variables_first(self):
        ring = VarContext(('y1',), ('x1',)).ring
        x1, y1 = ring.gens
        # x1 beats y1^5 even though it has lower total degree
        self.assertEqual((x1 + y1**5).LM, (1, 0))

    def test_reordered_permutes_variables(self):
        context = VarContext(('y1',), ('x1', 'x2')).reordered(('x2', 'x1'))
        self.assertEqual(context.variables, ('x2', 'x1'))
        with self.assertRaises(ContextError):
            VarContext(('y1',), ('x1', 'x2')).reordered(('x1', 'x3'))


class RingOperationTests(SimpleTestCase):
    def setUp(self):
        self.context = VarContext(('y1', 'y2', 'y3'), ('x1', 'x2'))
        self.ring = self.context.ring
        self.x1, self.x2, self.y1, self.y2, self.y3 = self.ring.gens

    def test_identity_and_cancellation(self):
        f = self.x1**2 + self.x2**2 - self.y1
        self.assertEqual(f * self.ring.one, f)
        self.assertEqual((self.y1**2 - 4 * self.y2) + 4 * self.y2, self.y1**2)

    def test_exact_divide_round_trip(self):
        rng = seeded_stream(1, 'exact-divide')
        checked = 0
        while checked < 1000:
            p = random_poly(self.ring, rng)
            q = random_poly(self.ring, rng)
            if not q:
                continue
            self.assertEqual(exact_divide(multiply(p, q), q), p)
            self.assertEqual(subtract(add(p, q), q), p)
            checked += 1

    def test_exact_divide_failures(self):
        with self.assertRaises(InexactDivision):
            exact_divide(self.x1 + 1, self.x2)
        with self.assertRaises(InexactDivision):
            exact_divide(self.x1, self.ring.zero)
        other = VarContext(('y1',), ('x1',)).ring
        with self.assertRaises(ContextMismatch):
            exact_divide(self.x1, other.gens[0])

    def test_operands_from_different_rings(self):
        other = VarContext(('y1',), ('x1',)).ring
        for operation in (add, subtract, multiply):
            with self.assertRaises(ContextMismatch):
                operation(self.x1, other.gens[0])
        self.assertEqual(add(self.x1, self.y1), self.x1 + self.y1)


class SpecializeTests(SimpleTestCase):
    def setUp(self):
        self.context = VarContext(('y1', 'y2', 'y3'), ('x1', 'x2'))
        x1, x2, y1, y2, y3 = self.context.ring.gens
        self.x1, self.x2 = x1, x2
        self.y1, self.y2, self.y3 = y1, y2, y3

    def test_parameter_polynomial_becomes_rational(self):
        toy = VarContext(('y1', 'y2'), ('x',))
        py1, py2 = toy.param_ring.gens
        self.assertEqual(specialize(py1**2 - 4 * py2, (1, 0), toy), 1)

        p1, p2, p3 = self.context.param_ring.gens
        self.assertEqual(specialize(-2 * p2**2 + p3**2 + 2 * p1, (1, 0, 0), self.context), 2)

    def test_system_polynomial_drops_parameters(self):
        f = self.x1**2 + self.x2**2 - self.y1
        result = specialize(f, (1, 0, 0), self.context)
        x1, x2 = self.context.specialized().ring.gens
        self.assertEqual(result, x1**2 + x2**2 - 1)

    def test_homomorphism_on_random_polynomials(self):
        rng = seeded_stream(2, 'specialize')
        specialized_ring = self.context.specialized().ring
        for _ in range(50):
            p = random_poly(self.context.ring, rng)
            q = random_poly(self.context.ring, rng)
            eta = [QQ(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)]
            self.assertEqual(
                specialize(p * q, eta, self.context),
                specialize(p, eta, self.context) * specialize(q, eta, self.context),
            )
            self.assertEqual(specialize(p, eta, self.context).ring, specialized_ring)

    def test_length_mismatch(self):
        with self.assertRaises(LengthMismatch):
            specialize(self.x1, (1, 0), self.context)


class GcdTests(SimpleTestCase):
    def setUp(self):
        self.ring = grevlex_ring(('y1', 'y2', 'y3'))
        self.y1, self.y2, self.y3 = self.ring.gens

    def test_gcd_with_zero_is_normalized(self):
        p = -2 * self.y1 + 4 * self.y2
        self.assertEqual(gcd(p, self.ring.zero), self.y1 - 2 * self.y2)

    def test_shared_factor(self):
        y1, y2 = self.y1, self.y2
        self.assertEqual(gcd(y1 * (y1**2 - 4 * y2), y1), y1)

    def test_multiplicative_oracle(self):
        rng = seeded_stream(3, 'gcd')
        for _ in range(30):
            p, q, r = (random_poly(self.ring, rng, degree=2) for _ in range(3))
            if not (p and q and r):
                continue
            self.assertEqual(gcd(p * r, q * r), normalize(r * gcd(p, q)))


class SquarefreeTests(SimpleTestCase):
    def setUp(self):
        self.ring = grevlex_ring(('y1', 'y2', 'y3'))
        self.y1, self.y2, self.y3 = self.ring.gens

    def test_cube_of_discriminant(self):
        y1, y2 = self.y1, self.y2
        self.assertEqual(squarefree_part((y1**2 - 4 * y2) ** 3), y1**2 - 4 * y2)
        self.assertEqual(squarefree_part(y1**2 * y2), y1 * y2)

    def test_constant_and_zero(self):
        self.assertEqual(squarefree_part(self.ring(7)), self.ring.one)
        with self.assertRaises(ZeroPolynomialError):
            squarefree_part(self.ring.zero)

    def test_product_of_distinct_linear_factors(self):
        rng = seeded_stream(4, 'squarefree')
        for _ in range(20):
            factors = set()
            while len(factors) < 3:
                linear = sum(rng.randint(-4, 4) * g for g in self.ring.gens) + rng.randint(-4, 4)
                if total_degree(linear) == 1:
                    factors.add(normalize(linear))
            product = self.ring.one
            expected = self.ring.one
            for factor in factors:
                product *= factor ** rng.randint(1, 3)
                expected *= factor
            result = squarefree_part(product)
            self.assertEqual(result, normalize(expected))
            self.assertEqual(exact_divide(product, result) * result, product)


class InterpolateTests(SimpleTestCase):
    def setUp(self):
        self.ring = grevlex_ring(('y1', 'y2'))
        self.y1, self.y2 = self.ring.gens

    def test_constant(self):
        evals = [(point, QQ(5)) for point in grid_points((1, 1))]
        self.assertEqual(interpolate(evals, 1, self.ring), self.ring(5))

    def test_discriminant_on_three_by_three_grid(self):
        disc = self.y1**2 - 4 * self.y2
        evals = [(point, evaluate(disc, point)) for point in grid_points((2, 2))]
        self.assertEqual(interpolate(evals, 2, self.ring), disc)

    def test_fixture_matrix_entries(self):
        ring = grevlex_ring(('y1', 'y2', 'y3'))
        y1, y2, y3 = ring.gens
        entries = [
            ring(4),
            -2 * y3,
            2 * (y1 - y2**2 + y3**2),
            2 * (3 * y2**2 * y3 - y3**3),
            2 * y2**4 - 12 * y2**2 * y3**2 + 2 * y3**4 - 4 * y1 * y2**2 + 2 * y1**2,
        ]
        points = grid_points((4, 4, 4))
        for entry in entries:
            evals = [(point, evaluate(entry, point)) for point in points]
            self.assertEqual(interpolate(evals, 4, ring), entry)

    def test_random_round_trip_with_held_out_points(self):
        rng = seeded_stream(5, 'interpolate')
        for _ in range(20):
            p = random_poly(self.ring, rng, degree=4)
            points = grid_points((4, 4)) + held_out_points((4, 4), 3)
            evals = [(point, evaluate(p, point)) for point in points]
            self.assertEqual(interpolate(evals, 4, self.ring), p)

    def test_undersized_bound_is_detected(self):
        p = self.y1**3 + self.y2
        points = grid_points((3, 3)) + held_out_points((3, 3), 2)
        evals = [(point, evaluate(p, point)) for point in points]
        with self.assertRaises(InterpolationMismatch):
            interpolate(evals, 2, self.ring)

    def test_grid_errors(self):
        with self.assertRaises(InsufficientGrid):
            interpolate([((QQ(0), QQ(0)), QQ(1))], 1, self.ring)
        with self.assertRaises(DuplicatePoint):
            interpolate([((0, 0), 1), ((0, 0), 2)], 0, self.ring)


class ParseRenderTests(SimpleTestCase):
    def setUp(self):
        self.context = VarContext(('y1', 'y2', 'y3'), ('x1', 'x2'))
        self.ring = self.context.ring

    def test_parse_fixture_polynomials(self):
        x1, x2, y1, y2, y3 = self.ring.gens
        self.assertEqual(parse_poly('x1^2 + x2^2 - y1', self.ring), x1**2 + x2**2 - y1)
        self.assertEqual(parse_poly('x1*x2 + y2 x2 + 3/2 y3*x1', self.ring), x1 * x2 + y2 * x2 + QQ(3, 2) * y3 * x1)
        self.assertEqual(parse_poly('2x1**2', self.ring), 2 * x1**2)

    def test_render_round_trip(self):
        rng = seeded_stream(6, 'render')
        for _ in range(50):
            p = random_poly(self.ring, rng)
            self.assertEqual(parse_poly(render(p), self.ring), p)
        self.assertEqual(render(self.ring.zero), '0')

    def test_errors_carry_position(self):
        with self.assertRaises(UndeclaredIdentifier) as ctx:
            parse_poly('x1 + z', self.ring, line=3)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 6))
        self.assertEqual(ctx.exception.exit_code, 4)
        with self.assertRaises(ParseError):
            parse_poly('x1 + $', self.ring)
        with self.assertRaises(ParseError):
            parse_poly('x1 +', self.ring)
        with self.assertRaises(ParseError):
            parse_poly('x1 / x2', self.ring)

    def test_adjacent_numbers(self):
        with self.assertRaises(ParseError) as ctx:
            parse_poly('x1 + 2 3', self.ring, line=2)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 8))
        self.assertEqual(parse_poly('2 x1', self.ring), 2 * self.ring.gens[0])
