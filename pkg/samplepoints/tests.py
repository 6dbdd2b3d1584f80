from itertools import product

from django.test import SimpleTestCase

from sympy.polys.domains import QQ

from arith.exceptions import ContextMismatch
from arith.tests import random_poly
from arith.utils import evaluate, grevlex_ring, seeded_stream, sign
from .exceptions import UnknownProjection
from .utils import (
    build_tower,
    irreducible_factors,
    main_variable,
    project_level,
    projection_order,
    sample_points,
    simplest_rational,
)


def sign_vector(gs, point):
    return tuple(sign(evaluate(g, point)) for g in gs)


def grid_sign_vectors(gs, step=QQ(1, 8), radius=4):
    """Sign vectors met on the rational grid of ``step`` over [-radius, radius]^t, zeros excluded."""
    steps = int(2 * radius * step.denominator) // int(step.numerator)
    axis = [QQ(-radius) + i * step for i in range(steps + 1)]
    vectors = set()
    for point in product(axis, repeat=gs[0].ring.ngens):
        vector = sign_vector(gs, point)
        if 0 not in vector:
            vectors.add(vector)
    return vectors


class SimplestRationalTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(simplest_rational(), 0)
        self.assertEqual(simplest_rational(QQ(1, 3), QQ(1, 2)), QQ(2, 5))
        self.assertEqual(simplest_rational(0, 1), QQ(1, 2))
        self.assertEqual(simplest_rational(2, 5), 3)
        self.assertEqual(simplest_rational(-5, -2), -3)
        self.assertEqual(simplest_rational(None, QQ(-3, 2)), -2)
        self.assertEqual(simplest_rational(QQ(7, 2), None), 4)
        self.assertEqual(simplest_rational(-1, 1), 0)

    def test_strictly_inside(self):
        rng = seeded_stream(30, 'simplest-rational')
        for _ in range(200):
            a = QQ(rng.randint(-50, 50), rng.randint(1, 20))
            b = QQ(rng.randint(-50, 50), rng.randint(1, 20))
            if a == b:
                continue
            lo, hi = min(a, b), max(a, b)
            value = simplest_rational(lo, hi)
            self.assertTrue(lo < value < hi)
            self.assertLessEqual(value.denominator, hi.denominator + lo.denominator)

    def test_empty_interval(self):
        with self.assertRaises(ValueError):
            simplest_rational(1, 1)


class ProjectionTests(SimpleTestCase):
    def setUp(self):
        self.ring = grevlex_ring(('y1', 'y2'))
        self.y1, self.y2 = self.ring.gens

    def test_main_variable_and_factors(self):
        y1, y2 = self.y1, self.y2
        self.assertEqual(main_variable(y1**2 - 4 * y2), 1)
        self.assertEqual(main_variable(y1 + 1), 0)
        self.assertIsNone(main_variable(self.ring(3)))
        factors = irreducible_factors(-2 * y1**2 * (y2 - y1) ** 3)
        self.assertEqual(set(factors), {y1, y1 - y2})

    def test_discriminant_of_toy(self):
        y1, y2 = self.y1, self.y2
        self.assertEqual(project_level([y1**2 - 4 * y2], 0), [y2])
        self.assertEqual(project_level([y1**2 - 4 * y2], 0, method='collins'), [y2])

    def test_linear_in_eliminated_variable(self):
        y1, y2 = self.y1, self.y2
        self.assertEqual(project_level([y2 - y1**2], 1), [])

    def test_pairs_add_resultants(self):
        y1, y2 = self.y1, self.y2
        single = set(project_level([y2 - y1**2], 1))
        both = set(project_level([y2 - y1**2, y2 - 1], 1))
        self.assertTrue(single <= both)
        self.assertIn(y1**2 - 1, both)

    def test_unknown_method(self):
        with self.assertRaises(UnknownProjection):
            project_level([self.y1], 0, method='mccallum')

    def test_tower_levels(self):
        y1, y2 = self.y1, self.y2
        tower = build_tower([y1**2 - 4 * y2, y1 * y2], self.ring, 'open')
        self.assertEqual(len(tower.levels), 2)
        self.assertIn(y1, tower.polys_at(0))
        self.assertIn(y1**2 - 4 * y2, tower.polys_at(1))
        self.assertIn(y2, tower.polys_at(1))

    def test_lowest_degree_variable_is_eliminated_first(self):
        y1, y2 = self.y1, self.y2
        self.assertEqual(projection_order([y1**2 - 4 * y2], self.ring), (0, 1))
        self.assertEqual(projection_order([y1 - y2**3], self.ring), (1, 0))
        tower = build_tower([y1 - y2**3], self.ring)
        self.assertEqual(tower.ring.symbols, tuple(reversed(self.ring.symbols)))
        self.assertEqual(tower.restore((QQ(2), QQ(5))), (QQ(5), QQ(2)))

    def test_fixture_minors_eliminate_y1_first(self):
        ring = grevlex_ring(('y1', 'y2', 'y3'))
        y1, y2, y3 = ring.gens
        a, b = y2**2, y3**2
        gs = [
            -2 * a + b + 2 * y1,
            (2 * y1 + a + b) * (y1 - a - b),
            y1 * ((y1 - a - b) ** 3 - 27 * y1 * a * b),
        ]
        self.assertEqual(projection_order(gs, ring), (1, 2, 0))


class SamplePointsTests(SimpleTestCase):
    def test_one_parameter(self):
        ring = grevlex_ring(('y1',))
        (y1,) = ring.gens
        self.assertEqual(sample_points([y1]), [(QQ(-1),), (QQ(1),)])

    def test_toy_discriminant_signs(self):
        ring = grevlex_ring(('y1', 'y2'))
        y1, y2 = ring.gens
        disc = y1**2 - 4 * y2
        signs = {sign_vector([disc], point) for point in sample_points([disc])}
        self.assertEqual(signs, {(-1,), (1,)})

    def test_empty_and_constant_input(self):
        ring = grevlex_ring(('y1', 'y2'))
        self.assertEqual(sample_points([], ring), [(QQ(0), QQ(0))])
        self.assertEqual(sample_points([ring(5)]), [(QQ(0), QQ(0))])
        self.assertEqual(sample_points([]), [()])

    def test_ring_mismatch(self):
        ring = grevlex_ring(('y1', 'y2'))
        other = grevlex_ring(('z1', 'z2'))
        with self.assertRaises(ContextMismatch):
            sample_points([ring.gens[0], other.gens[0]], ring)

    def test_deterministic(self):
        ring = grevlex_ring(('y1', 'y2'))
        y1, y2 = ring.gens
        gs = [y1**2 + y2**2 - 4, y1 * y2 - 1]
        self.assertEqual(sample_points(gs), sample_points(gs))

    def test_completeness_against_grid(self):
        ring = grevlex_ring(('y1', 'y2'))
        rng = seeded_stream(31, 'sample-points-grid')
        for _ in range(10):
            gs = []
            size = rng.randint(1, 3)
            while len(gs) < size:
                g = random_poly(ring, rng, degree=3, terms=3, size=4)
                if g and not g.is_ground:
                    gs.append(g)
            points = sample_points(gs)
            tower = build_tower(gs, ring)
            self.assertLessEqual(len(points), tower.point_bound())
            realized = {sign_vector(gs, point) for point in points}
            self.assertNotIn(0, {s for vector in realized for s in vector})
            self.assertLessEqual(grid_sign_vectors(gs), realized)

    def test_collins_projection_also_complete(self):
        ring = grevlex_ring(('y1', 'y2'))
        y1, y2 = ring.gens
        gs = [y1**2 + y2**2 - 4, y2 - y1**2]
        realized = {sign_vector(gs, point) for point in sample_points(gs, method='collins')}
        self.assertLessEqual(grid_sign_vectors(gs), realized)

    def test_three_parameters(self):
        ring = grevlex_ring(('y1', 'y2', 'y3'))
        y1, y2, y3 = ring.gens
        gs = [y1**2 + y2**2 + y3**2 - 1, y3]
        realized = {sign_vector(gs, point) for point in sample_points(gs)}
        self.assertEqual(realized, {(-1, -1), (-1, 1), (1, -1), (1, 1)})

    def test_rational_and_irrational_roots_in_one_fiber(self):
        ring = grevlex_ring(('y1',))
        (y1,) = ring.gens
        gs = [y1**2 - 1, y1**2 - 2]
        points = sample_points(gs)
        self.assertEqual(len(points), 5)
        self.assertEqual(
            [sign_vector(gs, point) for point in points],
            [(1, 1), (1, -1), (-1, -1), (1, -1), (1, 1)],
        )

        ring = grevlex_ring(('y1', 'y2'))
        y1, y2 = ring.gens
        gs = [y2**2 - 2, y2 - y1, y1**2 - 1]
        realized = {sign_vector(gs, point) for point in sample_points(gs)}
        self.assertLessEqual(grid_sign_vectors(gs), realized)
