from django.test import SimpleTestCase

from sympy.polys.domains import QQ

from arith.utils import evaluate, grevlex_ring, seeded_stream, squarefree_part
from .exceptions import DegreeOrderError, LeadingZeroError, NotUnivariate
from .utils import (
    count_real_roots,
    generalized_pmv,
    isolate_real_roots,
    signed_remainder_count,
    subresultant_lcoeffs,
)


def random_univariate(ring, rng, max_degree=8):
    u = ring.gens[0]
    degree = rng.randint(1, max_degree)
    p = ring.zero
    while p.degree() < 1:
        p = sum((rng.randint(-6, 6) * u**k for k in range(degree + 1)), ring.zero)
        # sparse polynomials produce zero gaps in the subresultant signs
        if rng.random() < 0.3:
            p = u**degree + rng.randint(-4, 4)
    if rng.random() < 0.3:
        factor = u - rng.randint(-3, 3)
        p *= factor**2
    return p


class SubresultantTests(SimpleTestCase):
    def setUp(self):
        self.uring = grevlex_ring(('u',))
        self.u = self.uring.gens[0]

    def test_quadratic_over_rationals(self):
        u = self.u
        result = subresultant_lcoeffs(u**2 - 1, 2 * u)
        self.assertEqual(result.kind, 'rational')
        self.assertEqual(result.coefficients, (QQ(1), QQ(2), QQ(4)))

    def test_constant_second_argument(self):
        u = self.u
        result = subresultant_lcoeffs(u**4 + u + 1, self.uring(3))
        self.assertEqual(result.coefficients[-1], QQ(81))
        self.assertEqual(result.coefficients[1:-1], (QQ(0),) * 3)

    def test_toy_quadratic_with_parameters(self):
        ring = grevlex_ring(('u', 'y1', 'y2'))
        u, y1, y2 = ring.gens
        w = u**2 + y1 * u + y2
        result = subresultant_lcoeffs(w, w.diff(u))
        self.assertEqual(result.kind, 'polynomial')
        _, p1, p2 = result.coefficients
        self.assertEqual(result.coefficients[0], p1.ring.one)
        self.assertEqual(p1, 2 * p1.ring.one)
        y1_, y2_ = p2.ring.gens
        self.assertEqual(p2, y1_**2 - 4 * y2_)

    def test_fixture_eliminating_polynomial(self):
        ring = grevlex_ring(('u', 'y1', 'y2', 'y3'))
        u, y1, y2, y3 = ring.gens
        w = u**4 + 2 * y3 * u**3 + (y2**2 + y3**2 - y1) * u**2 - 2 * y1 * y3 * u - y1 * y3**2
        result = subresultant_lcoeffs(w, w.diff(u), degree_bound=2 * 2**4)
        s = result.coefficients
        self.assertEqual(len(s), 5)
        self.assertEqual(s[0].as_expr(), 1)
        self.assertEqual(s[1].as_expr(), 4)

        py1, py2, py3 = s[2].ring.gens
        expected = -2 * py2**2 + py3**2 + 2 * py1
        ratio = s[2].quo(expected)
        self.assertTrue(ratio.is_ground and ratio.LC > 0)
        self.assertEqual(ratio * expected, s[2])

        self.assertEqual(s[4].as_expr(), w.discriminant().as_expr())

        # w(1, 0, 0) = u^4 - u^2
        self.assertEqual(generalized_pmv(result.signs_at((1, 0, 0))), 3)
        for eta in ((2, 1, 1), (1, 3, 0), (5, 1, 2), (-1, 1, 1)):
            specialized = w.evaluate(list(zip((y1, y2, y3), eta))).set_ring(self.uring)
            self.assertEqual(generalized_pmv(result.signs_at(eta)), count_real_roots(specialized))

    def test_specialization_commutes(self):
        ring = grevlex_ring(('u', 'y1', 'y2'))
        u, y1, y2 = ring.gens
        w = u**3 + y1 * u**2 + (y2 - 1) * u + y1 * y2
        result = subresultant_lcoeffs(w, w.diff(u))
        rng = seeded_stream(7, 'subresultant-specialization')
        for _ in range(20):
            eta = (QQ(rng.randint(-5, 5)), QQ(rng.randint(-5, 5), rng.randint(1, 3)))
            specialized = w.evaluate([(y1, eta[0]), (y2, eta[1])]).set_ring(self.uring)
            expected = subresultant_lcoeffs(specialized, specialized.diff(self.u))
            self.assertEqual(result.values_at(eta), expected.coefficients)

    def test_degree_order_violations(self):
        u = self.u
        with self.assertRaises(DegreeOrderError):
            subresultant_lcoeffs(u, u**2)
        with self.assertRaises(DegreeOrderError):
            subresultant_lcoeffs(u, self.uring.zero)


class GeneralizedPmvTests(SimpleTestCase):
    def test_permanences(self):
        self.assertEqual(generalized_pmv((1, 1, 1)), 2)
        self.assertEqual(generalized_pmv((1, -1)), -1)

    def test_leading_zero(self):
        with self.assertRaises(LeadingZeroError):
            generalized_pmv((0, 1))
        with self.assertRaises(LeadingZeroError):
            generalized_pmv(())

    def test_matches_isolation_on_random_polynomials(self):
        ring = grevlex_ring(('u',))
        u = ring.gens[0]
        rng = seeded_stream(8, 'pmv-oracle')
        for _ in range(200):
            p = random_univariate(ring, rng)
            signs = subresultant_lcoeffs(p, p.diff(u)).signs_at(())
            self.assertEqual(generalized_pmv(signs), count_real_roots(p), p)

    def test_zero_gaps(self):
        ring = grevlex_ring(('u',))
        u = ring.gens[0]
        for p in (u**3 - 1, u**4 - 1, u**5 + 2, u**6 - 3, u**4 + 1, u**7 - u):
            signs = subresultant_lcoeffs(p, p.diff(u)).signs_at(())
            self.assertEqual(generalized_pmv(signs), count_real_roots(p), p)


class IsolationTests(SimpleTestCase):
    def setUp(self):
        self.ring = grevlex_ring(('u',))
        self.u = self.ring.gens[0]

    def assertIsolates(self, intervals, roots):
        self.assertEqual(len(intervals), len(roots))
        for interval, root in zip(intervals, roots):
            self.assertLessEqual(interval.lower, root)
            self.assertLessEqual(root, interval.upper)

    def test_examples(self):
        u = self.u
        self.assertIsolates(isolate_real_roots(u**2 - 1), [-1, 1])
        self.assertEqual(isolate_real_roots(u**2 + 1), [])
        self.assertIsolates(isolate_real_roots(u**4 - u**2), [-1, 0, 1])

    def test_counts(self):
        u = self.u
        self.assertEqual(count_real_roots(u**3), 1)
        self.assertEqual(count_real_roots(u**4 - u**2), 3)
        self.assertEqual(count_real_roots(self.ring(5)), 0)

    def assertSound(self, p, intervals):
        part = squarefree_part(p)
        for interval in intervals:
            if interval.exact:
                self.assertEqual(evaluate(p, [interval.lower]), 0)
            else:
                below, above = evaluate(part, [interval.lower]), evaluate(part, [interval.upper])
                self.assertLess(below * above, 0, (p, interval))
        for left, right in zip(intervals, intervals[1:]):
            self.assertTrue(left.upper < right.lower or (left.upper == right.lower and not (left.exact or right.exact)))
        self.assertEqual(len(intervals), signed_remainder_count(p))

    def test_intervals_are_disjoint_and_sound(self):
        rng = seeded_stream(9, 'isolation')
        for _ in range(50):
            p = random_univariate(self.ring, rng)
            self.assertSound(p, isolate_real_roots(p))

    def test_rational_roots_next_to_irrational_ones(self):
        u = self.u
        p = (u**2 - 1) * (u**2 - 2)
        intervals = isolate_real_roots(p)
        self.assertSound(p, intervals)
        self.assertEqual(len(intervals), 4)
        self.assertIsolates(intervals[1:3], [-1, 1])
        self.assertLess(intervals[0].lower, -1)
        self.assertGreater(intervals[3].upper, 1)

        q = u**11 - 6 * u**9 + 15 * u**7 - 10 * u**5 - 16 * u**3 + 16 * u
        self.assertSound(q, isolate_real_roots(q))

        rng = seeded_stream(10, 'isolation-mixed')
        for _ in range(30):
            roots = [rng.randint(-4, 4) for _ in range(2)]
            r = (u**2 - rng.randint(2, 7)) * (u - roots[0]) * (u - roots[1])
            self.assertSound(r, isolate_real_roots(r))

    def test_multivariate_input_is_rejected(self):
        ring = grevlex_ring(('u', 'y1'))
        with self.assertRaises(NotUnivariate):
            isolate_real_roots(ring.gens[0] + ring.gens[1])
