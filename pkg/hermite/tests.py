from django.test import SimpleTestCase

from sympy.polys.domains import QQ

from arith.exceptions import InterpolationMismatch
from arith.models import VarContext
from arith.utils import seeded_stream, total_degree
from grobner.exceptions import NotZeroDimensional
from grobner.models import ParametricSystem
from grobner.tests import fixture_system, toy_system
from grobner.utils import quotient_basis, reduce_gb_over_K, system_basis
from linalg.utils import determinant_poly, signature
from real_roots.exceptions import InternalInvariantError
from .exceptions import AssumptionCViolated, OnBadLocus
from .models import HermiteMatrix
from .utils import (
    basis_matrices,
    default_lambda,
    drl_matrix,
    interp_hermite,
    multiplication_matrices,
    remove_denominators,
    specialize_matrix,
)


def rational_coefficient_system():
    """y1·x² + x + y2: the leading coefficient vanishes on y1 = 0."""
    context = VarContext(('y1', 'y2'), ('x',))
    x, y1, y2 = context.ring.gens
    return ParametricSystem(context, (y1 * x**2 + x + y2,))


def rational_entry_systems():
    """Two systems in (x1, x2) whose Hermite matrices have denominators in y1."""
    context = VarContext(('y1', 'y2'), ('x1', 'x2'))
    x1, x2, y1, y2 = context.ring.gens
    return (
        ParametricSystem(context, (y1 * x1**2 + x2 - 1, x2**2 - y2)),
        ParametricSystem(context, (y1 * x1 * x2 - 1, x1**2 + x2**2 - y2)),
    )


def random_dense_system(rng, degree=2):
    """Two dense curves of the given degree in (x1, x2) whose constant terms are shifted by y1 and y2."""
    context = VarContext(('y1', 'y2'), ('x1', 'x2'))
    x1, x2, y1, y2 = context.ring.gens
    monomials = [x1**i * x2**(total - i) for total in range(degree, -1, -1) for i in range(total, -1, -1)]
    polys = []
    for parameter in (y1, y2):
        f = sum((rng.randint(-5, 5) * m for m in monomials), context.ring.zero) + parameter
        polys.append(f)
    return ParametricSystem(context, tuple(polys))


def fixture_entries(ring):
    y1, y2, y3 = ring.gens
    h = {
        (0, 0): ring(4),
        (0, 1): -2 * y3,
        (0, 2): -2 * y2,
        (0, 3): 2 * (y1 - y2**2 + y3**2),
        (1, 1): 2 * (y1 - y2**2 + y3**2),
        (1, 2): 4 * y2 * y3,
        (1, 3): 2 * (3 * y2**2 * y3 - y3**3),
        (2, 2): 2 * (y2**2 - y3**2 + y1),
        (2, 3): 2 * (y2**3 - 3 * y2 * y3**2 - y1 * y2),
        (3, 3): 2 * y2**4 - 12 * y2**2 * y3**2 + 2 * y3**4 - 4 * y1 * y2**2 + 2 * y1**2,
    }
    return tuple(tuple(h[min(i, j), max(i, j)] for j in range(4)) for i in range(4))


def qq_rows(matrix):
    return [[QQ(c) for c in row] for row in matrix]


class DrlMatrixTests(SimpleTestCase):
    def test_fixture_matrix(self):
        sys = fixture_system()
        H = drl_matrix(sys)
        self.assertEqual(H.basis.labels(), ('1', 'x2', 'x1', 'x2^2'))
        self.assertTrue(H.assumption_c_holds)
        self.assertTrue(H.assumption_e_holds)
        self.assertEqual(H.w_infinity, sys.context.param_ring.one)
        self.assertEqual(H.polynomial_entries(), fixture_entries(sys.context.param_ring))

    def test_fixture_degree_pattern(self):
        H = drl_matrix(fixture_system())
        self.assertEqual(
            H.degree_pattern(),
            ((0, 1, 1, 2), (1, 2, 2, 3), (1, 2, 2, 3), (2, 3, 3, 4)),
        )
        for i, row in enumerate(H.degree_pattern()):
            for j, degree in enumerate(row):
                self.assertLessEqual(degree, H.basis.degrees[i] + H.basis.degrees[j])

    def test_toy_matrix(self):
        sys = toy_system()
        H = drl_matrix(sys)
        y1, y2 = sys.context.param_ring.gens
        self.assertEqual(H.polynomial_entries(), ((2 + 0 * y1, -y1), (-y1, y1**2 - 2 * y2)))

    def test_first_entry_is_dimension(self):
        for sys in (fixture_system(), toy_system(), rational_coefficient_system()):
            H = drl_matrix(sys)
            self.assertEqual(H.entries[0][0], H.domain.convert(H.delta))

    def test_determinant_not_identically_zero(self):
        for sys in (fixture_system(), toy_system(), rational_coefficient_system()):
            self.assertTrue(drl_matrix(sys).domain_matrix().det())

    def test_multiplication_matrices(self):
        gb = system_basis(fixture_system())
        basis = quotient_basis(gb)
        x_mats = multiplication_matrices(reduce_gb_over_K(gb), basis)
        b_mats = basis_matrices(basis, x_mats)
        identity = b_mats[(0, 0)].matrix.to_list()
        for i, row in enumerate(identity):
            for j, value in enumerate(row):
                self.assertEqual(value, 1 if i == j else 0)
        # L_{x2^2} = L_{x2}·L_{x2}
        self.assertEqual(b_mats[(0, 2)].matrix, x_mats[1].matrix * x_mats[1].matrix)

    def test_render(self):
        H = drl_matrix(toy_system())
        self.assertEqual(H.render(), [['2', '-y1'], ['-y1', 'y1^2 - 2*y2']])

    def test_rejects_asymmetric_entries(self):
        H = drl_matrix(toy_system())
        rows = [list(row) for row in H.entries]
        rows[0][1] = rows[0][1] + 1
        with self.assertRaises(InternalInvariantError):
            HermiteMatrix(H.basis, rows, H.w_infinity, True, True, H.context)


class RationalEntriesTests(SimpleTestCase):
    def setUp(self):
        self.sys = rational_coefficient_system()
        self.H = drl_matrix(self.sys)

    def test_power_sums(self):
        field = self.sys.context.param_field
        y1, y2 = field.gens
        self.assertFalse(self.H.assumption_c_holds)
        self.assertEqual(self.H.entries[0][1], -1 / y1)
        self.assertEqual(self.H.entries[1][1], 1 / y1**2 - 2 * y2 / y1)

    def test_remove_denominators(self):
        H = remove_denominators(self.H)
        y1, y2 = self.sys.context.param_ring.gens
        self.assertTrue(H.is_polynomial)
        self.assertEqual(H.polynomial_entries(), ((2 + 0 * y1, -1 + 0 * y1), (-1 + 0 * y1, 1 - 2 * y1 * y2)))
        self.assertEqual(H.scaling, (y1**0, y1))

    def test_remove_denominators_keeps_polynomial_matrix(self):
        H = drl_matrix(fixture_system())
        self.assertIs(remove_denominators(H), H)

    def test_remove_denominators_clears_every_row(self):
        rng = seeded_stream(12, 'rational-entries')
        for sys in rational_entry_systems():
            H = drl_matrix(sys)
            self.assertFalse(H.assumption_c_holds)
            scaled = remove_denominators(H)
            self.assertTrue(scaled.is_polynomial)
            for c in scaled.scaling:
                self.assertEqual(c.degree(1), 0)
                self.assertTrue(c.is_term)
            checked = 0
            while checked < 10:
                eta = (QQ(rng.randint(-6, 6), rng.randint(1, 3)), QQ(rng.randint(-6, 6), rng.randint(1, 3)))
                if not eta[0]:
                    continue
                self.assertEqual(
                    signature(specialize_matrix(scaled, eta)),
                    signature(specialize_matrix(H, eta)),
                )
                checked += 1

    def test_bad_locus(self):
        with self.assertRaises(OnBadLocus):
            specialize_matrix(self.H, (0, 1))

    def test_interpolation_refused(self):
        with self.assertRaises(AssumptionCViolated):
            interp_hermite(self.sys)


class DegreeBoundTests(SimpleTestCase):
    """Degree bounds of the Hermite matrix of generic dense systems."""

    def test_dense_systems(self):
        rng = seeded_stream(45, 'dense-degree-bounds')
        systems = 0
        while systems < 10:
            sys = random_dense_system(rng, degree=rng.choice((2, 3)))
            try:
                H = drl_matrix(sys)
            except NotZeroDimensional:
                continue
            if not (H.delta and H.assumption_e_holds and H.is_polynomial):
                continue
            n, d = sys.n, sys.d
            degrees = H.basis.degrees
            self.assertLessEqual(max(degrees), n * (d - 1))
            for i, row in enumerate(H.degree_pattern()):
                for j, degree in enumerate(row):
                    self.assertLessEqual(degree, degrees[i] + degrees[j])
            self.assertLessEqual(total_degree(determinant_poly(H)), n * (d - 1) * d**n)
            systems += 1


class InterpolationTests(SimpleTestCase):
    def test_fixture_matches_symbolic_path(self):
        sys = fixture_system()
        self.assertEqual(default_lambda(sys, system_basis(sys)), 4)
        self.assertEqual(interp_hermite(sys, 4).entries, drl_matrix(sys).entries)

    def test_toy(self):
        sys = toy_system()
        self.assertEqual(interp_hermite(sys, 2).entries, drl_matrix(sys).entries)

    def test_undersized_bound(self):
        with self.assertRaises(InterpolationMismatch):
            interp_hermite(fixture_system(), 1)


class SpecializationTests(SimpleTestCase):
    def test_fixture_at_unit_point(self):
        H = drl_matrix(fixture_system())
        self.assertEqual(
            specialize_matrix(H, (1, 0, 0)).to_list(),
            qq_rows([[4, 0, 0, 2], [0, 2, 0, 0], [0, 0, 2, 0], [2, 0, 0, 2]]),
        )

    def test_toy_at_negative_discriminant(self):
        H = drl_matrix(toy_system())
        self.assertEqual(specialize_matrix(H, (0, 1)).to_list(), qq_rows([[2, 0], [0, -2]]))

    def test_commutes_with_matrix_construction(self):
        rng = seeded_stream(12, 'hermite-specialization')
        for sys in (fixture_system(), rational_coefficient_system()):
            H = drl_matrix(sys)
            checked = 0
            while checked < 20:
                eta = tuple(QQ(rng.randint(-7, 7), rng.randint(1, 3)) for _ in range(sys.t))
                try:
                    specialized = specialize_matrix(H, eta)
                except OnBadLocus:
                    continue
                direct = drl_matrix(sys.specialize(eta))
                self.assertEqual(direct.basis.monomials, H.basis.monomials)
                self.assertEqual(specialized.to_list(), [list(row) for row in direct.entries])
                checked += 1
