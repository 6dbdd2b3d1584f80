from django.test import SimpleTestCase

from sympy.polys.domains import QQ

from arith.models import VarContext
from arith.utils import evaluate, seeded_stream, total_degree
from grobner.models import QuotientBasis
from grobner.tests import fixture_system, toy_system
from hermite.models import HermiteMatrix
from hermite.utils import drl_matrix, specialize_matrix
from .exceptions import (
    IdenticallyZeroDeterminant,
    InvalidMinorRequest,
    NonSquareMatrix,
    NotSymmetric,
    SingularTransform,
)
from .models import MinorRequest
from .utils import (
    char_poly,
    clean_factors,
    congruence,
    congruence_with_retry,
    det_exact,
    determinant_poly,
    identity_matrix,
    leading_principal_minors,
    minor_poly,
    modp_minor_probe,
    rank,
    rational_matrix,
    signature,
    sylvester_jacobi_signature,
)


def random_symmetric(rng, size, bound=5):
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    return rational_matrix(rows)


def synthetic_matrix(rows):
    """Hermite-shaped matrix over ℚ(y1, y2) with the given parameter-polynomial entries."""
    context = VarContext(('y1', 'y2'), ('x',))
    field = context.param_field
    basis = QuotientBasis(context, tuple((k,) for k in range(len(rows))))
    entries = [[field.field_new(context.param_ring(entry)) for entry in row] for row in rows]
    return HermiteMatrix(basis, entries, QQ.one, True, True, context)


def fixture_determinant(ring):
    y1, y2, y3 = ring.gens
    return 16 * y1 * (
        -y2**6 - 3 * y2**4 * y3**2 - 3 * y2**2 * y3**4 - y3**6
        + 3 * y1 * y2**4 - 21 * y1 * y2**2 * y3**2 + 3 * y1 * y3**4
        - 3 * y1**2 * y2**2 - 3 * y1**2 * y3**2 + y1**3
    )


class RationalMatrixTests(SimpleTestCase):
    def test_determinant(self):
        self.assertEqual(det_exact(rational_matrix(identity_matrix(3))), 1)
        self.assertEqual(det_exact(rational_matrix([[1, 2, 3], [1, 2, 3], [4, 5, 6]])), 0)
        fixture = rational_matrix([[4, 0, 0, 2], [0, 2, 0, 0], [0, 0, 2, 0], [2, 0, 0, 2]])
        self.assertEqual(det_exact(fixture), 16)
        with self.assertRaises(NonSquareMatrix):
            det_exact(rational_matrix([[1, 2, 3], [4, 5, 6]]))

    def test_characteristic_polynomial(self):
        self.assertEqual(char_poly(rational_matrix([[0, 0], [0, 0]])), [1, 0, 0])
        self.assertEqual(char_poly(rational_matrix([[2, 0], [0, -2]])), [1, 0, -4])
        with self.assertRaises(NotSymmetric):
            char_poly(rational_matrix([[1, 2], [3, 4]]))

    def test_characteristic_polynomial_constant_term(self):
        rng = seeded_stream(20, 'char-poly')
        for _ in range(30):
            size = rng.randint(1, 5)
            M = random_symmetric(rng, size)
            self.assertEqual(char_poly(M)[-1] * (-1) ** size, det_exact(M))

    def test_signature(self):
        self.assertEqual(signature(rational_matrix(identity_matrix(5))), 5)
        self.assertEqual(signature(rational_matrix([[0, 0], [0, 0]])), 0)
        self.assertEqual(signature(rational_matrix([[2, 0], [0, -2]])), 0)
        fixture = specialize_matrix(drl_matrix(fixture_system()), (1, 0, 0))
        self.assertEqual(signature(fixture), 4)

    def test_rank(self):
        self.assertEqual(rank(rational_matrix(identity_matrix(4))), 4)
        self.assertEqual(rank(rational_matrix([[0, 0], [0, 0]])), 0)
        self.assertEqual(rank(rational_matrix([[1, 2], [2, 4]])), 1)

    def test_fixture_rank_at_random_points(self):
        H = drl_matrix(fixture_system())
        rng = seeded_stream(21, 'fixture-rank')
        for _ in range(10):
            eta = tuple(QQ(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(3))
            if not det_exact(specialize_matrix(H, eta)):
                continue
            self.assertEqual(rank(specialize_matrix(H, eta)), 4)

    def test_sylvester_jacobi_agrees_with_descartes(self):
        rng = seeded_stream(22, 'sylvester-jacobi')
        checked = 0
        while checked < 50:
            size = rng.randint(1, 5)
            M = random_symmetric(rng, size)
            minors = [det_exact(M.extract(list(range(k)), list(range(k)))) for k in range(1, size + 1)]
            if not all(minors):
                continue
            self.assertEqual(sylvester_jacobi_signature(minors), signature(M))
            checked += 1


class MinorRequestTests(SimpleTestCase):
    def test_validation(self):
        with self.assertRaises(InvalidMinorRequest):
            MinorRequest((0, 1), (0,))
        with self.assertRaises(InvalidMinorRequest):
            MinorRequest((1, 0), (0, 1))
        with self.assertRaises(InvalidMinorRequest):
            MinorRequest((0, 0), (0, 1))
        with self.assertRaises(InvalidMinorRequest):
            minor_poly(drl_matrix(toy_system()), MinorRequest((0, 2), (0, 1)))


class MinorPolyTests(SimpleTestCase):
    def test_fixture_determinant(self):
        sys = fixture_system()
        H = drl_matrix(sys)
        det = minor_poly(H, MinorRequest.leading(4))
        self.assertEqual(det, fixture_determinant(sys.context.param_ring))
        self.assertEqual(determinant_poly(H), det)

    def test_first_entry(self):
        H = drl_matrix(fixture_system())
        self.assertEqual(minor_poly(H, MinorRequest((0,), (0,))), 4)

    def test_toy_determinant(self):
        sys = toy_system()
        y1, y2 = sys.context.param_ring.gens
        self.assertEqual(determinant_poly(drl_matrix(sys)), y1**2 - 4 * y2)

    def test_matches_specialized_minors(self):
        H = drl_matrix(fixture_system())
        request = MinorRequest((0, 2, 3), (1, 2, 3))
        minor = minor_poly(H, request)
        rng = seeded_stream(23, 'minor-specialization')
        for _ in range(10):
            eta = tuple(QQ(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3))
            specialized = specialize_matrix(H, eta).extract(list(request.rows), list(request.cols))
            self.assertEqual(evaluate(minor, eta), det_exact(specialized))

    def test_fixture_leading_minors(self):
        sys = fixture_system()
        y1, y2, y3 = sys.context.param_ring.gens
        minors = leading_principal_minors(drl_matrix(sys))
        self.assertEqual(minors[0], 4)
        self.assertEqual(minors[1], 4 * (-2 * y2**2 + y3**2 + 2 * y1))
        self.assertEqual(
            minors[2],
            8 * (-y2**4 - 2 * y2**2 * y3**2 - y3**4 - y1 * y2**2 - y1 * y3**2 + 2 * y1**2),
        )
        self.assertEqual(minors[3], fixture_determinant(sys.context.param_ring))
        degrees = tuple(total_degree(minor) for minor in minors)
        self.assertEqual(degrees, (0, 2, 4, 7))
        # n(d-1)d^n for n = d = 2
        self.assertTrue(all(degree <= 8 for degree in degrees))


class CleanFactorsTests(SimpleTestCase):
    def test_squarefree_and_coprime_to_leading_locus(self):
        ring = VarContext(('y1', 'y2'), ('x',)).param_ring
        y1, y2 = ring.gens
        disc = y1**2 - 4 * y2
        self.assertEqual(clean_factors(-3 * disc**2 * y1, ring.one), y1 * disc)
        self.assertEqual(clean_factors(disc * y1**3, y1), disc)

    def test_identically_zero(self):
        ring = VarContext(('y1',), ('x',)).param_ring
        with self.assertRaises(IdenticallyZeroDeterminant) as ctx:
            clean_factors(ring.zero, ring.one)
        self.assertEqual(ctx.exception.exit_code, 3)


class CongruenceTests(SimpleTestCase):
    def test_identity_keeps_matrix(self):
        H = drl_matrix(fixture_system())
        self.assertEqual(congruence(H, identity_matrix(4)).entries, H.entries)

    def test_determinant_scales_by_square(self):
        H = drl_matrix(toy_system())
        A = [[2, 1], [1, 3]]
        transformed = congruence(H, A)
        self.assertEqual(transformed.transform, ((2, 1), (1, 3)))
        self.assertEqual(
            transformed.domain_matrix().det(),
            H.domain.convert(25) * H.domain_matrix().det(),
        )

    def test_singular_transform(self):
        with self.assertRaises(SingularTransform):
            congruence(drl_matrix(toy_system()), [[1, 2], [2, 4]])

    def test_preserves_signature(self):
        H = drl_matrix(fixture_system())
        rng = seeded_stream(24, 'congruence-signature')
        A = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
        while not det_exact(rational_matrix(A)):
            A = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
        transformed = congruence(H, A)
        for _ in range(10):
            eta = tuple(QQ(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3))
            self.assertEqual(
                signature(specialize_matrix(transformed, eta)),
                signature(specialize_matrix(H, eta)),
            )

    def test_retry_accepts_identity(self):
        H = drl_matrix(fixture_system())
        transformed, A, minors = congruence_with_retry(H, seed=1)
        self.assertEqual(A, identity_matrix(4))
        self.assertEqual(minors[0], 4)
        self.assertIs(transformed.basis, H.basis)

    def test_retry_resamples_degenerate_minors(self):
        H = synthetic_matrix([[0, 1], [1, 0]])
        transformed, A, minors = congruence_with_retry(H, seed=2)
        self.assertNotEqual(A, identity_matrix(2))
        self.assertTrue(all(minors))
        self.assertEqual(signature(specialize_matrix(transformed, (0, 0))), 0)

    def test_retry_stops_on_singular_matrix(self):
        H = synthetic_matrix([[1, 2], [2, 4]])
        with self.assertRaises(IdenticallyZeroDeterminant):
            congruence_with_retry(H, seed=3, attempts=1)


class ModularProbeTests(SimpleTestCase):
    def test_identity(self):
        self.assertEqual(modp_minor_probe(synthetic_matrix(identity_matrix(3))), 1)

    def test_repeated_boundary_factor(self):
        ring = VarContext(('y1', 'y2'), ('x',)).param_ring
        y1, y2 = ring.gens
        w = y1**2 - 4 * y2
        H = synthetic_matrix([[1, 0, 0], [0, w, 0], [0, 0, w]])
        self.assertEqual(modp_minor_probe(H, seed=3), 2)

    def test_fixture_needs_full_determinant(self):
        self.assertEqual(modp_minor_probe(drl_matrix(fixture_system()), seed=4), 4)
