from unittest import mock

from django.contrib.auth import get_user_model
from django.core.cache import cache
from django.test import SimpleTestCase, TestCase, tag
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase

from sympy.polys.domains import QQ

from arith.utils import (
    evaluate,
    exact_divide,
    normalize,
    seeded_stream,
    sign,
    specialize,
    squarefree_part,
    total_degree,
)
from grobner.exceptions import NotZeroDimensional
from grobner.tests import fixture_system, toy_system
from grobner.utils import choose_eliminating_poly
from hermite.tests import random_dense_system, rational_entry_systems
from hermite.utils import drl_matrix, specialize_matrix
from linalg.tests import fixture_determinant
from linalg.utils import det_exact, rank, signature
from univariate.utils import count_real_roots
from .exceptions import UnknownMode
from .models import ClassificationJob, SignCondition
from .tasks import run_classification_job
from .utils import (
    cross_validate,
    rrc_hermite,
    rrc_sturm,
    sign_variation_formula,
    use_fast_mode,
    weak_rrc_hermite,
)

TOY = "params: y1 y2\nvars: x\npolys:\nx^2 + y1*x + y2\n"


def oriented(conditions, orientation):
    return sorted(tuple(o * s for o, s in zip(orientation, signs)) for signs in conditions)


class SignConditionTests(SimpleTestCase):
    def test_variations_and_text(self):
        condition = SignCondition(('M1', 'M2'), (1, -1))
        self.assertEqual(condition.variations(), 1)
        self.assertEqual(SignCondition(('M1', 'M2'), (-1, 1)).variations(), 2)
        self.assertEqual(condition.as_text(), 'M1 > 0 and M2 < 0')

    def test_rejects_zero_and_length_mismatch(self):
        with self.assertRaises(ValueError):
            SignCondition(('M1',), (0,))
        with self.assertRaises(ValueError):
            SignCondition(('M1', 'M2'), (1,))


class SignVariationFormulaTests(SimpleTestCase):
    def test_all_permanences_for_the_maximal_count(self):
        self.assertEqual(
            sign_variation_formula(4, 4),
            (SignCondition(('M1', 'M2', 'M3', 'M4'), (1, 1, 1, 1)),),
        )

    def test_sizes(self):
        self.assertEqual(len(sign_variation_formula(4, 0)), 6)
        self.assertEqual(len(sign_variation_formula(4, 0, fixed={0: 1})), 3)
        self.assertEqual(len(sign_variation_formula(4, 2)), 4)
        self.assertEqual(sign_variation_formula(4, 3), ())

    def test_every_sign_vector_lands_in_exactly_one_formula(self):
        seen = []
        for count in range(5):
            seen.extend(condition.signs for condition in sign_variation_formula(4, count))
        self.assertEqual(len(seen), 16)
        self.assertEqual(len(set(seen)), 16)

    def test_fast_mode_switch(self):
        self.assertTrue(use_fast_mode('auto', 4, 3))
        self.assertFalse(use_fast_mode('auto', 10, 1))
        self.assertTrue(use_fast_mode('on', 10, 1))
        self.assertFalse(use_fast_mode('off', 2, 2))
        with self.assertRaises(UnknownMode):
            use_fast_mode('sometimes', 2, 2)


class ToyClassificationTests(SimpleTestCase):
    def setUp(self):
        self.sys = toy_system()
        y1, y2 = self.sys.context.param_ring.gens
        self.disc = y1**2 - 4 * y2

    def test_no_real_solution_at_origin_shift(self):
        H = drl_matrix(self.sys)
        self.assertEqual(signature(specialize_matrix(H, (0, 1))), 0)

    def test_weak(self):
        result = weak_rrc_hermite(self.sys)
        self.assertEqual(result.counts(), [0, 2])
        self.assertEqual(result.boundary['w_H'], self.disc)
        for cell in result.cells:
            positive = evaluate(self.disc, cell.sample) > 0
            self.assertEqual(cell.count, 2 if positive else 0)
        self.assertEqual(result.formulas, {})

    def test_hermite_full(self):
        result = rrc_hermite(self.sys, fast_mode='off')
        self.assertEqual(result.labels, ('M2',))
        self.assertEqual(result.boundary['minors'][1], self.disc)
        self.assertEqual(result.by_count(), {0: [(-1,)], 2: [(1,)]})
        self.assertEqual(result.realizability, 'realized')

    def test_hermite_fast_mode(self):
        result = rrc_hermite(self.sys, fast_mode='on')
        self.assertEqual(result.realizability, 'possible-superset')
        self.assertEqual([c.signs for c in result.formulas[2]], [(1, 1)])
        self.assertEqual([c.signs for c in result.formulas[0]], [(1, -1)])

    def test_sturm(self):
        result = rrc_sturm(self.sys)
        s = result.boundary['subresultants']
        self.assertEqual(s[2], self.disc)
        self.assertEqual(result.labels, ('s2',))
        self.assertEqual(result.by_count(), {0: [(-1,)], 2: [(1,)]})

    def test_cross_validate(self):
        report = cross_validate(self.sys)
        self.assertEqual(report.hermite_counts, (0, 2))
        self.assertEqual(report.sturm_counts, (0, 2))
        self.assertGreater(report.checked, 0)

    def test_payload(self):
        payload = rrc_hermite(self.sys, fast_mode='off').to_json()
        self.assertEqual(payload['formulas'], {'0': [[-1]], '2': [[1]]})
        self.assertEqual(payload['boundary']['minors'], ['2', 'y1^2 - 4*y2'])
        self.assertEqual(payload['x_order'], ['x'])


@tag('slow')
class FixtureClassificationTests(SimpleTestCase):
    def setUp(self):
        self.sys = fixture_system()
        self.ring = self.sys.context.param_ring

    def test_weak(self):
        result = weak_rrc_hermite(self.sys)
        self.assertEqual(result.counts(), [0, 2, 4])
        self.assertEqual(result.boundary['w_H'], normalize(fixture_determinant(self.ring)))

    def test_hermite_full(self):
        result = rrc_hermite(self.sys, fast_mode='off')
        self.assertEqual(result.labels, ('M2', 'M3', 'M4'))
        self.assertEqual(result.details['transform'], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        self.assertEqual(result.by_count(), {
            0: [(-1, -1, 1), (-1, 1, 1), (1, -1, 1)],
            2: [(-1, -1, -1), (1, -1, -1), (1, 1, -1)],
            4: [(1, 1, 1)],
        })
        degrees = [total_degree(m) for m in result.boundary['minors']]
        self.assertTrue(all(degree <= 8 for degree in degrees))

    def test_no_real_solution_where_m3_alone_is_negative(self):
        # x1^2 + x2^2 = -1
        eta = (QQ(-1), QQ(-1), QQ(-3))
        minors = rrc_hermite(self.sys, fast_mode='off').boundary['minors']
        self.assertEqual([evaluate(m, eta) for m in minors], [4, 20, -704, 17408])
        self.assertEqual(signature(specialize_matrix(drl_matrix(self.sys), eta)), 0)

    def test_random_points_follow_the_formulas(self):
        result = rrc_hermite(self.sys, fast_mode='off')
        count_of = {c.signs: count for count, conditions in result.formulas.items() for c in conditions}
        minors = result.boundary['minors']
        H = drl_matrix(self.sys)
        rng = seeded_stream(40, 'cell-invariance')
        checked = 0
        while checked < 30:
            eta = tuple(QQ(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(3))
            signs = tuple(sign(evaluate(m, eta)) for m in minors[1:])
            if 0 in signs:
                continue
            self.assertIn(signs, count_of)
            self.assertEqual(signature(specialize_matrix(H, eta)), count_of[signs])
            checked += 1

    def test_fast_mode(self):
        result = rrc_hermite(self.sys, fast_mode='on')
        self.assertEqual(
            result.formulas[4],
            (SignCondition(('M1', 'M2', 'M3', 'M4'), (1, 1, 1, 1)),),
        )
        self.assertEqual(result.details['formula_labels'], ['M1', 'M2', 'M3', 'M4'])

    def test_sturm(self):
        result = rrc_sturm(self.sys)
        self.assertEqual(result.labels, ('s2', 's3', 's4'))
        self.assertEqual(result.details['max_degree'], 11)
        self.assertEqual(result.details['linear_form'], [0, 1])

        y1, y2, y3 = self.ring.gens
        printed = [
            -2 * y2**2 + y3**2 + 2 * y1,
            -y2**6 - 2 * y2**4 * y3**2 - y2**2 * y3**4 + 3 * y1 * y2**4 - 14 * y1 * y2**2 * y3**2
            + y1 * y3**4 - 3 * y1**2 * y2**2 - 2 * y1**2 * y3**2 + y1**3,
            (y2 * y3) ** 2 * fixture_determinant(self.ring),
        ]
        orientation = []
        for s, expected in zip(result.boundary['subresultants'][2:], printed):
            ratio = exact_divide(s, expected)
            self.assertTrue(ratio.is_ground)
            orientation.append(sign(ratio.LC))

        grouped = {count: oriented(signs, orientation) for count, signs in result.by_count().items()}
        self.assertEqual(grouped, {
            0: [(-1, -1, 1), (-1, 1, 1), (1, -1, 1)],
            2: [(-1, -1, -1), (1, -1, -1), (1, 1, -1)],
            4: [(1, 1, 1)],
        })

    def test_cross_validate(self):
        report = cross_validate(self.sys)
        self.assertEqual(report.hermite_counts, (0, 2, 4))
        self.assertEqual(report.sturm_counts, (0, 2, 4))


def parabola_count(y1, y2):
    # x2 = ±√y2, y1·x1² = 1 - x2
    if y2 <= 0:
        return 0
    if y1 > 0:
        return 4 if y2 < 1 else 2
    return 2 if y2 > 1 else 0


def hyperbola_count(y1, y2):
    # (x1 ± x2)² = y2 ± 2/y1
    return 4 if y2 * abs(y1) > 2 else 0


@tag('slow')
class RationalEntryClassificationTests(SimpleTestCase):
    def setUp(self):
        self.systems = rational_entry_systems()
        self.expected = (parabola_count, hyperbola_count)

    def test_hermite_full(self):
        for sys, expected, counts in zip(self.systems, self.expected, ([0, 2, 4], [0, 4])):
            self.assertFalse(drl_matrix(sys).assumption_c_holds)
            result = rrc_hermite(sys, fast_mode='off')
            self.assertEqual(result.counts(), counts)
            for cell in result.cells:
                self.assertEqual(cell.count, expected(*cell.sample))

    def test_cross_validate(self):
        for sys, counts in zip(self.systems, ((0, 2, 4), (0, 4))):
            report = cross_validate(sys)
            self.assertEqual(report.hermite_counts, counts)
            self.assertEqual(report.sturm_counts, counts)


@tag('slow')
class RandomCrossValidationTests(SimpleTestCase):
    def test_dense_systems_agree(self):
        rng = seeded_stream(41, 'dense-cross-validation')
        systems = checked = 0
        while systems < 20:
            sys = random_dense_system(rng)
            try:
                if drl_matrix(sys).delta != 4:
                    continue
            except NotZeroDimensional:
                continue
            points = [tuple(QQ(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2)) for _ in range(5)]
            report = cross_validate(sys, seed=systems, points=points)
            self.assertEqual(report.checked + report.skipped, len(set(points)))
            checked += report.checked
            systems += 1
        self.assertGreater(checked, 50)


@tag('slow')
class EliminatingPolyCountTests(SimpleTestCase):
    """Signature and rank of H(η) against the roots of w(η, u)."""

    def check_point(self, H, w, eta):
        if not evaluate(H.w_infinity, eta):
            return False
        w_eta = specialize(w.poly, eta, w.context)
        if w_eta.degree() != w.degree:
            return False
        M = specialize_matrix(H, eta)
        distinct = squarefree_part(w_eta).degree()
        if distinct < H.delta and det_exact(M):
            # two solutions share the value of the linear form
            return False
        self.assertEqual(signature(M), count_real_roots(w_eta), eta)
        self.assertEqual(rank(M), distinct, eta)
        return True

    def test_fixture(self):
        sys = fixture_system()
        H = drl_matrix(sys)
        w = choose_eliminating_poly(sys, 1, H.delta)
        rng = seeded_stream(43, 'eliminating-counts')
        checked = 0
        while checked < 50:
            eta = tuple(QQ(rng.randint(-12, 12), rng.randint(1, 5)) for _ in range(3))
            checked += self.check_point(H, w, eta)

    def test_dense_systems(self):
        rng = seeded_stream(44, 'dense-eliminating-counts')
        systems = 0
        while systems < 20:
            sys = random_dense_system(rng, degree=2 + systems % 2)
            try:
                H = drl_matrix(sys)
            except NotZeroDimensional:
                continue
            if not H.delta:
                continue
            w = choose_eliminating_poly(sys, systems, H.delta)
            checked = attempts = 0
            while checked < 3 and attempts < 20:
                eta = tuple(QQ(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(2))
                checked += self.check_point(H, w, eta)
                attempts += 1
            self.assertEqual(checked, 3)
            systems += 1


class ClassifyAPITests(APITestCase):
    def setUp(self):
        cache.clear()
        self.user = get_user_model().objects.create_user(username='alice', password='secret-pass')
        self.client.force_authenticate(user=self.user)
        self.url = reverse('classify:classify')

    def test_requires_authentication(self):
        self.client.force_authenticate(user=None)
        response = self.client.post(self.url, {'system': TOY}, format='json')
        self.assertEqual(response.status_code, status.HTTP_401_UNAUTHORIZED)

    def test_toy_classification(self):
        response = self.client.post(self.url, {'system': TOY, 'fast_mode': 'off'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data['success'])
        self.assertEqual(response.data['data']['formulas'], {'0': [[-1]], '2': [[1]]})

    def test_second_request_is_cached(self):
        payload = {'system': TOY, 'mode': 'sturm'}
        self.client.post(self.url, payload, format='json')
        with mock.patch('cli.utils.run_mode') as run_mode:
            response = self.client.post(self.url, payload, format='json')
        run_mode.assert_not_called()
        self.assertEqual(response.data['message'], 'Classification retrieved from cache')

    def test_matrix_only(self):
        response = self.client.post(self.url, {'system': TOY, 'mode': 'matrix-only'}, format='json')
        self.assertEqual(response.data['data']['matrix'], [['2', '-y1'], ['-y1', 'y1^2 - 2*y2']])
        self.assertEqual(response.data['data']['basis'], ['1', 'x'])

    def test_parse_error_is_bad_request(self):
        system = "params: y1\nvars: x\npolys:\nx + z\n"
        response = self.client.post(self.url, {'system': system}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertFalse(response.data['success'])
        self.assertEqual(response.data['error'], 'UndeclaredIdentifier')

    def test_positive_dimensional_system_is_unprocessable(self):
        system = "params: y1\nvars: x1 x2\npolys:\nx1 - y1\n"
        response = self.client.post(self.url, {'system': system}, format='json')
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.assertEqual(response.data['error'], 'NotZeroDimensional')

    def test_unknown_mode(self):
        response = self.client.post(self.url, {'system': TOY, 'mode': 'guess'}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class ClassificationJobAPITests(APITestCase):
    def setUp(self):
        self.user = get_user_model().objects.create_user(username='bob', password='secret-pass')
        self.client.force_authenticate(user=self.user)

    @mock.patch('classify.views.run_classification_job.delay')
    def test_create_queues_the_job(self, delay):
        response = self.client.post(
            reverse('classify:create-job'), {'system': TOY, 'mode': 'sturm'}, format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_202_ACCEPTED)
        job = ClassificationJob.objects.get(id=response.data['data']['id'])
        self.assertEqual(job.owner, self.user)
        self.assertEqual(job.status, ClassificationJob.Status.PENDING)
        delay.assert_called_once_with(str(job.id))

    @mock.patch('classify.views.run_classification_job.delay')
    def test_invalid_system_is_rejected(self, delay):
        response = self.client.post(
            reverse('classify:create-job'), {'system': 'polys:\n'}, format='json'
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        delay.assert_not_called()

    def test_jobs_of_other_users_are_hidden(self):
        other = get_user_model().objects.create_user(username='carol', password='secret-pass')
        job = ClassificationJob.objects.create(owner=other, system=TOY)
        response = self.client.get(reverse('classify:job-detail', kwargs={'id': job.id}))
        self.assertEqual(response.status_code, status.HTTP_404_NOT_FOUND)

    def test_owner_sees_the_job(self):
        job = ClassificationJob.objects.create(owner=self.user, system=TOY)
        response = self.client.get(reverse('classify:job-detail', kwargs={'id': job.id}))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['data']['status'], 'pending')


class ClassificationTaskTests(TestCase):
    def test_success(self):
        job = ClassificationJob.objects.create(system=TOY, mode='hermite-full', fast_mode='off')
        self.assertTrue(run_classification_job(str(job.id)))
        job.refresh_from_db()
        self.assertEqual(job.status, ClassificationJob.Status.SUCCEEDED)
        self.assertEqual(job.exit_code, 0)
        self.assertEqual(job.result['formulas'], {'0': [[-1]], '2': [[1]]})

    def test_failure_records_exit_code(self):
        job = ClassificationJob.objects.create(system="params: y1\nvars: x1 x2\npolys:\nx1 - y1\n")
        self.assertFalse(run_classification_job(str(job.id)))
        job.refresh_from_db()
        self.assertEqual(job.status, ClassificationJob.Status.FAILED)
        self.assertEqual(job.exit_code, 2)
        self.assertIn('NotZeroDimensional', job.error)

    def test_missing_job(self):
        self.assertFalse(run_classification_job('00000000-0000-0000-0000-000000000000'))
