"""
Real root classification drivers.

weak_rrc_hermite samples the complement of det(H) = 0, rrc_hermite the
complement of the leading principal minors of a congruent matrix, rrc_sturm
the complement of the principal subresultant coefficients of an eliminating
polynomial. cross_validate runs the two counting methods against each other.
"""

import logging
from itertools import product

from django.conf import settings
from sympy.polys.rings import PolyElement

from arith.utils import evaluate, render, sign, total_degree, to_rational
from grobner.utils import choose_eliminating_poly, quotient_basis, system_basis
from hermite.exceptions import OnBadLocus
from hermite.models import HermiteMatrix
from hermite.utils import drl_matrix, interp_hermite, remove_denominators, specialize_matrix
from linalg.exceptions import BadReduction, NonPolynomialEntries
from linalg.utils import (
    clean_factors,
    congruence_with_retry,
    det_exact,
    determinant_poly,
    modp_minor_probe,
    rank,
    signature,
    sylvester_jacobi_signature,
)
from real_roots.exceptions import InternalInvariantError
from samplepoints.utils import sample_points
from univariate.utils import generalized_pmv, subresultant_lcoeffs
from .exceptions import Disagreement, UnknownMode
from .models import Cell, ClassificationResult, CrossValidationReport, SignCondition

logger = logging.getLogger(__name__)

MODES = ('hermite-weak', 'hermite-full', 'sturm', 'cross-validate', 'matrix-only', 'sample-points')
FAST_MODES = ('auto', 'on', 'off')


def default_seed(seed=None):
    if seed is None:
        return getattr(settings, 'RRC_DEFAULT_SEED', 20240601)
    return int(seed)


def _labelled(pairs):
    """(label, polynomial) pairs whose polynomial is not constant."""
    return [(label, p) for label, p in pairs if isinstance(p, PolyElement) and not p.is_ground]


def _condition(labelled, point):
    signs = [sign(evaluate(p, point)) for _, p in labelled]
    if 0 in signs:
        zero = labelled[signs.index(0)][0]
        raise InternalInvariantError(f"Sample point {_show(point)} lies on {zero} = 0")
    return SignCondition(tuple(label for label, _ in labelled), signs)


def _show(point):
    return '(' + ', '.join(str(c) for c in point) + ')'


def _sample(sys, polys):
    return sample_points(list(polys), ring=sys.context.param_ring)


def _check_parity(r, M, point):
    if (r - rank(M)) % 2:
        raise InternalInvariantError(f"Signature {r} and rank {rank(M)} differ in parity at {_show(point)}")


def _group(cells):
    """Realized sign conditions by root count; one condition never gives two counts."""
    seen = {}
    grouped = {}
    for cell in cells:
        signs = cell.condition.signs
        if seen.setdefault(signs, cell.count) != cell.count:
            raise InternalInvariantError(
                f"{cell.condition.as_text()} gives both {seen[signs]} and {cell.count} real solutions"
            )
        grouped.setdefault(cell.count, {})[signs] = cell.condition
    return {count: tuple(conditions[s] for s in sorted(conditions)) for count, conditions in sorted(grouped.items())}


def _empty_system_result(algorithm, sys, seed):
    # no complex solution anywhere: a single cell without boundary
    point = (to_rational(0),) * sys.t
    cell = Cell(SignCondition((), ()), point, 0)
    return ClassificationResult(
        algorithm, (), {}, (cell,), {0: (cell.condition,)}, 'realized', sys.context.variables, seed,
    )


def weak_rrc_hermite(sys, seed=None):
    """
    Root count at one point of every connected component of the complement
    of w_H·w_∞ = 0. The sign of w_H alone does not determine the count, so
    no formulas are returned.
    """
    seed = default_seed(seed)
    H = drl_matrix(sys)
    if not H.delta:
        return _empty_system_result('hermite-weak', sys, seed)
    w_infinity = H.w_infinity
    w_H = clean_factors(determinant_poly(H), w_infinity)
    labelled = _labelled([('w_H', w_H), ('w_inf', w_infinity)])

    cells = []
    for point in _sample(sys, [p for _, p in labelled]):
        M = specialize_matrix(H, point)
        r = signature(M)
        _check_parity(r, M, point)
        cells.append(Cell(_condition(labelled, point), point, r))
    result = ClassificationResult(
        'hermite-weak',
        tuple(label for label, _ in labelled),
        {'w_infinity': w_infinity, 'w_H': w_H},
        tuple(cells),
        {},
        'cells-only',
        sys.context.variables,
        seed,
    )
    logger.info(f"Weak Hermite classification: {len(cells)} points, counts {result.counts()}")
    return result


def use_fast_mode(fast_mode, delta, t):
    """'auto' switches to the sign-variation formulas while 2^δ ≤ δ^(3t)."""
    if fast_mode is None:
        fast_mode = getattr(settings, 'RRC_FAST_MODE', 'auto')
    if fast_mode not in FAST_MODES:
        raise UnknownMode(f"Unknown fast mode {fast_mode!r}, expected one of {FAST_MODES}")
    if fast_mode == 'auto':
        return 2**delta <= delta ** (3 * t)
    return fast_mode == 'on'


def sign_variation_formula(delta, count, fixed=None):
    """
    Φ_r: every σ in {-1, 1}^δ with (δ - r)/2 sign variations along
    (1, σ_1, ..., σ_δ), sorted.

    ``fixed`` maps a minor index to the sign it is known to have (constant
    minors); sign vectors contradicting it are left out.
    """
    labels = tuple(f"M{i + 1}" for i in range(delta))
    if (delta - count) % 2 or not 0 <= count <= delta:
        return ()
    target = (delta - count) // 2
    fixed = fixed or {}
    conditions = []
    for signs in product((-1, 1), repeat=delta):
        if any(signs[i] != s for i, s in fixed.items()):
            continue
        condition = SignCondition(labels, signs)
        if condition.variations() == target:
            conditions.append(condition)
    return tuple(conditions)


def _probe(H, prime, seed):
    try:
        index = modp_minor_probe(H, prime, seed)
    except (BadReduction, NonPolynomialEntries) as e:
        logger.warning(f"Modular minor probe skipped: {e}")
        return None
    logger.info(f"Modular minor probe: the boundary shows from M{index} on")
    return index


def _classify_by_minors(sys, H, seed, fast_mode=None, prime=None):
    if not H.is_polynomial:
        H = remove_denominators(H)
    w_infinity = H.w_infinity
    transformed, A, minors = congruence_with_retry(H, seed)
    probe = _probe(H, prime, seed)
    fast = use_fast_mode(fast_mode, H.delta, sys.t)
    labelled = _labelled([(f"M{i + 1}", m) for i, m in enumerate(minors)] + [('w_inf', w_infinity)])
    avoid = _labelled([(f"c{i + 1}", c) for i, c in enumerate(H.scaling or ())])
    logger.info(
        f"Minor degrees {[total_degree(m) if isinstance(m, PolyElement) else 0 for m in minors]}, "
        f"fast mode: {fast}"
    )

    cells = []
    for point in _sample(sys, [p for _, p in labelled + avoid]):
        M = specialize_matrix(transformed, point)
        r = signature(M)
        values = [evaluate(m, point) for m in minors]
        if sylvester_jacobi_signature(values) != r:
            raise InternalInvariantError(
                f"Minor signs give {sylvester_jacobi_signature(values)} but the signature is {r} at {_show(point)}"
            )
        _check_parity(r, M, point)
        cells.append(Cell(_condition(labelled, point), point, r))

    details = {'transform': [list(row) for row in A], 'probe_index': probe}
    if fast:
        fixed = {
            i: sign(m if not isinstance(m, PolyElement) else m.LC)
            for i, m in enumerate(minors)
            if not isinstance(m, PolyElement) or m.is_ground
        }
        counts = sorted({cell.count for cell in cells})
        formulas = {r: sign_variation_formula(H.delta, r, fixed) for r in counts}
        realizability = 'possible-superset'
        details['formula_labels'] = [f"M{i + 1}" for i in range(H.delta)]
    else:
        formulas = _group(cells)
        realizability = 'realized'

    result = ClassificationResult(
        'hermite-full',
        tuple(label for label, _ in labelled),
        {'w_infinity': w_infinity, 'minors': list(minors)},
        tuple(cells),
        formulas,
        realizability,
        sys.context.variables,
        seed,
        details,
    )
    logger.info(
        f"Hermite classification: {len(cells)} points, {len(result.conditions())} sign conditions, "
        f"counts {result.counts()}"
    )
    return result


def rrc_hermite(sys, seed=None, fast_mode=None, prime=None):
    """
    Sign conditions on the leading principal minors of AᵀHA and the root
    count each of them gives.

    Args:
        sys: ParametricSystem
        seed: drives the congruence matrix A and the modular probe
        fast_mode: 'auto', 'on' or 'off'; with the fast path the formulas are
            the sign-variation disjunctions Φ_r of the realized counts
        prime: modulus of the probe

    Returns:
        ClassificationResult
    """
    seed = default_seed(seed)
    H = drl_matrix(sys)
    if not H.delta:
        return _empty_system_result('hermite-full', sys, seed)
    return _classify_by_minors(sys, H, seed, fast_mode, prime)


def sturm_sequence(sys, seed, delta=None):
    """Eliminating polynomial w_a and the principal subresultant coefficients of (w_a, ∂w_a/∂u)."""
    eliminating = choose_eliminating_poly(sys, seed, delta)
    w = eliminating.poly
    u = w.ring.gens[0]
    # a priori degree of the subresultant coefficients in y
    bound = 2 * sys.d ** (2 * sys.n)
    sequence = subresultant_lcoeffs(w, w.diff(u), var=0, degree_bound=bound)
    return eliminating, sequence


def _max_degree(polys):
    return max((total_degree(p) for p in polys if isinstance(p, PolyElement)), default=0)


def _classify_by_subresultants(sys, eliminating, sequence, seed):
    coefficients = sequence.coefficients
    labelled = _labelled([(f"s{i}", s) for i, s in enumerate(coefficients)])
    cells = []
    for point in _sample(sys, [p for _, p in labelled]):
        r = generalized_pmv(sequence.values_at(point))
        cells.append(Cell(_condition(labelled, point), point, r))

    result = ClassificationResult(
        'sturm',
        tuple(label for label, _ in labelled),
        {'w': eliminating.poly, 'subresultants': list(coefficients)},
        tuple(cells),
        _group(cells),
        'realized',
        sys.context.variables,
        seed,
        {'linear_form': list(eliminating.linear_form), 'max_degree': _max_degree(coefficients)},
    )
    logger.info(
        f"Sturm classification: {len(cells)} points, {len(result.conditions())} sign conditions, "
        f"counts {result.counts()}"
    )
    return result


def rrc_sturm(sys, seed=None):
    """Sign conditions on s_0..s_D and the generalized permanences minus variations each gives."""
    seed = default_seed(seed)
    delta = quotient_basis(system_basis(sys)).delta
    if not delta:
        return _empty_system_result('sturm', sys, seed)
    eliminating, sequence = sturm_sequence(sys, seed, delta)
    return _classify_by_subresultants(sys, eliminating, sequence, seed)


def _unique(points):
    seen = set()
    result = []
    for point in points:
        point = tuple(to_rational(c) for c in point)
        if point not in seen:
            seen.add(point)
            result.append(point)
    return result


def cross_validate(sys, seed=None, points=None):
    """
    Compare the signature of H(η) with the Sturm count at parameter points.

    Without ``points`` both drivers run and every sample point of either is
    checked. Points on w_∞ = 0, det H = 0, s_0 = 0 or s_D = 0 are skipped.

    Raises:
        Disagreement: with the witnessing point
    """
    seed = default_seed(seed)
    H = drl_matrix(sys)
    if not H.delta:
        return CrossValidationReport(0, 0, (0,), (0,), seed)
    eliminating, sequence = sturm_sequence(sys, seed, H.delta)

    if points is None:
        hermite = _classify_by_minors(sys, H, seed, fast_mode='off')
        sturm = _classify_by_subresultants(sys, eliminating, sequence, seed)
        points = [cell.sample for cell in hermite.cells] + [cell.sample for cell in sturm.cells]

    checked = skipped = 0
    hermite_counts, sturm_counts = set(), set()
    for point in _unique(points):
        if not evaluate(H.w_infinity, point):
            skipped += 1
            continue
        try:
            M = specialize_matrix(H, point)
        except OnBadLocus:
            skipped += 1
            continue
        values = sequence.values_at(point)
        if not det_exact(M) or not values[0] or not values[-1]:
            skipped += 1
            continue
        by_hermite = signature(M)
        by_sturm = generalized_pmv(values)
        if by_hermite != by_sturm:
            logger.error(f"Hermite gives {by_hermite}, Sturm gives {by_sturm} at {_show(point)}")
            raise Disagreement(
                f"Hermite signature {by_hermite} differs from the Sturm count {by_sturm} at {_show(point)}",
                point, by_hermite, by_sturm,
            )
        hermite_counts.add(by_hermite)
        sturm_counts.add(by_sturm)
        checked += 1

    logger.info(f"Cross-validation: {checked} points agree, {skipped} skipped")
    return CrossValidationReport(checked, skipped, tuple(sorted(hermite_counts)), tuple(sorted(sturm_counts)), seed)


def run_mode(system, mode, seed=None, fast_mode=None, lam=None, prime=None, x_order=None):
    """
    Dispatch one mode. ``system`` is a ParametricSystem, or a list of
    parameter polynomials for 'sample-points'.
    """
    if mode not in MODES:
        raise UnknownMode(f"Unknown mode {mode!r}, expected one of {MODES}")
    if mode == 'sample-points':
        polys = list(system)
        return sample_points(polys)
    if x_order:
        system = system.reordered(x_order)
    logger.info(f"Running {mode} on {system.m} polynomials, n = {system.n}, t = {system.t}")
    if mode == 'hermite-weak':
        return weak_rrc_hermite(system, seed)
    if mode == 'hermite-full':
        return rrc_hermite(system, seed, fast_mode, prime)
    if mode == 'sturm':
        return rrc_sturm(system, seed)
    if mode == 'cross-validate':
        return cross_validate(system, seed)
    if lam is not None:
        return interp_hermite(system, int(lam))
    return drl_matrix(system)


def _points_payload(points):
    return {
        'algorithm': 'sample-points',
        'points': [[str(c) for c in point] for point in points],
        'count': len(points),
    }


def _matrix_payload(H):
    return {
        'algorithm': 'matrix-only',
        'x_order': list(H.context.variables),
        'basis': list(H.basis.labels()),
        'size': H.delta,
        'w_infinity': render(H.w_infinity),
        'matrix': H.render(),
    }


def to_payload(outcome):
    """JSON-ready dict for any run_mode outcome."""
    if isinstance(outcome, HermiteMatrix):
        return _matrix_payload(outcome)
    if isinstance(outcome, list):
        return _points_payload(outcome)
    return outcome.to_json()


def to_text(outcome):
    if isinstance(outcome, HermiteMatrix):
        header = f"Hermite matrix of size {outcome.delta} on the basis {', '.join(outcome.basis.labels())}"
        return f"{header}\n{outcome.as_text()}"
    if isinstance(outcome, list):
        return '\n'.join(_show(point) for point in outcome) or '(no points)'
    return outcome.as_text()
