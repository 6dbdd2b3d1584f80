"""
Exact linear algebra for Hermite matrices: determinants, characteristic
polynomials, signatures and ranks over ℚ, minors over ℚ[y] by evaluation
and interpolation, congruences and the modular minor probe.
"""

import logging

from django.conf import settings
from sympy.polys.densetools import dup_mirror, dup_sign_variations
from sympy.polys.domains import GF, QQ
from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix

from arith.utils import (
    evaluate,
    exact_divide,
    gcd,
    grid_points,
    held_out_points,
    interpolate,
    normalize,
    seeded_stream,
    sign,
    squarefree_part,
    to_rational,
    total_degree,
)
from hermite.models import HermiteMatrix
from .exceptions import (
    BadReduction,
    DegenerateMinor,
    IdenticallyZeroDeterminant,
    NonPolynomialEntries,
    NonSquareMatrix,
    NotSymmetric,
    SingularTransform,
)
from .models import MinorRequest

logger = logging.getLogger(__name__)


def rational_matrix(rows):
    """DomainMatrix over ℚ from nested lists of ints, strings or rationals."""
    rows = [[to_rational(c) for c in row] for row in rows]
    width = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), width), QQ)


def _check_square(M):
    rows, cols = M.shape
    if rows != cols:
        raise NonSquareMatrix(f"Expected a square matrix, got {rows}x{cols}")


def is_symmetric(M):
    return M.shape[0] == M.shape[1] and M == M.transpose()


def _check_symmetric(M):
    _check_square(M)
    if not is_symmetric(M):
        raise NotSymmetric("Matrix is not symmetric")


def det_exact(M):
    _check_square(M)
    if not M.shape[0]:
        return M.domain.one
    return M.det()


def char_poly(M):
    """Coefficients of det(λI - M), leading coefficient first (Berkowitz)."""
    _check_symmetric(M)
    return M.charpoly()


def signature(M):
    """
    Positive minus negative eigenvalues of a symmetric rational matrix.

    The characteristic polynomial is real-rooted, so Descartes' rule counts
    its positive roots exactly; negative roots are those of char(-λ).
    """
    coefficients = char_poly(M)
    positive = dup_sign_variations(coefficients, M.domain)
    negative = dup_sign_variations(dup_mirror(coefficients, M.domain), M.domain)
    return positive - negative


def rank(M):
    if not M.shape[0] or not M.shape[1]:
        return 0
    return M.to_field().rank()


def _entry_degrees(entry, k):
    if not hasattr(entry, 'itermonoms') or not entry:
        return [0] * k, 0
    return [entry.degree(axis) for axis in range(k)], total_degree(entry)


def _minor_bounds(entries, request, k):
    axis_bounds = [0] * k
    total = 0
    for r in request.rows:
        degrees = [_entry_degrees(entries[r][c], k) for c in request.cols]
        for axis in range(k):
            axis_bounds[axis] += max(d[0][axis] for d in degrees)
        total += max(d[1] for d in degrees)
    if request.degree_bound is not None:
        axis_bounds = [min(b, request.degree_bound) for b in axis_bounds]
        total = min(total, request.degree_bound)
    return tuple(axis_bounds), total


def _polynomial_entries(H):
    if not H.is_polynomial:
        raise NonPolynomialEntries("Remove the denominators of the matrix before computing minors")
    return H.polynomial_entries()


def _evaluated(entries, point):
    size = len(entries)
    return DomainMatrix([[evaluate(e, point) for e in row] for row in entries], (size, size), QQ)


def minor_poly(H, request, checks=None):
    """
    Minor of H on the requested rows and columns, as a polynomial in y.

    The bound per parameter is Σ_rows max_cols of the entry degrees, capped
    by ``request.degree_bound``.
    """
    request.check_bounds(H.delta)
    entries = _polynomial_entries(H)
    if checks is None:
        checks = getattr(settings, 'RRC_INTERPOLATION_CHECKS', 4)
    if not request.size:
        return H.context.param_ring.one if H.context.param_ring else QQ.one
    ring = H.context.param_ring
    if ring is None:
        return det_exact(_evaluated(entries, ()).extract(list(request.rows), list(request.cols)))

    k = ring.ngens
    axis_bounds, total = _minor_bounds(entries, request, k)
    points = grid_points(axis_bounds) + held_out_points(axis_bounds, 2)
    evals = []
    for point in points:
        matrix = _evaluated(entries, point).extract(list(request.rows), list(request.cols))
        evals.append((point, det_exact(matrix)))
    return interpolate(evals, axis_bounds, ring, total_bound=total, checks=checks)


def leading_principal_minors(H, checks=None):
    """M_1, ..., M_δ on a single evaluation grid."""
    entries = _polynomial_entries(H)
    if checks is None:
        checks = getattr(settings, 'RRC_INTERPOLATION_CHECKS', 4)
    delta = H.delta
    ring = H.context.param_ring
    if ring is None:
        matrix = _evaluated(entries, ())
        return [det_exact(matrix.extract(list(range(k)), list(range(k)))) for k in range(1, delta + 1)]

    k_gens = ring.ngens
    bounds = {k: _minor_bounds(entries, MinorRequest.leading(k), k_gens) for k in range(1, delta + 1)}
    grid = tuple(max(bounds[k][0][axis] for k in bounds) for axis in range(k_gens))
    points = grid_points(grid) + held_out_points(grid, 2)
    logger.info(f"Leading principal minors of a {delta}x{delta} matrix from {len(points)} points")

    evals = {k: [] for k in bounds}
    for point in points:
        matrix = _evaluated(entries, point)
        for k in bounds:
            evals[k].append((point, det_exact(matrix.extract(list(range(k)), list(range(k))))))
    return [
        interpolate(evals[k], bounds[k][0], ring, total_bound=bounds[k][1], checks=checks)
        for k in range(1, delta + 1)
    ]


def determinant_poly(H):
    """Numerator of det(H): by interpolation for polynomial entries, by elimination over ℚ(y) otherwise."""
    if H.context.param_ring is None:
        return det_exact(H.domain_matrix())
    if H.is_polynomial:
        return minor_poly(H, MinorRequest.leading(H.delta))
    det = H.domain_matrix().det()
    if isinstance(det, FracElement):
        return det.numer
    return det


def clean_factors(det, w_infinity):
    """
    w_H: squarefree part of det with the factors it shares with w_∞ removed.
    """
    if not det:
        raise IdenticallyZeroDeterminant("The determinant of the Hermite matrix vanishes identically")
    if not hasattr(det, 'ring'):
        return QQ.one
    part = squarefree_part(det)
    if hasattr(w_infinity, 'ring') and w_infinity.ring == part.ring:
        common = gcd(part, w_infinity)
        part = exact_divide(part, common)
    return normalize(part)


def congruence(H, A):
    """AᵀHA; ``transform`` records A."""
    delta = H.delta
    K = H.domain
    A_qq = rational_matrix(A)
    if A_qq.shape != (delta, delta):
        raise SingularTransform(f"Congruence matrix must be {delta}x{delta}")
    if not det_exact(A_qq):
        raise SingularTransform("Congruence matrix is singular")
    A_k = A_qq.convert_to(K)
    product = A_k.transpose() * H.domain_matrix() * A_k
    return HermiteMatrix(
        H.basis, product.to_list(), H.w_infinity, H.assumption_c_holds, H.assumption_e_holds,
        H.context, H.scaling, tuple(tuple(int(c) for c in row) for row in A),
    )


def identity_matrix(delta):
    return [[1 if i == j else 0 for j in range(delta)] for i in range(delta)]


def random_congruence_matrix(delta, rng, bound=None):
    if bound is None:
        bound = getattr(settings, 'RRC_CONGRUENCE_RANGE', 3)
    return [[rng.randint(-bound, bound) for _ in range(delta)] for _ in range(delta)]


def congruence_with_retry(H, seed, attempts=None):
    """
    Congruence AᵀHA whose leading principal minors are all non-zero.

    A = identity is tried first, then seeded random matrices.

    Returns:
        (H_A, A, minors)
    """
    if attempts is None:
        attempts = getattr(settings, 'RRC_LAS_VEGAS_ATTEMPTS', 20)
    rng = seeded_stream(seed, 'congruence')
    A = identity_matrix(H.delta)
    for attempt in range(attempts):
        try:
            transformed = congruence(H, A)
        except SingularTransform:
            A = random_congruence_matrix(H.delta, rng)
            continue
        minors = leading_principal_minors(transformed)
        # det(AᵀHA) = det(A)²·det(H)
        if not minors[-1]:
            raise IdenticallyZeroDeterminant("The determinant of the Hermite matrix vanishes identically")
        vanishing = [k + 1 for k, minor in enumerate(minors) if not minor]
        if not vanishing:
            return transformed, A, minors
        logger.warning(f"Attempt {attempt + 1}: minors {vanishing} vanish identically, resampling A")
        A = random_congruence_matrix(H.delta, rng)
    raise DegenerateMinor(f"Leading principal minors stay degenerate after {attempts} attempts")


def sylvester_jacobi_signature(minor_values):
    """δ - 2·(sign variations of 1, M_1, ..., M_δ) for non-zero minors."""
    signs = [1] + [sign(value) for value in minor_values]
    if 0 in signs:
        raise DegenerateMinor("Sylvester-Jacobi needs non-zero leading principal minors")
    variations = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return len(minor_values) - 2 * variations


def _reduce_rational(value, prime):
    value = QQ.convert(value)
    denominator = int(value.denominator) % prime
    if not denominator:
        raise BadReduction(f"Denominator of {value} vanishes modulo {prime}")
    return int(value.numerator) * pow(denominator, -1, prime) % prime


def modp_minor_probe(H, prime=None, seed=0):
    """
    Index at which the leading principal minors start to carry the boundary.

    Each parameter is replaced by a random line α_i·u + β_i over GF(p). With
    w̄ the squarefree part of the reduced determinant, returns r + 1 for the
    largest r < δ whose minor M_r is not divisible by w̄ (1 when none is).
    The answer is Monte Carlo and only steers which minor is interpolated.
    """
    if prime is None:
        prime = getattr(settings, 'RRC_MODP_PRIME', 65521)
    entries = _polynomial_entries(H)
    domain = GF(prime).poly_ring('u')
    ring = domain.ring
    u = ring.gens[0]
    rng = seeded_stream(seed, f'modp-{prime}')
    t = H.context.t
    lines = [rng.randrange(1, prime) * u + rng.randrange(prime) for _ in range(t)]

    def reduce(entry):
        if not hasattr(entry, 'iterterms'):
            return ring(_reduce_rational(entry, prime))
        value = ring.zero
        for monom, coeff in entry.iterterms():
            term = ring(_reduce_rational(coeff, prime))
            for line, e in zip(lines, monom):
                term *= line**e
            value += term
        return value

    delta = H.delta
    matrix = DomainMatrix([[reduce(e) for e in row] for row in entries], (delta, delta), domain)
    det = matrix.det()
    if not det:
        raise BadReduction(f"Determinant vanishes after reduction modulo {prime}")
    derivative = det.diff(u)
    w_bar = det.exquo(det.gcd(derivative)) if derivative else det

    for r in range(delta - 1, 0, -1):
        minor = matrix.extract(list(range(r)), list(range(r))).det()
        if minor.rem(w_bar):
            logger.info(f"Modular probe: minor {r} is the last not divisible by the boundary, index {r + 1}")
            return r + 1
    return 1
