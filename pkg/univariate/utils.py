"""
Univariate machinery: principal subresultant coefficients, generalized
permanences minus variations and exact real root isolation.
"""

import logging

from sympy.polys.densetools import dup_clear_denoms
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rootisolation import dup_count_real_roots, dup_isolate_real_roots_sqf

from arith.exceptions import ZeroPolynomialError
from arith.utils import (
    coefficients_in,
    drop_ring,
    evaluate,
    grid_points,
    held_out_points,
    interpolate,
    sign,
    squarefree_part,
    total_degree,
)
from .exceptions import DegreeOrderError, LeadingZeroError, NotUnivariate
from .models import IsolatingInterval, SubresultantCoeffs

logger = logging.getLogger(__name__)


def epsilon(i):
    """(-1)^(i(i-1)/2)"""
    return -1 if (i * (i - 1) // 2) % 2 else 1


def _shifted_row(coeffs, shift, width):
    # coeffs highest degree first; columns run from degree width-1 down to 0
    row = [QQ.zero] * width
    top = len(coeffs) - 1
    for index, c in enumerate(coeffs):
        row[width - 1 - (top - index + shift)] = c
    return row


def _principal_coefficient(pc, qc, j):
    """Determinant of the first p+q-2j columns of the j-th Sylvester-type matrix."""
    p, q = len(pc) - 1, len(qc) - 1
    size = p + q - 2 * j
    width = p + q - j
    rows = [_shifted_row(pc, shift, width) for shift in range(q - j - 1, -1, -1)]
    rows += [_shifted_row(qc, shift, width) for shift in range(p - j - 1, -1, -1)]
    square = [row[:size] for row in rows]
    return DomainMatrix(square, (size, size), QQ).det()


def signed_sequence(pc, qc):
    """s_0..s_p for coefficient lists (highest degree first) with formal degrees p >= q."""
    p, q = len(pc) - 1, len(qc) - 1
    sequence = []
    for i in range(p + 1):
        j = p - i
        if j == p:
            sequence.append(pc[0])
        elif j > q:
            sequence.append(QQ.zero)
        else:
            sequence.append(epsilon(p - j) * _principal_coefficient(pc, qc, j))
    return sequence


def _axis_degrees(coefficients, ngens):
    degrees = [0] * ngens
    for c in coefficients:
        for axis in range(ngens):
            if c:
                degrees[axis] = max(degrees[axis], c.degree(axis))
    return degrees


def subresultant_lcoeffs(p, q, var=0, degree_bound=None, checks=8):
    """
    Principal subresultant coefficients of (p, q) with respect to generator ``var``.

    Args:
        p, q: polynomials of the same ring, deg(p) >= deg(q) >= 0 in ``var``
        var: index of the main variable
        degree_bound: optional cap on the degree of every coefficient
        checks: held-out evaluations per interpolation (None for all of them)

    Returns:
        SubresultantCoeffs with s_0 = lc(p) and s_D the signed resultant.
        With other generators present the coefficients are computed by
        evaluation on a tensor grid and interpolation.
    """
    if not p:
        raise ZeroPolynomialError("First argument of the subresultant sequence is zero")
    if p.ring != q.ring:
        raise DegreeOrderError("Arguments belong to different rings")
    if not q:
        raise DegreeOrderError("Second argument of the subresultant sequence is zero")
    deg_p, deg_q = p.degree(var), q.degree(var)
    if deg_q > deg_p:
        raise DegreeOrderError(f"deg(p) = {deg_p} < deg(q) = {deg_q}")

    pc = list(reversed(coefficients_in(p, var)))
    qc = list(reversed(coefficients_in(q, var)))

    if p.ring.ngens == 1:
        return SubresultantCoeffs(tuple(signed_sequence(pc, qc)), deg_p, 'rational')

    ring = drop_ring(p.ring, var)
    k = ring.ngens
    p_axes, q_axes = _axis_degrees(pc, k), _axis_degrees(qc, k)
    p_total = max(total_degree(c) for c in pc)
    q_total = max(total_degree(c) for c in qc)

    bounds = {}
    for j in range(deg_q, -1, -1):
        axis_bounds = [(deg_q - j) * a + (deg_p - j) * b for a, b in zip(p_axes, q_axes)]
        total = (deg_q - j) * p_total + (deg_p - j) * q_total
        if degree_bound is not None:
            axis_bounds = [min(bound, degree_bound) for bound in axis_bounds]
            total = min(total, degree_bound)
        bounds[j] = (tuple(axis_bounds), total)

    grid_shape = tuple(max(bounds[j][0][axis] for j in bounds) for axis in range(k))
    points = grid_points(grid_shape) + held_out_points(grid_shape, 2)
    logger.info(
        f"Subresultants of degree {deg_p} over {k} parameters: grid {grid_shape}, {len(points)} points"
    )

    evaluations = {j: [] for j in bounds}
    for point in points:
        pc_value = [evaluate(c, point) for c in pc]
        qc_value = [evaluate(c, point) for c in qc]
        sequence = signed_sequence(pc_value, qc_value)
        for j in bounds:
            evaluations[j].append((point, sequence[deg_p - j]))

    coefficients = []
    for i in range(deg_p + 1):
        j = deg_p - i
        if j == deg_p:
            coefficients.append(pc[0])
        elif j > deg_q:
            coefficients.append(ring.zero)
        else:
            axis_bounds, total = bounds[j]
            coefficients.append(
                interpolate(evaluations[j], axis_bounds, ring, total_bound=total, checks=checks)
            )
    return SubresultantCoeffs(tuple(coefficients), deg_p, 'polynomial')


def generalized_pmv(signs):
    """
    Generalized permanences minus variations of a sign sequence.

    Consecutive non-zero entries at distance g contribute
    epsilon(g)·sign(product) when g is odd and nothing when g is even.
    """
    signs = [sign(s) for s in signs]
    if not signs or signs[0] == 0:
        raise LeadingZeroError("Sign sequence must start with a non-zero entry")
    nonzero = [(index, s) for index, s in enumerate(signs) if s]
    total = 0
    for (i, a), (j, b) in zip(nonzero, nonzero[1:]):
        gap = j - i
        if gap % 2:
            total += epsilon(gap) * a * b
    return total


def _dense(p):
    if p.ring.ngens != 1:
        raise NotUnivariate(f"Expected a univariate polynomial, got a ring with {p.ring.ngens} generators")
    return [QQ.convert(c) for c in p.to_dense()]


def _open_count(dense, part, lower, upper):
    """Roots strictly inside (lower, upper)."""
    count = dup_count_real_roots(dense, QQ, lower, upper)
    return count - (not evaluate(part, [lower])) - (not evaluate(part, [upper]))


def _clear_endpoints(dense, part, lower, upper):
    """
    Shrink an open isolating interval until neither endpoint is a root.
    An endpoint root belongs to the neighbouring interval, the root of this
    one stays strictly inside.
    """
    while not evaluate(part, [lower]) or not evaluate(part, [upper]):
        middle = (lower + upper) / 2
        if not evaluate(part, [middle]):
            return middle, middle
        if _open_count(dense, part, lower, middle):
            upper = middle
        else:
            lower = middle
    return lower, upper


def isolate_real_roots(p):
    """Sorted isolating intervals of the distinct real roots of p."""
    if not p:
        raise ZeroPolynomialError("Cannot isolate the roots of the zero polynomial")
    if p.ring.ngens != 1:
        raise NotUnivariate(f"Expected a univariate polynomial, got a ring with {p.ring.ngens} generators")
    if p.is_ground:
        return []
    part = squarefree_part(p)
    dense = _dense(part)
    intervals = []
    for lower, upper in dup_isolate_real_roots_sqf(dense, QQ):
        lower, upper = QQ.convert(lower), QQ.convert(upper)
        if lower > upper:
            lower, upper = upper, lower
        if lower != upper:
            lower, upper = _clear_endpoints(dense, part, lower, upper)
        intervals.append(IsolatingInterval(lower, upper, lower == upper))
    intervals.sort(key=lambda interval: (interval.lower, interval.upper))
    return intervals


def count_real_roots(p):
    return len(isolate_real_roots(p))


def signed_remainder_count(p):
    """Distinct real roots by a Sturm sequence; an independent oracle for isolation."""
    if not p:
        raise ZeroPolynomialError("Cannot count the roots of the zero polynomial")
    if p.is_ground:
        return 0
    _, dense = dup_clear_denoms(_dense(squarefree_part(p)), QQ)
    return dup_count_real_roots(dense, QQ)
