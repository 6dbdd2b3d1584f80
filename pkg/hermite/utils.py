"""
Parametric Hermite matrices: multiplication matrices, matrices of the basis
monomials, trace entries, denominator removal, the evaluation and
interpolation path and specialization.
"""

import logging

from django.conf import settings
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix

from arith.utils import (
    evaluate,
    grid_points,
    held_out_points,
    interpolate,
    lcm,
    squarefree_part,
    to_rational,
)
from grobner.models import QuotientBasis
from grobner.utils import (
    detect_assumption_c,
    detect_assumption_e,
    normal_form,
    quotient_basis,
    reduce_gb_over_K,
    specialize_basis,
    system_basis,
    x_leading,
)
from real_roots.exceptions import InternalInvariantError
from .exceptions import AssumptionCViolated, OnBadLocus
from .models import HermiteMatrix, MultMatrix

logger = logging.getLogger(__name__)


def _monomial(ring, exponents):
    return ring({tuple(exponents): ring.domain.one})


def multiplication_matrices(gb, basis):
    """L_{x_1}, ..., L_{x_n} by normal forms of x_i·b_j."""
    context = gb.context
    ring = context.coefficient_ring
    K = context.coefficient_domain
    delta = basis.delta
    matrices = []
    for i in range(context.n):
        rows = []
        for b in basis.monomials:
            product = b[:i] + (b[i] + 1,) + b[i + 1:]
            rows.append(list(normal_form(_monomial(ring, product), gb, basis)))
        operand = tuple(1 if k == i else 0 for k in range(context.n))
        matrices.append(MultMatrix(operand, DomainMatrix(rows, (delta, delta), K)))
    return tuple(matrices)


def basis_matrices(basis, x_matrices):
    """L_b for every b in the basis, inductively L_b = L_{b'}·L_{x_i} with b = x_i·b'."""
    K = x_matrices[0].matrix.domain if x_matrices else QQ
    delta = basis.delta
    matrices = {}
    for b in basis.monomials:
        if not any(b):
            matrices[b] = MultMatrix(b, DomainMatrix.eye(delta, K).to_dense())
            continue
        i = next(k for k, e in enumerate(b) if e)
        previous = b[:i] + (b[i] - 1,) + b[i + 1:]
        if previous not in matrices:
            raise InternalInvariantError(f"Quotient basis is not closed under division at {b}")
        matrices[b] = MultMatrix(b, matrices[previous].matrix * x_matrices[i].matrix)
    return matrices


def trace_entries(basis, b_matrices):
    """
    h_{i,j} = Σ_k c_k·trace(L_{b_k}) with (c_k) row j of L_{b_i}.

    Entries with the same product b_i·b_j are computed once.
    """
    traces = [b_matrices[b].trace() for b in basis.monomials]
    K = b_matrices[basis.monomials[0]].matrix.domain
    delta = basis.delta
    cache = {}
    entries = [[None] * delta for _ in range(delta)]
    for i, b_i in enumerate(basis.monomials):
        rows = b_matrices[b_i].matrix.to_list()
        for j in range(i, delta):
            key = tuple(a + b for a, b in zip(b_i, basis.monomials[j]))
            if key not in cache:
                cache[key] = sum((c * t for c, t in zip(rows[j], traces)), K.zero)
            entries[i][j] = entries[j][i] = cache[key]
    logger.debug(f"{len(cache)} distinct entries among {delta * (delta + 1) // 2}")
    return tuple(tuple(row) for row in entries)


def leading_coefficient_locus(gb):
    """w_∞: squarefree part of the lcm of the x-leading coefficients."""
    context = gb.context
    if context.param_ring is None:
        return QQ.one
    ring = context.param_ring
    result = ring.one
    for g in gb:
        _, lc = x_leading(g, context.n)
        result = lcm(result, lc)
    return squarefree_part(result)


def _hermite_from_basis(gb, basis, w_infinity, c_holds, e_holds):
    reduced = reduce_gb_over_K(gb)
    x_mats = multiplication_matrices(reduced, basis)
    b_mats = basis_matrices(basis, x_mats)
    entries = trace_entries(basis, b_mats)
    return HermiteMatrix(basis, entries, w_infinity, c_holds, e_holds, gb.context)


def drl_matrix(sys):
    """
    Parametric Hermite matrix of a zero-dimensional system over ℚ(y).

    Raises NotZeroDimensional when some variable has no pure power among the
    x-leading monomials of the Gröbner basis.
    """
    gb = system_basis(sys)
    basis = quotient_basis(gb)
    w_infinity = leading_coefficient_locus(gb)
    H = _hermite_from_basis(gb, basis, w_infinity, detect_assumption_c(gb), detect_assumption_e(gb))
    logger.info(f"Hermite matrix of size {H.delta}, polynomial entries: {H.is_polynomial}")
    return H


def _denominator(entry):
    if isinstance(entry, FracElement):
        return entry.denom
    return QQ(to_rational(entry).denominator)


def _row_denominator(row):
    result = None
    for entry in row:
        if not isinstance(entry, FracElement) or entry.denom.is_ground:
            continue
        result = entry.denom if result is None else lcm(result, entry.denom)
    return result


def _rescaled(H, factors):
    field = H.context.param_field
    K = H.domain
    factors = [field.field_new(c) if field is not None else K.convert(c) for c in factors]
    return [
        [H.entries[i][j] * factors[i] * factors[j] for j in range(H.delta)]
        for i in range(H.delta)
    ]


def remove_denominators(H):
    """
    Rescale b_i by the denominator c_i of h_{1,i}; entry (i, j) is multiplied by c_i·c_j.

    Entries that still carry a denominator afterwards are cleared by a second
    rescaling with the lcm of the denominators of each row. ``scaling`` holds
    the product of both factors, all of them divide a power of w_∞.
    """
    if H.is_polynomial:
        return H
    scaling = [_denominator(entry) for entry in H.entries[0]]
    entries = _rescaled(H, scaling)
    scaled = HermiteMatrix(
        H.basis, entries, H.w_infinity, H.assumption_c_holds, H.assumption_e_holds,
        H.context, tuple(scaling), H.transform,
    )
    if not scaled.is_polynomial:
        rows = [_row_denominator(row) for row in scaled.entries]
        one = H.context.param_ring.one
        rows = [c if c is not None else one for c in rows]
        scaling = [c0 * c for c0, c in zip(scaling, rows)]
        scaled = HermiteMatrix(
            H.basis, _rescaled(scaled, rows), H.w_infinity, H.assumption_c_holds, H.assumption_e_holds,
            H.context, tuple(scaling), H.transform,
        )
        logger.info("Cleared the remaining denominators row by row")
    if not scaled.is_polynomial:
        raise InternalInvariantError("Denominators left after rescaling the Hermite matrix")
    logger.info("Removed denominators from the Hermite matrix")
    return scaled


def _y_degree(g, n):
    return max(sum(monom[n:]) for monom in g.itermonoms())


def default_lambda(sys, gb):
    """2n(d-1) under Assumption (E); d_y·2n(d-1) otherwise, d_y measured on the basis."""
    bound = 2 * sys.n * (sys.d - 1)
    if detect_assumption_e(gb):
        return bound
    d_y = max(_y_degree(g, sys.n) for g in gb)
    return max(d_y, 1) * bound


def interp_hermite(sys, lam=None):
    """
    Hermite matrix by evaluation at a grid of parameter points and entrywise
    interpolation. Needs constant x-leading coefficients.
    """
    gb = system_basis(sys)
    if not detect_assumption_c(gb):
        raise AssumptionCViolated("x-leading coefficients of the Gröbner basis depend on the parameters")
    basis = quotient_basis(gb)
    if lam is None:
        lam = default_lambda(sys, gb)
    context = sys.context
    checks = getattr(settings, 'RRC_INTERPOLATION_CHECKS', 4)

    bounds = (lam,) * context.t
    points = grid_points(bounds) + held_out_points(bounds, 2)
    logger.info(f"Interpolating the Hermite matrix from {len(points)} parameter points, Λ = {lam}")

    reduced = reduce_gb_over_K(gb)
    values = {}
    for point in points:
        specialized = specialize_basis(reduced, point)
        if quotient_basis(specialized).monomials != basis.monomials:
            raise InternalInvariantError(f"Staircase changes at {point}")
        local_basis = QuotientBasis(specialized.context, basis.monomials)
        entries = _hermite_from_basis(specialized, local_basis, QQ.one, True, True).entries
        for i in range(basis.delta):
            for j in range(i, basis.delta):
                values.setdefault((i, j), []).append((point, entries[i][j]))

    field = context.param_field
    entries = [[None] * basis.delta for _ in range(basis.delta)]
    for (i, j), evals in values.items():
        poly = interpolate(evals, lam, context.param_ring, checks=checks)
        entries[i][j] = entries[j][i] = field.field_new(poly)
    return HermiteMatrix(
        basis, entries, leading_coefficient_locus(gb), True, detect_assumption_e(gb), context,
    )


def specialize_matrix(H, eta):
    """
    H(η) as a rational DomainMatrix.

    Raises OnBadLocus when w_∞(η) = 0, a denominator vanishes or a scaling
    factor of the basis vanishes.
    """
    point = tuple(to_rational(c) for c in eta)
    if len(point) != H.context.t:
        raise OnBadLocus(f"Expected {H.context.t} parameter values, got {len(point)}", point)
    if evaluate(H.w_infinity, point) == 0:
        raise OnBadLocus(f"w_∞ vanishes at {_show(point)}", point)
    for c in H.scaling or ():
        if evaluate(c, point) == 0:
            raise OnBadLocus(f"A basis scaling factor vanishes at {_show(point)}", point)
    rows = []
    for row in H.entries:
        try:
            rows.append([evaluate(entry, point) for entry in row])
        except ZeroDivisionError as e:
            raise OnBadLocus(f"A denominator of the matrix vanishes at {_show(point)}", point) from e
    return DomainMatrix(rows, (H.delta, H.delta), QQ)


def _show(point):
    return '(' + ', '.join(str(c) for c in point) + ')'
