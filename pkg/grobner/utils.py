"""Gröbner bases for the block order grevlex(x) > grevlex(y), normal forms over ℚ(y) and elimination."""

import logging
from collections import deque
from functools import lru_cache

from django.conf import settings
from sympy.polys.groebnertools import groebner, is_groebner

from arith.exceptions import ContextMismatch
from arith.utils import grevlex_ring, seeded_stream, specialize, squarefree_part, total_degree
from real_roots.exceptions import InternalInvariantError
from .exceptions import DegenerateLinearForm, EmptyElimination, InvalidSystem, NotZeroDimensional
from .models import EliminatingPoly, GroebnerBasis, QuotientBasis

logger = logging.getLogger(__name__)


def _normalized(g):
    """Integer-primitive with a positive leading coefficient for the ring order."""
    _, g = g.primitive()
    if g.LC < 0:
        g = -g
    return g


def buchberger(polys, order=None, context=None):
    """
    Reduced Gröbner basis of ⟨polys⟩.

    Args:
        polys: non-empty list of polynomials of one ring
        order: monomial order; defaults to the order of the ring
        context: VarContext recorded on the result (needed for normal forms)

    Returns:
        GroebnerBasis with primitive generators sorted by decreasing leading monomial.
    """
    polys = [p for p in polys]
    if not polys:
        raise InvalidSystem("Cannot compute the Gröbner basis of an empty list")
    ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise ContextMismatch("Gröbner basis inputs belong to different rings")
    if order is not None and order != ring.order:
        ring = ring.clone(order=order)
        polys = [p.set_ring(ring) for p in polys]

    generators = [_normalized(g) for g in groebner(polys, ring, method='buchberger') if g]
    generators.sort(key=lambda g: ring.order(g.LM), reverse=True)
    logger.debug(f"Gröbner basis of {len(polys)} polynomials has {len(generators)} generators")
    return GroebnerBasis(tuple(generators), ring.order, True, context)


def system_basis(sys):
    """Reduced Gröbner basis of a parametric system for its block order."""
    gb = buchberger(sys.polys, context=sys.context)
    logger.info(
        f"Gröbner basis: {len(gb)} generators, n={sys.n}, t={sys.t}, d={sys.d}"
    )
    return gb


def x_leading(g, n):
    """
    Leading monomial and leading coefficient of g seen as a polynomial in the
    first n generators.

    The coefficient lives in the grevlex ring of the remaining generators, or
    is a rational when there are none.
    """
    lm_x = g.LM[:n]
    terms = {monom[n:]: coeff for monom, coeff in g.iterterms() if monom[:n] == lm_x}
    rest = g.ring.symbols[n:]
    if not rest:
        return lm_x, terms[()]
    return lm_x, grevlex_ring(rest).from_dict(terms)


def x_degree(g, n):
    return max(sum(monom[:n]) for monom in g.itermonoms())


def detect_assumption_c(gb):
    """Every x-leading coefficient of the basis is a constant."""
    n = gb.context.n
    for g in gb:
        _, lc = x_leading(g, n)
        if hasattr(lc, 'is_ground') and not lc.is_ground:
            return False
    return True


def detect_assumption_e(gb):
    """Total degree equals x-degree for every generator."""
    n = gb.context.n
    return all(total_degree(g) == x_degree(g, n) for g in gb)


def is_groebner_basis(polys):
    """Every S-polynomial of the set reduces to zero by it."""
    polys = [p.monic() for p in polys if p]
    if not polys:
        return True
    return is_groebner(polys, polys[0].ring)


def _k_coefficient(param_poly, context):
    if context.param_field is None:
        return param_poly
    return context.param_field.field_new(param_poly)


def to_coefficient_ring(p, context):
    """Move p from ℚ[x, y] into ℚ(y)[x]."""
    if p.ring == context.coefficient_ring:
        return p
    if p.ring != context.ring or context.aux:
        raise ContextMismatch(f"{p} is not in the ring of a context without auxiliary variable")
    n = context.n
    grouped = {}
    for monom, coeff in p.iterterms():
        grouped.setdefault(monom[:n], {})[monom[n:]] = coeff
    terms = {}
    for x_monom, rest in grouped.items():
        if context.param_ring is None:
            terms[x_monom] = rest[()]
        else:
            terms[x_monom] = _k_coefficient(context.param_ring.from_dict(rest), context)
    return context.coefficient_ring.from_dict(terms)


@lru_cache(maxsize=32)
def _coefficient_generators(gb):
    return [to_coefficient_ring(g, gb.context) for g in gb]


def normal_form(p, gb, basis=None):
    """
    Remainder of p by gb over ℚ(y).

    Returns the remainder in ℚ(y)[x], or its coefficient vector over ``basis``
    when one is given.
    """
    if gb.context is None:
        raise ContextMismatch("Normal forms need a Gröbner basis with a context")
    remainder = to_coefficient_ring(p, gb.context).rem(_coefficient_generators(gb))
    if basis is None:
        return remainder
    zero = gb.context.coefficient_domain.zero
    for monom in remainder.itermonoms():
        if monom not in basis:
            raise InternalInvariantError(f"Normal form has monomial {monom} outside the quotient basis")
    return tuple(remainder.get(monom, zero) for monom in basis.monomials)


def quotient_basis(gb):
    """Monomials in x not divisible by any x-leading monomial of gb."""
    n = gb.context.n
    leading = {g.LM[:n] for g in gb}
    if (0,) * n in leading:
        raise NotZeroDimensional("The ideal contains a non-zero parameter polynomial; generic fibers are empty")
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in leading):
            raise NotZeroDimensional(
                f"No pure power of {gb.context.variables[i]} among the leading monomials; "
                f"the system is not zero-dimensional over the parameter field"
            )

    def reducible(monomial):
        return any(all(a >= b for a, b in zip(monomial, lead)) for lead in leading)

    staircase = set()
    queue = deque([(0,) * n])
    while queue:
        monomial = queue.popleft()
        if monomial in staircase or reducible(monomial):
            continue
        staircase.add(monomial)
        for i in range(n):
            queue.append(monomial[:i] + (monomial[i] + 1,) + monomial[i + 1:])
    basis = QuotientBasis(gb.context, tuple(staircase))
    logger.debug(f"Quotient basis of dimension {basis.delta}: {', '.join(basis.labels())}")
    return basis


def reduce_gb_over_K(gb):
    """Keep one generator per x-leading monomial, the one whose x-leading coefficient has least degree."""
    n = gb.context.n
    chosen = {}
    for position, g in enumerate(gb):
        lm_x, lc = x_leading(g, n)
        weight = (total_degree(lc) if hasattr(lc, 'itermonoms') else 0, position)
        if lm_x not in chosen or weight < chosen[lm_x][0]:
            chosen[lm_x] = (weight, g)
    kept = tuple(g for _, g in sorted(chosen.values(), key=lambda item: item[0][1]))
    if len(kept) < len(gb):
        logger.debug(f"Dropped {len(gb) - len(kept)} generators with duplicate x-leading monomials")
    return GroebnerBasis(kept, gb.order, gb.reduced, gb.context)


def specialize_basis(gb, eta):
    """Generators of gb at the parameter point η, in the specialized context."""
    context = gb.context.specialized()
    generators = [specialize(g, eta, gb.context) for g in gb]
    return GroebnerBasis(tuple(g for g in generators if g), context.ring.order, False, context)


def elimination_ideal_generator(sys, a, delta=None):
    """
    Eliminating polynomial of the linear form u = Σ a_i x_i.

    Args:
        sys: ParametricSystem
        a: integer coefficients, one per variable, not all zero
        delta: dimension of the quotient algebra, computed when omitted

    Returns:
        EliminatingPoly with w_a the squarefree gcd of the x-free generators of
        the block Gröbner basis of ⟨f, u - Σ a_i x_i⟩.
    """
    a = tuple(int(c) for c in a)
    if len(a) != sys.n or not any(a):
        raise DegenerateLinearForm(f"Linear form {a} must have {sys.n} coefficients, not all zero")
    if delta is None:
        delta = quotient_basis(system_basis(sys)).delta

    context = sys.context.with_aux('u')
    ring = context.ring
    u = ring.gens[sys.n]
    form = u - sum((c * x for c, x in zip(a, ring.gens[:sys.n])), ring.zero)
    lifted = [f.set_ring(ring) for f in sys.polys] + [form]
    gb = buchberger(lifted, context=context)

    x_free = [g for g in gb if not any(g.degree(i) for i in range(sys.n))]
    if not x_free:
        raise EmptyElimination(f"No generator of the elimination ideal for u = {form - u} found")

    target = context.elimination_ring
    common = x_free[0].set_ring(target)
    for g in x_free[1:]:
        common = common.gcd(g.set_ring(target))
    w = squarefree_part(common)
    degree = w.degree(0)

    if degree < delta:
        raise DegenerateLinearForm(f"deg_u(w) = {degree} < {delta} for the linear form {a}")
    if degree > delta:
        logger.warning(f"deg_u(w) = {degree} exceeds the quotient dimension {delta} for the linear form {a}")
    return EliminatingPoly(w, a, degree, context)


def choose_eliminating_poly(sys, seed, delta=None):
    """
    Las Vegas choice of the linear form: (0, ..., 0, 1) first, then seeded
    random integers until deg_u(w_a) reaches δ.
    """
    if delta is None:
        delta = quotient_basis(system_basis(sys)).delta
    attempts = getattr(settings, 'RRC_LAS_VEGAS_ATTEMPTS', 20)
    bound = getattr(settings, 'RRC_LINEAR_FORM_RANGE', 10)
    rng = seeded_stream(seed, 'linear-form')
    a = (0,) * (sys.n - 1) + (1,)
    for attempt in range(attempts):
        try:
            return elimination_ideal_generator(sys, a, delta)
        except DegenerateLinearForm as e:
            logger.warning(f"Attempt {attempt + 1}: {e}")
        a = (0,) * sys.n
        while not any(a):
            a = tuple(rng.randint(-bound, bound) for _ in range(sys.n))
    raise DegenerateLinearForm(f"No separating linear form found in {attempts} attempts")
