"""Exact polynomial arithmetic over ℚ: ring operations, parsing, specialization and interpolation."""

import hashlib
import logging
import random
import re
from itertools import product

from sympy import Rational
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement
from sympy.polys.orderings import grevlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing
from tokenize import TokenError

from .exceptions import (
    ContextMismatch,
    DuplicatePoint,
    InexactDivision,
    InsufficientGrid,
    InterpolationMismatch,
    LengthMismatch,
    ParseError,
    UndeclaredIdentifier,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r'\s+|\d+|[A-Za-z_][A-Za-z0-9_]*|\*\*|[-+*/^()]')
TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)


def to_rational(value):
    """Coerce ints, strings like '3/4', Fractions and sympy numbers to a QQ element."""
    if QQ.of_type(value):
        return value
    return QQ.from_sympy(Rational(value))


def sign(value):
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def seeded_stream(seed, name):
    """Independent deterministic PRNG for one named use of a job seed."""
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], 'big'))


def grevlex_ring(names):
    return PolyRing(tuple(str(name) for name in names), QQ, grevlex)


def drop_ring(ring, index):
    """grevlex ring without generator ``index``; None when nothing is left."""
    symbols = ring.symbols[:index] + ring.symbols[index + 1:]
    if not symbols:
        return None
    return grevlex_ring(symbols)


def _check_same_ring(p, q):
    if p.ring != q.ring:
        raise ContextMismatch(f"Operands belong to different rings: {p.ring} and {q.ring}")


def add(p, q):
    _check_same_ring(p, q)
    return p + q


def subtract(p, q):
    _check_same_ring(p, q)
    return p - q


def multiply(p, q):
    _check_same_ring(p, q)
    return p * q


def exact_divide(p, q):
    _check_same_ring(p, q)
    if not q:
        raise InexactDivision("Division by the zero polynomial")
    try:
        return p.exquo(q)
    except ExactQuotientFailed as e:
        raise InexactDivision(f"{render(q)} does not divide {render(p)}") from e


def total_degree(p):
    """Largest exponent sum; -1 for the zero polynomial."""
    return max((sum(monom) for monom in p.itermonoms()), default=-1)


def is_constant(p):
    if isinstance(p, PolyElement):
        return p.is_ground
    if isinstance(p, FracElement):
        return p.numer.is_ground and p.denom.is_ground
    return True


def normalize(p):
    """Integer-primitive with a positive grevlex-leading coefficient."""
    if not p:
        return p
    _, p = p.primitive()
    lead = max(p.itermonoms(), key=grevlex)
    if p[lead] < 0:
        p = -p
    return p


def gcd(p, q):
    _check_same_ring(p, q)
    return normalize(p.gcd(q))


def lcm(p, q):
    _check_same_ring(p, q)
    if not p or not q:
        return p.ring.zero
    return normalize(p.lcm(q))


def squarefree_part(p):
    """p / gcd(p, ∂p/∂v for every generator v), normalized."""
    if not p:
        raise ZeroPolynomialError("Squarefree part of the zero polynomial")
    if p.is_ground:
        return p.ring.one
    common = p
    for gen in p.ring.gens:
        derivative = p.diff(gen)
        if derivative:
            common = common.gcd(derivative)
    return normalize(p.exquo(common))


def coefficients_in(p, index):
    """Coefficients of p with respect to generator ``index``, constant term first.

    They live in the grevlex ring of the remaining generators, or in the
    ground domain when p is univariate.
    """
    target = drop_ring(p.ring, index)
    if not p:
        return []
    grouped = [{} for _ in range(p.degree(index) + 1)]
    for monom, coeff in p.iterterms():
        grouped[monom[index]][monom[:index] + monom[index + 1:]] = coeff
    if target is None:
        return [terms.get((), p.ring.domain.zero) for terms in grouped]
    return [target.from_dict(terms) if terms else target.zero for terms in grouped]


def evaluate(p, point):
    """Value of a polynomial or rational function at a point (one coordinate per generator)."""
    if isinstance(p, FracElement):
        denominator = evaluate(p.denom, point)
        if not denominator:
            raise ZeroDivisionError("Denominator vanishes at the evaluation point")
        return evaluate(p.numer, point) / denominator
    if not isinstance(p, PolyElement):
        return to_rational(p)
    point = [to_rational(c) for c in point]
    if len(point) != p.ring.ngens:
        raise LengthMismatch(f"Expected {p.ring.ngens} coordinates, got {len(point)}")
    return QQ.convert(p.evaluate(list(zip(p.ring.gens, point))))


def specialize(p, eta, context):
    """Substitute the parameters of ``context`` by the rational point eta.

    Parameter-only polynomials evaluate to a rational number; polynomials of
    the main ring become polynomials in the specialized context's ring.
    """
    if len(eta) != context.t:
        raise LengthMismatch(f"Expected {context.t} parameter values, got {len(eta)}")
    point = [to_rational(c) for c in eta]
    if context.param_ring is not None and p.ring == context.param_ring:
        return evaluate(p, point)
    if p.ring != context.ring:
        raise ContextMismatch(f"{render(p)} is not in the ring of the context")
    if not context.t:
        return p
    return p.evaluate(list(zip(context.param_gens, point))).set_ring(context.specialized().ring)


def grid_points(bounds, offset=0):
    """Tensor grid with abscissae offset, offset+1, ..., offset+bound on each axis."""
    return [
        tuple(QQ(offset + c) for c in coordinates)
        for coordinates in product(*(range(bound + 1) for bound in bounds))
    ]


def held_out_points(bounds, count):
    """Points strictly outside the grid of ``bounds``, used to catch undersized bounds."""
    points = []
    for shift in range(count):
        points.append(tuple(QQ(bound + 1 + shift + axis) for axis, bound in enumerate(bounds)))
    return points


def _newton(values, nodes, ring, axis, prefix):
    if axis == len(nodes):
        return ring.ground_new(values[prefix])
    xs = nodes[axis]
    gen = ring.gens[axis]
    coefficients = [_newton(values, nodes, ring, axis + 1, prefix + (x,)) for x in xs]
    # divided differences with polynomial values
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            coefficients[i] = (coefficients[i] - coefficients[i - 1]).quo_ground(xs[i] - xs[i - level])
    result = coefficients[-1]
    for i in range(len(xs) - 2, -1, -1):
        result = result * (gen - xs[i]) + coefficients[i]
    return result


def interpolate(evals, degree_bound, ring, total_bound=None, checks=None):
    """
    Recover a polynomial from its values on a tensor grid.

    Args:
        evals: iterable of (point, value); points have one coordinate per generator of ``ring``
        degree_bound: int (total degree, also used per axis) or a per-axis tuple
        ring: target polynomial ring
        total_bound: optional total degree bound when degree_bound is per axis
        checks: maximum number of held-out points to verify (None for all)

    Returns:
        The unique polynomial with the given per-axis degrees matching the grid.
        The smallest degree_bound+1 distinct coordinates of each axis form the
        grid; every other point is a held-out check.
    """
    k = ring.ngens
    if isinstance(degree_bound, int):
        bounds = (degree_bound,) * k
        if total_bound is None:
            total_bound = degree_bound
    else:
        bounds = tuple(degree_bound)
        if len(bounds) != k:
            raise LengthMismatch(f"Expected {k} per-axis bounds, got {len(bounds)}")

    values = {}
    for point, value in evals:
        point = tuple(to_rational(c) for c in point)
        if len(point) != k:
            raise LengthMismatch(f"Expected {k} coordinates, got {len(point)}")
        value = to_rational(value)
        if point in values and values[point] != value:
            raise DuplicatePoint(f"Conflicting values at {point}")
        values[point] = value

    nodes = []
    for axis, bound in enumerate(bounds):
        coordinates = sorted({point[axis] for point in values})
        if len(coordinates) < bound + 1:
            raise InsufficientGrid(
                f"Axis {axis} has {len(coordinates)} distinct abscissae, {bound + 1} needed"
            )
        nodes.append(coordinates[:bound + 1])

    grid = list(product(*nodes))
    missing = [point for point in grid if point not in values]
    if missing:
        raise InsufficientGrid(f"{len(missing)} grid points missing, first {missing[0]}")

    result = _newton(values, nodes, ring, 0, ())

    if total_bound is not None and total_degree(result) > total_bound:
        raise InterpolationMismatch(
            f"Interpolant has total degree {total_degree(result)} > bound {total_bound}"
        )

    grid_set = set(grid)
    held_out = sorted(point for point in values if point not in grid_set)
    if checks is not None and len(held_out) > checks:
        stride = len(held_out) // checks
        held_out = held_out[::stride][:checks]
    for point in held_out:
        if evaluate(result, point) != values[point]:
            raise InterpolationMismatch(f"Held-out evaluation disagrees at {point}")
    return result


def parse_poly(text, ring, line=None):
    """Parse infix polynomial text ('x1^2 + 2x2 - y1') into ``ring``."""
    declared = {str(symbol): symbol for symbol in ring.symbols}
    position = 0
    previous = ''
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise ParseError(f"Unexpected character {text[position]!r}", line or 1, position + 1)
        token = match.group()
        if token.isdigit() and previous.isdigit():
            raise ParseError(f"Missing operator between {previous} and {token}", line or 1, position + 1)
        if not token.isspace():
            previous = token
        if token[0].isalpha() or token[0] == '_':
            if token not in declared:
                raise UndeclaredIdentifier(f"Undeclared identifier {token!r}", line or 1, position + 1)
        position = match.end()
    if not text.strip():
        raise ParseError("Empty polynomial", line or 1, 1)

    try:
        expr = parse_expr(text, local_dict=dict(declared), transformations=TRANSFORMATIONS)
    except (SyntaxError, TokenError) as e:
        column = getattr(e, 'offset', None) or 1
        raise ParseError(f"Malformed polynomial {text.strip()!r}", line or 1, column) from e
    try:
        return ring.from_expr(expr)
    except ValueError as e:
        raise ParseError(f"Not a polynomial: {text.strip()!r}", line or 1, 1) from e


def render(p):
    """Infix text with '^' powers; parse_poly reads it back."""
    if isinstance(p, FracElement):
        if p.denom == 1:
            return render(p.numer)
        return f"({render(p.numer)})/({render(p.denom)})"
    if not isinstance(p, PolyElement):
        return str(p)
    if not p:
        return '0'
    names = [str(symbol) for symbol in p.ring.symbols]
    text = ''
    for monom, coeff in p.terms():
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e]
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = '*'.join(factors)
        else:
            body = f"{magnitude}*{'*'.join(factors)}"
        if not text:
            text = f"-{body}" if coeff < 0 else body
        else:
            text += f" - {body}" if coeff < 0 else f" + {body}"
    return text
