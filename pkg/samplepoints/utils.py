"""
Rational sample points meeting every connected component of
{g_1 ≠ 0, ..., g_s ≠ 0}, by open cylindrical decomposition: a projection tower
of irreducible factors, then lifting through the open cells of each level.
"""

import logging
from itertools import combinations

from django.conf import settings
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from arith.exceptions import ContextMismatch
from arith.utils import coefficients_in, evaluate, grevlex_ring, normalize, render, to_rational
from real_roots.exceptions import InternalInvariantError
from univariate.utils import isolate_real_roots, subresultant_lcoeffs
from .exceptions import IdenticallyZeroFiber, UnknownProjection
from .models import ProjectionTower

logger = logging.getLogger(__name__)

METHODS = ('open', 'collins')


def main_variable(p):
    """Index of the highest generator occurring in p; None for constants."""
    for k in range(p.ring.ngens - 1, -1, -1):
        if p.degree(k) > 0:
            return k
    return None


def irreducible_factors(p):
    if not isinstance(p, PolyElement) or p.is_ground:
        return []
    _, factors = p.factor_list()
    return [normalize(f) for f, _ in factors if not f.is_ground]


def _back(value, ring):
    if isinstance(value, PolyElement):
        return value.set_ring(ring)
    return ring(value)


def _open_projection(polys, k):
    # leading coefficients, discriminants and pairwise resultants
    ring = polys[0].ring
    symbols = ring.symbols
    moved = grevlex_ring((symbols[k],) + symbols[:k] + symbols[k + 1:])
    lifted = [p.set_ring(moved) for p in polys]
    result = []
    for p, q in zip(polys, lifted):
        result.append(_back(coefficients_in(p, k)[-1], ring))
        result.append(_back(q.discriminant(), ring))
    for p, q in combinations(lifted, 2):
        result.append(_back(p.resultant(q), ring))
    return result


def _collins_projection(polys, k):
    # every coefficient (leading coefficients of the reducta) and the principal
    # subresultant coefficients of (p, p') and of each pair
    ring = polys[0].ring
    gen = ring.gens[k]
    result = []
    for p in polys:
        result.extend(_back(c, ring) for c in coefficients_in(p, k))
        sequence = subresultant_lcoeffs(p, p.diff(gen), var=k)
        result.extend(_back(s, ring) for s in sequence.coefficients)
    for p, q in combinations(polys, 2):
        if p.degree(k) < q.degree(k):
            p, q = q, p
        result.extend(_back(s, ring) for s in subresultant_lcoeffs(p, q, var=k).coefficients)
    return result


def project_level(polys, var_index, method='open'):
    """
    Projection of ``polys`` eliminating generator ``var_index``.

    Args:
        polys: squarefree polynomials of one ring
        var_index: index of the eliminated generator
        method: 'open' (enough for open cells) or 'collins'

    Returns:
        Distinct squarefree normalized non-constant polynomials free of the
        eliminated generator.
    """
    if method not in METHODS:
        raise UnknownProjection(f"Unknown projection method {method!r}, expected one of {METHODS}")
    polys = [p for p in polys if p.degree(var_index) > 0]
    if not polys:
        return []
    if method == 'open':
        raw = _open_projection(polys, var_index)
    else:
        raw = _collins_projection(polys, var_index)

    projected = []
    for p in raw:
        if not p or p.is_ground:
            continue
        p = normalize(p.sqf_part())
        if p not in projected:
            projected.append(p)
    return projected


def projection_order(gs, ring):
    """
    Generator indices from the bottom level up.

    Variables are eliminated lowest degree first, then lowest total degree
    of the terms containing them, then fewest such terms; ties keep the
    ring order.
    """
    def weight(i):
        degree = max((g.degree(i) for g in gs), default=0)
        terms = [m for g in gs for m in g.itermonoms() if m[i]]
        return degree, sum(sum(m) for m in terms), len(terms)

    eliminated_first = sorted(range(ring.ngens), key=lambda i: (weight(i), -i))
    return tuple(reversed(eliminated_first))


def build_tower(gs, ring, method=None, order=None):
    """Irreducible factors of gs and of their successive projections, by level."""
    if method is None:
        method = getattr(settings, 'RRC_PROJECTION', 'open')
    if method not in METHODS:
        raise UnknownProjection(f"Unknown projection method {method!r}, expected one of {METHODS}")
    if order is None:
        order = projection_order(gs, ring)
    order = tuple(order)
    if sorted(order) != list(range(ring.ngens)):
        raise ValueError(f"{order} is not a permutation of the {ring.ngens} parameters")
    original = ring
    ring = grevlex_ring(tuple(original.symbols[i] for i in order))
    gs = [g.set_ring(ring) for g in gs]
    levels = [[] for _ in range(ring.ngens)]

    def place(p):
        for factor in irreducible_factors(p):
            level = levels[main_variable(factor)]
            if factor not in level:
                level.append(factor)

    for g in gs:
        place(g)
    for k in range(ring.ngens - 1, 0, -1):
        for p in project_level(levels[k], k, method):
            place(p)

    tower = ProjectionTower(ring, tuple(tuple(level) for level in levels), order, method)
    logger.info(
        f"Projection tower ({method}) over {', '.join(map(str, ring.symbols))}: "
        f"{[len(level) for level in levels]} factors per level"
    )
    return tower


def _floor(value):
    return QQ(int(value.numerator) // int(value.denominator))


def simplest_rational(lo=None, hi=None):
    """
    Rational with the least denominator strictly inside (lo, hi), the one of
    least absolute value among those. None stands for an infinite bound.
    """
    lo = None if lo is None else to_rational(lo)
    hi = None if hi is None else to_rational(hi)
    if lo is not None and hi is not None and lo >= hi:
        raise ValueError(f"Empty interval ({lo}, {hi})")
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return QQ.zero
    if hi is not None and hi <= 0:
        return -simplest_rational(-hi, None if lo is None else -lo)

    base = _floor(lo)
    if hi is None or base + 1 < hi:
        return base + 1
    # Stern-Brocot descent: lo and hi share their integer part
    upper = None if lo == base else 1 / (lo - base)
    return base + 1 / simplest_rational(1 / (hi - base), upper)


def _gaps(roots):
    """Open intervals between consecutive isolated roots, unbounded at both ends."""
    if not roots:
        return [(None, None)]
    gaps = [(None, roots[0].lower)]
    for left, right in zip(roots, roots[1:]):
        if left.upper == right.lower and (left.exact or right.exact):
            raise InternalInvariantError(f"Isolating intervals touch at the root {left.upper}")
        gaps.append((left.upper, right.lower))
    gaps.append((roots[-1].upper, None))
    return gaps


def _candidates(lo, hi, count):
    if lo is not None and lo == hi:
        # two open isolating intervals share an endpoint, which is no root
        return [lo]
    candidates = [simplest_rational(lo, hi)]
    while len(candidates) < count:
        candidates.append(simplest_rational(candidates[-1], hi))
    return candidates


def _fiber(p, base, k, target):
    """p(β, y_k) in the univariate ring ``target``."""
    terms = {}
    for monom, coeff in p.iterterms():
        value = QQ.convert(coeff)
        for c, e in zip(base, monom[:k]):
            value *= c**e
        key = (monom[k],)
        terms[key] = terms.get(key, QQ.zero) + value
    return target.from_dict({m: c for m, c in terms.items() if c})


def lift(tower):
    """
    One rational point in every open cell of the tower, in lexicographic
    order of the tower levels. Points come back in the caller's coordinates.
    """
    attempts = getattr(settings, 'RRC_LAS_VEGAS_ATTEMPTS', 20)
    rings = [grevlex_ring((symbol,)) for symbol in tower.ring.symbols]

    def roots_over(k, base):
        target = rings[k]
        product = target.one
        for p in tower.polys_at(k):
            fiber = _fiber(p, base, k, target)
            if not fiber:
                raise IdenticallyZeroFiber(f"{render(p)} vanishes identically over {base}", base)
            product *= fiber
        return isolate_real_roots(product)

    def descend(k, base):
        if k == tower.t:
            return [tower.restore(base)]
        points = []
        for lo, hi in _gaps(roots_over(k, base)):
            for c in _candidates(lo, hi, attempts):
                try:
                    points.extend(descend(k + 1, base + (c,)))
                    break
                except IdenticallyZeroFiber as e:
                    logger.warning(f"Re-perturbing {rings[k].symbols[0]} = {c}: {e}")
            else:
                raise IdenticallyZeroFiber(f"No base point over {base} avoids a vanishing fiber", base)
        return points

    return descend(0, ())


def sample_points(gs, ring=None, method=None):
    """
    Rational points meeting every connected component of the set where no
    g in gs vanishes.

    Constants are ignored; without non-constant input the origin is returned.
    """
    if ring is None:
        ring = next((g.ring for g in gs if isinstance(g, PolyElement)), None)
    if ring is None:
        return [()]
    gs = [g for g in gs if isinstance(g, PolyElement) and not g.is_ground]
    for g in gs:
        if g.ring != ring:
            raise ContextMismatch(f"{render(g)} is not a polynomial of {ring}")
    if not gs:
        return [(QQ.zero,) * ring.ngens]

    tower = build_tower(gs, ring, method)
    points = lift(tower)
    for point in points:
        for g in gs:
            if not evaluate(g, point):
                raise InternalInvariantError(f"Sample point {point} lies on {render(g)} = 0")
    logger.info(f"{len(points)} sample points for {len(gs)} polynomials in {ring.ngens} parameters")
    return points
