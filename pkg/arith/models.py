"""
Domain types for exact polynomial arithmetic.

Polynomials are sympy ``PolyElement`` values and rational functions are
``FracElement`` values; ``VarContext`` owns the rings they live in. Nothing
here is database-backed.
"""

import keyword
import re
from dataclasses import dataclass, replace
from functools import cached_property

from sympy.polys.domains import QQ, FractionField
from sympy.polys.fields import FracField
from sympy.polys.orderings import MonomialOrder, grevlex
from sympy.polys.rings import PolyRing

from .exceptions import ContextError

NAME_PATTERN = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')


class BlockOrder(MonomialOrder):
    """grevlex on the first ``split`` exponents, ties broken by grevlex on the rest.

    With the variables placed first this is grevlex(x) > grevlex(y).
    """

    alias = 'block'
    is_global = True
    is_default = False

    def __init__(self, split):
        self.split = split

    def __call__(self, monomial):
        return (grevlex(monomial[:self.split]), grevlex(monomial[self.split:]))

    def __repr__(self):
        return f"BlockOrder({self.split})"

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and other.split == self.split

    def __hash__(self):
        return hash((BlockOrder, self.split))


@dataclass(frozen=True)
class VarContext:
    """Parameter names y, variable names x and an optional auxiliary name u.

    The main ring orders its generators as (x..., u, y...) under the block
    order grevlex(x) > grevlex(u, y).
    """

    params: tuple
    variables: tuple
    aux: str | None = None

    def __post_init__(self):
        object.__setattr__(self, 'params', tuple(self.params))
        object.__setattr__(self, 'variables', tuple(self.variables))
        names = self.names
        if not self.variables:
            raise ContextError("At least one variable is required")
        if len(set(names)) != len(names):
            raise ContextError(f"Names must be distinct: {', '.join(names)}")
        for name in names:
            if not NAME_PATTERN.match(name) or keyword.iskeyword(name):
                raise ContextError(f"Invalid name: {name!r}")

    @property
    def names(self):
        aux = (self.aux,) if self.aux else ()
        return self.variables + aux + self.params

    @property
    def n(self):
        return len(self.variables)

    @property
    def t(self):
        return len(self.params)

    @cached_property
    def ring(self):
        return PolyRing(self.names, QQ, BlockOrder(self.n))

    @cached_property
    def param_ring(self):
        if not self.params:
            return None
        return PolyRing(self.params, QQ, grevlex)

    @cached_property
    def param_field(self):
        if not self.params:
            return None
        return FracField(self.params, QQ, grevlex)

    @cached_property
    def coefficient_domain(self):
        """ℚ(y), or ℚ itself once every parameter is specialized."""
        if not self.params:
            return QQ
        return FractionField(self.param_field)

    @cached_property
    def coefficient_ring(self):
        """ℚ(y)[x] under grevlex(x), where normal forms are computed."""
        return PolyRing(self.variables, self.coefficient_domain, grevlex)

    @cached_property
    def elimination_ring(self):
        """ℚ[u, y] under grevlex, home of eliminating polynomials."""
        if not self.aux:
            return None
        return PolyRing((self.aux,) + self.params, QQ, grevlex)

    @property
    def param_gens(self):
        offset = len(self.names) - self.t
        return self.ring.gens[offset:]

    def specialized(self):
        """Same variables, parameters substituted away."""
        return replace(self, params=())

    def with_aux(self, name='u'):
        candidate, suffix = name, 0
        while candidate in self.variables + self.params:
            suffix += 1
            candidate = f"{name}{suffix}"
        return replace(self, aux=candidate)

    def reordered(self, x_order):
        """Permute the variables; grevlex(x) then uses the new order."""
        if x_order is None:
            return self
        x_order = tuple(x_order)
        if sorted(x_order) != sorted(self.variables):
            raise ContextError(
                f"x-order {', '.join(x_order)} is not a permutation of {', '.join(self.variables)}"
            )
        return replace(self, variables=x_order)
