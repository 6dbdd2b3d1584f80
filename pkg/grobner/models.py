"""Parametric systems, Gröbner bases and quotient bases. Nothing here is database-backed."""

from dataclasses import dataclass
from functools import cached_property

from sympy.polys.orderings import grevlex

from arith.models import VarContext
from arith.utils import specialize, total_degree
from .exceptions import InvalidSystem


@dataclass(frozen=True)
class ParametricSystem:
    """Equations f_1..f_m of ℚ[y][x] sharing one context."""

    context: VarContext
    polys: tuple

    def __post_init__(self):
        object.__setattr__(self, 'polys', tuple(self.polys))
        if not self.polys:
            raise InvalidSystem("A system needs at least one polynomial")
        for f in self.polys:
            if not f:
                raise InvalidSystem("Polynomials of a system must be non-zero")
            if f.ring != self.context.ring:
                raise InvalidSystem(f"{f} does not belong to the ring of the system")

    @property
    def m(self):
        return len(self.polys)

    @property
    def n(self):
        return self.context.n

    @property
    def t(self):
        return self.context.t

    @cached_property
    def d(self):
        return max(total_degree(f) for f in self.polys)

    def specialize(self, eta):
        """f(η, ·); polynomials that vanish identically are dropped."""
        specialized = self.context.specialized()
        polys = [specialize(f, eta, self.context) for f in self.polys]
        polys = [f for f in polys if f]
        if not polys:
            raise InvalidSystem(f"Every polynomial vanishes at {tuple(str(c) for c in eta)}")
        return ParametricSystem(specialized, tuple(polys))

    def reordered(self, x_order):
        context = self.context.reordered(x_order)
        if context is self.context:
            return self
        return ParametricSystem(context, tuple(f.set_ring(context.ring) for f in self.polys))


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: object
    reduced: bool = True
    context: VarContext | None = None

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def ring(self):
        return self.generators[0].ring


@dataclass(frozen=True)
class QuotientBasis:
    """Monomials b_1..b_δ in x outside the staircase, by total degree then grevlex; b_1 = 1."""

    context: VarContext
    monomials: tuple

    def __post_init__(self):
        object.__setattr__(self, 'monomials', tuple(sorted(self.monomials, key=grevlex)))

    @property
    def delta(self):
        return len(self.monomials)

    @cached_property
    def index(self):
        return {monomial: i for i, monomial in enumerate(self.monomials)}

    @property
    def degrees(self):
        return tuple(sum(monomial) for monomial in self.monomials)

    def __contains__(self, monomial):
        return monomial in self.index

    def labels(self):
        """Monomials as text, e.g. ('1', 'x2', 'x1', 'x2^2')."""
        names = self.context.variables
        labels = []
        for monomial in self.monomials:
            factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monomial) if e]
            labels.append('*'.join(factors) or '1')
        return tuple(labels)


@dataclass(frozen=True)
class EliminatingPoly:
    """Squarefree w_a in ℚ[u, y] vanishing on the image of u = Σ a_i x_i."""

    poly: object
    linear_form: tuple
    degree: int
    context: VarContext
