"""
Parametric Hermite matrices and the multiplication matrices they are built from.

Entries are elements of the coefficient domain of the context: rational
functions of ℚ(y), or rationals once every parameter has been specialized.
"""

from dataclasses import dataclass

from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix

from arith.utils import render, total_degree
from real_roots.exceptions import InternalInvariantError


@dataclass(frozen=True)
class MultMatrix:
    """Matrix of the multiplication by an x-monomial; row j holds NF(operand·b_j) over the basis."""

    operand: tuple
    matrix: DomainMatrix

    def trace(self):
        rows = self.matrix.to_list()
        return sum((rows[j][j] for j in range(len(rows))), self.matrix.domain.zero)


@dataclass(frozen=True)
class HermiteMatrix:
    """
    δ×δ symmetric matrix with entries trace(L_{b_i·b_j}).

    ``scaling`` records the factors c_i after denominators were removed and
    ``transform`` the matrix A after a congruence AᵀHA; both are None for the
    matrix of the quotient basis itself.
    """

    basis: object
    entries: tuple
    w_infinity: object
    assumption_c_holds: bool
    assumption_e_holds: bool
    context: object
    scaling: tuple | None = None
    transform: tuple | None = None

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, 'entries', entries)
        delta = len(entries)
        for i, row in enumerate(entries):
            if len(row) != delta:
                raise InternalInvariantError(f"Row {i} has {len(row)} entries, expected {delta}")
            for j in range(i):
                if row[j] != entries[j][i]:
                    raise InternalInvariantError(f"Hermite matrix is not symmetric at ({i}, {j})")

    @property
    def delta(self):
        return len(self.entries)

    @property
    def domain(self):
        return self.context.coefficient_domain

    def domain_matrix(self):
        return DomainMatrix([list(row) for row in self.entries], (self.delta, self.delta), self.domain)

    @property
    def is_polynomial(self):
        """Every entry has a constant denominator."""
        return all(
            not isinstance(entry, FracElement) or entry.denom.is_ground
            for row in self.entries for entry in row
        )

    def polynomial_entries(self):
        """Entries as polynomials of ℚ[y] (rationals when t = 0)."""
        if not self.is_polynomial:
            raise InternalInvariantError("Matrix entries have non-constant denominators")
        result = []
        for row in self.entries:
            converted = []
            for entry in row:
                if isinstance(entry, FracElement):
                    converted.append(entry.numer.quo_ground(entry.denom.LC))
                else:
                    converted.append(entry)
            result.append(tuple(converted))
        return tuple(result)

    def degree_pattern(self):
        return tuple(
            tuple(total_degree(entry) if hasattr(entry, 'itermonoms') else (0 if entry else -1) for entry in row)
            for row in self.polynomial_entries()
        )

    def render(self):
        return [[render(entry) for entry in row] for row in self.entries]

    def as_text(self):
        return '\n'.join('[' + ', '.join(row) + ']' for row in self.render())
