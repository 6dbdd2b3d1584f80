"""Carriers for the univariate machinery: subresultant sequences and isolating intervals."""

from dataclasses import dataclass

from sympy.polys.rings import PolyElement

from arith.utils import evaluate, sign


@dataclass(frozen=True)
class SubresultantCoeffs:
    """Principal subresultant coefficients s_0..s_D of a pair (p, q).

    s_0 is the leading coefficient of p and s_D the signed resultant. The
    coefficients are rationals (kind 'rational') or parameter polynomials
    (kind 'polynomial').
    """

    coefficients: tuple
    degree: int
    kind: str

    def __post_init__(self):
        if len(self.coefficients) != self.degree + 1:
            raise ValueError(
                f"Expected {self.degree + 1} coefficients, got {len(self.coefficients)}"
            )

    def values_at(self, point):
        return tuple(
            evaluate(c, point) if isinstance(c, PolyElement) else c
            for c in self.coefficients
        )

    def signs_at(self, point):
        return tuple(sign(value) for value in self.values_at(point))


@dataclass(frozen=True)
class IsolatingInterval:
    """Interval holding exactly one real root; open unless exact (lower == upper)."""

    lower: object
    upper: object
    exact: bool = False

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"Empty interval [{self.lower}, {self.upper}]")
        if self.exact != (self.lower == self.upper):
            raise ValueError("Exact flag must match a degenerate interval")
