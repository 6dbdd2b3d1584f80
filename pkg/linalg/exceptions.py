from real_roots.exceptions import RealRootsError


class NonSquareMatrix(RealRootsError):
    """A determinant or signature was requested for a rectangular matrix."""


class NotSymmetric(RealRootsError):
    """The matrix differs from its transpose."""


class InvalidMinorRequest(RealRootsError):
    """Row or column indices are unsorted, repeated, out of range or of different lengths."""


class NonPolynomialEntries(RealRootsError):
    """Minors by interpolation need entries without parameter denominators."""


class IdenticallyZeroDeterminant(RealRootsError):
    """det(H) vanishes identically; the ideal is not radical."""

    exit_code = 3


class DegenerateMinor(RealRootsError):
    """A leading principal minor stays identically zero after every congruence attempt."""


class SingularTransform(RealRootsError):
    """The congruence matrix is not invertible."""


class BadReduction(RealRootsError):
    """The reduction modulo p hit a vanishing denominator or determinant."""
