from real_roots.exceptions import RealRootsError


class AssumptionCViolated(RealRootsError):
    """Some x-leading coefficient of the Gröbner basis depends on the parameters."""


class OnBadLocus(RealRootsError):
    """The parameter point lies on w_∞ = 0 or cancels a denominator of the matrix."""

    def __init__(self, message, point=None):
        self.point = point
        super().__init__(message)
