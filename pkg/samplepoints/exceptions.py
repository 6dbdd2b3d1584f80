from real_roots.exceptions import RealRootsError


class UnknownProjection(RealRootsError):
    """Projection method other than 'open' or 'collins'."""


class IdenticallyZeroFiber(RealRootsError):
    """A tower polynomial vanishes identically over a base point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
