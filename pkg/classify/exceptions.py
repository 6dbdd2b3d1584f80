from real_roots.exceptions import RealRootsError


class Disagreement(RealRootsError):
    """The Hermite and Sturm root counts differ at a parameter point."""

    def __init__(self, message, point=None, hermite=None, sturm=None):
        self.point = point
        self.hermite = hermite
        self.sturm = sturm
        super().__init__(message)


class UnknownMode(RealRootsError):
    """The requested mode or fast-mode switch is not one of the supported values."""
