from real_roots.exceptions import RealRootsError


class DegreeOrderError(RealRootsError):
    """deg(p) < deg(q) in the main variable, or q is zero."""


class LeadingZeroError(RealRootsError):
    """A sign sequence starts with zero."""


class NotUnivariate(RealRootsError):
    """Root isolation needs a polynomial ring with a single generator."""
