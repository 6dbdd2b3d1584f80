from real_roots.exceptions import RealRootsError


class InvalidSystem(RealRootsError):
    """The polynomial list is empty, contains zero or mixes rings."""


class NotZeroDimensional(RealRootsError):
    """Some variable has no pure power among the x-leading monomials."""

    exit_code = 2


class EmptyElimination(RealRootsError):
    """The elimination ideal has no generator free of the variables."""


class DegenerateLinearForm(RealRootsError):
    """The linear form does not separate the generic solutions; resample it."""
