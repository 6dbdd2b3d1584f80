"""Base error shared by every app; exit_code is what the CLI returns."""


class RealRootsError(Exception):
    """Base class for all classification errors."""

    exit_code = 1


class InternalInvariantError(RealRootsError):
    """A computed object broke one of its own invariants."""
