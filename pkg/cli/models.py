"""Run configuration of the rrc command. Nothing here is database-backed."""

from dataclasses import dataclass

from django.conf import settings

from classify.exceptions import UnknownMode
from classify.utils import FAST_MODES, MODES


@dataclass(frozen=True)
class JobConfig:
    """
    One invocation of ``rrc``.

    ``json_path`` is where the JSON result goes (None: no file); ``lam``
    switches the matrix to the evaluation and interpolation path; ``prime``
    is the modulus of the minor probe.
    """

    input_path: str
    mode: str = 'hermite-full'
    seed: int | None = None
    x_order: tuple | None = None
    output: str = 'text'
    json_path: str | None = None
    lam: int | None = None
    prime: int | None = None
    fast_mode: str | None = None
    print_matrix: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise UnknownMode(f"Unknown mode {self.mode!r}, expected one of {MODES}")
        if self.fast_mode is not None and self.fast_mode not in FAST_MODES:
            raise UnknownMode(f"Unknown fast mode {self.fast_mode!r}, expected one of {FAST_MODES}")
        if self.output not in ('text', 'json'):
            raise UnknownMode(f"Unknown output format {self.output!r}")
        if self.seed is None:
            object.__setattr__(self, 'seed', getattr(settings, 'RRC_DEFAULT_SEED', 20240601))
        if self.x_order is not None:
            object.__setattr__(self, 'x_order', tuple(self.x_order))
