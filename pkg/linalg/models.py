"""Minor requests for matrices with parameter entries."""

from dataclasses import dataclass

from .exceptions import InvalidMinorRequest


@dataclass(frozen=True)
class MinorRequest:
    rows: tuple
    cols: tuple
    degree_bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, 'rows', tuple(self.rows))
        object.__setattr__(self, 'cols', tuple(self.cols))
        if len(self.rows) != len(self.cols):
            raise InvalidMinorRequest(f"{len(self.rows)} rows but {len(self.cols)} columns")
        for indices in (self.rows, self.cols):
            if any(b <= a for a, b in zip(indices, indices[1:])) or any(i < 0 for i in indices):
                raise InvalidMinorRequest(f"Indices {indices} must be non-negative and strictly increasing")

    @classmethod
    def leading(cls, k, degree_bound=None):
        return cls(tuple(range(k)), tuple(range(k)), degree_bound)

    @property
    def size(self):
        return len(self.rows)

    def check_bounds(self, delta):
        if any(i >= delta for i in self.rows + self.cols):
            raise InvalidMinorRequest(f"Indices out of range for a {delta}x{delta} matrix")
