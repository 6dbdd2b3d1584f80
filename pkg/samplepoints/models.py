from dataclasses import dataclass


@dataclass(frozen=True)
class ProjectionTower:
    """
    Irreducible projection factors sorted by level.

    ``ring`` lists the parameters bottom level first: level k is the
    generator ``order[k]`` of the caller's ring. ``levels[k]`` holds the
    factors whose highest generator in ``ring`` is the k-th; every factor is
    primitive with a positive leading coefficient.
    """

    ring: object
    levels: tuple
    order: tuple
    method: str = 'open'

    @property
    def t(self):
        return self.ring.ngens

    def polys_at(self, k):
        return self.levels[k]

    def point_bound(self):
        """∏ over levels of (1 + Σ degrees in the level variable)."""
        bound = 1
        for k, level in enumerate(self.levels):
            bound *= 1 + sum(p.degree(k) for p in level)
        return bound

    def restore(self, point):
        """Coordinates of a tower point in the caller's generator order."""
        original = [None] * len(point)
        for k, index in enumerate(self.order):
            original[index] = point[k]
        return tuple(original)
