"""Small named complexes, arrangements and families used by tests and `verify`."""

from __future__ import annotations

from fractions import Fraction

from .arrangement import Arrangement
from .complex_core import SimplicialComplex
from .fiber_census import Slab, SlabFamily

RP2_TRIANGLES = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]


def projective_plane() -> SimplicialComplex:
    """Minimal 6-vertex triangulation of the real projective plane."""
    return SimplicialComplex.from_maximal(6, RP2_TRIANGLES)


def cycle(k: int) -> SimplicialComplex:
    return SimplicialComplex.from_maximal(k, [(i, (i + 1) % k) for i in range(k)])


def three_arc_circle() -> Arrangement:
    """9-cycle covered by three arcs; consecutive arcs share one edge and no
    point lies in all three."""
    def arc(vs):
        return [(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:])]

    return Arrangement.from_simplicial(
        cycle(9),
        [arc([0, 1, 2, 3, 4]), arc([3, 4, 5, 6, 7]), arc([6, 7, 8, 0, 1])],
        ["arc1", "arc2", "arc3"],
    )


def all_equal_circle(n: int = 3) -> Arrangement:
    """n copies of the boundary of a triangle."""
    c = cycle(3)
    return Arrangement.from_simplicial(c, [c.maximal_simplices()] * n)


def overlapping_intervals() -> Arrangement:
    """A_1 = [0,2], A_2 = [1,3] on the segment [-1,4] with vertices at -1..4."""
    seg = SimplicialComplex.from_maximal(6, [(j, j + 1) for j in range(5)])
    # vertex j sits at coordinate j - 1
    return Arrangement.from_simplicial(seg, [[(1, 2), (2, 3)], [(2, 3), (3, 4)]])


def two_slab_family() -> SlabFamily:
    """A_1: 0 <= x <= 2 over z in [0,4];  A_2: z-1 <= x <= z+1 over z in [1,3]."""
    F = Fraction
    return SlabFamily((
        Slab(F(0), F(0), F(0), F(2), F(0), F(4)),
        Slab(F(1), F(-1), F(1), F(1), F(1), F(3)),
    ))


ARRANGEMENTS = {
    "three-arc-circle": three_arc_circle,
    "all-equal-circle": all_equal_circle,
    "overlapping-intervals": overlapping_intervals,
}
