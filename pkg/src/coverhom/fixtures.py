"""Small named inputs used by the demos, the CLI fixtures and the tests."""

from __future__ import annotations

from .complexes import SimplicialComplex, octahedron, octahedron_hemispheres
from .covers import Cover

# The theta graph: three arcs joining vertex 0 to vertex 1 through midpoints 2, 3, 4.
THREE_EDGE_ARCS = (((0, 2), (1, 2)), ((0, 3), (1, 3)), ((0, 4), (1, 4)))

# Reference restriction matrices for the three-arc cover.
REFERENCE_M0 = (
    (1, -1, 0),
    (1, -1, 0),
    (1, 0, -1),
    (1, 0, -1),
    (0, 1, -1),
    (0, 1, -1),
)
REFERENCE_M1 = (
    (1, 0, -1, 0, 1, 0),
    (0, 1, 0, -1, 0, 1),
)


def three_edge_cover() -> Cover:
    """Three contractible arcs whose pairwise and triple intersections are two points."""
    members = [SimplicialComplex.from_maximal(5, arc) for arc in THREE_EDGE_ARCS]
    return Cover.from_members(members)


def hemisphere_cover() -> Cover:
    """Octahedral sphere covered by its two closed hemispheres."""
    return Cover(octahedron(), octahedron_hemispheres())


def two_edges_cover() -> Cover:
    """Segment as two edges sharing a vertex: the 1-dimensional analogue of the hemispheres."""
    a = SimplicialComplex.from_maximal(3, [(0, 1)])
    b = SimplicialComplex.from_maximal(3, [(1, 2)])
    return Cover.from_members([a, b])


def circle_from_arcs() -> list:
    """Hexagon split into three 2-edge arcs; consecutive arcs share one vertex."""
    arcs = [[(0, 1), (1, 2)], [(2, 3), (3, 4)], [(0, 5), (4, 5)]]
    return [SimplicialComplex.from_maximal(6, a) for a in arcs]
