import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverhom.complexes import SimplicialComplex, betti, cochain_complex, full_simplex, octahedron
from coverhom.covers import (
    Cover,
    all_intersections_acyclic,
    betti01_from_cover,
    connected_components,
    intersection,
    nerve_complex,
    nerve_failure_demo,
)
from coverhom.errors import InvalidInput
from coverhom.fixtures import REFERENCE_M0, REFERENCE_M1, hemisphere_cover, three_edge_cover, two_edges_cover
from coverhom.generators import random_cone_cover, random_cover, random_simplex_cover
from coverhom.qlinalg import rank

from oracles import betti_oracle, dense_rank, pad


def test_intersection_examples():
    cover = three_edge_cover()
    assert intersection(cover, (0,)).simplices == cover.members[0].simplices
    assert intersection(cover, (0, 1)).simplices == frozenset({(0,), (1,)})
    a = SimplicialComplex.from_maximal(4, [(0, 1)])
    b = SimplicialComplex.from_maximal(4, [(2, 3)])
    assert not intersection(Cover.from_members([a, b]), (0, 1)).simplices


def test_intersection_rejects_bad_tuples():
    cover = three_edge_cover()
    with pytest.raises(IndexError):
        intersection(cover, (0, 5))
    with pytest.raises(InvalidInput):
        intersection(cover, (1, 0))


def test_cover_property_is_checked():
    K = full_simplex(2)
    with pytest.raises(InvalidInput, match="cover property"):
        Cover(K, (SimplicialComplex.from_maximal(3, [(0, 1)]),))


def test_components_examples():
    assert connected_components(full_simplex(3)).count == 1
    pts = SimplicialComplex.from_maximal(5, [(i,) for i in range(5)])
    assert connected_components(pts).count == 5
    # poles 4, 5 joined to the equator vertices by meridian edges only
    meridians = [(min(v, p), max(v, p)) for v in range(4) for p in (4, 5)]
    K = SimplicialComplex.from_maximal(6, meridians)
    assert connected_components(K).count == 1


def test_three_edge_nerve_matches_reference_matrices():
    N = nerve_complex(three_edge_cover(), 2)
    assert N.dims == (3, 6, 2)
    d0, d1 = N.complex.differentials
    # the alternating restriction formula gives the first reference matrix up to an overall sign
    assert d0.to_dense() == [[-v for v in row] for row in REFERENCE_M0]
    assert d1.to_dense() == [list(r) for r in REFERENCE_M1]
    assert rank(d0) == 2 and rank(d1) == 2
    assert dense_rank(REFERENCE_M0) == 2 and dense_rank(REFERENCE_M1) == 2
    assert betti01_from_cover(three_edge_cover()) == (1, 2)


def test_nerve_basis_labels_dims():
    N = nerve_complex(three_edge_cover(), 2)
    assert [len(b) for b in N.basis] == list(N.dims)
    assert N.basis[1][0] == ((0, 1), 0)


def test_single_member_nerve():
    K = SimplicialComplex.from_maximal(5, [(0, 1), (3, 4)])
    N = nerve_complex(Cover(K, (K,)), 2)
    assert N.dims == (2, 0, 0)


def test_hemisphere_nerve_and_failure():
    cover = hemisphere_cover()
    assert nerve_complex(cover, 3).dims == (2, 1, 0, 0)
    assert betti01_from_cover(cover) == (1, 0)
    r = nerve_failure_demo(cover)
    assert (r.nerve_h2, r.union_b2) == (0, 1)


def test_segment_analogue():
    r = nerve_failure_demo(two_edges_cover())
    assert (r.nerve_h2, r.union_b2) == (0, 0)


def test_cones_over_an_edge_cover_triangle():
    # Δ_2 as the two cones from vertex 2 over the halves of the subdivided edge 0-1
    K = SimplicialComplex.from_maximal(4, [(0, 2, 3), (1, 2, 3)])
    a = SimplicialComplex.from_maximal(4, [(0, 2, 3)])
    b = SimplicialComplex.from_maximal(4, [(1, 2, 3)])
    assert betti01_from_cover(Cover(K, (a, b))) == (1, 0)


def test_leray_cover_equal_in_all_degrees():
    cover = random_simplex_cover(random.Random(3))
    assert all_intersections_acyclic(cover)
    N = nerve_complex(cover, len(cover.members))
    ub = betti(cochain_complex(cover.ambient))
    n = max(len(ub), len(N.dims))
    assert pad(N.betti(), n) == pad(ub, n)


@given(st.integers(0, 10**6))
def test_nerve_differentials_compose_to_zero(seed):
    cover = random_cover(random.Random(seed))
    N = nerve_complex(cover, 3)
    N.complex.check()


@given(st.integers(0, 10**6))
def test_cone_covers_recover_b0_b1(seed):
    cover = random_cone_cover(random.Random(seed))
    ub = pad(betti_oracle(cover.ambient.simplices), 2)
    assert betti01_from_cover(cover) == tuple(ub)


@given(st.integers(0, 10**6))
def test_nerve_dims_are_component_counts(seed):
    from itertools import combinations

    cover = random_cover(random.Random(seed))
    N = nerve_complex(cover, 2)
    for p, d in enumerate(N.dims):
        total = 0
        for alpha in combinations(range(len(cover.members)), p + 1):
            X = intersection(cover, alpha)
            if X.simplices:
                total += connected_components(X).count
        assert d == total


def test_octahedron_by_triangles_is_leray():
    K = octahedron()
    cover = Cover(K, tuple(SimplicialComplex.from_maximal(6, [t]) for t in K.maximal_simplices()))
    assert all_intersections_acyclic(cover)
    N = nerve_complex(cover, 8)
    assert pad(N.betti(), 3) == [1, 0, 1]
