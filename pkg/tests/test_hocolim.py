import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverhom.complexes import SimplicialComplex, betti, cellular_cochain_complex, full_simplex
from coverhom.errors import InvalidInput
from coverhom.fixtures import circle_from_arcs, hemisphere_cover, three_edge_cover, two_edges_cover
from coverhom.generators import random_arrangement
from coverhom.hocolim import (
    Arrangement,
    arrangement_betti,
    arrangement_from_members,
    cell_count_bound,
    cell_count_profile,
    hocolim_complex,
)

from oracles import betti_oracle, pad


def test_single_set_is_the_set():
    S = SimplicialComplex.from_maximal(4, [(0, 1), (1, 2), (0, 2), (3,)])
    arr = Arrangement(S, (S,))
    assert arrangement_betti(arr, 1).betti == (2, 1)
    assert arrangement_betti(arr, 0).betti == (2,)


def test_disjoint_triangles():
    tris = [SimplicialComplex.from_maximal(9, [(3 * i, 3 * i + 1, 3 * i + 2)]) for i in range(3)]
    arr = arrangement_from_members(tris)
    assert arrangement_betti(arr, 0).betti == (3,)
    prof = cell_count_profile(arr, 1)
    assert prof == {1: 21, 2: 0, 3: 0}


def test_circle_from_arcs():
    arr = arrangement_from_members(circle_from_arcs())
    assert arrangement_betti(arr, 1).betti == (1, 1)


def test_hemispheres_sphere():
    cover = hemisphere_cover()
    arr = Arrangement(cover.ambient, cover.members)
    assert arrangement_betti(arr, 2).betti == (1, 0, 1)


def test_two_edges_and_three_edges():
    c = two_edges_cover()
    assert arrangement_betti(Arrangement(c.ambient, c.members), 1).betti == (1, 0)
    c = three_edge_cover()
    assert arrangement_betti(Arrangement(c.ambient, c.members), 1).betti == (1, 2)


def test_profile_of_repeated_simplex():
    T = full_simplex(2)
    arr = Arrangement(T, (T,) * 4)
    prof = cell_count_profile(arr, 2)
    assert prof == {j: comb(4, j) * 7 for j in range(1, 5)}
    assert sum(prof.values()) <= cell_count_bound(arr, 2)
    assert arrangement_betti(arr, 2).betti == (1, 0, 0)


def test_negative_ell_rejected():
    T = full_simplex(1)
    with pytest.raises(InvalidInput):
        arrangement_betti(Arrangement(T, (T,)), -1)


def test_sets_must_lie_in_ambient():
    with pytest.raises(InvalidInput):
        Arrangement(full_simplex(1), (full_simplex(2),))


@given(st.integers(0, 10**6), st.sampled_from([0, 1, 2]))
def test_boundary_squares_to_zero(seed, ell):
    arr = random_arrangement(random.Random(seed))
    hocolim_complex(arr, ell)  # validation checks ∂∂ = 0 and the incidences


@given(st.integers(0, 10**6), st.sampled_from([0, 1, 2]))
def test_truncated_hocolim_gives_union_betti(seed, ell):
    arr = random_arrangement(random.Random(seed))
    r = arrangement_betti(arr, ell)
    assert list(r.betti) == pad(betti_oracle(arr.union().simplices), ell + 1)
    assert r.cell_count <= r.bound


@given(st.integers(0, 10**6))
def test_untruncated_euler_characteristic(seed):
    arr = random_arrangement(random.Random(seed), max_sets=3)
    K = hocolim_complex(arr, arr.n)
    chi = sum((-1) ** d for _, d in K.cells)
    expected = sum((-1) ** i * b for i, b in enumerate(betti_oracle(arr.union().simplices)))
    assert chi == expected
    assert betti(cellular_cochain_complex(K))[:1] == betti_oracle(arr.union().simplices)[:1]


@given(st.integers(0, 10**6))
def test_profile_monotone_in_ell(seed):
    arr = random_arrangement(random.Random(seed))
    counts = [sum(cell_count_profile(arr, ell).values()) for ell in range(4)]
    assert counts == sorted(counts)
