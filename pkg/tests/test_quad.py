import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverhom.errors import InvalidInput, Unsupported
from coverhom.generators import random_form
from coverhom.quad import (
    Pencil,
    QuadraticForm,
    euler_char_intersection,
    euler_char_union,
    homotopy_sphere_dim,
    icosphere,
    index,
    index_by_signature,
    index_by_sturm,
    inertia,
    mesh_betti_on_sphere,
    omega_stratify,
    sphere_euler,
)
from coverhom.realroots import rational_between

from oracles import dense_rank, symmetric_eigen_signs_bruteforce

D = QuadraticForm.diagonal
Q1 = QuadraticForm.identity(3).scale(-1)
Q2 = D([1, 2, 3])


def chi(b):
    return sum((-1) ** i * v for i, v in enumerate(b))


def test_diagonal_indices():
    assert [index(D(d)) for d in ([1, 2, 3], [1, 2, -3], [1, -2, -3])] == [0, 1, 2]
    for k in range(5):
        assert index(QuadraticForm.identity(k + 1).scale(-1)) == k + 1


def test_homotopy_dims():
    assert homotopy_sphere_dim(D([1, 2, 3])) == 2
    assert homotopy_sphere_dim(D([1, 2, -3])) == 1
    assert homotopy_sphere_dim(D([1, -2, -3])) == 0
    assert homotopy_sphere_dim(Q1) == "empty"
    assert [sphere_euler(d) for d in (0, 1, 2, "empty")] == [2, 0, 2, 0]


def test_invalid_forms():
    with pytest.raises(InvalidInput, match="symmetric"):
        QuadraticForm(((1, 2), (3, 4)))
    with pytest.raises(InvalidInput):
        QuadraticForm(((1.5,),))
    with pytest.raises(Unsupported):
        omega_stratify([Q1, Q2, Q2])
    with pytest.raises(Unsupported):
        euler_char_union([Q1, Q2, Q2])
    with pytest.raises(Unsupported):
        mesh_betti_on_sphere([(QuadraticForm.identity(4), ">=0")])


forms = st.builds(
    lambda seed, size, drop: random_form(random.Random(seed), size, rank_drop=drop),
    st.integers(0, 10**6), st.integers(1, 6), st.booleans(),
)


@given(forms)
def test_index_complement_identity(Q):
    nullity = Q.size - dense_rank([list(r) for r in Q.matrix])
    assert index(Q) + index(-Q) + nullity == Q.k + 1


@given(forms)
def test_dual_routes_and_oracle_agree(Q):
    assert index_by_signature(Q) == index_by_sturm(Q)
    assert inertia(Q) == symmetric_eigen_signs_bruteforce([list(r) for r in Q.matrix])


@given(forms, st.fractions(Fraction(1, 7), 9, max_denominator=7))
def test_positive_scaling_invariance(Q, c):
    assert index(Q.scale(c)) == index(Q)


def test_example_strata():
    strat = omega_stratify([Q1, Q2])
    assert strat.index_values() == [0, 1, 2, 3]
    kinds = [s.kind for s in strat.strata]
    assert kinds == ["closed", "half-open", "half-open", "half-open"]
    assert [b.value for b in strat.boundary_points] == [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)]
    assert sum(s.length() for s in strat.strata) == pytest.approx(1.0)
    assert euler_char_union([Q1, Q2]) == 2


def test_single_form_strata():
    strat = omega_stratify([D([1, 2, -3])])
    (s,) = strat.strata
    assert s.kind == "point" and s.index == 2
    assert euler_char_union([D([1, 2, -3])]) == 2


def test_equal_forms_single_stratum():
    strat = omega_stratify([Q2, Q2])
    assert len(strat.strata) == 1 and strat.strata[0].kind == "closed"


def test_euler_examples():
    for k in range(5):
        m = QuadraticForm.identity(k + 1).scale(-1)
        assert euler_char_union([m]) == 1 + (-1) ** k
        assert euler_char_intersection([m]) == euler_char_union([m])
        assert euler_char_intersection([m, m]) == 1 + (-1) ** k
    Q = D([1, 2, -3])
    assert euler_char_intersection([-Q, Q]) == 0


def test_zero_set_against_mesh():
    Q = D([1, 2, -3])
    ge = chi(mesh_betti_on_sphere([(Q, ">=0")], depth=4))
    le = chi(mesh_betti_on_sphere([(Q, "<=0")], depth=4))
    # the two closed halves cover S^2 and meet in {Q = 0}
    assert ge + le - 2 == euler_char_intersection([-Q, Q]) == 0


def test_single_form_union_against_mesh():
    Q = D([1, 2, -3])
    assert chi(mesh_betti_on_sphere([(Q, "<=0")], depth=4)) == euler_char_union([Q])


def test_diagonal_mesh_betti():
    got = [mesh_betti_on_sphere([(D(d), ">=0")], depth=4) for d in ([1, 2, 3], [1, 2, -3], [1, -2, -3])]
    assert got == [(1, 0, 1), (1, 1, 0), (2, 0, 0)]


def test_icosphere_counts():
    for depth in range(3):
        v, t = icosphere(depth)
        assert len(t) == 20 * 4 ** depth
        assert len(v) - 3 * len(t) // 2 + len(t) == 2


def test_two_form_union_against_mesh():
    # the mesh is an approximation, so a rare under-resolved pair at depth 4 is tolerated
    rng = random.Random(7)
    agree = 0
    cases = 8
    for _ in range(cases):
        A, B = random_form(rng, 3, -6, 6), random_form(rng, 3, -6, 6)
        m = (chi(mesh_betti_on_sphere([(A, "<=0")]))
             + chi(mesh_betti_on_sphere([(B, "<=0")]))
             - chi(mesh_betti_on_sphere([(A, "<=0"), (B, "<=0")])))
        agree += m == euler_char_union([A, B])
    assert agree >= cases - 1


@given(st.integers(0, 10**6), st.integers(1, 5))
def test_single_form_cross_consistency(seed, k):
    Q = random_form(random.Random(seed), k + 1, rank_drop=seed % 3 == 0)
    j = index(-Q)
    expected = sphere_euler(k - j) if j <= k else 0
    assert euler_char_union([Q], k) == expected


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_stratification_invariants(seed, k):
    rng = random.Random(seed)
    A = random_form(rng, k + 1, rank_drop=rng.random() < 0.3)
    B = random_form(rng, k + 1, rank_drop=rng.random() < 0.3)
    strat = omega_stratify([A, B])
    pencil = Pencil.build(A, B)
    assert sum(s.length() for s in strat.strata) == pytest.approx(1.0)
    assert float(strat.strata[0].lo) == 0 and float(strat.strata[-1].hi) == 1
    for s, t in zip(strat.strata, strat.strata[1:]):
        assert s.index != t.index
        # the index only jumps at a root of the critical polynomial
        p = s.hi if not s.hi_closed else t.lo
        assert p.sign_of(pencil.critical_polynomial) == 0
    for s in strat.strata:
        if s.kind != "point":
            m = rational_between(s.lo, s.hi)
            assert index(pencil.form_at(m)) == s.index
    assert euler_char_union([A, B]) == euler_char_union([B, A])
