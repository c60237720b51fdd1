from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coverhom.errors import InvalidInput
from coverhom.quad import QuadraticForm, charpoly, omega_stratify, Pencil
from coverhom.realroots import (
    RationalPolynomial as P,
    RealAlgebraic,
    count_roots,
    isolate_roots,
    rational_between,
    real_rooted_sign_counts,
    sturm_sequence,
)

X = P.x()


def test_sturm_examples():
    assert sturm_sequence(X) == [X, P.constant(1)]
    assert sturm_sequence(X * X - 2) == [X * X - 2, 2 * X, P.constant(2)]
    with pytest.raises(InvalidInput):
        sturm_sequence(P())


def test_sturm_chain_counts_negative_eigenvalue():
    f = charpoly([[1, 0, 0], [0, 2, 0], [0, 0, -3]])
    assert f == P.from_roots([1, 2, -3])
    assert count_roots(f, None, 0) == 1
    chain = sturm_sequence(f)
    assert f.degree == 3 and len(chain) == 4


def test_count_examples():
    assert count_roots(X * X - 2, 0, 2) == 1
    assert count_roots(P.from_roots([1, 2, 3]), 0, 4) == 3
    assert count_roots(P.from_roots([1, 2, 3])) == 3


def test_count_half_open_convention():
    p = P.from_roots([0, 1])
    assert count_roots(p, 0, 1) == 1
    assert count_roots(p, -1, 0) == 0
    assert count_roots(p, 0, 2) == 2
    with pytest.raises(InvalidInput):
        count_roots(p, 1, 1)


def test_isolation_examples():
    (r,) = isolate_roots(X * X - 2, 0, 2)
    assert 0 <= r.lo and r.lo * r.lo < 2 < r.hi * r.hi
    assert not r.is_exact
    (one,) = isolate_roots((X - 1) ** 2, 0, 2)
    assert one.is_exact and one.value == 1


def test_rational_roots_collapse():
    # charpoly of a non-diagonal matrix with eigenvalues 1/2, 2, 3
    M = [[Fraction(5, 4), Fraction(3, 4), 0], [Fraction(3, 4), Fraction(5, 4), 0], [0, 0, 3]]
    roots = isolate_roots(charpoly(M))
    assert [r.value for r in roots] == [Fraction(1, 2), 2, 3]


def test_two_form_determinant_matches_boundaries():
    Q1 = QuadraticForm.identity(3).scale(-1)
    Q2 = QuadraticForm.diagonal([1, 2, 3])
    crit = Pencil.build(Q1, Q2).critical_polynomial
    strat = omega_stratify([Q1, Q2])
    assert count_roots(crit, 0, 1) == len(strat.boundary_points) == 3


def test_real_algebraic_ops():
    (r,) = isolate_roots(X * X - 2, 0, 2)
    assert r.compare(Fraction(7, 5)) == 1 and r.compare(Fraction(3, 2)) == -1
    assert r.sign_of(X * X - 2) == 0
    assert r.sign_of(X - 1) == 1 and r.sign_of(X - 2) == -1
    s = RealAlgebraic.rational(Fraction(3, 2))
    m = rational_between(r, s)
    assert r.compare(m) < 0 and m < Fraction(3, 2)
    assert abs(float(r) - 2 ** 0.5) < 0.1


def test_descartes_sign_counts():
    # x^3 - 2x^2 - 5x + 6 = (x-1)(x+2)(x-3)
    assert real_rooted_sign_counts([6, -5, -2, 1]) == (2, 1, 0)
    assert real_rooted_sign_counts([0, 0, 1]) == (0, 0, 2)


roots_st = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=5)


@given(roots_st, st.integers(1, 3))
def test_count_equals_isolation_and_squarefree(roots, mult):
    p = P.from_roots(roots) * P.from_roots(roots[:1]) ** (mult - 1)
    a, b = Fraction(-3), Fraction(4)
    n = count_roots(p, a, b)
    iso = isolate_roots(p, a, b)
    assert n == len(iso) == count_roots(p.squarefree(), a, b)
    expected = sorted({r for r in roots if a <= r < b})
    assert [z.value for z in iso] == expected


@given(roots_st, st.integers(0, 6))
def test_refinement_keeps_roots(roots, steps):
    p = P.from_roots(roots) * (X * X - 3)
    iso = isolate_roots(p, exact_rationals=False)
    before = len(iso)
    for z in iso:
        for _ in range(steps):
            z.refine()
        assert z.is_exact or count_roots(p, z.lo, z.hi) + (1 if p(z.lo) == 0 else 0) >= 1
    assert before == count_roots(p)
    for x, y in zip(iso, iso[1:]):
        assert x.hi <= y.lo


@given(roots_st, st.fractions(min_value=-6, max_value=6, max_denominator=7))
def test_sign_of_matches_evaluation(roots, c):
    p = P.from_roots(roots)
    g = X - c
    for z in isolate_roots(p * (X * X - 5)):
        s = z.sign_of(g)
        assert s == z.compare(c)


def test_cubic_with_complex_pair():
    # one real root; the chain's later remainders have negative leading coefficients
    p = P((136, -321, 39, -27))
    assert count_roots(p) == 1
    assert count_roots(p, 0, 1) == 1
    (r,) = isolate_roots(p, 0, 1)
    assert p.sign_at(r.lo) * p.sign_at(r.hi) < 0


@given(roots_st, st.lists(st.tuples(st.fractions(-4, 4, max_denominator=5), st.fractions(Fraction(1, 5), 5, max_denominator=5)), max_size=3))
def test_complex_pairs_do_not_count(roots, pairs):
    p = P.from_roots(roots)
    for a, b in pairs:
        p = p * ((X - a) ** 2 + b)
    assert count_roots(p) == len(set(roots))
    assert [z.value for z in isolate_roots(p)] == sorted(set(roots))
    assert count_roots(-p, -2, 3) == len({r for r in roots if -2 <= r < 3})
