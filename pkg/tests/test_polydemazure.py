import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schober.polydemazure import (Poly, act, complete, demazure, demazure_word, dual_bases, elementary,
                                  frobenius_pair, frobenius_trace, graded_basis, hilbert, invariant_ring,
                                  is_invariant, schur, schur_tableaux, trace_pairing)
from schober.symcomb import all_reduced_words, simple


def x(i, n):
    return Poly.var(i, n)


def polys(n, maxdeg=4):
    mono = st.tuples(*[st.integers(0, maxdeg) for _ in range(n)])
    return st.dictionaries(mono, st.integers(-3, 3), max_size=4).map(lambda d: Poly(n, d))


def test_demazure_examples():
    assert demazure(1, x(0, 2)) == Poly.const(2)
    assert demazure(1, x(0, 2) * x(1, 2)).is_zero()
    assert demazure(1, x(0, 2) * x(0, 2)) == x(0, 2) + x(1, 2)


def test_demazure_index_checked():
    with pytest.raises(ValueError):
        demazure(3, x(0, 3))


@given(polys(3))
def test_demazure_squares_to_zero(p):
    for i in (1, 2):
        assert demazure(i, demazure(i, p)).is_zero()


@given(polys(3))
def test_demazure_is_division(p):
    for i in (1, 2):
        lhs = demazure(i, p) * (x(i - 1, 3) - x(i, 3))
        assert lhs == p - act(simple(i, 3), p)


@given(polys(4, 3))
def test_braid_relations(p):
    assert demazure_word([1, 2, 1], p) == demazure_word([2, 1, 2], p)
    assert demazure_word([1, 3], p) == demazure_word([3, 1], p)


@given(polys(3), polys(3))
def test_twisted_leibniz(p, q):
    s = simple(1, 3)
    assert demazure(1, p * q) == demazure(1, p) * q + act(s, p) * demazure(1, q)


def test_frobenius_trace_examples():
    assert frobenius_trace((1, 1), (2,), x(0, 2)) == Poly.const(2)
    p = x(0, 3) * x(0, 3) * x(1, 3)
    words = all_reduced_words((2, 1, 0))
    vals = {str(demazure_word(w, p)) for w in words}
    assert len(words) == 2 and len(vals) == 1
    assert frobenius_trace((1, 1, 1), (3,), p) == demazure_word([1, 2, 1], p)
    assert frobenius_trace((1, 2), (3,), Poly.const(3)).is_zero()


def test_trace_requires_invariance():
    with pytest.raises(ValueError):
        frobenius_trace((2, 1), (3,), x(0, 3))


def test_elementary_complete_schur():
    n = 3
    e1 = elementary([0, 1, 2], 1, n)
    assert e1 == x(0, 3) + x(1, 3) + x(2, 3)
    assert schur([0, 1, 2], [1], n) == e1
    assert schur([0, 1, 2], [2], n) == complete([0, 1, 2], 2, n)
    assert schur([0, 1, 2], [1, 1], n) == elementary([0, 1, 2], 2, n)


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2, 1)])
def test_schur_two_ways(lam):
    assert schur([0, 1, 2], lam, 3) == schur_tableaux([0, 1, 2], lam, 3)


def test_invariant_ring_dims():
    assert len(graded_basis(invariant_ring((2,)), 2)) == 1
    assert len(graded_basis(invariant_ring((1, 1)), 2)) == 2
    want = hilbert((2, 1)).expand(8)
    for d in range(0, 9, 2):
        assert len(graded_basis(invariant_ring((2, 1)), d)) == want[d]


def test_graded_basis_is_invariant_and_counts_monomials():
    r = invariant_ring((2, 1))
    for p in graded_basis(r, 6):
        assert is_invariant(p, (2, 1))
    # oracle: count of monomials of degree 3 in 3 vars symmetric in the first two
    cnt = sum(1 for e in itertools.product(range(4), repeat=3) if sum(e) == 3 and e[0] >= e[1])
    assert len(graded_basis(r, 6)) == cnt


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)])
def test_dual_bases_pair_to_identity(a, b):
    basis, duals = dual_bases(a, b)
    M = trace_pairing((a, b), (a + b,), basis, duals)
    for i, row in enumerate(M):
        for j, v in enumerate(row):
            assert v == Poly.const(a + b, 1 if i == j else 0)


def test_frobenius_pair_chain():
    basis, duals = frobenius_pair((1, 1, 1), (3,))
    assert len(basis) == 6
    M = trace_pairing((1, 1, 1), (3,), basis, duals)
    assert all(M[i][j] == Poly.const(3, int(i == j)) for i in range(6) for j in range(6))


def test_poly_arith_exact():
    p = Poly(2, {(1, 0): Fraction(1, 3)})
    assert p * 3 == x(0, 2)
    assert p * Poly.const(2, 3) == x(0, 2)
    assert (p - p).is_zero()
