import pytest
import sympy
from hypothesis import given, strategies as st

from schober import hecke
from schober.hecke import (HeckeElt, PerverseData, a1_data, a1a1_data, a2_data, check_a1, check_a1a1, check_a2,
                           compose, crossing_class, crossing_inverse_class, hecke_mul, identity, merge_class,
                           mutation_report, poincare, schur_compose, skein_alpha, split_class, symmetrizer,
                           web_class)
from schober.qalgebra import BiLaurent, qbinom, qint, qpow
from schober.symcomb import compositions, simple

QQ = BiLaurent.from_q({1: 1, -1: -1})   # q - q^-1


def T(i, n):
    return HeckeElt.T(i, n)


def elts(n):
    perms = st.permutations(range(n)).map(tuple)
    term = st.tuples(perms, st.integers(-2, 2), st.integers(-2, 2))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda ts: sum((HeckeElt.basis(w, BiLaurent.mono(k, 0, c)) for w, k, c in ts), HeckeElt.zero(n)))


def test_quadratic_relation():
    lhs = hecke_mul(T(1, 2), T(1, 2))
    assert lhs == HeckeElt.one(2) + HeckeElt.basis(simple(1, 2), QQ)


def test_unit():
    x = T(2, 4) + T(1, 4)
    assert hecke_mul(HeckeElt.one(4), x) == x


@given(elts(4), elts(4), elts(4))
def test_associative(a, b, c):
    assert hecke_mul(hecke_mul(a, b), c) == hecke_mul(a, hecke_mul(b, c))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_braid_relations_generators(n):
    for i in range(1, n - 1):
        a = hecke_mul(hecke_mul(T(i, n), T(i + 1, n)), T(i, n))
        b = hecke_mul(hecke_mul(T(i + 1, n), T(i, n)), T(i + 1, n))
        assert a == b
    for i in range(1, n):
        for j in range(i + 2, n):
            assert hecke_mul(T(i, n), T(j, n)) == hecke_mul(T(j, n), T(i, n))


def test_symmetrizer_examples():
    x2 = symmetrizer((2,))
    assert x2 == HeckeElt.basis((0, 1), qpow(-1)) + T(1, 2)
    assert poincare((2,)) == qint(2)
    assert symmetrizer((1, 1, 1)) == HeckeElt.one(3)
    assert poincare((1, 1)) == BiLaurent.const(1)


@pytest.mark.parametrize("c", [(2,), (3,), (2, 1), (1, 2, 1), (2, 2)])
def test_symmetrizer_absorbs_and_squares(c):
    n = sum(c)
    x = symmetrizer(c)
    pos = 0
    for part in c:
        for i in range(pos + 1, pos + part):
            assert hecke_mul(T(i, n), x) == x * qpow(1)
        pos += part
    assert hecke_mul(x, x) == x * poincare(c)


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)])
def test_digon(a, b):
    assert schur_compose(merge_class(a, b), split_class(a, b)) == identity((a + b,)).scale(qbinom(a + b, a))


def test_split_with_zero_part_is_identity():
    assert web_class([(3,), (3,)]) == identity((3,))


def test_crossing_inverse_and_skein():
    C = crossing_class(1, 1, 1, 1)
    assert compose(crossing_inverse_class(1, 1), C) == identity((1, 1))
    assert skein_alpha() == [(1, 0)]
    lhs = C - crossing_inverse_class(1, 1)
    assert lhs == identity((1, 1)).scale(QQ)


@pytest.mark.parametrize("a,b", [(1, 2), (2, 1), (2, 2), (1, 3)])
def test_crossing_inverse(a, b):
    C = crossing_class(a, b, b, a)
    assert compose(crossing_inverse_class(a, b), C) == identity((a, b))


@pytest.mark.parametrize("suite,n", [("digon", 6), ("braid", 5), ("bialgebra", 6), ("defect", 6)])
def test_suites_pass(suite, n):
    rep = getattr(hecke, f"suite_{suite}")(n)
    assert rep.passed, rep.failures()[:3]
    assert rep.to_json()["schema"] == 1


def test_squareswitch_suite():
    rep = hecke.suite_squareswitch(5)
    assert rep.passed and len(rep.cases) > 0


def test_defect_examples():
    assert hecke.bc_euler_class((1, 3), (2, 2)).is_zero()
    tw = hecke.bc_euler_class((2, 1), (1, 2))
    assert tw == crossing_class(2, 1, 1, 2).qshift(2)
    assert hecke.bc_euler_class((1, 1), (1, 1)) == crossing_class(1, 1, 1, 1).qshift(1)


def test_schur_morphism_membership():
    for c in compositions(3):
        assert identity(c).is_member()
    assert split_class(1, 2).is_member()


# ---------------------------------------------------------------- perverse data

def test_a1_trivial():
    z = sympy.zeros
    data = PerverseData({"A": 0, "B": 1, "C": 0, "D": 1},
                        {"f": z(1, 1), "f*": z(1, 1), "i": z(1, 0), "i*": z(0, 1), "h": z(0, 0),
                         "h*": z(0, 0), "g": z(1, 0), "g*": z(0, 1)})
    assert all(check_a1(data).values())


def test_extracted_data_pass():
    assert all(check_a1(a1_data()).values())
    res = check_a2(a2_data())
    assert all(res.values()), [k for k, v in res.items() if not v]
    assert "tst = sts" in res and "hh* = id + af*s^-1 g" in res
    assert all(check_a1a1(a1a1_data()).values())


def test_mutations_detected():
    for m in mutation_report(a2_data(), check_a2):
        assert m["failed"], m
    fails = {m["map"]: m["failed"] for m in mutation_report(a2_data(), check_a2)}
    assert "(4) a = hi* - g*f invertible" in fails["h"] or any("(1)" in f for f in fails["h"])


def test_shape_errors():
    with pytest.raises(ValueError):
        PerverseData({"A": 1, "B": 1, "C": 0, "D": 1}, {"f": sympy.zeros(2, 1)})


def test_perverse_json_roundtrip():
    d = a2_data()
    back = PerverseData.from_json(d.to_json())
    assert all(check_a2(back).values())
