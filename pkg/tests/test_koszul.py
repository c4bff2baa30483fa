import pytest

from schober.bimodcx import koszul, koszul_contractible, lemma_check, pkls_decompose, rickard, zeta_basis
from schober.bimodcx.koszul import subsets, xi_weight

D = 8


@pytest.mark.parametrize("b", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_zeta_lemma(b, m):
    r = lemma_check(b, m)
    assert r["identity"] and r["inverse"] and r["triangular"] and r["d_in_zeta_basis"]
    # only the top zeta hits a unit, with sign (-1)^(b-1)
    assert r["unit_at_b"] == (-1) ** (b - 1)
    assert r["d_zeta"][:-1] == ["0"] * (b - 1)
    assert r["d_zeta"][-1] == str((-1) ** (b - 1))


def test_zeta_basis_size():
    K = zeta_basis(3, 1)
    assert len(K.basis) == 2 ** 3


def test_xi_weights():
    assert [xi_weight(i, 2) for i in (1, 2)] == [(-2, -1), (0, -1)]
    assert xi_weight(1, 1) == (0, -1)
    assert subsets(2) == [(), (1,), (2,), (1, 2)]


def test_koszul_of_rickard_squares_to_zero():
    C = rickard(1, 1, 1, 1, D=D)
    K = koszul(C, 1)
    assert len(K.objs) == 2 * len(C.objs)
    assert K.check_d2(D)


@pytest.mark.parametrize("seq,b", [
    (((1, 1), (1, 1)), 1),
    (((2,), (2,)), 2),
    (((1, 1), (2,), (1, 1)), 1),
])
def test_koszul_contractible(seq, b):
    assert koszul_contractible(seq, b, D)


def test_koszul_rejects_b0():
    with pytest.raises(ValueError):
        koszul(rickard(1, 1, 1, 1, D=D), 0)


def test_pkls_1111():
    r = pkls_decompose(1, 1, 1, 1, D=D)
    assert r.d2 and r.ok
    info = r.to_json()
    assert info["ok"] and info["objects"] == len(r.complex.objs)
    assert all(c["ok"] for c in info["chi_m"])
