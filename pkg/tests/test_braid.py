import pytest

from schober.bimodcx import BimodMap, bim
from schober.bimodcx.braid import (PEAK3, S, T, braid_class, braid_hints, crossing, minimal_braid, tensor,
                                   tst_sts_case, whisker_complex, whisker_map, whisker_seq)
from schober.bimodcx.complexes import same_complex
from schober.hecke import char_gdim, compose_all, crossing_class
from schober.polydemazure import hilbert

D = 8


def test_whisker_seq():
    assert whisker_seq(((1, 1), (2,)), left=True) == ((1, 1, 1), (1, 2))
    assert whisker_seq(((1, 1), (2,)), left=False) == ((1, 1, 1), (2, 1))


def test_whisker_multiplies_hilbert():
    seq = ((1, 1), (2,), (1, 1))
    for left in (True, False):
        w = bim(whisker_seq(seq, left))
        assert w.hilbert() == bim(seq).hilbert() * hilbert((1,))
        w.check_dims(D)


def test_whisker_map_identity():
    b = bim(((1, 1), (2,), (1, 1)))
    f = whisker_map(BimodMap.identity(b), left=False)
    assert f.is_iso(D) and f.intertwines(6)


@pytest.mark.parametrize("i", [0, 1])
def test_crossing_complexes(i):
    C = crossing(i)
    assert C.check_d2(D)
    assert len(C.objs) == 2
    assert whisker_complex(crossing(i), left=True).check_d2(D)


def test_tensor_of_crossings():
    C = tensor(crossing(0), crossing(1))
    assert len(C.objs) == 4 and C.check_d2(D)


def test_hints_are_consistent():
    h = braid_hints()
    assert set(h) >= {S, T}
    assert h[S][0][0] == PEAK3


def test_ss_inverse_free_class():
    # the Hecke class of a word is a product of generator classes
    g = crossing_class(1, 1, 1, 1, left=(), right=(1,))
    assert braid_class((0,)) == g.qshift(1)
    assert braid_class((0, 1, 0)) == braid_class((1, 0, 1))
    assert braid_class((0, 0)) == compose_all(g, g).qshift(2)


def test_tst_equals_sts():
    A = minimal_braid((0, 1, 0), D)
    B = minimal_braid((1, 0, 1), D)
    ok, msg = same_complex(A, B, D)
    assert ok, msg
    assert A.euler_q() == char_gdim(braid_class((0, 1, 0)))
    assert sorted(o.h for o in A.objs) == [0, 1, 1, 2, 2, 3]


def test_tst_sts_case_report():
    r = tst_sts_case(D)
    assert r["status"] == "pass" and r["d2"] and r["euler_matches_decat"]
