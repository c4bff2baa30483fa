import itertools

import pytest
from hypothesis import given, strategies as st

from schober.symcomb import (BifactError, all_reduced_words, bc_word_vertices, bialg_quadruples, bifact_cube,
                             bifact_json, comp_poset_json, comp_str, comp_to_cube, compositions, concat,
                             cube_to_comp, join, length, longest_element, longest_length, meet, merges,
                             parse_comp, perm_inv, perm_mul, reduced_word, refinement_covers, refines, splits,
                             word_to_perm, zigzag_vertices)

comps = st.lists(st.integers(1, 4), min_size=1, max_size=5).map(tuple)


def test_cube_coordinates_examples():
    assert comp_to_cube((3,)) == (0, 0)
    assert comp_to_cube((2, 1)) == (0, 1)
    assert comp_to_cube((1, 1, 1)) == (1, 1)
    assert comp_to_cube((4,)) == (0, 0, 0)
    assert comp_to_cube((2, 2)) == (0, 1, 0)
    assert comp_to_cube((1, 2, 1)) == (1, 0, 1)
    assert comp_to_cube(()) == ()


@given(comps)
def test_cube_roundtrip(c):
    assert cube_to_comp(comp_to_cube(c), sum(c)) == c


def test_covers():
    assert splits((2,)) == [(1, 1)]
    assert sorted(merges((1, 1, 1))) == [(1, 2), (2, 1)]
    assert sorted(splits((3,))) == [(1, 2), (2, 1)]
    assert refinement_covers((2, 1)) == [(1, 1, 1)]


@given(comps)
def test_covers_are_refinements(c):
    for f in splits(c):
        assert refines(f, c) and len(f) == len(c) + 1
    for m in merges(c):
        assert refines(c, m) and len(m) == len(c) - 1


def test_concat_examples():
    assert concat((2, 1), (3,)) == (2, 1, 3)
    assert concat((), (2, 2)) == (2, 2)


@given(comps, comps, comps)
def test_concat_associative(a, b, c):
    assert concat(concat(a, b), c) == concat(a, concat(b, c))


@given(st.integers(1, 6))
def test_meet_join_lattice(n):
    cs = compositions(n)
    assert len(cs) == 2 ** (n - 1)
    for a, b in itertools.islice(itertools.product(cs, cs), 60):
        m, j = meet(a, b), join(a, b)
        assert refines(m, a) and refines(m, b)
        assert refines(a, j) and refines(b, j)


def test_parse_and_print():
    assert parse_comp("1312") == (1, 3, 1, 2)
    assert comp_str((1, 3, 1, 2)) == "1312"


def test_longest_elements():
    assert longest_element((2,)) == (1, 0) and longest_length((2,)) == 1
    w0 = longest_element((3,))
    assert length(w0) == 3
    assert sorted(all_reduced_words(w0)) == [[1, 2, 1], [2, 1, 2]]
    assert length(longest_element((1, 1))) == 0


@given(st.permutations(range(5)))
def test_reduced_words_are_reduced(w):
    w = tuple(w)
    word = reduced_word(w)
    assert len(word) == length(w)
    assert word_to_perm(word, 5) == w
    for other in all_reduced_words(w, cap=50):
        assert word_to_perm(other, 5) == w


@given(st.permutations(range(4)), st.permutations(range(4)))
def test_perm_group(u, v):
    u, v = tuple(u), tuple(v)
    assert perm_mul(u, perm_inv(u)) == tuple(range(4))
    assert length(perm_mul(u, v)) <= length(u) + length(v)


def test_bifact_base_cases():
    Q = bifact_cube((1, 1), (1, 1))
    assert Q.dim == 2
    assert {c for _, c in Q.vertices()} == {(2,), (1, 1)}
    Q = bifact_cube((2, 1), (1, 2))
    assert sorted(comp_str(c) for _, c in Q.vertices()) == ["111", "12", "21", "3"]


def test_bifact_43_25():
    Q = bifact_cube((4, 3), (2, 5))
    assert Q.dim == 4 and len(Q.vertices()) == 16
    got = {comp_str(c) for _, c in Q.vertices()}
    assert {"7", "43", "142", "1312", "25", "223", "1132", "11212"} <= got


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.integers(1, n - 1), st.integers(1, n - 1), st.just(n))))
def test_bifact_corners(x):
    a, c, n = x
    Q = bifact_cube((a, n - a), (c, n - c))
    e = [0] * Q.dim
    src, tgt = list(e), list(e)
    src[1] = 1
    tgt[0] = 1
    assert Q.vertex(src) == (a, n - a)
    assert Q.vertex(tgt) == (c, n - c)


def test_bifact_rejects_bad_input():
    with pytest.raises((BifactError, ValueError)):
        bifact_cube((2, 1), (2, 2))


def test_bialg_quadruples():
    assert bialg_quadruples((4, 3), (2, 5)) == [(2, 2, 0, 3), (1, 3, 1, 2), (0, 4, 2, 1)]
    assert sorted(bialg_quadruples((1, 1), (1, 1))) == [(0, 1, 1, 0), (1, 0, 0, 1)]


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(st.integers(0, n), st.integers(0, n), st.just(n))))
def test_bialg_quadruples_brute_force(x):
    a, c, n = x
    b, d = n - a, n - c
    brute = [(i, j, k, l) for i, j, k, l in itertools.product(range(n + 1), repeat=4)
             if i + j == a and k + l == b and i + k == c and j + l == d]
    got = bialg_quadruples((a, b), (c, d))
    assert sorted(got) == sorted(brute)
    assert len(got) == min(a, b, c, d) + 1
    assert [q[1] for q in got] == sorted(q[1] for q in got)


def test_bc_words_of_the_three_cube():
    assert bc_word_vertices(3, 0, (0,)) == [(0, 1, 0), (0, 0, 0), (1, 0, 0)]
    assert bc_word_vertices(3, 0, (1,)) == [(0, 1, 0), (0, 1, 1), (0, 0, 1), (1, 0, 1), (1, 0, 0)]
    assert bc_word_vertices(3, 1, (0,)) == [(0, 1, 0), (1, 1, 0), (1, 0, 0)]
    assert bc_word_vertices(3, 1, (1,)) == [(0, 1, 0), (1, 1, 1), (1, 0, 0)]


def test_zigzags_of_q11():
    z = zigzag_vertices(bifact_cube((1, 1), (1, 1)))
    assert z[(0,)].comps == ((1, 1), (2,), (1, 1))
    assert z[(1,)].comps == ((1, 1), (1, 1), (1, 1))


def test_exports():
    d = comp_poset_json(4)
    assert len(d["vertices"]) == 8 and d["schema"] == 1
    j = bifact_json(bifact_cube((4, 3), (2, 5)))
    assert len(j["vertices"]) == 16
