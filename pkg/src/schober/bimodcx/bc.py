"""Beck-Chevalley cubes of zigzag words and the exploded cotwist cube.

Objects are unshifted realizations of the raw zigzag words (restrictions are
unshifted, identity steps allowed); the BC-cube vertex (e, v) sits in
homological degree e + |v|.  Edge maps are composites of units,
reassociations and multiplications; edge signs are the usual Koszul signs.
"""
from __future__ import annotations

import itertools

from ..symcomb import bifact_cube, cube_to_comp
from .complexes import WebComplex
from .core import BimodMap
from .rickard import PaddedChain


def bc_face(pc: PaddedChain, k: int, P) -> None:
    """Valley (x, m, z) at node k -> peak (x, P, z): unit at z, reassociate, multiply at m."""
    x = pc.pseq[k - 1]
    pc.insert_peak(k + 1, P)       # x m z P z
    pc.collapse(k + 1)             # x m P z
    pc.expand(k, x)                # x m x P z
    pc.remove_turn(k)              # x x P z
    pc.drop_identity(k - 1)        # x P z


def _word(Q, e, v):
    return [Q.vertex(x) for x in _raw_vertices(Q.dim, e, v)]


def _raw_vertices(dim, e, v):
    v = tuple(v)
    start = (0, 1) + (0,) * (dim - 2)
    end = (1, 0) + (0,) * (dim - 2)
    if e == 0:
        return [start, (0, 1) + v, (0, 0) + v, (1, 0) + v, end]
    return [start, (1, 1) + v, end]


def bc_edge_chain(Q, e, v, i):
    """Chain for the BC-cube edge raising coordinate i (0 = e, i >= 1 = v_{i-1})."""
    if i == 0:
        assert e == 0
        pc = PaddedChain(_word(Q, 0, v))
        bc_face(pc, 2, Q.vertex((1, 1) + tuple(v)))
        pc.collapse(1)
        pc.collapse(2)
        return pc
    w = tuple(v[:i - 1]) + (1,) + tuple(v[i:])
    if e == 1:
        pc = PaddedChain(_word(Q, 1, v))
        pc.insert_peak(1, Q.vertex((1, 1) + w))
        pc.collapse(1)
        pc.collapse(2)
        return pc
    pc = PaddedChain(_word(Q, 0, v))
    pc.insert_peak(2, Q.vertex((0, 0) + w))          # s 01v 00v 00w 00v 10v t
    bc_face(pc, 2, Q.vertex((0, 1) + w))             # s 01v 01w 00w 00v 10v t
    bc_face(pc, 4, Q.vertex((1, 0) + w))             # s 01v 01w 00w 10w 10v t
    pc.collapse(1)
    pc.collapse(4)                                    # s 01w 00w 10w t
    return pc


def _koszul_sign(bits, i):
    return -1 if sum(bits[:i]) % 2 else 1


def bc_total(ab, cd, name=None) -> WebComplex:
    """Total complex of the BC cube of Q(ab, cd)."""
    Q = bifact_cube(ab, cd)
    C = WebComplex(name=name or f"BC Q({''.join(map(str, ab))},{''.join(map(str, cd))})")
    index = {}
    for ev in itertools.product((0, 1), repeat=Q.dim - 1):
        e, v = ev[0], ev[1:]
        index[ev] = C.add(_word(Q, e, v), 0, sum(ev), "".join(map(str, ev)))
    for ev in itertools.product((0, 1), repeat=Q.dim - 1):
        for i in range(Q.dim - 1):
            if ev[i]:
                continue
            tgt = ev[:i] + (1,) + ev[i + 1:]
            pc = bc_edge_chain(Q, ev[0], ev[1:], i)
            assert [tuple(c) for c in pc.pseq] == [tuple(c) for c in C.objs[index[tgt]].seq]
            f = BimodMap.from_chain(pc.ch, f"bc{i}")
            if _koszul_sign(ev, i) < 0:
                f = -f
            C.set_d(index[tgt], index[ev], f)
    return C


def bc_euler_words(ab, cd):
    """(sign, raw word) pairs of the BC cube, for cross-checks with the Hecke level."""
    Q = bifact_cube(ab, cd)
    out = []
    for ev in itertools.product((0, 1), repeat=Q.dim - 1):
        out.append(((-1) ** sum(ev), _word(Q, ev[0], ev[1:])))
    return out


def expl(n: int) -> WebComplex:
    """Exploded cotwist cube: vertex k in Comp(n) is the peak (n) -> k -> (n) in degree len(k)-1."""
    C = WebComplex(name=f"Expl_{n}")
    top = (n,)
    index = {}
    for bits in itertools.product((0, 1), repeat=n - 1):
        k = cube_to_comp(bits, n)
        index[bits] = C.add([top, k, top], 0, sum(bits), "".join(map(str, bits)))
    for bits in itertools.product((0, 1), repeat=n - 1):
        for i in range(n - 1):
            if bits[i]:
                continue
            tgt = bits[:i] + (1,) + bits[i + 1:]
            pc = PaddedChain([top, cube_to_comp(bits, n), top])
            pc.insert_peak(1, cube_to_comp(tgt, n))
            pc.collapse(1)
            pc.collapse(2)
            f = BimodMap.from_chain(pc.ch, f"F{i}")
            if _koszul_sign(bits, i) < 0:
                f = -f
            C.set_d(index[tgt], index[bits], f)
    return C
