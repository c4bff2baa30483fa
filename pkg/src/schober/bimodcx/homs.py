"""Graded Hom spaces between realized webs.

Hom(B, B') is computed through biadjunction: a map B -> B' of degree k is
the same thing as a central element z of B^v o B' (an (R_{v_0}, R_{v_0})
bimodule), and the map is recovered as b |-> contract(b (x) z), where the
contraction removes the nested turning points of B o B^v one at a time
(multiplication at valleys, trace at peaks).
"""
from __future__ import annotations

from functools import lru_cache

from .. import linalg
from .core import Bim, BimodMap, Chain, bim, ring_generators


def _contraction(src_seq, tgt_seq) -> Chain:
    z_seq = tuple(tgt_seq) + tuple(reversed(src_seq))[1:]
    full = z_seq + tuple(src_seq)[1:]
    ch = Chain(full)
    J = len(z_seq) - 1
    for _ in range(len(src_seq) - 1):
        ch.remove_bump(J)
        J -= 1
    assert ch.seq == tuple(tgt_seq), (ch.seq, tgt_seq)
    return ch


@lru_cache(maxsize=None)
def _contraction_cached(src_seq, tgt_seq):
    return _contraction(src_seq, tgt_seq)


def center(M: Bim, d: int) -> linalg.flint.fmpq_mat:
    """Columns spanning {z in M_d : p z = z p for generators p of R_domain}."""
    dim = M.dim(d)
    if dim == 0:
        return linalg.zeros(0, 0)
    gens = ring_generators(M.domain)
    blocks = []
    for p in gens:
        blocks.append(M.left_action(p, d) - M.right_action(p, d))
    rows = sum(b.nrows() for b in blocks)
    return linalg.nullspace(linalg.vstack(blocks, dim)) if rows else linalg.identity(dim)


def hom_basis(src: Bim, tgt: Bim, k: int, label="hom") -> list[BimodMap]:
    """A basis of degree-k bimodule maps src -> tgt (underlying, unshifted grading)."""
    if src.domain != tgt.domain or src.codomain != tgt.codomain:
        raise ValueError(f"{src} and {tgt} have different boundaries")
    ch = _contraction_cached(src.seq, tgt.seq)
    zdeg = k - ch.deg
    M = bim(tuple(tgt.seq) + tuple(reversed(src.seq))[1:])
    if zdeg < 0:
        return []
    Z = center(M, zdeg)
    out = []
    for col in range(Z.ncols()):
        vec = [Z[i, col] for i in range(Z.nrows())]
        vec = [linalg.to_frac(x) for x in vec]
        nf = M.nf_of(zdeg, vec)
        zterms = M.terms_of(nf)
        out.append(_map_from_central(src, tgt, k, ch, zterms, f"{label}{col}"))
    return out


def _map_from_central(src, tgt, k, ch, zterms, label):
    def fn(fac):
        terms = [(c, zf + fac) for c, zf in zterms]
        return ch.apply(terms)
    return BimodMap.from_fn(src, tgt, k, fn, label)


def hom_dim(src: Bim, tgt: Bim, k: int) -> int:
    ch = _contraction_cached(src.seq, tgt.seq)
    zdeg = k - ch.deg
    if zdeg < 0:
        return 0
    M = bim(tuple(tgt.seq) + tuple(reversed(src.seq))[1:])
    return center(M, zdeg).ncols()


def express(f: BimodMap, basis: list[BimodMap], D: int):
    """Coefficients c with f = sum c_i basis_i on all degrees <= D, or None."""
    if not basis:
        return [] if f.is_zero(D) else None
    cols, rhs = [], []
    for d in range(0, D + 1):
        if f.src.dim(d) == 0 or f.tgt.dim(d + f.deg) == 0:
            continue
        mats = [b.matrix(d).entries() for b in basis]
        for r, x in enumerate(f.matrix(d).entries()):
            cols.append([m[r] for m in mats])
            rhs.append([x])
    if not cols:
        return [0] * len(basis)
    X = linalg.solve_consistent(linalg.from_rows(cols, len(basis)), linalg.from_rows(rhs, 1))
    if X is None:
        return None
    return [X[i, 0] for i in range(len(basis))]
