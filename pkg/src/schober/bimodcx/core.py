"""Degree-truncated singular Bott-Samelson bimodules and maps between them.

A web is a node sequence v_0, v_1, ..., v_m of compositions (v_0 is the
domain, i.e. the right-hand side of the bimodule).  Consecutive nodes must be
comparable.  The unshifted realization is

    R_{f_m} (x)_{R_{v_{m-1}}} ... (x)_{R_{v_1}} R_{f_1},    f_i = finer(v_{i-1}, v_i)

Merge steps are *not* shifted here; the q^{-ab} of a merge web lives in the
object shift of a complex (see `web_shift`).

Elements are kept in a normal form: every factor except the last is a
Frobenius basis element over the next junction ring, and all scalars are
pushed into the last factor.  So an element is a dict idx -> polynomial in
R_{f_m}, and a degree-d basis is (idx, dominant exponent) pairs.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import flint
from gmpy2 import mpq

from .. import linalg
from ..polydemazure import (
    _demazure_monomial,
    _trace_word_cached,
    dominant_exponents,
    frobenius_pair,
    hilbert,
    monomial_symmetric,
    relative_degree,
)
from ..qalgebra import HilbertSeries, qpow
from ..symcomb import blocks, refines

ZERO = mpq(0)
UNIT = mpq(1)


class DimensionMismatch(AssertionError):
    pass


# ---------------------------------------------------------------- raw polynomials
# dict exponent-tuple -> mpq; products drop zeros lazily.

def raw(p) -> dict:
    return {e: mpq(c.numerator, c.denominator) for e, c in p.terms.items() if c}


def const(n: int, c=1) -> dict:
    return {(0,) * n: mpq(c)}


def pmul(a: dict, b: dict) -> dict:
    if len(a) == 1:
        (ea, ca), = a.items()
        if not any(ea):
            return {e: ca * c for e, c in b.items()} if ca != 1 else dict(b)
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e)
            out[e] = ca * cb if v is None else v + ca * cb
    return {e: c for e, c in out.items() if c}


def padd(acc: dict, a: dict, c=UNIT) -> None:
    for e, v in a.items():
        w = acc.get(e)
        acc[e] = c * v if w is None else w + c * v


def pclean(a: dict) -> dict:
    return {e: c for e, c in a.items() if c}


def pscale(a: dict, c) -> dict:
    return {e: c * v for e, v in a.items()} if c else {}


def pdeg(a: dict) -> int:
    return 2 * sum(next(iter(a))) if a else 0


def monomial(e) -> dict:
    return {tuple(e): UNIT}


@lru_cache(maxsize=None)
def _mono_trace(word: tuple, e: tuple) -> tuple:
    cur = {e: 1}
    for i in reversed(word):
        nxt: dict = {}
        for ee, c in cur.items():
            for ne, s in _demazure_monomial(i, ee):
                nxt[ne] = nxt.get(ne, 0) + s * c
        cur = {k: v for k, v in nxt.items() if v}
        if not cur:
            break
    return tuple(cur.items())


def ptrace(fine, coarse, a: dict) -> dict:
    """Frobenius trace R_fine -> R_coarse on a raw polynomial."""
    if tuple(fine) == tuple(coarse):
        return dict(a)
    word = _trace_word_cached(tuple(fine), tuple(coarse))
    out: dict = {}
    for e, c in a.items():
        for ne, s in _mono_trace(word, e):
            v = out.get(ne)
            out[ne] = s * c if v is None else v + s * c
    return pclean(out)


def elementary_raw(c, j: int, k: int) -> dict:
    """e_k in the variables of block j of composition c."""
    n = sum(c)
    blk = list(blocks(c)[j])
    out = {}
    for sub in itertools.combinations(blk, k):
        e = [0] * n
        for i in sub:
            e[i] = 1
        out[tuple(e)] = UNIT
    return out


def ring_generators(c) -> list[dict]:
    return [elementary_raw(c, j, k) for j, p in enumerate(c) for k in range(1, p + 1)]


# ---------------------------------------------------------------- compositions

def finer(x, y):
    x, y = tuple(x), tuple(y)
    if refines(x, y):
        return x
    if refines(y, x):
        return y
    raise ValueError(f"{x} and {y} are not comparable")


def step_kind(x, y) -> str:
    x, y = tuple(x), tuple(y)
    if x == y:
        return "id"
    return "split" if refines(y, x) else "merge"


def web_shift(seq) -> int:
    """q-shift of the web (merge webs carry q^{-ab})."""
    s = 0
    for x, y in zip(seq, seq[1:]):
        if step_kind(x, y) == "merge":
            s -= (relative_degree(x, y)) // 2
    return s


def seq_str(seq) -> str:
    return "(" + ",".join("".join(map(str, c)) for c in seq) + ")"


# ---------------------------------------------------------------- realization

@lru_cache(maxsize=None)
def _frob_raw(fine, coarse):
    basis, duals = frobenius_pair(fine, coarse)
    return (tuple(raw(b) for b in basis), tuple(raw(d) for d in duals),
            tuple(b.degree() for b in basis))


@lru_cache(maxsize=None)
def _mono_decomp(fine, coarse, e):
    """For x^e in R_fine: the list over beta of trace(x^e * dual_beta)."""
    _, duals, _ = _frob_raw(fine, coarse)
    return tuple(ptrace(fine, coarse, pmul({e: UNIT}, d)) for d in duals)


class Bim:
    """Unshifted realization of the web `seq` (use `bim(seq)` for the cached instance)."""

    def __init__(self, seq):
        seq = tuple(tuple(c) for c in seq)
        if len(seq) < 2:
            raise ValueError("a web needs at least two nodes")
        self.seq = seq
        self.n = sum(seq[0])
        self.m = len(seq) - 1
        self.rings = [finer(seq[i], seq[i + 1]) for i in range(self.m)]
        self.top = self.rings[-1]
        self.frob = []
        for i in range(self.m - 1):
            f, v = self.rings[i], seq[i + 1]
            self.frob.append(None if f == v else (f, v) + _frob_raw(f, v))
        self._basis: dict = {}
        self._index: dict = {}

    def __repr__(self):
        return f"Bim{seq_str(self.seq)}"

    @property
    def domain(self):
        return self.seq[0]

    @property
    def codomain(self):
        return self.seq[-1]

    def hilbert(self) -> HilbertSeries:
        h = hilbert(self.rings[0])
        for i in range(1, self.m):
            h = h * hilbert(self.rings[i]) / hilbert(self.seq[i])
        return h

    def _alpha_ranges(self):
        return [range(1) if fr is None else range(len(fr[2])) for fr in self.frob]

    def _alpha_deg(self, idx) -> int:
        return sum(0 if fr is None else fr[4][b] for fr, b in zip(self.frob, idx))

    def basis(self, d: int) -> list:
        if d not in self._basis:
            out = []
            if d >= 0 and d % 2 == 0:
                for idx in itertools.product(*self._alpha_ranges()):
                    r = d - self._alpha_deg(idx)
                    if r < 0:
                        continue
                    for e in dominant_exponents(self.top, r):
                        out.append((idx, e))
            self._basis[d] = out
            self._index[d] = {b: j for j, b in enumerate(out)}
        return self._basis[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def check_dims(self, D: int) -> None:
        want = self.hilbert().expand(D, low=0)
        for d in range(D + 1):
            if self.dim(d) != want[d]:
                raise DimensionMismatch(f"{self}: degree {d} has {self.dim(d)}, Hilbert series says {want[d]}")

    def element(self, d: int, j: int) -> tuple:
        idx, e = self.basis(d)[j]
        fac = []
        for fr, b in zip(self.frob, idx):
            fac.append(const(self.n) if fr is None else fr[2][b])
        fac.append(raw(monomial_symmetric(self.top, e)))
        return tuple(fac)

    def decompose(self, i: int, g: dict):
        fr = self.frob[i]
        if fr is None:
            return [(0, g)] if g else []
        f, v = fr[0], fr[1]
        k = len(fr[2])
        acc = [dict() for _ in range(k)]
        for e, c in g.items():
            for b, t in enumerate(_mono_decomp(f, v, e)):
                if t:
                    padd(acc[b], t, c)
        return [(b, a) for b, a in ((b, pclean(a)) for b, a in enumerate(acc)) if a]

    def normalize(self, terms: Iterable) -> dict:
        """Normal form of a sum of (coef, factors) pure tensors."""
        out: dict = {}
        one = const(self.n)
        for coef, fac in terms:
            if not coef:
                continue
            state = {(): pscale(one, coef)}
            for i in range(self.m - 1):
                new: dict = {}
                for pre, carry in state.items():
                    g = pmul(carry, fac[i])
                    if not g:
                        continue
                    for b, c in self.decompose(i, g):
                        key = pre + (b,)
                        if key in new:
                            padd(new[key], c)
                        else:
                            new[key] = c
                state = {k: v for k, v in ((k, pclean(v)) for k, v in new.items()) if v}
            for pre, carry in state.items():
                g = pmul(carry, fac[-1])
                if pre in out:
                    padd(out[pre], g)
                else:
                    out[pre] = g
        return {k: v for k, v in ((k, pclean(v)) for k, v in out.items()) if v}

    def coords(self, nf: dict, d: int) -> list:
        return [nf[idx].get(e, ZERO) if idx in nf else ZERO for idx, e in self.basis(d)]

    def nf_of(self, d: int, vec) -> dict:
        """Normal form of a coordinate vector in degree d."""
        out: dict = {}
        for (idx, e), c in zip(self.basis(d), vec):
            if c:
                padd(out.setdefault(idx, {}), raw(monomial_symmetric(self.top, e)), mpq(c))
        return out

    def terms_of(self, nf: dict) -> list:
        """Pure tensors summing to a normal form."""
        out = []
        for idx, g in nf.items():
            fac = [const(self.n) if fr is None else fr[2][b] for fr, b in zip(self.frob, idx)]
            out.append((UNIT, tuple(fac) + (g,)))
        return out

    def left_action(self, p: dict, d: int) -> flint.fmpq_mat:
        k = pdeg(p)
        cols = []
        for j in range(self.dim(d)):
            fac = self.element(d, j)
            nf = self.normalize([(UNIT, fac[:-1] + (pmul(p, fac[-1]),))])
            cols.append(self.coords(nf, d + k))
        return columns_to_mat(cols, self.dim(d + k))

    def right_action(self, p: dict, d: int) -> flint.fmpq_mat:
        k = pdeg(p)
        cols = []
        for j in range(self.dim(d)):
            fac = self.element(d, j)
            nf = self.normalize([(UNIT, (pmul(fac[0], p),) + fac[1:])])
            cols.append(self.coords(nf, d + k))
        return columns_to_mat(cols, self.dim(d + k))


@lru_cache(maxsize=None)
def bim(seq) -> Bim:
    return Bim(tuple(tuple(c) for c in seq))


def columns_to_mat(cols: Sequence[Sequence], rows: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(rows, len(cols))
    for j, col in enumerate(cols):
        for i, c in enumerate(col):
            if c:
                m[i, j] = flint.fmpq(int(c.numerator), int(c.denominator))
    return m


# ---------------------------------------------------------------- local moves

class Op:
    """A local foam move: src node sequence -> tgt node sequence, with an underlying degree."""

    def __init__(self, name, src, tgt, deg, fn):
        self.name, self.src, self.tgt, self.deg, self.fn = name, tuple(src), tuple(tgt), deg, fn

    def __repr__(self):
        return f"{self.name}:{seq_str(self.src)}->{seq_str(self.tgt)}"


def _one(n):
    return const(n)


def op_insert_peak(seq, k: int, w) -> Op:
    """Unit id_u -> merge o split at node k (u = seq[k], w finer)."""
    u, w = tuple(seq[k]), tuple(w)
    if not refines(w, u) or w == u:
        raise ValueError(f"peak {w} must strictly refine {u}")
    tgt = seq[:k + 1] + (w, u) + seq[k + 1:]
    n = sum(u)

    def fn(fac):
        return [(UNIT, fac[:k] + (_one(n), _one(n)) + fac[k:])]
    return Op(f"unit@{k}", seq, tgt, 0, fn)


def op_remove_peak(seq, k: int) -> Op:
    """Trace merge o split -> id at node k; leaves an identity step."""
    u, w = seq[k - 1], seq[k]
    if seq[k + 1] != u or not refines(w, u) or w == u:
        raise ValueError(f"no peak at node {k} of {seq_str(seq)}")
    tgt = seq[:k] + seq[k + 1:]

    def fn(fac):
        t = ptrace(w, u, pmul(fac[k - 1], fac[k]))
        return [(UNIT, fac[:k - 1] + (t,) + fac[k + 1:])] if t else []
    return Op(f"trace@{k}", seq, tgt, -relative_degree(w, u), fn)


def op_insert_valley(seq, k: int, u) -> Op:
    """Coevaluation id_w -> split o merge at node k (u coarser than w = seq[k])."""
    w, u = tuple(seq[k]), tuple(u)
    if not refines(w, u) or w == u:
        raise ValueError(f"valley {u} must be strictly coarser than {w}")
    tgt = seq[:k + 1] + (u, w) + seq[k + 1:]
    basis, duals, _ = _frob_raw(w, u)

    def fn(fac):
        return [(UNIT, fac[:k] + (a, b) + fac[k:]) for a, b in zip(basis, duals)]
    return Op(f"coev@{k}", seq, tgt, relative_degree(w, u), fn)


def op_remove_valley(seq, k: int) -> Op:
    """Multiplication split o merge -> id at node k; leaves an identity step."""
    w, u = seq[k - 1], seq[k]
    if seq[k + 1] != w or not refines(w, u) or w == u:
        raise ValueError(f"no valley at node {k} of {seq_str(seq)}")
    tgt = seq[:k] + seq[k + 1:]

    def fn(fac):
        return [(UNIT, fac[:k - 1] + (pmul(fac[k - 1], fac[k]),) + fac[k + 1:])]
    return Op(f"mult@{k}", seq, tgt, 0, fn)


def op_drop_identity(seq, k: int) -> Op:
    """Absorb the identity step between nodes k and k+1 into a neighbouring factor."""
    if seq[k] != seq[k + 1]:
        raise ValueError(f"step {k} of {seq_str(seq)} is not an identity")
    m = len(seq) - 1
    if m < 2:
        raise ValueError("cannot drop the only step")
    tgt = seq[:k + 1] + seq[k + 2:]

    def fn(fac):
        if k + 1 < m:
            return [(UNIT, fac[:k] + (pmul(fac[k], fac[k + 1]),) + fac[k + 2:])]
        return [(UNIT, fac[:k - 1] + (pmul(fac[k - 1], fac[k]),))]
    return Op(f"dropid@{k}", seq, tgt, 0, fn)


def op_insert_identity(seq, k: int) -> Op:
    tgt = seq[:k + 1] + (seq[k],) + seq[k + 1:]
    n = sum(seq[0])

    def fn(fac):
        return [(UNIT, fac[:k] + (_one(n),) + fac[k:])]
    return Op(f"addid@{k}", seq, tgt, 0, fn)


def _monotone(x, y, z) -> bool:
    a, b = step_kind(x, y), step_kind(y, z)
    return a == b and a != "id"


def op_collapse(seq, k: int) -> Op:
    """Remove node k from a monotone run seq[k-1] -> seq[k] -> seq[k+1]."""
    if not _monotone(seq[k - 1], seq[k], seq[k + 1]):
        raise ValueError(f"node {k} of {seq_str(seq)} is not in a monotone run")
    tgt = seq[:k] + seq[k + 1:]

    def fn(fac):
        return [(UNIT, fac[:k - 1] + (pmul(fac[k - 1], fac[k]),) + fac[k + 1:])]
    return Op(f"collapse@{k}", seq, tgt, 0, fn)


def op_expand(seq, k: int, mid) -> Op:
    """Insert node `mid` between nodes k and k+1 (must give a monotone run)."""
    mid = tuple(mid)
    x, y = seq[k], seq[k + 1]
    if not _monotone(x, mid, y):
        raise ValueError(f"{mid} does not sit monotonically between {x} and {y}")
    tgt = seq[:k + 1] + (mid,) + seq[k + 1:]
    n = sum(x)
    splitting = step_kind(x, mid) == "split"

    def fn(fac):
        g = fac[k]
        pair = (_one(n), g) if splitting else (g, _one(n))
        return [(UNIT, fac[:k] + pair + fac[k + 1:])]
    return Op(f"expand@{k}", seq, tgt, 0, fn)


def op_valley_to_peak(seq, k: int, peak) -> Op:
    """Far-commutation R_x (x)_{R_m} R_z -> R_M at node k (m coarser, M finer than both)."""
    x, m, z = seq[k - 1], seq[k], seq[k + 1]
    peak = tuple(peak)
    if not (refines(x, m) and refines(z, m) and refines(peak, x) and refines(peak, z)):
        raise ValueError(f"bad far-commutation at node {k} of {seq_str(seq)}")
    tgt = seq[:k] + (peak,) + seq[k + 1:]
    n = sum(x)

    def fn(fac):
        return [(UNIT, fac[:k - 1] + (pmul(fac[k - 1], fac[k]), _one(n)) + fac[k + 1:])]
    return Op(f"switch@{k}", seq, tgt, 0, fn)


def op_decorate(seq, i: int, p: dict) -> Op:
    """Multiply factor i by p (p must lie in that factor's ring)."""
    def fn(fac):
        g = pmul(fac[i], p)
        return [(UNIT, fac[:i] + (g,) + fac[i + 1:])] if g else []
    return Op(f"dot@{i}", seq, seq, pdeg(p), fn)


class Chain:
    """Builder for a composite of local moves starting from `seq`."""

    def __init__(self, seq):
        self.start = tuple(tuple(c) for c in seq)
        self.seq = self.start
        self.ops: list[Op] = []
        self.deg = 0

    def _push(self, op: Op) -> "Chain":
        self.ops.append(op)
        self.seq = op.tgt
        self.deg += op.deg
        return self

    def insert_peak(self, k, w):
        return self._push(op_insert_peak(self.seq, k, w))

    def remove_peak(self, k):
        return self._push(op_remove_peak(self.seq, k))

    def insert_valley(self, k, u):
        return self._push(op_insert_valley(self.seq, k, u))

    def remove_valley(self, k):
        return self._push(op_remove_valley(self.seq, k))

    def drop_identity(self, k):
        return self._push(op_drop_identity(self.seq, k))

    def insert_identity(self, k):
        return self._push(op_insert_identity(self.seq, k))

    def collapse(self, k):
        return self._push(op_collapse(self.seq, k))

    def expand(self, k, mid):
        return self._push(op_expand(self.seq, k, mid))

    def valley_to_peak(self, k, peak):
        return self._push(op_valley_to_peak(self.seq, k, peak))

    def decorate(self, i, p):
        return self._push(op_decorate(self.seq, i, p))

    def remove_bump(self, k):
        """Remove whatever peak/valley/identity sits at node k, then the identity step."""
        s = self.seq
        if s[k - 1] != s[k + 1]:
            raise ValueError(f"node {k} of {seq_str(s)} is not a turning point")
        if s[k] == s[k - 1]:
            self.drop_identity(k - 1)
            return self.drop_identity(k - 1) if len(self.seq) > 2 else self
        if refines(s[k], s[k - 1]):
            self.remove_peak(k)
        else:
            self.remove_valley(k)
        if len(self.seq) > 2:
            self.drop_identity(k - 1)
        return self

    def tidy(self):
        """Drop identity steps and collapse monotone runs (an isomorphism)."""
        changed = True
        while changed:
            changed = False
            s = self.seq
            for k in range(len(s) - 1):
                if s[k] == s[k + 1] and len(s) > 2:
                    self.drop_identity(k)
                    changed = True
                    break
            if changed:
                continue
            for k in range(1, len(s) - 1):
                if _monotone(s[k - 1], s[k], s[k + 1]):
                    self.collapse(k)
                    changed = True
                    break
        return self

    def apply(self, terms: list) -> list:
        for op in self.ops:
            nxt = []
            for c, fac in terms:
                for c2, f2 in op.fn(fac):
                    nxt.append((c * c2, f2))
            terms = nxt
        return terms


def tidy_seq(seq) -> tuple:
    return Chain(seq).tidy().seq


# ---------------------------------------------------------------- maps

class BimodMap:
    """Bimodule map Bim(src) -> Bim(tgt) of underlying q-degree `deg`, evaluated per degree."""

    def __init__(self, src: Bim, tgt: Bim, deg: int, compute: Callable[[int], flint.fmpq_mat], label=""):
        self.src, self.tgt, self.deg = src, tgt, deg
        self._compute = compute
        self._cache: dict = {}
        self.label = label

    def __repr__(self):
        return f"BimodMap({self.label or '?'}: {self.src} -> {self.tgt}, deg {self.deg})"

    def matrix(self, d: int) -> flint.fmpq_mat:
        if d not in self._cache:
            r, c = self.tgt.dim(d + self.deg), self.src.dim(d)
            if r == 0 or c == 0:
                m = flint.fmpq_mat(r, c)
            else:
                m = self._compute(d)
                assert (m.nrows(), m.ncols()) == (r, c), (self, d, m.nrows(), m.ncols(), r, c)
            self._cache[d] = m
        return self._cache[d]

    # constructors
    @classmethod
    def from_chain(cls, chain: Chain, label="") -> "BimodMap":
        src, tgt = bim(chain.start), bim(chain.seq)

        def compute(d):
            cols = []
            for j in range(src.dim(d)):
                terms = chain.apply([(UNIT, src.element(d, j))])
                cols.append(tgt.coords(tgt.normalize(terms), d + chain.deg))
            return columns_to_mat(cols, tgt.dim(d + chain.deg))
        return cls(src, tgt, chain.deg, compute, label or "chain")

    @classmethod
    def from_fn(cls, src: Bim, tgt: Bim, deg: int, fn, label="") -> "BimodMap":
        """fn maps a pure tensor of src to a list of (coef, pure tensor of tgt)."""
        def compute(d):
            cols = []
            for j in range(src.dim(d)):
                cols.append(tgt.coords(tgt.normalize(fn(src.element(d, j))), d + deg))
            return columns_to_mat(cols, tgt.dim(d + deg))
        return cls(src, tgt, deg, compute, label)

    @classmethod
    def identity(cls, b: Bim) -> "BimodMap":
        return cls(b, b, 0, lambda d: linalg.identity(b.dim(d)), "id")

    @classmethod
    def zero(cls, src: Bim, tgt: Bim, deg: int) -> "BimodMap":
        return cls(src, tgt, deg, lambda d: flint.fmpq_mat(tgt.dim(d + deg), src.dim(d)), "0")

    def __matmul__(self, other: "BimodMap") -> "BimodMap":
        """self o other."""
        if other.tgt is not self.src:
            raise ValueError(f"cannot compose {self} after {other}")
        f, g = other, self
        return BimodMap(f.src, g.tgt, f.deg + g.deg,
                        lambda d: g.matrix(d + f.deg) * f.matrix(d), f"{g.label}*{f.label}")

    def __add__(self, other: "BimodMap") -> "BimodMap":
        self._same_shape(other)
        return BimodMap(self.src, self.tgt, self.deg,
                        lambda d: self.matrix(d) + other.matrix(d), f"{self.label}+{other.label}")

    def __sub__(self, other: "BimodMap") -> "BimodMap":
        self._same_shape(other)
        return BimodMap(self.src, self.tgt, self.deg,
                        lambda d: self.matrix(d) - other.matrix(d), f"{self.label}-{other.label}")

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "BimodMap":
        c = linalg.fq(c)
        return BimodMap(self.src, self.tgt, self.deg, lambda d: self.matrix(d) * c, f"{c}*{self.label}")

    def _same_shape(self, other):
        if other.src is not self.src or other.tgt is not self.tgt or other.deg != self.deg:
            raise ValueError(f"shape mismatch: {self} vs {other}")

    def inverse(self) -> "BimodMap":
        if self.src.hilbert() * qpow(self.deg) != self.tgt.hilbert():
            raise ValueError(f"{self} cannot be invertible: Hilbert series differ")

        def compute(d):
            return self.matrix(d + self.deg).inv()
        return BimodMap(self.tgt, self.src, -self.deg, compute, f"inv({self.label})")

    # checks
    def is_zero(self, D: int, target_bound: bool = False) -> bool:
        """Zero on all source degrees <= D (and image degree <= D if target_bound)."""
        return all(linalg.is_zero(self.matrix(d)) for d in range(0, D + 1)
                   if not target_bound or d + self.deg <= D)

    def is_iso(self, D: int) -> bool:
        if self.src.hilbert() * qpow(self.deg) != self.tgt.hilbert():
            return False
        for d in range(0, D + 1):
            m = self.matrix(d)
            if m.nrows() != m.ncols() or linalg.rank(m) != m.ncols():
                return False
        return True

    def intertwines(self, D: int) -> bool:
        """Check phi(p b) = p phi(b) and phi(b p) = phi(b) p for ring generators, degrees <= D."""
        for p in ring_generators(self.src.codomain):
            k = pdeg(p)
            for d in range(0, D - k + 1):
                lhs = self.matrix(d + k) * self.src.left_action(p, d)
                rhs = self.tgt.left_action(p, d + self.deg) * self.matrix(d)
                if lhs != rhs:
                    return False
        for p in ring_generators(self.src.domain):
            k = pdeg(p)
            for d in range(0, D - k + 1):
                lhs = self.matrix(d + k) * self.src.right_action(p, d)
                rhs = self.tgt.right_action(p, d + self.deg) * self.matrix(d)
                if lhs != rhs:
                    return False
        return True


def proportional(f: BimodMap, g: BimodMap, D: int):
    """lambda with f = lambda g in all degrees <= D (g nonzero somewhere), else None."""
    lam = None
    for d in range(0, D + 1):
        a, b = f.matrix(d), g.matrix(d)
        if linalg.is_zero(a) and linalg.is_zero(b):
            continue
        r = linalg.scalar_ratio(a, b)
        if r is None or (lam is not None and r != lam):
            return None
        lam = r
    return lam
