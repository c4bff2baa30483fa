"""Hecke algebra of S_n and a Schur-algebroid model for classes of singular Soergel bimodules.

Elements are stored as integer arrays: rows indexed by permutations, columns by
q-exponents starting at `lo`.  Hom(c, c') is x_{c'} H x_c and composition is
f g / pi_mid, which we evaluate without division (see `compose`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .qalgebra import BiLaurent, ONE, qbinom
from .symcomb import (Composition, comp_str, compositions, identity_perm, length, longest_length,
                      min_coset_reps, parabolic_gens, parabolic_subgroup, perm_mul,
                      reduced_word, refines, simple, strip_zeros)

_LIMIT = 1 << 52


class HeckeAlg:
    """Multiplication tables for H(S_n)."""

    def __init__(self, n: int):
        self.n = n
        perms = sorted(itertools.permutations(range(n)), key=lambda w: (length(w), w))
        self.perms = perms
        self.index = {w: i for i, w in enumerate(perms)}
        self.lengths = np.array([length(w) for w in perms], dtype=np.int64)
        N = len(perms)
        self.N = N
        self.left = {}
        self.right = {}
        for i in range(1, n):
            s = simple(i, n)
            li = np.array([self.index[perm_mul(s, w)] for w in perms], dtype=np.int64)
            ri = np.array([self.index[perm_mul(w, s)] for w in perms], dtype=np.int64)
            self.left[i] = (li, self.lengths[li] < self.lengths)
            self.right[i] = (ri, self.lengths[ri] < self.lengths)


@lru_cache(maxsize=None)
def algebra(n: int) -> HeckeAlg:
    return HeckeAlg(n)


def _laurent_arr(x: BiLaurent) -> tuple[int, np.ndarray]:
    qp = x.q_part()
    if not qp:
        return 0, np.zeros(0, dtype=np.int64)
    lo, hi = min(qp), max(qp)
    a = np.zeros(hi - lo + 1, dtype=np.int64)
    for k, v in qp.items():
        if v.denominator != 1:
            raise ValueError("Hecke coefficients must be integral Laurent polynomials")
        a[k - lo] = int(v)
    return lo, a


class HeckeElt:
    __slots__ = ("n", "lo", "arr")

    def __init__(self, n: int, lo: int, arr: np.ndarray):
        self.n = n
        self.lo = lo
        self.arr = arr
        self._trim()

    def _trim(self):
        a = self.arr
        if a.size == 0:
            self.lo, self.arr = 0, np.zeros((algebra(self.n).N, 0), dtype=np.int64)
            return
        nz = np.flatnonzero(np.any(a != 0, axis=0))
        if nz.size == 0:
            self.lo, self.arr = 0, np.zeros((a.shape[0], 0), dtype=np.int64)
            return
        if nz[0] > 0 or nz[-1] < a.shape[1] - 1:
            self.arr = a[:, nz[0]:nz[-1] + 1]
            self.lo += int(nz[0])
        if np.abs(self.arr).max() > _LIMIT:
            raise OverflowError("Hecke coefficient exceeds the int64 safety bound")

    # constructors
    @classmethod
    def zero(cls, n: int) -> "HeckeElt":
        return cls(n, 0, np.zeros((algebra(n).N, 0), dtype=np.int64))

    @classmethod
    def basis(cls, w: Sequence[int], coeff: BiLaurent = ONE) -> "HeckeElt":
        n = len(w)
        H = algebra(n)
        lo, c = _laurent_arr(coeff)
        arr = np.zeros((H.N, c.size), dtype=np.int64)
        arr[H.index[tuple(w)]] = c
        return cls(n, lo, arr)

    @classmethod
    def one(cls, n: int) -> "HeckeElt":
        return cls.basis(identity_perm(n))

    @classmethod
    def T(cls, i: int, n: int) -> "HeckeElt":
        return cls.basis(simple(i, n))

    @classmethod
    def from_dict(cls, n: int, d: dict) -> "HeckeElt":
        out = cls.zero(n)
        for w, c in d.items():
            out = out + cls.basis(w, c)
        return out

    # access
    def is_zero(self) -> bool:
        return self.arr.shape[1] == 0

    def coeff(self, w) -> BiLaurent:
        row = self.arr[algebra(self.n).index[tuple(w)]]
        return BiLaurent.from_q({self.lo + k: int(v) for k, v in enumerate(row) if v})

    def support(self) -> list:
        H = algebra(self.n)
        rows = np.flatnonzero(np.any(self.arr != 0, axis=1))
        return [H.perms[r] for r in rows]

    def to_dict(self) -> dict:
        return {w: self.coeff(w) for w in self.support()}

    # arithmetic
    def _aligned(self, other):
        if other.n != self.n:
            raise ValueError(f"Hecke algebras of different rank: {self.n} vs {other.n}")
        if self.is_zero():
            return other.lo, np.zeros_like(other.arr), other.arr
        if other.is_zero():
            return self.lo, self.arr, np.zeros_like(self.arr)
        lo = min(self.lo, other.lo)
        hi = max(self.lo + self.arr.shape[1], other.lo + other.arr.shape[1])
        a = np.zeros((self.arr.shape[0], hi - lo), dtype=np.int64)
        b = np.zeros_like(a)
        a[:, self.lo - lo:self.lo - lo + self.arr.shape[1]] = self.arr
        b[:, other.lo - lo:other.lo - lo + other.arr.shape[1]] = other.arr
        return lo, a, b

    def __add__(self, other):
        lo, a, b = self._aligned(other)
        return HeckeElt(self.n, lo, a + b)

    def __sub__(self, other):
        lo, a, b = self._aligned(other)
        return HeckeElt(self.n, lo, a - b)

    def __neg__(self):
        return HeckeElt(self.n, self.lo, -self.arr)

    def scale(self, c: BiLaurent | int) -> "HeckeElt":
        if isinstance(c, int):
            return HeckeElt(self.n, self.lo, self.arr * c)
        clo, ca = _laurent_arr(c)
        if ca.size == 0 or self.is_zero():
            return HeckeElt.zero(self.n)
        N, L = self.arr.shape
        out = np.zeros((N, L + ca.size - 1), dtype=np.int64)
        for k, v in enumerate(ca):
            if v:
                out[:, k:k + L] += v * self.arr
        return HeckeElt(self.n, self.lo + clo, out)

    def qshift(self, k: int) -> "HeckeElt":
        return HeckeElt(self.n, self.lo + k, self.arr.copy())

    def left_T(self, i: int) -> "HeckeElt":
        """T_{s_i} * self."""
        idx, desc = algebra(self.n).left[i]
        return self._mult_simple(idx, desc)

    def right_T(self, i: int) -> "HeckeElt":
        idx, desc = algebra(self.n).right[i]
        return self._mult_simple(idx, desc)

    def _mult_simple(self, idx, desc):
        if self.is_zero():
            return self
        N, L = self.arr.shape
        out = np.zeros((N, L + 2), dtype=np.int64)
        # T_s T_w = T_{sw} always contributes; descents add (q - q^-1) T_w
        out[:, 1:L + 1] = self.arr[idx]
        d = self.arr[desc]
        out[desc, 2:L + 2] += d
        out[desc, 0:L] -= d
        return HeckeElt(self.n, self.lo - 1, out)

    def left_word(self, word: Sequence[int]) -> "HeckeElt":
        out = self
        for i in reversed(list(word)):
            out = out.left_T(i)
        return out

    def right_word(self, word: Sequence[int]) -> "HeckeElt":
        out = self
        for i in word:
            out = out.right_T(i)
        return out

    def __mul__(self, other):
        if isinstance(other, (int, BiLaurent)):
            return self.scale(other)
        if other.n != self.n:
            raise ValueError(f"Hecke algebras of different rank: {self.n} vs {other.n}")
        # self * other = sum_w self_w T_w * other, with T_w * other built along a BFS tree
        H = algebra(self.n)
        out = HeckeElt.zero(self.n)
        rows = np.flatnonzero(np.any(self.arr != 0, axis=1))
        if rows.size == 0:
            return out
        need = {H.perms[r] for r in rows}
        for w, tw in _left_orbit(other, need):
            r = H.index[w]
            c = BiLaurent.from_q({self.lo + k: int(v) for k, v in enumerate(self.arr[r]) if v})
            out = out + tw.scale(c)
        return out

    __rmul__ = None

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return (self.n == other.n and self.lo == other.lo
                and self.arr.shape == other.arr.shape and np.array_equal(self.arr, other.arr))

    def __hash__(self):
        return hash((self.n, self.lo, self.arr.tobytes()))

    def bar_eps(self) -> BiLaurent:
        """epsilon(h) with epsilon(T_w) = q^{l(w)}."""
        H = algebra(self.n)
        out: dict = {}
        for r in np.flatnonzero(np.any(self.arr != 0, axis=1)):
            l = int(H.lengths[r])
            for k, v in enumerate(self.arr[r]):
                if v:
                    out[self.lo + k + l] = out.get(self.lo + k + l, 0) + int(v)
        return BiLaurent.from_q(out)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for w in self.support():
            word = "".join(map(str, reduced_word(w))) or "e"
            parts.append(f"({self.coeff(w)})*T[{word}]")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> list:
        return [["".join(map(str, reduced_word(w))), self.coeff(w).to_json()] for w in self.support()]


def _left_orbit(h: HeckeElt, need: set):
    """Yield (w, T_w h) for the permutations in need, building T_w h along reduced words."""
    cache = {identity_perm(h.n): h}
    for w in sorted(need, key=length):
        yield w, _tw_times(w, h, cache)


def _tw_times(w, h, cache):
    if w in cache:
        return cache[w]
    word = reduced_word(w)
    i = word[0]
    rest = perm_mul(simple(i, h.n), w)
    out = _tw_times(rest, h, cache).left_T(i)
    cache[w] = out
    return out


# ---------------------------------------------------------------- symmetrizers

def symmetrizer(c: Composition) -> HeckeElt:
    """x_c = sum_{w in W_c} q^{l(w) - l(w_c)} T_w."""
    return _symmetrizer_cached(tuple(c))


@lru_cache(maxsize=None)
def _symmetrizer_cached(c):
    n = sum(c)
    H = algebra(n)
    top = longest_length(c)
    arr = np.zeros((H.N, 2 * top + 1 if top else 1), dtype=np.int64)
    for w in parabolic_subgroup(c):
        arr[H.index[w], length(w)] += 1  # exponent l(w) - top lives at column l(w)
    return HeckeElt(n, -top, arr)


def poincare(c: Composition) -> BiLaurent:
    """pi_c with x_c^2 = pi_c x_c: product of balanced quantum factorials."""
    out = ONE
    for p in c:
        for i in range(1, p + 1):
            out = out * BiLaurent.from_q({i - 1 - 2 * j: 1 for j in range(i)})
    return out


def relative_symmetrizer(coarse: Composition, fine: Composition) -> HeckeElt:
    """y with x_coarse = y x_fine (sum over minimal coset representatives)."""
    return _relsym_cached(tuple(coarse), tuple(fine))


@lru_cache(maxsize=None)
def _relsym_cached(coarse, fine):
    n = sum(coarse)
    H = algebra(n)
    reps = min_coset_reps(fine, coarse)
    shift = longest_length(fine) - longest_length(coarse)
    lmax = max(length(d) for d in reps)
    arr = np.zeros((H.N, lmax + 1), dtype=np.int64)
    for d in reps:
        arr[H.index[d], length(d)] += 1
    return HeckeElt(n, shift, arr)


# ---------------------------------------------------------------- Schur morphisms

@dataclass(frozen=True)
class SchurMor:
    dom: Composition
    cod: Composition
    elt: HeckeElt

    def __post_init__(self):
        if sum(self.dom) != sum(self.cod):
            raise ValueError("domain and codomain have different totals")

    @property
    def n(self):
        return sum(self.dom)

    def __add__(self, other):
        self._check_same(other)
        return SchurMor(self.dom, self.cod, self.elt + other.elt)

    def __sub__(self, other):
        self._check_same(other)
        return SchurMor(self.dom, self.cod, self.elt - other.elt)

    def __neg__(self):
        return SchurMor(self.dom, self.cod, -self.elt)

    def scale(self, c) -> "SchurMor":
        return SchurMor(self.dom, self.cod, self.elt.scale(c))

    def qshift(self, k: int) -> "SchurMor":
        return SchurMor(self.dom, self.cod, self.elt.qshift(k))

    def _check_same(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise ValueError(f"morphisms live in different Hom spaces: "
                             f"{self.dom}->{self.cod} vs {other.dom}->{other.cod}")

    def __eq__(self, other):
        if not isinstance(other, SchurMor):
            return NotImplemented
        return (self.dom, self.cod) == (other.dom, other.cod) and self.elt == other.elt

    def __hash__(self):
        return hash((self.dom, self.cod, self.elt))

    def is_zero(self):
        return self.elt.is_zero()

    def is_member(self) -> bool:
        """Absorption T_s h = q h and h T_s = q h for block-internal s."""
        h = self.elt
        for i in parabolic_gens(self.cod):
            if h.left_T(i) != h.qshift(1):
                return False
        for i in parabolic_gens(self.dom):
            if h.right_T(i) != h.qshift(1):
                return False
        return True

    def __str__(self):
        return f"[{comp_str(self.dom)}->{comp_str(self.cod)}] {self.elt}"

    def to_json(self):
        return {"dom": list(self.dom), "cod": list(self.cod), "element": self.elt.to_json()}


def identity(c: Composition) -> SchurMor:
    c = tuple(c)
    return SchurMor(c, c, symmetrizer(c))


def hecke_mul(x: HeckeElt, y: HeckeElt) -> HeckeElt:
    return x * y


def compose(f: SchurMor, g: SchurMor) -> SchurMor:
    """f o g = f g / pi_mid, evaluated as sum_{w in W^mid} q^{l(w_mid)} f[T_w] T_w g."""
    if f.dom != g.cod:
        raise ValueError(f"cannot compose: {comp_str(f.dom)} != {comp_str(g.cod)}")
    mid = f.dom
    n = sum(mid)
    H = algebra(n)
    reps = min_coset_reps(mid, (n,)) if n else [()]
    top = longest_length(mid)
    out = HeckeElt.zero(n)
    fa = f.elt
    need = []
    for w in reps:
        r = H.index[w]
        if np.any(fa.arr[r] != 0):
            need.append(w)
    for w, tw in _left_orbit(g.elt, set(need)):
        r = H.index[w]
        c = BiLaurent.from_q({fa.lo + k + top: int(v) for k, v in enumerate(fa.arr[r]) if v})
        out = out + tw.scale(c)
    return SchurMor(g.dom, f.cod, out)


def compose_by_division(f: SchurMor, g: SchurMor) -> SchurMor:
    """Reference implementation: Hecke product then exact division by pi_mid."""
    if f.dom != g.cod:
        raise ValueError("object mismatch")
    prod = f.elt * g.elt
    pi = poincare(f.dom)
    d = {w: prod.coeff(w).exact_div(pi) for w in prod.support()}
    return SchurMor(g.dom, f.cod, HeckeElt.from_dict(prod.n, d))


def schur_compose(f: SchurMor, g: SchurMor) -> SchurMor:
    return compose(f, g)


def compose_all(*maps: SchurMor) -> SchurMor:
    """compose_all(f, g, h) = f o g o h."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


# ---------------------------------------------------------------- web classes

def web_class(seq: Sequence[Composition], restrictions: bool = False) -> SchurMor:
    """Class of the web v_0 -> v_1 -> ... -> v_m (zero parts are dropped).

    Steps to a finer composition are splits, steps to a coarser one merges.
    With restrictions=True coarsening steps are unshifted restrictions, which
    differ from merges by q^{l(w_coarse) - l(w_fine)}.
    """
    seq = [strip_zeros(v) for v in seq]
    h = symmetrizer(seq[0])
    shift = 0
    for u, v in zip(seq, seq[1:]):
        if u == v:
            continue
        if refines(v, u):
            continue
        if not refines(u, v):
            raise ValueError(f"incomparable web step {comp_str(u)} -> {comp_str(v)}")
        h = _left_mul_relsym(v, u, h)
        if restrictions:
            shift += longest_length(v) - longest_length(u)
    if shift:
        h = h.qshift(shift)
    return SchurMor(seq[0], seq[-1], h)


def _left_mul_relsym(coarse, fine, h: HeckeElt) -> HeckeElt:
    reps = min_coset_reps(fine, coarse)
    base = longest_length(fine) - longest_length(coarse)
    out = HeckeElt.zero(h.n)
    for d, td in _left_orbit(h, set(reps)):
        out = out + td.qshift(base + length(d))
    return out


def split_class(a: int, b: int) -> SchurMor:
    return web_class([(a + b,), (a, b)])


def merge_class(a: int, b: int) -> SchurMor:
    return web_class([(a, b), (a + b,)])


def whisker(left: Composition, seq: Sequence[Composition], right: Composition) -> list:
    return [tuple(left) + tuple(v) + tuple(right) for v in seq]


def rickard_web(a: int, b: int, c: int, d: int, j: int) -> list:
    """The ladder with j strands passing straight through on the right."""
    return [(a, b), (a, b - j, j), (a + b - j, j), (c, d - j, j), (c, d)]


def rickard_terms(a: int, b: int, c: int, d: int) -> list[tuple[int, int]]:
    """(j, q-shift) for the chain objects, j = 0..min(b, d)."""
    if a + b != c + d:
        raise ValueError("totals differ")
    return [(j, -j * (a - d + 1)) for j in range(min(b, d) + 1)]


def crossing_class(a: int, b: int, c: int, d: int, left=(), right=()) -> SchurMor:
    """sum_j (-1)^j q^{-j(a-d+1)} [W(j)], optionally whiskered."""
    out = None
    for j, sh in rickard_terms(a, b, c, d):
        term = web_class(whisker(left, rickard_web(a, b, c, d, j), right)).qshift(sh)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


def crossing_inverse_class(a: int, b: int, left=(), right=()) -> SchurMor:
    """Class of the negative crossing (b, a) -> (a, b): the bar-mirror of crossing_class."""
    out = None
    for j, sh in rickard_terms(b, a, a, b):
        term = web_class(whisker(left, rickard_web(b, a, a, b, j), right)).qshift(-sh)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


def braid_generator(c: Composition, i: int) -> SchurMor:
    """Crossing of parts i, i+1 (0-based) of c, whiskered by the other parts."""
    a, b = c[i], c[i + 1]
    return crossing_class(a, b, b, a, left=c[:i], right=c[i + 2:])


def char_gdim(h: SchurMor):
    """Graded dimension (as HilbertSeries) of a bimodule with class h."""
    from .polydemazure import hilbert
    c, c2 = h.dom, h.cod
    num = h.elt.bar_eps().shift(longest_length(c) - longest_length(c2))
    num = num.exact_div(poincare(c2))
    return hilbert(c) * num


# ---------------------------------------------------------------- reports

@dataclass
class Case:
    inputs: dict
    status: str
    lhs: object = None
    rhs: object = None
    note: str = ""

    def to_json(self):
        def enc(x):
            if x is None:
                return None
            if hasattr(x, "to_json"):
                return x.to_json()
            return str(x)
        d = {"inputs": self.inputs, "status": self.status, "lhs": enc(self.lhs), "rhs": enc(self.rhs)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class SuiteReport:
    suite: str
    n: int
    cases: list

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    def failures(self):
        return [c for c in self.cases if c.status != "pass"]

    def to_json(self):
        return {"schema": 1, "suite": self.suite, "n": self.n, "status": "pass" if self.passed else "fail",
                "cases": [c.to_json() for c in self.cases]}


def _case(inputs, ok, lhs=None, rhs=None, keep=False, note=""):
    if ok and not keep:
        return Case(inputs, "pass", note=note)
    return Case(inputs, "pass" if ok else "fail", lhs, rhs, note)


def suite_digon(n: int) -> SuiteReport:
    cases = []
    for b in range(2, n + 1):
        for s in range(1, b):
            lhs = web_class([(b,), (s, b - s), (b,)])
            mult = qbinom(b, s)
            rhs = identity((b,)).scale(mult)
            cases.append(_case({"b": b, "s": s, "multiplicity": str(mult)}, lhs == rhs, lhs, rhs))
    return SuiteReport("digon", n, cases)


def suite_braid(n: int) -> SuiteReport:
    cases = []
    for m in range(1, n + 1):
        for c in compositions(m):
            # braid relation on each adjacent triple
            for i in range(len(c) - 2):
                x, y, z = c[i:i + 3]
                L, R = c[:i], c[i + 3:]
                c1 = L + (y, x, z) + R
                c2 = L + (y, z, x) + R
                lhs = compose_all(braid_generator(c2, i), braid_generator(c1, i + 1), braid_generator(c, i))
                d1 = L + (x, z, y) + R
                d2 = L + (z, x, y) + R
                rhs = compose_all(braid_generator(d2, i + 1), braid_generator(d1, i), braid_generator(c, i + 1))
                cases.append(_case({"relation": "braid", "composition": list(c), "position": i}, lhs == rhs, lhs, rhs))
            # far commutativity
            for i in range(len(c) - 1):
                for j in range(i + 2, len(c) - 1):
                    a1 = compose(braid_generator(_swap(c, i), j), braid_generator(c, i))
                    a2 = compose(braid_generator(_swap(c, j), i), braid_generator(c, j))
                    cases.append(_case({"relation": "far", "composition": list(c), "positions": [i, j]},
                                       a1 == a2, a1, a2))
            # invertibility of each generator
            for i in range(len(c) - 1):
                a, b = c[i], c[i + 1]
                g = braid_generator(c, i)
                inv = crossing_inverse_class(a, b, left=c[:i], right=c[i + 2:])
                ok = compose(inv, g) == identity(c) and compose(g, inv) == identity(_swap(c, i))
                cases.append(_case({"relation": "invertible", "composition": list(c), "position": i}, ok))
        # fork sliding: (a, b+c) crossing vs split first
        for a in range(1, m):
            for bc in [m - a]:
                for b in range(1, bc):
                    cc = bc - b
                    cases.extend(_fork_cases(a, b, cc))
    return SuiteReport("braid", n, cases)


def _swap(c, i):
    return c[:i] + (c[i + 1], c[i]) + c[i + 2:]


def _fork_cases(a, b, c):
    out = []
    inp = {"a": a, "b": b, "c": c}
    # split on the strand that crosses over a, after the crossing vs before
    lhs = compose(web_class([(b + c, a), (b, c, a)]), crossing_class(a, b + c, b + c, a))
    rhs = compose_all(crossing_class(a, c, c, a, left=(b,)), crossing_class(a, b, b, a, right=(c,)),
                      web_class([(a, b + c), (a, b, c)]))
    out.append(_case(dict(inp, form="split-right"), lhs == rhs, lhs, rhs))
    lhs = compose(web_class([(a, b + c), (a, b, c)]), crossing_class(b + c, a, a, b + c))
    rhs = compose_all(crossing_class(b, a, a, b, right=(c,)), crossing_class(c, a, a, c, left=(b,)),
                      web_class([(b + c, a), (b, c, a)]))
    out.append(_case(dict(inp, form="split-left"), lhs == rhs, lhs, rhs))
    # merge forms
    lhs = compose(crossing_class(b + c, a, a, b + c), web_class([(b, c, a), (b + c, a)]))
    rhs = compose_all(web_class([(a, b, c), (a, b + c)]), crossing_class(b, a, a, b, right=(c,)),
                      crossing_class(c, a, a, c, left=(b,)))
    out.append(_case(dict(inp, form="merge-left"), lhs == rhs, lhs, rhs))
    lhs = compose(crossing_class(a, b + c, b + c, a), web_class([(a, b, c), (a, b + c)]))
    rhs = compose_all(web_class([(b, c, a), (b + c, a)]), crossing_class(a, c, c, a, left=(b,)),
                      crossing_class(a, b, b, a, right=(c,)))
    out.append(_case(dict(inp, form="merge-right"), lhs == rhs, lhs, rhs))
    return out


def imcs_class(a: int, b: int, c: int, d: int, quad) -> SchurMor:
    """(merge_ik x merge_jl) o (id_i x C_jk x id_l) o (split_ij x split_kl)."""
    i, j, k, l = quad
    split = web_class([(a, b), (i, j, b), (i, j, k, l)])
    cross = crossing_class(j, k, k, j, left=strip_zeros((i,)), right=strip_zeros((l,)))
    merge = web_class([(i, k, j, l), (i + k, j, l), (c, d)])
    return compose_all(merge, _reframe(cross, strip_zeros((i, k, j, l)), strip_zeros((i, j, k, l))), split)


def _reframe(m: SchurMor, cod, dom) -> SchurMor:
    if m.dom != tuple(dom) or m.cod != tuple(cod):
        raise ValueError("reframing changes objects")
    return m


def bialgebra_sides(a: int, b: int, c: int, d: int):
    lhs = web_class([(a, b), (a + b,), (c, d)])
    rhs = None
    terms = []
    for quad in bialg_quadruples_local(a, b, c, d):
        i, j, k, l = quad
        t = imcs_class(a, b, c, d, quad).qshift(-i * l)
        terms.append((quad, -i * l))
        rhs = t if rhs is None else rhs + t
    return lhs, rhs, terms


def bialg_quadruples_local(a, b, c, d):
    from .symcomb import bialg_quadruples
    return bialg_quadruples((a, b), (c, d))


def suite_bialgebra(n: int) -> SuiteReport:
    cases = []
    for m in range(2, n + 1):
        for a in range(1, m):
            for c in range(1, m):
                b, d = m - a, m - c
                lhs, rhs, terms = bialgebra_sides(a, b, c, d)
                inp = {"ab": [a, b], "cd": [c, d],
                       "terms": [{"ijkl": list(q), "shift": s} for q, s in terms]}
                cases.append(_case(inp, lhs == rhs, lhs, rhs))
    return SuiteReport("bialgebra", n, cases)


def square_switch_sides(a: int, b: int, c: int, d: int, r: int, s: int):
    """Both sides of the square switch, or None if the left side is not a valid web."""
    if a + b != c + d:
        raise ValueError("totals differ")
    if b >= c:
        # left: bottom rung s right-to-left, top rung r left-to-right
        if not (0 <= s <= b and 0 <= r <= a + s and c == a + s - r):
            return None
        lhs = web_class([(a, b), (a, s, b - s), (a + s, b - s), (c, r, b - s), (c, d)])
        rhs = None
        for t in range(min(r, s) + 1):
            x, y = r - t, s - t
            if x > a or y > b + x:
                continue
            w = web_class([(a, b), (a - x, x, b), (a - x, b + x), (a - x, y, b + x - y), (c, d)])
            w = w.scale(qbinom(b - c, t))
            rhs = w if rhs is None else rhs + w
    else:
        if not (0 <= s <= a and 0 <= r <= b + s and c == a - s + r):
            return None
        lhs = web_class([(a, b), (a - s, s, b), (a - s, b + s), (a - s, r, b + s - r), (c, d)])
        rhs = None
        for t in range(min(r, s) + 1):
            x, y = r - t, s - t
            if x > b or y > a + x:
                continue
            w = web_class([(a, b), (a, x, b - x), (a + x, b - x), (a + x - y, y, b - x), (c, d)])
            w = w.scale(qbinom(c - b, t))
            rhs = w if rhs is None else rhs + w
    if rhs is None:
        rhs = SchurMor(strip_zeros((a, b)), strip_zeros((c, d)), HeckeElt.zero(a + b))
    return lhs, rhs


def suite_squareswitch(nmax: int, rmax: int = 2) -> SuiteReport:
    cases = []
    for m in range(1, nmax + 1):
        for a in range(m + 1):
            b = m - a
            for c in range(m + 1):
                d = m - c
                for r in range(rmax + 1):
                    for s in range(rmax + 1):
                        sides = square_switch_sides(a, b, c, d, r, s)
                        if sides is None:
                            continue
                        lhs, rhs = sides
                        cases.append(_case({"abcd": [a, b, c, d], "r": r, "s": s}, lhs == rhs, lhs, rhs))
    return SuiteReport("squareswitch", nmax, cases)


def bc_euler_class(ab: Composition, cd: Composition) -> SchurMor:
    """Alternating sum over the BC cube of Q(ab, cd) of the zigzag composite classes."""
    from .symcomb import bifact_cube, zigzag_vertices
    Q = bifact_cube(ab, cd)
    out = None
    for ev, word in zigzag_vertices(Q).items():
        cls = web_class(list(word.comps), restrictions=True)
        if sum(ev) % 2:
            cls = -cls
        out = cls if out is None else out + cls
    return out


def suite_defect(n: int) -> SuiteReport:
    cases = []
    for m in range(2, n + 1):
        for a in range(1, m):
            for c in range(1, m):
                b, d = m - a, m - c
                E = bc_euler_class((a, b), (c, d))
                inp = {"ab": [a, b], "cd": [c, d]}
                if a != d:
                    cases.append(_case(dict(inp, kind="defect"), E.is_zero(), E, "0"))
                else:
                    target = crossing_class(a, b, b, a).qshift(a * b)
                    ok = E == target
                    inv = crossing_inverse_class(a, b).qshift(-a * b)
                    unit = ok and compose(inv, E) == identity((a, b))
                    cases.append(_case(dict(inp, kind="twist"), ok and unit, E, target))
    return SuiteReport("defect", n, cases)


def skein_alpha(kmax: int = 4):
    """Monomials alpha = sign q^k with alpha C - (alpha C)^{-1} = (q - q^-1) id on (1,1)."""
    C = crossing_class(1, 1, 1, 1)
    Cinv = crossing_inverse_class(1, 1)
    idm = identity((1, 1))
    sols = []
    for k in range(-kmax, kmax + 1):
        for sign in (1, -1):
            alpha = BiLaurent.mono(k, 0, sign)
            lhs = C.scale(alpha) - Cinv.scale(BiLaurent.mono(-k, 0, sign))
            if lhs == idm.scale(BiLaurent.from_q({1: 1, -1: -1})):
                sols.append((sign, k))
    return sols


# ---------------------------------------------------------------- perverse-sheaf data

PERVERSE_MAPS = ("i", "i*", "h", "h*", "f", "f*", "g", "g*")


def k_basis(c: Composition) -> list:
    """d with x_c T_d a Z[q,q^-1]-basis of Hom(1^n, c) = x_c H (minimal right coset reps)."""
    n = sum(c)
    H = algebra(n)
    gens = parabolic_gens(c)
    out = []
    for w in H.perms:
        if all(H.lengths[H.left[i][0][H.index[w]]] > H.lengths[H.index[w]] for i in gens):
            out.append(w)
    return out


def yoneda_matrix(phi: SchurMor):
    """Matrix of post-composition with phi on Hom(1^n, dom) -> Hom(1^n, cod), entries sympy Laurent."""
    import sympy
    q = sympy.Symbol("q")
    n = phi.n
    ones = (1,) * n
    src, tgt = k_basis(phi.dom), k_basis(phi.cod)
    top = longest_length(phi.cod)
    M = sympy.zeros(len(tgt), len(src))
    for col, d in enumerate(src):
        h = symmetrizer(phi.dom).right_word(reduced_word(d))
        img = compose(phi, SchurMor(ones, phi.dom, h)).elt
        for row, e in enumerate(tgt):
            cf = img.coeff(e)
            M[row, col] = sum(int(v) * q ** (k + top) for (k, _), v in cf.items())
    return M


@dataclass
class PerverseData:
    """Ranks of A, B, C, D and the eight maps of the square diagram."""

    ranks: dict
    maps: dict

    def __post_init__(self):
        shapes = {"i": ("B", "A"), "i*": ("A", "B"), "h": ("C", "A"), "h*": ("A", "C"),
                  "f": ("D", "B"), "f*": ("B", "D"), "g": ("D", "C"), "g*": ("C", "D")}
        for k, (r, c) in shapes.items():
            if k not in self.maps:
                continue
            m = self.maps[k]
            if (m.rows, m.cols) != (self.ranks[r], self.ranks[c]):
                raise ValueError(f"map {k} has shape {(m.rows, m.cols)}, "
                                 f"expected {(self.ranks[r], self.ranks[c])}")

    def to_json(self):
        return {"schema": 1, "ranks": self.ranks,
                "maps": {k: [[str(x) for x in m.row(r)] for r in range(m.rows)] for k, m in self.maps.items()}}

    @classmethod
    def from_json(cls, data) -> "PerverseData":
        import sympy
        q = sympy.Symbol("q")
        ranks = {k: int(v) for k, v in data["ranks"].items()}
        maps = {}
        for k, rows in data["maps"].items():
            rr = {"i": "B", "i*": "A", "h": "C", "h*": "A", "f": "D", "f*": "B", "g": "D", "g*": "C"}[k]
            cc = {"i": "A", "i*": "B", "h": "A", "h*": "C", "f": "B", "f*": "D", "g": "C", "g*": "D"}[k]
            if not rows:
                maps[k] = sympy.zeros(ranks[rr], ranks[cc])
            else:
                maps[k] = sympy.Matrix([[sympy.sympify(x, locals={"q": q}) for x in r] for r in rows])
        return cls(ranks, maps)


def _is_zero_matrix(M) -> bool:
    import sympy
    return all(sympy.simplify(x) == 0 for x in M)


def _is_laurent_unit(x) -> bool:
    import sympy
    q = sympy.Symbol("q")
    x = sympy.factor(sympy.simplify(x))
    if x == 0:
        return False
    num, den = sympy.fraction(sympy.together(x))
    for p in (num, den):
        P = sympy.Poly(sympy.expand(p), q)
        terms = P.terms()
        if len(terms) != 1 or abs(terms[0][1]) != 1:
            return False
    return True


def _invertible(M) -> bool:
    if M.rows != M.cols:
        return False
    if M.rows == 0:
        return True
    return _is_laurent_unit(M.det(method="berkowitz"))


def _eye(n):
    import sympy
    return sympy.eye(n)


def check_a1(data: PerverseData) -> dict:
    """f: B -> D with t = ff* - id an automorphism of D (A is unused)."""
    f, fs = data.maps["f"], data.maps["f*"]
    t = f * fs - _eye(data.ranks["D"])
    return {"(2) t invertible": _invertible(t)}


def check_a1a1(data: PerverseData) -> dict:
    m = data.maps
    D = data.ranks["D"]
    t = m["f"] * m["f*"] - _eye(D)
    s = m["g"] * m["g*"] - _eye(D)
    return {
        "(1) fi = gh": _is_zero_matrix(m["f"] * m["i"] - m["g"] * m["h"]),
        "(1) i*f* = h*g*": _is_zero_matrix(m["i*"] * m["f*"] - m["h*"] * m["g*"]),
        "(2) t invertible": _invertible(t),
        "(3) s invertible": _invertible(s),
        "(4) hi* = g*f": _is_zero_matrix(m["h"] * m["i*"] - m["g*"] * m["f"]),
        "(5) ih* = f*g": _is_zero_matrix(m["i"] * m["h*"] - m["f*"] * m["g"]),
    }


def check_a2(data: PerverseData) -> dict:
    m = data.maps
    D, B, C = data.ranks["D"], data.ranks["B"], data.ranks["C"]
    f, fs, g, gs = m["f"], m["f*"], m["g"], m["g*"]
    h, hs, i, is_ = m["h"], m["h*"], m["i"], m["i*"]
    t = f * fs - _eye(D)
    s = g * gs - _eye(D)
    a = h * is_ - gs * f
    b = i * hs - fs * g
    out = {
        "(1) fi = gh": _is_zero_matrix(f * i - g * h),
        "(1) i*f* = h*g*": _is_zero_matrix(is_ * fs - hs * gs),
        "(2) t invertible": _invertible(t),
        "(3) s invertible": _invertible(s),
        "(4) a = hi* - g*f invertible": _invertible(a),
        "(5) b = ih* - f*g invertible": _invertible(b),
        "(6) hh* - g*ff*g - id + g*g = 0": _is_zero_matrix(h * hs - gs * f * fs * g - _eye(C) + gs * g),
        "(7) ii* - f*gg*f - id + f*f = 0": _is_zero_matrix(i * is_ - fs * g * gs * f - _eye(B) + fs * f),
        "tsf = ga": _is_zero_matrix(t * s * f - g * a),
        "af* = g*ts": _is_zero_matrix(a * fs - gs * t * s),
        "fb = stg": _is_zero_matrix(f * b - s * t * g),
        "bg* = f*st": _is_zero_matrix(b * gs - fs * s * t),
        "tst = sts": _is_zero_matrix(t * s * t - s * t * s),
    }
    if out["(3) s invertible"]:
        out["hh* = id + af*s^-1 g"] = _is_zero_matrix(h * hs - _eye(C) - a * fs * s.inv() * g)
    else:
        out["hh* = id + af*s^-1 g"] = False
    if out["(2) t invertible"]:
        out["ii* = id + bg*t^-1 f"] = _is_zero_matrix(i * is_ - _eye(B) - b * gs * t.inv() * f)
    else:
        out["ii* = id + bg*t^-1 f"] = False
    return out


def square_data(A: Composition, B: Composition, C: Composition, D: Composition) -> PerverseData:
    """Grothendieck-group data of the square A -> B, A -> C, B -> D, C -> D of inductions.

    Right adjoints are unshifted restrictions.
    """
    def ind(x, y):
        return yoneda_matrix(web_class([x, y]))

    def res(x, y):
        return yoneda_matrix(web_class([x, y], restrictions=True))

    maps = {"i": ind(A, B), "i*": res(B, A), "h": ind(A, C), "h*": res(C, A),
            "f": ind(B, D), "f*": res(D, B), "g": ind(C, D), "g*": res(D, C)}
    ranks = {k: len(k_basis(v)) for k, v in zip("ABCD", (A, B, C, D))}
    return PerverseData(ranks, maps)


def a1_data() -> PerverseData:
    """n = 2: A = X_2 (unused slot), B = X_2 -> D = X_11 through f."""
    import sympy
    f = yoneda_matrix(web_class([(2,), (1, 1)]))
    fs = yoneda_matrix(web_class([(1, 1), (2,)], restrictions=True))
    ranks = {"A": 0, "B": f.cols, "C": 0, "D": f.rows}
    z = sympy.zeros
    maps = {"f": f, "f*": fs, "i": z(f.cols, 0), "i*": z(0, f.cols), "h": z(0, 0), "h*": z(0, 0),
            "g": z(f.rows, 0), "g*": z(0, f.rows)}
    return PerverseData(ranks, maps)


def a2_data() -> PerverseData:
    return square_data((3,), (2, 1), (1, 2), (1, 1, 1))


def a1a1_data() -> PerverseData:
    return square_data((2, 2), (1, 1, 2), (2, 1, 1), (1, 1, 1, 1))


def mutation_report(data: PerverseData, checker) -> list[dict]:
    """Perturb each map in one entry (+1) and record which relations fail."""
    out = []
    for name, M in data.maps.items():
        if M.rows == 0 or M.cols == 0:
            continue
        M2 = M.copy()
        M2[0, 0] = M2[0, 0] + 1
        maps = dict(data.maps)
        maps[name] = M2
        res = checker(PerverseData(data.ranks, maps))
        out.append({"map": name, "failed": sorted(k for k, v in res.items() if not v)})
    return out
