"""Sparse polynomials over Q with S_n action, Demazure operators and Frobenius traces.

Variables x_1..x_n are indexed 0..n-1 internally; each has q-degree 2.
Invariant rings R_c are described by a composition c of n.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import linalg
from .qalgebra import HilbertSeries, ONE
from .symcomb import (Composition, Permutation, blocks, longest_element, perm_mul,
                      reduced_word, refines, parabolic_gens)


class Poly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, object] | None = None):
        self.n = n
        t = {}
        if terms:
            for e, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError(f"exponent {e} has wrong length for n={n}")
                    t[e] = t.get(e, 0) + c
        self.terms = {e: c for e, c in t.items() if c}

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def const(cls, n: int, c=1) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, i: int, n: int) -> "Poly":
        """x_{i+1} (0-based index i)."""
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "Poly":
        return cls(len(e), {tuple(e): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """q-degree of the top component (2 * total exponent)."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return 2 * max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, qdeg: int) -> "Poly":
        return Poly._raw(self.n, {e: c for e, c in self.terms.items() if 2 * sum(e) == qdeg})

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Poly._raw(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw(self.n, {})
            return Poly._raw(self.n, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly._raw(self.n, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.n)
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.n, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"n": self.n,
                "terms": [[list(e), c.numerator, c.denominator] for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data) -> "Poly":
        return cls(data["n"], {tuple(e): Fraction(a, b) for e, a, b in data["terms"]})


# ---------------------------------------------------------------- group action

def act(w: Permutation, p: Poly) -> Poly:
    """w . x_i = x_{w(i)}."""
    t = {}
    for e, c in p.terms.items():
        ne = [0] * p.n
        for i, k in enumerate(e):
            ne[w[i]] = k
        t[tuple(ne)] = c
    return Poly._raw(p.n, t)


def swap(i: int, p: Poly) -> Poly:
    """Action of the simple reflection s_i (1-based)."""
    t = {}
    for e, c in p.terms.items():
        e = list(e)
        e[i - 1], e[i] = e[i], e[i - 1]
        t[tuple(e)] = c
    return Poly._raw(p.n, t)


def is_invariant(p: Poly, c: Composition) -> bool:
    return all(swap(i, p) == p for i in parabolic_gens(c))


# ---------------------------------------------------------------- Demazure operators

@lru_cache(maxsize=None)
def _demazure_monomial(i: int, e: tuple) -> tuple:
    a, b = e[i - 1], e[i]
    if a == b:
        return ()
    sign = 1
    if a < b:
        a, b, sign = b, a, -1
    out = []
    for k in range(a - b):
        ne = list(e)
        ne[i - 1] = a - 1 - k
        ne[i] = b + k
        out.append((tuple(ne), sign))
    return tuple(out)


def demazure(i: int, p: Poly) -> Poly:
    """(p - s_i p) / (x_i - x_{i+1}), computed monomial by monomial (always exact)."""
    if not 1 <= i < p.n:
        raise ValueError(f"simple index {i} out of range for n={p.n}")
    t: dict = {}
    for e, c in p.terms.items():
        for ne, s in _demazure_monomial(i, e):
            t[ne] = t.get(ne, 0) + s * c
    return Poly._raw(p.n, {e: c for e, c in t.items() if c})


def demazure_word(word: Sequence[int], p: Poly) -> Poly:
    """D_{i_1} o ... o D_{i_k} applied to p (rightmost first)."""
    for i in reversed(list(word)):
        p = demazure(i, p)
        if not p:
            break
    return p


def trace_word(fine: Composition, coarse: Composition) -> list[int]:
    w = perm_mul(longest_element(coarse), longest_element(fine))
    return reduced_word(w)


def frobenius_trace(fine: Composition, coarse: Composition, p: Poly, check: bool = True) -> Poly:
    """The trace d_fine^coarse: R_fine -> R_coarse."""
    if not refines(fine, coarse):
        raise ValueError(f"{fine} does not refine {coarse}")
    if check and not is_invariant(p, fine):
        raise ValueError(f"polynomial is not S_{fine}-invariant")
    return demazure_word(_trace_word_cached(tuple(fine), tuple(coarse)), p)


@lru_cache(maxsize=None)
def _trace_word_cached(fine, coarse):
    return tuple(trace_word(fine, coarse))


# ---------------------------------------------------------------- symmetric functions

def elementary(alphabet: Sequence[int], k: int, n: int) -> Poly:
    if k < 0 or k > len(alphabet):
        return Poly(n)
    t = {}
    for sub in itertools.combinations(alphabet, k):
        e = [0] * n
        for i in sub:
            e[i] = 1
        t[tuple(e)] = Fraction(1)
    return Poly._raw(n, t)


def complete(alphabet: Sequence[int], k: int, n: int) -> Poly:
    if k < 0:
        return Poly(n)
    t = {}
    for sub in itertools.combinations_with_replacement(alphabet, k):
        e = [0] * n
        for i in sub:
            e[i] += 1
        t[tuple(e)] = Fraction(1)
    return Poly._raw(n, t)


def _det(m: list[list[Poly]], n: int) -> Poly:
    size = len(m)
    if size == 0:
        return Poly.const(n)
    if size == 1:
        return m[0][0]
    out = Poly(n)
    for j in range(size):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor, n)
        out = out + term if j % 2 == 0 else out - term
    return out


def schur(alphabet: Sequence[int], lam: Sequence[int], n: int) -> Poly:
    """Jacobi-Trudi: s_lam = det(h_{lam_i - i + j})."""
    lam = [p for p in lam if p]
    if len(lam) > len(alphabet):
        return Poly(n)
    L = len(lam)
    m = [[complete(alphabet, lam[i] - i + j, n) for j in range(L)] for i in range(L)]
    return _det(m, n)


def schur_tableaux(alphabet: Sequence[int], lam: Sequence[int], n: int) -> Poly:
    """Sum over semistandard tableaux; kept as an independent oracle."""
    lam = [p for p in lam if p]
    cells = [(r, c) for r, row in enumerate(lam) for c in range(row)]
    k = len(alphabet)
    t: dict = {}

    def rec(idx, filling):
        if idx == len(cells):
            e = [0] * n
            for v in filling.values():
                e[alphabet[v]] += 1
            e = tuple(e)
            t[e] = t.get(e, 0) + 1
            return
        r, c = cells[idx]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, k):
            filling[(r, c)] = v
            rec(idx + 1, filling)
            del filling[(r, c)]

    rec(0, {})
    return Poly(n, t)


def box_partitions(rows: int, cols: int) -> list[tuple[int, ...]]:
    """Partitions with at most `rows` parts, each at most `cols`, sorted by size then reverse lex."""
    out = []

    def rec(i, cap, acc):
        if i == rows:
            out.append(tuple(acc))
            return
        for v in range(cap, -1, -1):
            rec(i + 1, v, acc + [v])

    rec(0, cols, [])
    return sorted(out, key=lambda lam: (sum(lam), tuple(-x for x in lam)))


# ---------------------------------------------------------------- invariant rings

def hilbert(c: Composition) -> HilbertSeries:
    den = []
    for p in c:
        den.extend(2 * i for i in range(1, p + 1))
    return HilbertSeries(ONE, den)


def _partitions_into(total: int, sizes: Sequence[int]):
    """Exponent vectors a with sum a_i * sizes_i == total."""
    if not sizes:
        if total == 0:
            yield ()
        return
    s = sizes[0]
    for k in range(total // s, -1, -1):
        for rest in _partitions_into(total - k * s, sizes[1:]):
            yield (k,) + rest


def dominant_exponents(c: Composition, qdeg: int) -> list[tuple]:
    """Exponent vectors of total q-degree qdeg, weakly decreasing within each block of c."""
    if qdeg % 2 or qdeg < 0:
        return []
    return _dominant_cached(tuple(c), qdeg // 2)


@lru_cache(maxsize=None)
def _dominant_cached(c, k):
    def block_parts(size, total, cap):
        if size == 0:
            if total == 0:
                yield ()
            return
        for v in range(min(cap, total), -1, -1):
            if v * size < total:
                break
            for rest in block_parts(size - 1, total - v, v):
                yield (v,) + rest

    def rec(bi, total):
        if bi == len(c):
            if total == 0:
                yield ()
            return
        for t in range(total, -1, -1):
            for part in block_parts(c[bi], t, t):
                for rest in rec(bi + 1, total - t):
                    yield part + rest

    return sorted(set(rec(0, k)), reverse=True)


def monomial_symmetric(c: Composition, e: Sequence[int]) -> Poly:
    """Orbit sum of x^e under S_c."""
    pieces = []
    for blk in blocks(c):
        seg = [e[i] for i in blk]
        pieces.append(sorted(set(itertools.permutations(seg))))
    t = {}
    for ch in itertools.product(*pieces):
        t[tuple(itertools.chain.from_iterable(ch))] = Fraction(1)
    return Poly._raw(len(e), t)


def invariant_coords(p: Poly, c: Composition, qdeg: int) -> list[Fraction]:
    """Coordinates of a homogeneous S_c-invariant in the monomial-symmetric basis."""
    return [p.terms.get(e, Fraction(0)) for e in dominant_exponents(c, qdeg)]


class InvariantRing:
    """R_c = Q[x_1..x_n]^{S_c} with cached graded bases."""

    def __init__(self, c: Composition):
        self.c = tuple(c)
        self.n = sum(self.c)
        self._blocks = blocks(self.c)
        self._cache: dict[int, list[Poly]] = {}
        self._gens = [[elementary(list(b), k, self.n) for k in range(1, len(b) + 1)]
                      for b in self._blocks]

    def generators(self) -> list[Poly]:
        return [g for gs in self._gens for g in gs]

    def hilbert(self) -> HilbertSeries:
        return hilbert(self.c)

    def dim(self, qdeg: int) -> int:
        return len(dominant_exponents(self.c, qdeg))

    def graded_basis(self, qdeg: int) -> list[Poly]:
        """Products of per-block elementary symmetric polynomials of q-degree qdeg."""
        if qdeg % 2 or qdeg < 0:
            raise ValueError("graded pieces live in even nonnegative degree")
        if qdeg in self._cache:
            return self._cache[qdeg]
        sizes = [k for b in self._blocks for k in range(1, len(b) + 1)]
        gens = self.generators()
        out = []
        for a in _partitions_into(qdeg // 2, sizes):
            p = Poly.const(self.n)
            for g, k in zip(gens, a):
                if k:
                    p = p * g ** k
            out.append(p)
        self._cache[qdeg] = out
        return out

    def contains(self, p: Poly) -> bool:
        return is_invariant(p, self.c)


_RINGS: dict = {}


def invariant_ring(c: Composition) -> InvariantRing:
    c = tuple(c)
    if c not in _RINGS:
        _RINGS[c] = InvariantRing(c)
    return _RINGS[c]


def graded_basis(r: InvariantRing, qdeg: int) -> list[Poly]:
    return r.graded_basis(qdeg)


# ---------------------------------------------------------------- Frobenius bases

def _chain_basis(sizes: Sequence[int], offset: int, n: int) -> list[Poly]:
    """Basis of R_{sizes} over R_{sum(sizes)} for one coarse block starting at offset."""
    if len(sizes) <= 1:
        return [Poly.const(n)]
    a, rest = sizes[0], sum(sizes[1:])
    first = list(range(offset, offset + a))
    tail = _chain_basis(sizes[1:], offset + a, n)
    out = []
    for lam in box_partitions(a, rest):
        s = schur(first, lam, n)
        out.extend(s * t for t in tail)
    return out


def _split_fine(fine: Composition, coarse: Composition) -> list[list[int]]:
    out, it = [], iter(fine)
    for p in coarse:
        grp, tot = [], 0
        while tot < p:
            f = next(it)
            grp.append(f)
            tot += f
        if tot != p:
            raise ValueError(f"{fine} does not refine {coarse}")
        out.append(grp)
    return out


def frobenius_basis(fine: Composition, coarse: Composition) -> list[Poly]:
    """A homogeneous R_coarse-basis of R_fine (Schur polynomials along a refinement chain)."""
    return list(_frob_basis_cached(tuple(fine), tuple(coarse)))


@lru_cache(maxsize=None)
def _frob_basis_cached(fine, coarse):
    n = sum(fine)
    per_block, off = [], 0
    for grp in _split_fine(fine, coarse):
        per_block.append(_chain_basis(grp, off, n))
        off += sum(grp)
    out = []
    for ch in itertools.product(*per_block):
        p = Poly.const(n)
        for x in ch:
            p = p * x
        out.append(p)
    out.sort(key=lambda p: p.degree())
    return tuple(out)


def relative_degree(fine: Composition, coarse: Composition) -> int:
    """q-degree of the trace d_fine^coarse, as a positive number 2(l(w_coarse) - l(w_fine))."""
    return sum(p * (p - 1) for p in coarse) - sum(p * (p - 1) for p in fine)


class DualBasisError(ArithmeticError):
    pass


def dual_basis(fine: Composition, coarse: Composition, basis: Sequence[Poly]) -> list[Poly]:
    """Solve for b*_j in R_fine with trace(b_i b*_j) = delta_ij, degree by degree."""
    fine, coarse = tuple(fine), tuple(coarse)
    n = sum(fine)
    top = relative_degree(fine, coarse)
    duals = []
    for j, bj in enumerate(basis):
        dj = top - bj.degree()
        cands = [monomial_symmetric(fine, e) for e in dominant_exponents(fine, dj)]
        # conditions: trace(b_i * cand) = delta_ij, as polynomials in R_coarse
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for i, bi in enumerate(basis):
            out_deg = bi.degree() + dj - top
            if out_deg < 0:
                continue
            images = [frobenius_trace(fine, coarse, bi * c, check=False) for c in cands]
            for e in dominant_exponents(coarse, out_deg):
                rows.append([im.terms.get(e, Fraction(0)) for im in images])
                rhs.append(Fraction(1) if (i == j and out_deg == 0) else Fraction(0))
        A = linalg.from_rows(rows, len(cands))
        B = linalg.from_rows([[r] for r in rhs], 1)
        X = linalg.solve_consistent(A, B)
        if X is None:
            raise DualBasisError(f"no dual for basis element {j} of R_{fine} over R_{coarse}")
        p = Poly(n)
        for k, c in enumerate(cands):
            v = linalg.to_frac(X[k, 0])
            if v:
                p = p + c * v
        duals.append(p)
    return duals


def dual_bases(a: int, b: int) -> tuple[list[Poly], list[Poly]]:
    """Schur basis of R_{ab} over R_{a+b} and its trace-dual basis."""
    if a < 1 or b < 1:
        raise ValueError("dual_bases needs a, b >= 1")
    return frobenius_pair((a, b), (a + b,))


@lru_cache(maxsize=None)
def _frob_pair_cached(fine, coarse):
    basis = frobenius_basis(fine, coarse)
    return tuple(basis), tuple(dual_basis(fine, coarse, basis))


def frobenius_pair(fine: Composition, coarse: Composition) -> tuple[list[Poly], list[Poly]]:
    b, d = _frob_pair_cached(tuple(fine), tuple(coarse))
    return list(b), list(d)


def trace_pairing(fine, coarse, basis, duals) -> list[list[Poly]]:
    return [[frobenius_trace(fine, coarse, bi * dj, check=False) for dj in duals] for bi in basis]
