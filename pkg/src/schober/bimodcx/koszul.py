"""Koszul complexes K(X) and the (k, l, s) decomposition of K(Rickard).

K(X) is X tensored with an exterior algebra on xi_1..xi_b, twisted by the
contraction xi_b^* (the Koszul complex of the sequence 1, 0, ..., 0).  In
column W_j of a Rickard complex the basis is changed to

    zeta_t = sum_{i <= t} (-1)^{i-1} e_{t-i}(M) xi_i,

M being the alphabet of the rung of thickness d - j at the top of the ladder.
Exterior monomials carry wt(xi_i) = q^{2i-2b} t^{-1}.  Columns are indexed
by j (the straight strand); the ladder label is k = b - j.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache

import sympy

from .. import linalg
from .complexes import WebComplex, gaussian_eliminate, same_complex
from .core import UNIT, BimodMap, Chain, bim, pdeg, web_shift
from .homs import hom_basis
from .rickard import PaddedChain, _tidy_iso, chi_plus, ladder, rickard, rickard_seq


# ---------------------------------------------------------------- exterior algebra

def subsets(b: int) -> list[tuple]:
    """Subsets of {1..b} as sorted tuples, ordered by size then lexicographically."""
    return [S for r in range(b + 1) for S in itertools.combinations(range(1, b + 1), r)]


def xi_weight(i: int, b: int) -> tuple[int, int]:
    """(q, t) weight of xi_i."""
    return 2 * i - 2 * b, -1


def mono_weight(S, b: int) -> int:
    return sum(2 * i - 2 * b for i in S)


def contraction(S, i):
    """xi_i^* on the monomial xi_S: (sign, S minus i) or None."""
    if i not in S:
        return None
    p = S.index(i)
    return (-1) ** p, S[:p] + S[p + 1:]


# ---------------------------------------------------------------- zeta basis

def _esym(xs, r):
    if r < 0 or r > len(xs):
        return sympy.Integer(0)
    return sympy.Add(*[sympy.Mul(*c) for c in itertools.combinations(xs, r)]) if r else sympy.Integer(1)


def _hsym(xs, r):
    if r < 0:
        return sympy.Integer(0)
    if r == 0:
        return sympy.Integer(1)
    return sympy.Add(*[sympy.Mul(*c) for c in itertools.combinations_with_replacement(xs, r)]) if xs else sympy.Integer(0)


@dataclass
class KoszulData:
    """Change of basis xi <-> zeta on Lambda[xi_1..xi_b] over Sym(M), |M| = m."""
    b: int
    m: int
    xs: tuple
    weights: dict                       # i -> (q, t)
    zeta: dict                          # (S, T) -> coefficient of xi_S in zeta_T
    zeta_inv: dict                      # (T, S) -> coefficient of zeta_T in xi_S
    basis: list = field(default_factory=list)

    def linear(self, t: int) -> dict:
        """zeta_t as {i: coefficient of xi_i}."""
        return {i: (-1) ** (i - 1) * _esym(self.xs, t - i) for i in range(1, t + 1)}

    def d_zeta(self) -> list:
        """d(zeta_t) for t = 1..b, where d is Sym(M)-linear with d(xi_i) = delta_{i,b}."""
        out = []
        for t in range(1, self.b + 1):
            out.append(sympy.expand(self.linear(t).get(self.b, 0)))
        return out

    def check_inverse(self) -> bool:
        """xi_i = sum_t (-1)^{t-1} h_{i-t}(M) zeta_t, expanded back into xi's."""
        for i in range(1, self.b + 1):
            acc = {}
            for t in range(1, i + 1):
                c = (-1) ** (t - 1) * _hsym(self.xs, i - t)
                for r, v in self.linear(t).items():
                    acc[r] = acc.get(r, 0) + c * v
            for r in range(1, self.b + 1):
                if sympy.expand(acc.get(r, 0) - (1 if r == i else 0)) != 0:
                    return False
        return True

    def check_triangular(self) -> bool:
        """zeta_T = +-xi_T + (terms xi_S with S < T entrywise); inverse matrices multiply to 1."""
        for (S, T), v in self.zeta.items():
            if v == 0:
                continue
            if len(S) != len(T) or any(s > t for s, t in zip(S, T)):
                return False
            if S == T and v not in (1, -1):
                return False
        for T1 in self.basis:
            for T2 in self.basis:
                acc = sum((self.zeta_inv.get((T1, S), 0) * self.zeta.get((S, T2), 0) for S in self.basis),
                          sympy.Integer(0))
                if sympy.expand(acc - (1 if T1 == T2 else 0)) != 0:
                    return False
        return True

    def d_matrix_zeta(self) -> dict:
        """The contraction xi_b^* written in the zeta basis: (T', T) -> coefficient."""
        out = {}
        for T in self.basis:
            for S in self.basis:
                c = self.zeta.get((S, T), 0)
                if c == 0:
                    continue
                hit = contraction(S, self.b)
                if hit is None:
                    continue
                sg, S2 = hit
                for T2 in self.basis:
                    w = self.zeta_inv.get((T2, S2), 0)
                    if w != 0:
                        out[(T2, T)] = out.get((T2, T), 0) + sg * w * c
        return {k: sympy.expand(v) for k, v in out.items() if sympy.expand(v) != 0}


@lru_cache(maxsize=None)
def zeta_basis(b: int, m: int) -> KoszulData:
    """Basis change for exterior rank b over an alphabet of size m."""
    if b < 1:
        raise ValueError("b must be positive")
    xs = tuple(sympy.symbols(f"m1:{m + 1}")) if m else ()
    coef = lambda t, i: (-1) ** (i - 1) * _esym(xs, t - i) if i <= t else sympy.Integer(0)
    icoef = lambda i, t: (-1) ** (t - 1) * _hsym(xs, i - t) if t <= i else sympy.Integer(0)
    basis = subsets(b)
    zeta, zinv = {}, {}
    for T in basis:
        for S in basis:
            if len(S) != len(T):
                continue
            if not T:
                zeta[(S, T)] = sympy.Integer(1)
                zinv[(T, S)] = sympy.Integer(1)
                continue
            v = sympy.expand(sympy.Matrix(len(T), len(T), lambda p, q: coef(T[p], S[q])).det())
            if v != 0:
                zeta[(S, T)] = v
            w = sympy.expand(sympy.Matrix(len(T), len(T), lambda p, q: icoef(S[p], T[q])).det())
            if w != 0:
                zinv[(T, S)] = w
    weights = {i: xi_weight(i, b) for i in range(1, b + 1)}
    return KoszulData(b, m, xs, weights, zeta, zinv, basis)


def lemma_check(b: int, m: int) -> dict:
    """Symbolic check of d(zeta_t) for t = 1..b, plus the inverse and triangularity."""
    K = zeta_basis(b, m)
    dz = K.d_zeta()
    sign = (-1) ** (b - 1)
    expected = [sign if t == b else 0 for t in range(1, b + 1)]
    dz_mat = K.d_matrix_zeta()
    # in the zeta basis the contraction is sign * zeta_b^*
    want = {}
    for T in K.basis:
        hit = contraction(T, b)
        if hit is not None:
            want[(hit[1], T)] = sign * hit[0]
    return {
        "b": b, "m": m,
        "d_zeta": [str(v) for v in dz],
        "unit_at_b": sign,
        "identity": [sympy.expand(v - e) == 0 for v, e in zip(dz, expected)] == [True] * b,
        "inverse": K.check_inverse(),
        "triangular": K.check_triangular(),
        "d_in_zeta_basis": dz_mat == want,
    }


# ---------------------------------------------------------------- K(X)

def koszul(X: WebComplex, b: int, name: str | None = None) -> WebComplex:
    """K(X): objects X_i (x) xi_S, differential d_X (x) 1 plus (-1)^h 1 (x) xi_b^*.

    Object order is (object of X, subset of {1..b}) lexicographic, see subsets().
    """
    if b < 1:
        raise ValueError("b must be positive")
    subs = subsets(b)
    pos = {S: n for n, S in enumerate(subs)}
    K = WebComplex(name=name or f"K({X.name})")
    for o in X.objs:
        for S in subs:
            K.add(o.seq, o.shift + mono_weight(S, b), o.h - len(S), f"{o.label}|{''.join(map(str, S))}")
    N = len(subs)
    for (t, s), f in X.d.items():
        for S in subs:
            K.d[(t * N + pos[S], s * N + pos[S])] = f
    for i, o in enumerate(X.objs):
        ident = BimodMap.identity(o.bim)
        for S in subs:
            hit = contraction(S, b)
            if hit is None:
                continue
            sg = hit[0] * (-1) ** o.h
            K.set_d(i * N + pos[hit[1]], i * N + pos[S], ident if sg == 1 else -ident)
    return K


# ---------------------------------------------------------------- column maps

def _m_alphabet(a, b, c, d, j) -> list[int]:
    """Global variable indices of the rung of thickness d - j in (c, d-j, j)."""
    return list(range(c, c + d - j))


def _sympy_to_raw(expr, xs, idx, n) -> dict:
    out = {}
    for mon, cf in sympy.Poly(expr, *xs).terms():
        e = [0] * n
        for k, p in zip(idx, mon):
            e[k] = p
        cf = sympy.Rational(cf)
        out[tuple(e)] = UNIT * int(cf.p) / int(cf.q)
    return out


_COLUMN_CACHE: dict = {}


def column_map(a, b, c, d, j, expr, xs) -> BimodMap | None:
    """Multiplication by a symmetric polynomial in M on the tidied W_j."""
    expr = sympy.expand(expr)
    if expr == 0:
        return None
    key = (a, b, c, d, j, str(expr))
    if key in _COLUMN_CACHE:
        return _COLUMN_CACHE[key]
    seq = Chain(rickard_seq(a, b, c, d, j)).tidy().seq
    B = bim(seq)
    if expr.is_number:
        f = BimodMap.identity(B)
        if expr != 1:
            r = sympy.Rational(expr)
            f = f.scale(Fraction(int(r.p), int(r.q)))
    else:
        n = a + b
        p = _sympy_to_raw(expr, xs, _m_alphabet(a, b, c, d, j), n)
        pc = PaddedChain(ladder(a, b, c, d, j))
        pc.decorate(2, p)
        f = BimodMap.from_chain(pc.ch, "poly")
        t, _ = _tidy_iso(rickard_seq(a, b, c, d, j))
        if t.src is not t.tgt:
            f = t @ f @ t.inverse()
        assert f.src is B and f.tgt is B and f.deg == pdeg(p)
    _COLUMN_CACHE[key] = f
    return f


# ---------------------------------------------------------------- P'_{k,l,s}

class PklsError(AssertionError):
    def __init__(self, msg, kls=None):
        super().__init__(f"{msg} at (k,l,s)={kls}" if kls is not None else msg)
        self.kls = kls


@dataclass
class PklsResult:
    abcd: tuple
    D: int
    complex: WebComplex                   # K(Rickard) in the zeta bases
    labels: dict                          # object index -> (k, l, s, T)
    types: dict                           # (tgt, src) -> "v" | "h" | "c"
    d2: bool = False
    l0: dict = field(default_factory=dict)
    subquotients: list = field(default_factory=list)
    chi_m: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.d2 and self.l0.get("ok", False) and all(r["ok"] for r in self.subquotients)

    def to_json(self) -> dict:
        return {
            "abcd": list(self.abcd), "D": self.D, "ok": self.ok,
            "objects": len(self.complex.objs),
            "components": {t: sum(1 for v in self.types.values() if v == t) for t in "vhc"},
            "d2": self.d2, "l0": self.l0, "subquotients": self.subquotients, "chi_m": self.chi_m,
        }


def _sub(C: WebComplex, keep: list, name: str) -> WebComplex:
    out = C._without(set(range(len(C.objs))) - set(keep))
    out.name = name
    return out


def imcs(a, b, c, d, s, D=16) -> WebComplex:
    """Rickard complex of (a, b-s, c, d-s) whiskered by an s-strand, boundaries (a,b), (c,d)."""
    bb, dd = b - s, d - s
    C = WebComplex(name=f"IMCS^{s}({a},{b},{c},{d})")
    js = list(range(0, min(bb, dd) + 1))
    for jp in js:
        raw = rickard_seq(a, bb, c, dd, jp, s)
        seq = Chain(raw).tidy().seq
        assert web_shift(seq) == web_shift(raw)
        C.add(seq, -jp * (a - dd + 1) + web_shift(seq), jp, f"Y{jp}")
    for jp in js[:-1]:
        C.set_d(jp + 1, jp, chi_plus(0, a, bb, c, dd, jp, D, s=s))
    return C


def find_chain_iso(I: WebComplex, Q: WebComplex, D: int, seed: int = 0, tries: int = 4):
    """A degree-0 chain isomorphism I -> Q certified up to D, or None.

    Components are searched in the Hom spaces of the right degree; a generic
    element of the space of chain maps is tested for invertibility.
    """
    hs = sorted(set(I.hdegrees()) | set(Q.hdegrees()))
    for h in hs:
        hi = [I.objs[i].hilbert() for i in I.at(h)]
        hq = [Q.objs[i].hilbert() for i in Q.at(h)]
        if (sum(hi[1:], hi[0]) if hi else None) != (sum(hq[1:], hq[0]) if hq else None):
            return None
    unknowns = []      # (x, y, basis map)
    for y, oy in enumerate(I.objs):
        for x in Q.at(oy.h):
            ox = Q.objs[x]
            for f in hom_basis(oy.bim, ox.bim, oy.shift - ox.shift, "mu"):
                unknowns.append((x, y, f))
    if not unknowns:
        return None
    jmin = min(I.qmin(), Q.qmin())
    rows = []
    for y, oy in enumerate(I.objs):
        for x2 in Q.at(oy.h + 1):
            for jj in range(jmin, D + 1):
                e = jj - oy.shift
                if e < 0 or oy.bim.dim(e) == 0 or Q.dim(x2, jj) == 0:
                    continue
                blocks = []
                for x, yy, f in unknowns:
                    m = None
                    if yy == y and (x2, x) in Q.d:
                        m = Q.d[(x2, x)].matrix(e + f.deg) * f.matrix(e)
                    elif x == x2 and (yy, y) in I.d:
                        g = I.d[(yy, y)]
                        m = -(f.matrix(e + g.deg) * g.matrix(e))
                    blocks.append(m)
                nr, nc = Q.dim(x2, jj), oy.bim.dim(e)
                for r in range(nr):
                    for cc in range(nc):
                        rows.append([0 if m is None else m[r, cc] for m in blocks])
    nvar = len(unknowns)
    N = linalg.nullspace(linalg.from_rows(rows, nvar)) if rows else linalg.identity(nvar)
    if N.ncols() == 0:
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [sum(N[i, k] * rng.randint(1, 97) for k in range(N.ncols())) for i in range(nvar)]
        mu = {}
        for (x, y, f), cf in zip(unknowns, coeffs):
            if cf == 0:
                continue
            g = f.scale(cf)
            mu[(x, y)] = mu[(x, y)] + g if (x, y) in mu else g
        if _is_iso_family(I, Q, mu, D):
            return mu
    return None


def _is_iso_family(I, Q, mu, D) -> bool:
    jmin = min(I.qmin(), Q.qmin())
    for h in sorted(set(I.hdegrees()) | set(Q.hdegrees())):
        ys, xs = I.at(h), Q.at(h)
        for jj in range(jmin, D + 1):
            cdims = [I.dim(y, jj) for y in ys]
            rdims = [Q.dim(x, jj) for x in xs]
            if sum(cdims) != sum(rdims):
                return False
            if not sum(cdims):
                continue
            M = linalg.zeros(sum(rdims), sum(cdims))
            r0 = 0
            for xi, x in enumerate(xs):
                c0 = 0
                for yi, y in enumerate(ys):
                    f = mu.get((x, y))
                    if f is not None and rdims[xi] and cdims[yi]:
                        m = f.matrix(jj - I.objs[y].shift)
                        for r in range(m.nrows()):
                            for cc in range(m.ncols()):
                                M[r0 + r, c0 + cc] = m[r, cc]
                    c0 += cdims[yi]
                r0 += rdims[xi]
            if linalg.rank(M) != M.nrows():
                return False
    return True


def pkls_decompose(a, b, c, d, D=16, chi_check: bool = True) -> PklsResult:
    """K(Rickard) in zeta bases, its (k,l,s) pieces and the three verifications.

    Raises PklsError naming the offending (k,l,s) if any check fails.
    """
    if a + b != c + d or b > min(a, c, d) or b < 1:
        raise ValueError("need a+b = c+d and 1 <= b <= min(a,c,d)")
    C = rickard(a, b, c, d, D)
    X = koszul(C, b)
    subs = subsets(b)
    N = len(subs)
    js = [o.h for o in C.objs]
    data = {j: zeta_basis(b, d - j) for j in js}

    def phi(j, S, T):
        K = data[j]
        return column_map(a, b, c, d, j, K.zeta.get((S, T), 0), K.xs)

    def phi_inv(j, T, S):
        K = data[j]
        return column_map(a, b, c, d, j, K.zeta_inv.get((T, S), 0), K.xs)

    Z = WebComplex(name=f"KC({a},{b},{c},{d})")
    labels = {}
    for j in js:
        for T in subs:
            o = X.objs[j * N + subs.index(T)]
            k = b - j
            l = sum(1 for t in T if t <= k)
            idx = Z.add(o.seq, o.shift, o.h, f"W{j}|{''.join(map(str, T))}")
            labels[idx] = (k, l, len(T) - l, T)
    # vertical part: written symbolically in the zeta basis
    for j in js:
        dz = data[j].d_matrix_zeta()
        for (T2, T), v in dz.items():
            f = column_map(a, b, c, d, j, v * (-1) ** j, data[j].xs)
            Z.set_d(j * N + subs.index(T2), j * N + subs.index(T), f)
    # horizontal part: Phi_{j+1}^{-1} o chi o Phi_j
    for j in js[:-1]:
        chi = C.d[(j + 1, j)]
        for T in subs:
            for T2 in subs:
                if len(T2) != len(T):
                    continue
                acc = None
                for S in subs:
                    if len(S) != len(T):
                        continue
                    p, q = phi(j, S, T), phi_inv(j + 1, T2, S)
                    if p is None or q is None:
                        continue
                    term = q @ chi @ p
                    acc = term if acc is None else acc + term
                if acc is not None:
                    Z.set_d((j + 1) * N + subs.index(T2), j * N + subs.index(T), acc)
    Z = Z.prune_zero(D)
    res = PklsResult((a, b, c, d), D, Z, labels, {})

    # component types
    for (t, s_), f in Z.d.items():
        k, l, s, _ = labels[s_]
        k2, l2, s2, _ = labels[t]
        if k2 == k:
            typ = "v" if (l2, s2) == ((l, s - 1) if k < b else (l - 1, s)) else None
        elif k2 == k - 1:
            typ = {(l, s): "h", (l - 1, s + 1): "c"}.get((l2, s2))
        else:
            typ = None
        if typ is None:
            raise PklsError(f"component to {(k2, l2, s2)} is not of type v/h/c", (k, l, s))
        res.types[(t, s_)] = typ

    # (i) total differential squares to zero
    res.d2 = Z.check_d2(D)
    if not res.d2:
        raise PklsError("d^v + d^h + d^c does not square to zero")

    # (ii) the l = 0 part is a subcomplex retracting onto W_b
    l0 = [i for i, lab in labels.items() if lab[1] == 0]
    for (t, s_) in Z.d:
        if s_ in l0 and t not in l0:
            raise PklsError("l = 0 part is not a subcomplex", labels[s_][:3])
    L0 = _sub(Z, l0, f"KC^l=0({a},{b},{c},{d})")
    M0 = gaussian_eliminate(L0, D, split=False)
    target = WebComplex(name="W_b")
    w0 = C.objs[0]
    target.add(w0.seq, w0.shift, w0.h, "W0")
    ok, msg = same_complex(M0, target, D)
    res.l0 = {"ok": ok, "objects": len(l0), "minimal": M0.summary(), "message": msg}
    if not ok:
        raise PklsError(f"l = 0 part does not retract onto W_b: {msg}")

    # (iii) s-subquotients against the whiskered Rickard complexes
    for s in range(0, b + 1):
        keep = sorted(i for i in l0 if labels[i][2] == s)
        Qs = _sub(Z, keep, f"Q^{s}")
        if any(res.types[(keep[t], keep[u])] != "h" for t, u in Qs.d):
            raise PklsError("subquotient differential is not horizontal", (None, 0, s))
        if not Qs.check_d2(D):
            raise PklsError("d^h does not square to zero", (None, 0, s))
        I = imcs(a, b, c, d, s, D)
        # shift bookkeeping: mu_k has degree q^{s(k-b+1)} t^{-s}
        Gs = set()
        mu_deg = []
        for oy in I.objs:
            for x in Qs.at(oy.h):
                k, _, _, T = labels[keep[x]]
                ox = Qs.objs[x]
                j = b - k
                u = s * (k - b + 1) + web_shift(oy.seq) - web_shift(C.objs[j].seq) - mono_weight(T, b)
                Gs.add(oy.shift - ox.shift - u)
                mu_deg.append({"k": k, "T": list(T), "q": s * (k - b + 1), "t": -s})
        if Gs != {s * (s + a - d)}:
            raise PklsError(f"IMCS shift mismatch {sorted(Gs)} != {s * (s + a - d)}", (None, 0, s))
        mu = find_chain_iso(I, Qs.shifted(q=s * (s + a - d)), D)
        entry = {"s": s, "ok": mu is not None, "columns": sorted({labels[i][0] for i in keep}),
                 "objects": len(keep), "imcs": I.summary(), "imcs_shift": s * (s + a - d),
                 "mu": mu_deg}
        res.subquotients.append(entry)
        if mu is None:
            raise PklsError("no chain isomorphism from IMCS^s", (None, 0, s))

    if chi_check:
        res.chi_m = _chi_m_components(res, C, a, b, c, d, D)
    return res


def _chi_m_components(res, C, a, b, c, d, D):
    """Horizontal zeta-components against chi_m^+, m = sum of index drops."""
    from .core import proportional
    out = []
    Z, labels = res.complex, res.labels
    N = len(subsets(b))
    for (t, s_), typ in sorted(res.types.items()):
        if typ == "v":
            continue
        j = s_ // N
        I, J = labels[s_][3], labels[t][3]
        drops = [i - jj for i, jj in zip(I, J)]
        f = Z.d[(t, s_)]
        if any(x not in (0, 1) for x in drops):
            out.append({"from": list(I), "to": list(J), "j": j, "expected_zero": True, "ok": False})
            continue
        m = sum(drops)
        try:
            g = chi_plus(m, a, b, c, d, j, D)
        except ArithmeticError:
            g = None
        lam = proportional(f, g, max(D - Z.objs[s_].shift, 0)) if g is not None else None
        out.append({"from": list(I), "to": list(J), "j": j, "m": m,
                    "ratio": None if lam is None else str(lam), "ok": lam is not None})
    return out


def koszul_contractible(seq, b: int, D: int) -> bool:
    """K of a single web is contractible (certified by elimination to zero up to D)."""
    X = WebComplex(name=f"{seq}")
    X.add(Chain(tuple(tuple(c) for c in seq)).tidy().seq, 0, 0, "X")
    K = koszul(X, b)
    return K.check_d2(D) and not gaussian_eliminate(K, D, split=False).objs
