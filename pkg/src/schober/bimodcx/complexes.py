"""Bigraded complexes of realized webs, Gaussian elimination, exactness checks.

An object is q^shift t^h Bim(seq).  A differential component between
objects x -> y is a degree-0 map of shifted bimodules, so its underlying
(unshifted) degree is shift_x - shift_y.  The internal q-degree j of the
complex sees Bim(seq)_{j - shift}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import flint

from .. import linalg
from ..qalgebra import BiLaurent, HilbertSeries, qpow
from .core import Bim, BimodMap, Chain, _frob_raw, bim, proportional, seq_str
from .homs import hom_basis


@dataclass(frozen=True)
class Obj:
    seq: tuple
    shift: int
    h: int
    label: str = ""

    @property
    def bim(self) -> Bim:
        return bim(self.seq)

    def hilbert(self) -> HilbertSeries:
        return self.bim.hilbert() * qpow(self.shift)

    def __str__(self):
        return f"q^{self.shift} t^{self.h} {seq_str(self.seq)}"


class IncoherentComplex(AssertionError):
    pass


@dataclass
class WebComplex:
    objs: list = field(default_factory=list)
    d: dict = field(default_factory=dict)   # (tgt index, src index) -> BimodMap
    name: str = ""

    # ---------------------------------------------------------------- building
    def add(self, seq, shift: int, h: int, label: str = "") -> int:
        self.objs.append(Obj(tuple(tuple(c) for c in seq), shift, h, label))
        return len(self.objs) - 1

    def set_d(self, tgt: int, src: int, f: BimodMap) -> None:
        x, y = self.objs[src], self.objs[tgt]
        if y.h != x.h + 1:
            raise ValueError("differential must raise homological degree by one")
        if f.src is not x.bim or f.tgt is not y.bim:
            raise ValueError(f"component {f} does not match objects {x} -> {y}")
        if f.deg != x.shift - y.shift:
            raise ValueError(f"component {f} has degree {f.deg}, expected {x.shift - y.shift}")
        self.d[(tgt, src)] = f

    def shifted(self, q: int = 0, t: int = 0) -> "WebComplex":
        out = WebComplex(name=self.name)
        for o in self.objs:
            out.objs.append(Obj(o.seq, o.shift + q, o.h + t, o.label))
        sign = -1 if t % 2 else 1
        for k, f in self.d.items():
            out.d[k] = f if sign == 1 else -f
        return out

    # ---------------------------------------------------------------- queries
    def hdegrees(self) -> list[int]:
        return sorted({o.h for o in self.objs})

    def at(self, h: int) -> list[int]:
        return [i for i, o in enumerate(self.objs) if o.h == h]

    def qmin(self) -> int:
        return min((o.shift for o in self.objs), default=0)

    def euler(self) -> dict:
        """h -> Hilbert series of the chain group (sum over objects)."""
        out: dict = {}
        for o in self.objs:
            out[o.h] = out[o.h] + o.hilbert() if o.h in out else o.hilbert()
        return out

    def euler_q(self) -> HilbertSeries:
        tot = None
        for o in self.objs:
            h = o.hilbert() if o.h % 2 == 0 else -o.hilbert()
            tot = h if tot is None else tot + h
        return tot if tot is not None else HilbertSeries(BiLaurent(), [])

    def dim(self, i: int, j: int) -> int:
        o = self.objs[i]
        return o.bim.dim(j - o.shift)

    def dmatrix(self, h: int, j: int) -> flint.fmpq_mat:
        """Differential C^h -> C^{h+1} in internal degree j."""
        src, tgt = self.at(h), self.at(h + 1)
        cdims = [self.dim(i, j) for i in src]
        rdims = [self.dim(i, j) for i in tgt]
        M = flint.fmpq_mat(sum(rdims), sum(cdims))
        r0 = 0
        for ti, t in enumerate(tgt):
            c0 = 0
            for si, s in enumerate(src):
                f = self.d.get((t, s))
                if f is not None and rdims[ti] and cdims[si]:
                    m = f.matrix(j - self.objs[s].shift)
                    for a in range(m.nrows()):
                        for b in range(m.ncols()):
                            v = m[a, b]
                            if v != 0:
                                M[r0 + a, c0 + b] = v
                c0 += cdims[si]
            r0 += rdims[ti]
        return M

    def check_d2(self, D: int) -> bool:
        hs = self.hdegrees()
        for h in hs:
            for j in range(self.qmin(), D + 1):
                a, b = self.dmatrix(h, j), self.dmatrix(h + 1, j)
                if a.nrows() and b.nrows() and a.ncols() and not linalg.is_zero(b * a):
                    return False
        return True

    def homology(self, D: int) -> dict:
        """(h, j) -> dimension of homology, for internal degrees j <= D."""
        out = {}
        hs = self.hdegrees()
        for j in range(self.qmin(), D + 1):
            for h in hs:
                n = sum(self.dim(i, j) for i in self.at(h))
                if n == 0:
                    continue
                r_out = linalg.rank(self.dmatrix(h, j))
                r_in = linalg.rank(self.dmatrix(h - 1, j))
                hd = n - r_out - r_in
                if hd:
                    out[(h, j)] = hd
        return out

    def check_exact(self, D: int) -> bool:
        return not self.homology(D)

    def degree_euler(self, D: int) -> list:
        """Alternating sum of chain dimensions for each internal degree qmin..D."""
        lo = self.qmin()
        return [sum((-1) ** o.h * self.dim(i, j) for i, o in enumerate(self.objs)) for j in range(lo, D + 1)]

    # ---------------------------------------------------------------- surgery
    def copy(self) -> "WebComplex":
        return WebComplex(list(self.objs), dict(self.d), self.name)

    def _without(self, drop: set) -> "WebComplex":
        keep = [i for i in range(len(self.objs)) if i not in drop]
        pos = {i: k for k, i in enumerate(keep)}
        out = WebComplex([self.objs[i] for i in keep], {}, self.name)
        for (t, s), f in self.d.items():
            if t in pos and s in pos:
                out.d[(pos[t], pos[s])] = f
        return out

    def cancel(self, y: int, x: int) -> "WebComplex":
        """Gaussian elimination of the isomorphism component x -> y."""
        phi = self.d[(y, x)]
        inv = phi.inverse()
        hx = self.objs[x].h
        new = dict(self.d)
        for z in self.at(hx):
            if z == x or (y, z) not in self.d:
                continue
            for w in self.at(hx + 1):
                if w == y or (w, x) not in self.d:
                    continue
                corr = self.d[(w, x)] @ inv @ self.d[(y, z)]
                new[(w, z)] = new[(w, z)] - corr if (w, z) in new else -corr
        tmp = WebComplex(self.objs, new, self.name)
        return tmp._without({x, y})

    def find_iso(self, D: int):
        for (y, x), f in sorted(self.d.items()):
            ox, oy = self.objs[x], self.objs[y]
            if ox.hilbert() != oy.hilbert():
                continue
            if f.is_iso(max(D - ox.shift, 0)):
                return y, x
        return None

    def split(self, i: int, pieces: list) -> "WebComplex":
        """Replace object i by summands; pieces are (Obj, iota, pi) with pi o iota = id, sum iota pi = id."""
        o = self.objs[i]
        base = len(self.objs)
        out = WebComplex(list(self.objs), {}, self.name)
        for k, (obj, _, _) in enumerate(pieces):
            out.objs.append(Obj(obj.seq, obj.shift, o.h, obj.label))
        for (t, s), f in self.d.items():
            if t == i:
                for k, (_, _, pi) in enumerate(pieces):
                    out.d[(base + k, s)] = pi @ f
            elif s == i:
                for k, (_, iota, _) in enumerate(pieces):
                    out.d[(t, base + k)] = f @ iota
            else:
                out.d[(t, s)] = f
        return out._without({i})

    def prune_zero(self, D: int) -> "WebComplex":
        out = self.copy()
        for k, f in list(out.d.items()):
            if f.is_zero(max(D - out.objs[k[1]].shift, 0)):
                del out.d[k]
        return out

    def summary(self) -> list[str]:
        return [str(o) for o in sorted(self.objs, key=lambda o: (o.h, o.shift, o.seq))]

    def to_json(self, D: int) -> dict:
        hs = self.hdegrees()
        return {
            "schema": 1,
            "name": self.name,
            "objects": [{"h": o.h, "shift": o.shift, "web": seq_str(o.seq), "label": o.label} for o in self.objs],
            "dims": {str(j): [sum(self.dim(i, j) for i in self.at(h)) for h in hs]
                     for j in range(self.qmin(), D + 1)},
            "ranks": {str(j): [linalg.rank(self.dmatrix(h, j)) for h in hs] for j in range(self.qmin(), D + 1)},
        }


def peak_summands(o: Obj):
    """A peak u -> w -> u splits as a sum of shifted identities on u (None otherwise)."""
    s = o.seq
    if len(s) == 3 and s[0] == s[2] and len(s[1]) > len(s[0]):
        _, _, degs = _frob_raw(s[1], s[0])
        return [((s[0], s[0]), o.shift + k) for k in degs]
    return None


def split_peaks(C: WebComplex, D: int, hints: dict | None = None) -> WebComplex:
    """Decompose peaks, and any object whose web has a hint [(seq, relative shift)]."""
    hints = hints or {}
    i = 0
    while i < len(C.objs):
        o = C.objs[i]
        summ = peak_summands(o)
        if summ is None and o.seq in hints:
            summ = [(tuple(sq), o.shift + sh) for sq, sh in hints[o.seq]]
        if summ is None:
            i += 1
            continue
        C = C.split(i, decompose(C.objs[i], summ, D))
    return C


def gaussian_eliminate(C: WebComplex, D: int, max_steps: int = 1000, split: bool = True,
                       hints: dict | None = None) -> WebComplex:
    """Cancel isomorphism components until none is left (certified up to D).

    With split=True, peak webs are first decomposed into shifted identities.
    """
    if split:
        C = split_peaks(tidy_complex(C), D, hints)
    C = C.prune_zero(D)
    for _ in range(max_steps):
        hit = C.find_iso(D)
        if hit is None:
            return C
        C = C.cancel(*hit).prune_zero(D)
    return C


def is_contractible(C: WebComplex, D: int) -> bool:
    return not gaussian_eliminate(C, D).objs


# ---------------------------------------------------------------- decompositions

class DecompositionError(AssertionError):
    pass


def decompose(obj: Obj, summands: list, D: int) -> list:
    """Split q^s B into the given summands [(seq, shift)], certified by Hilbert series.

    Inclusions are picked from Hom spaces, greedily by generator degree; the
    projections are read off from the inverse of the assembled inclusion.
    """
    B = obj.bim
    total = None
    for seq, sh in summands:
        hs = bim(seq).hilbert() * qpow(sh)
        total = hs if total is None else total + hs
    if total != obj.hilbert():
        raise DecompositionError(f"summands do not add up to {obj}")
    order = sorted(range(len(summands)), key=lambda k: (summands[k][1], summands[k][0]))
    chosen: list = []   # (k, iota)
    used: dict = {}
    for k in order:
        seq, sh = summands[k]
        X = bim(seq)
        sigma = sh - obj.shift
        key = (tuple(seq), sigma)
        if key not in used:
            used[key] = (hom_basis(X, B, sigma, label="iota"), set())
        cands, taken = used[key]
        picked = None
        for c in range(len(cands)):
            if c in taken:
                continue
            if _injective(chosen + [(k, cands[c])], summands, obj, B, sigma):
                picked = c
                break
        if picked is None:
            raise DecompositionError(f"no independent inclusion for {seq_str(seq)} at shift {sh}")
        taken.add(picked)
        chosen.append((k, cands[picked]))
    chosen.sort()
    iotas = [f for _, f in chosen]
    degs = [summands[k][1] - obj.shift for k, _ in chosen]

    def assembled(j):
        mats = [f.matrix(j - s) for f, s in zip(iotas, degs)]
        return linalg.hstack(mats, B.dim(j))

    inv_cache: dict = {}

    def inverse(j):
        if j not in inv_cache:
            A = assembled(j)
            if A.nrows() != A.ncols():
                raise DecompositionError(f"degree {j}: not square")
            inv_cache[j] = A.inv() if A.nrows() else A
        return inv_cache[j]

    for j in range(0, max(D - obj.shift, 0) + 1):
        A = assembled(j)
        if A.nrows() != A.ncols() or linalg.rank(A) != A.ncols():
            raise DecompositionError(f"inclusions of {obj} fail to be an isomorphism in degree {j}")
    pieces = []
    for idx, (k, _) in enumerate(chosen):
        seq, sh = summands[k]
        X = bim(seq)
        s = degs[idx]

        def pi_compute(j, idx=idx, s=s):
            off = sum(bim(summands[kk][0]).dim(j - degs[t]) for t, (kk, _) in enumerate(chosen[:idx]))
            rows = list(range(off, off + bim(summands[chosen[idx][0]][0]).dim(j - s)))
            return linalg.block(inverse(j), rows, list(range(B.dim(j))))
        pi = BimodMap(B, X, -s, pi_compute, "pi")
        pieces.append((Obj(tuple(seq), sh, obj.h, "summand"), iotas[idx], pi))
    return pieces


def _injective(trial, summands, obj, B, j) -> bool:
    mats = []
    for k, f in trial:
        s = summands[k][1] - obj.shift
        mats.append(f.matrix(j - s))
    A = linalg.hstack(mats, B.dim(j))
    return linalg.rank(A) == A.ncols()


# ---------------------------------------------------------------- canonical forms and comparison

def tidy_complex(C: WebComplex) -> WebComplex:
    """Transport every object to its tidy web through the canonical isomorphism."""
    out = WebComplex(name=C.name)
    isos = []
    for o in C.objs:
        ch = Chain(o.seq).tidy()
        f = BimodMap.from_chain(ch, "tidy")
        isos.append(f)
        out.objs.append(Obj(ch.seq, o.shift, o.h, o.label))
    invs = [f.inverse() if f.src is not f.tgt else None for f in isos]
    for (t, s), f in C.d.items():
        g = f
        if invs[s] is not None:
            g = g @ invs[s]
        if isos[t].src is not isos[t].tgt:
            g = isos[t] @ g
        out.d[(t, s)] = g
    return out


def same_complex(C: WebComplex, T: WebComplex, D: int) -> tuple[bool, str]:
    """Objects agree and differentials agree up to rescaling objects (checked <= D)."""
    key = lambda o: (o.h, o.shift, o.seq)
    if sorted(map(key, C.objs)) != sorted(map(key, T.objs)):
        return False, f"objects differ: {C.summary()} vs {T.summary()}"
    if len(set(map(key, C.objs))) != len(C.objs):
        return False, "repeated objects; comparison not implemented"
    pos = {key(o): i for i, o in enumerate(T.objs)}
    perm = [pos[key(o)] for o in C.objs]
    scale: dict = {}
    pairs = set(C.d) | {(perm.index(t), perm.index(s)) for t, s in T.d}
    ratios = []
    for t, s in sorted(pairs):
        f = C.d.get((t, s))
        g = T.d.get((perm[t], perm[s]))
        bound = max(D - C.objs[s].shift, 0)
        fz = f is None or f.is_zero(bound)
        gz = g is None or g.is_zero(bound)
        if fz and gz:
            continue
        if fz != gz:
            return False, f"component {C.objs[s]} -> {C.objs[t]} vanishes on one side only"
        lam = proportional(f, g, bound)
        if lam is None or lam == 0:
            return False, f"component {C.objs[s]} -> {C.objs[t]} not proportional"
        ratios.append((t, s, lam))
    # object rescalings c with lam = c_t / c_s
    for t, s, lam in ratios:
        if s not in scale and t not in scale:
            scale[s] = flint.fmpq(1)
        if s in scale and t not in scale:
            scale[t] = lam * scale[s]
        elif t in scale and s not in scale:
            scale[s] = scale[t] / lam
        elif scale[t] != lam * scale[s]:
            return False, "differential scalars are not consistent with an object rescaling"
    return True, "ratios " + ", ".join(str(l) for _, _, l in ratios)
