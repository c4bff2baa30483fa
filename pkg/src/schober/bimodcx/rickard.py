"""Rickard complexes of colored crossings and their differentials chi_m^+.

W_j for a+b = c+d is the ladder

    (a,b) -> (a, b-j, j) -> (a+b-j, j) -> (c, d-j, j) -> (c,d)

(j strands go straight up on the right, the rungs carry b-j and d-j).  In the
k-labelling of the ladder convention, k = b - j.  The complex has W_j in
homological degree j with shift q^{-j(a-d+1)} times the merge shift of the
web, and chi: W_j -> W_{j+1} unzips one strand from both rungs.
"""
from __future__ import annotations

from ..symcomb import strip_zeros
from .complexes import WebComplex
from .core import BimodMap, Chain, bim, monomial, web_shift
from .homs import hom_basis


class PaddedChain:
    """A Chain driven by compositions that may contain zero parts.

    Moves that become degenerate after stripping zeros are replaced by the
    corresponding identity-step moves, so node positions stay aligned.
    """

    def __init__(self, pseq):
        self.pseq = [tuple(c) for c in pseq]
        self.ch = Chain(tuple(strip_zeros(c) for c in self.pseq))

    @staticmethod
    def s(c):
        return strip_zeros(c)

    def _sync(self):
        assert tuple(self.s(c) for c in self.pseq) == self.ch.seq, (self.pseq, self.ch.seq)

    def insert_peak(self, k, w):
        if self.s(w) == self.s(self.pseq[k]):
            self.ch.insert_identity(k).insert_identity(k)
        else:
            self.ch.insert_peak(k, self.s(w))
        self.pseq[k + 1:k + 1] = [tuple(w), self.pseq[k]]
        self._sync()

    def remove_turn(self, k):
        """Remove the peak or valley at node k, leaving an identity step."""
        s = self.ch.seq
        if s[k] == s[k - 1]:
            self.ch.drop_identity(k - 1)
        elif s[k] == s[k + 1]:
            self.ch.drop_identity(k)
        elif len(s[k]) > len(s[k - 1]):
            self.ch.remove_peak(k)
        else:
            self.ch.remove_valley(k)
        del self.pseq[k]
        self._sync()

    def drop_identity(self, k):
        assert self.s(self.pseq[k]) == self.s(self.pseq[k + 1])
        self.ch.drop_identity(k)
        del self.pseq[k + 1]
        self._sync()

    def collapse(self, k):
        s = self.ch.seq
        if s[k - 1] == s[k]:
            self.ch.drop_identity(k - 1)
        elif s[k] == s[k + 1]:
            self.ch.drop_identity(k)
        else:
            self.ch.collapse(k)
        del self.pseq[k]
        self._sync()

    def expand(self, k, mid):
        sm = self.s(mid)
        s = self.ch.seq
        if sm == s[k]:
            self.ch.insert_identity(k)
        elif sm == s[k + 1]:
            self.ch.insert_identity(k + 1)
        else:
            self.ch.expand(k, sm)
        self.pseq.insert(k + 1, tuple(mid))
        self._sync()

    def decorate(self, i, p):
        self.ch.decorate(i, p)


def ladder(a, b, c, d, j):
    return [(a, b), (a, b - j, j), (a + b - j, j), (c, d - j, j), (c, d)]


def _valid(a, b, c, d, j):
    return a + b == c + d and min(a, b, c, d) >= 0 and 0 <= j <= min(b, d)


def _chi_pieces(a, b, c, d, j, m=0, top_first=False, s=0):
    """Chains A, switch S (valley -> peak, to be inverted), B with chi = B o S^-1 o A.

    With s > 0 every ladder node carries an extra s-strand on the right and
    the web starts at (a, b+s) and ends at (c, d+s) (the whiskered ladder).
    """
    tail = (s,) if s else ()
    P0, P1, P2, P3, P4 = [p + tail for p in ladder(a, b, c, d, j)]
    X1 = (a, b - j - 1, 1, j) + tail
    Y1 = (a + b - j - 1, 1, j) + tail
    X3 = (c, d - j - 1, 1, j) + tail
    Z0 = (a, b - j - 1, j + 1) + tail
    Z2 = (a + b - j - 1, j + 1) + tail
    Z3 = (c, d - j - 1, j + 1) + tail
    pre = [(a, b + s)] if s else []
    post = [(c, d + s)] if s else []
    o = len(pre)
    A = PaddedChain(pre + [P0, P1, P2, P3, P4] + post)

    def zip_bottom():
        A.insert_peak(1 + o, X1)           # P0 P1 X1 P1 P2 P3 P4
        A.collapse(3 + o)
        A.expand(2 + o, Y1)                # P0 P1 X1 Y1 P2 P3 P4

    def zip_top(k):
        # k = index of P3
        A.insert_peak(k, X3)               # ... P3 X3 P3 ...
        A.collapse(k)                      # ... P2 X3 P3 ...
        A.expand(k - 1, Y1)                # ... P2 Y1 X3 P3 ...

    if top_first:
        zip_top(3 + o)                     # P0 P1 P2 Y1 X3 P3 P4
        zip_bottom()                       # P0 P1 X1 Y1 P2 Y1 X3 P3 P4
    else:
        zip_bottom()
        zip_top(5 + o)                     # P0 P1 X1 Y1 P2 Y1 X3 P3 P4
    A.remove_turn(4 + o)                   # multiplication at the P2 valley
    A.drop_identity(3 + o)                 # P0 P1 X1 Y1 X3 P3 P4
    if m:
        var = [0] * (a + b + s)
        var[a + b - j - 1] = m
        A.decorate(3 + o, monomial(var))
    A.collapse(1 + o)
    A.expand(0 + o, Z0)                    # P0 Z0 X1 Y1 X3 P3 P4
    A.collapse(5 + o)
    A.expand(4 + o, Z3)                    # P0 Z0 X1 Y1 X3 Z3 P4
    st = PaddedChain.s
    peak_seq = A.ch.seq
    valley_seq = peak_seq[:2 + o] + (st(Z2),) + peak_seq[3 + o:]
    S = Chain(valley_seq)
    if st(Z2) == peak_seq[2 + o]:
        S = None
    else:
        S.valley_to_peak(2 + o, peak_seq[2 + o])
    B = PaddedChain(pre + [P0, Z0, Z2, Y1, X3, Z3, P4] + post)
    B.collapse(3 + o)
    B.expand(2 + o, Z3)                    # P0 Z0 Z2 Z3 X3 Z3 P4
    B.remove_turn(4 + o)
    B.drop_identity(3 + o)                 # P0 Z0 Z2 Z3 P4
    return A.ch, S, B.ch


def chi_raw(a, b, c, d, j, m=0, top_first=False, s=0) -> BimodMap:
    """chi_m^+ : W_j -> W_{j+1} on the unstripped ladder webs (zero labels removed)."""
    if not (_valid(a, b, c, d, j) and _valid(a, b, c, d, j + 1)):
        raise ValueError(f"no differential W_{j} -> W_{j+1} for {(a, b, c, d)}")
    A, S, B = _chi_pieces(a, b, c, d, j, m, top_first, s)
    f = BimodMap.from_chain(A, "zip")
    if S is not None:
        sw = BimodMap.from_chain(S, "switch")
        f = sw.inverse() @ f
    g = BimodMap.from_chain(B, "unzip")
    return g @ f


def _tidy_iso(seq):
    ch = Chain(seq).tidy()
    return BimodMap.from_chain(ch, "tidy"), ch.seq


def rickard_seq(a, b, c, d, j, s=0):
    """Zero-stripped ladder W_j; with s > 0 the ladder whiskered by an s-strand."""
    if not s:
        return tuple(strip_zeros(x) for x in ladder(a, b, c, d, j))
    body = [x + (s,) for x in ladder(a, b, c, d, j)]
    return tuple(strip_zeros(x) for x in [(a, b + s)] + body + [(c, d + s)])


def chi_plus(m, a, b, c, d, j, D=16, top_first=False, s=0) -> BimodMap:
    """chi_m^+ between the tidied webs W_j -> W_{j+1}; aborts on the zero map."""
    f = chi_raw(a, b, c, d, j, m, top_first, s)
    t0, _ = _tidy_iso(rickard_seq(a, b, c, d, j, s))
    t1, _ = _tidy_iso(rickard_seq(a, b, c, d, j + 1, s))
    g = f
    if t0.src is not t0.tgt:
        g = g @ t0.inverse()
    if t1.src is not t1.tgt:
        g = t1 @ g
    if g.is_zero(D, target_bound=True):
        raise ArithmeticError(f"chi_{m}^+ vanishes for {(a, b, c, d)}, j={j}")
    return g


def rickard_shift(a, b, c, d, j) -> int:
    return -j * (a - d + 1) + web_shift(rickard_seq(a, b, c, d, j))


def rickard(a, b, c, d, D=16) -> WebComplex:
    """The Rickard complex on tidied ladder webs."""
    if a + b != c + d:
        raise ValueError("a+b must equal c+d")
    C = WebComplex(name=f"C({a},{b},{c},{d})")
    js = [j for j in range(0, min(b, d) + 1)]
    for j in js:
        C.add(Chain(rickard_seq(a, b, c, d, j)).tidy().seq, rickard_shift(a, b, c, d, j), j, f"W{j}")
    for j in js[:-1]:
        C.set_d(j + 1, j, chi_plus(0, a, b, c, d, j, D))
    return C


def chi_hom_space(a, b, c, d, j):
    """Basis of the Hom space that chi_0^+ lives in (used for the uniqueness check)."""
    s0 = Chain(rickard_seq(a, b, c, d, j)).tidy().seq
    s1 = Chain(rickard_seq(a, b, c, d, j + 1)).tidy().seq
    deg = rickard_shift(a, b, c, d, j) - rickard_shift(a, b, c, d, j + 1)
    return hom_basis(bim(s0), bim(s1), deg, label="chi")
