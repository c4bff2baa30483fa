"""The four elementary foams between split/merge webs, with degree bookkeeping.

For n = a + b:
    unit          id_(n)  -> (n)(a,b)(n)      inclusion R_n -> R_ab
    trace_counit  (n)(a,b)(n) -> id_(n)       Frobenius trace R_ab -> R_n
    coev          id_(ab) -> (a,b)(n)(a,b)    1 -> sum of dual bases
    counit        (a,b)(n)(a,b) -> id_(ab)    multiplication

`deg` of a BimodMap is the unshifted degree; shifted_degree() adds the merge
shifts of source and target webs.
"""
from __future__ import annotations

from fractions import Fraction

from .. import linalg
from ..polydemazure import Poly, frobenius_trace
from .core import UNIT, BimodMap, Chain, bim, web_shift


def _n(a, b):
    if a < 1 or b < 1:
        raise ValueError("a, b must be positive")
    return (a + b,)


def unit(a, b) -> BimodMap:
    n = _n(a, b)
    ch = Chain((n, n)).insert_peak(1, (a, b)).drop_identity(0)
    return BimodMap.from_chain(ch, "unit")


def trace_counit(a, b) -> BimodMap:
    n = _n(a, b)
    return BimodMap.from_chain(Chain((n, (a, b), n)).remove_peak(1), "trace")


def coev(a, b) -> BimodMap:
    n = _n(a, b)
    ch = Chain(((a, b), (a, b))).insert_valley(1, n).drop_identity(0)
    return BimodMap.from_chain(ch, "coev")


def counit(a, b) -> BimodMap:
    n = _n(a, b)
    return BimodMap.from_chain(Chain(((a, b), n, (a, b))).remove_valley(1), "counit")


def shifted_degree(f: BimodMap) -> int:
    """Degree as a map between the merge-shifted webs."""
    return f.deg - web_shift(f.src.seq) + web_shift(f.tgt.seq)


def foam_degrees(a, b) -> dict:
    return {name: shifted_degree(fn(a, b)) for name, fn in
            [("unit", unit), ("trace_counit", trace_counit), ("coev", coev), ("counit", counit)]}


def _is_identity(ch: Chain, D: int) -> bool:
    if ch.seq != ch.start or ch.deg != 0:
        return False
    f = BimodMap.from_chain(ch)
    return all(f.matrix(d) == linalg.identity(f.src.dim(d)) for d in range(0, D + 1))


def snake_checks(a, b, D=12) -> dict:
    """The four zigzag composites on the split and merge webs are identities."""
    n, w = _n(a, b), (a, b)
    split, merge = (n, w), (w, n)
    return {
        "split: coev then trace": _is_identity(Chain(split).insert_valley(1, n).remove_peak(1).drop_identity(0), D),
        "split: unit then counit": _is_identity(Chain(split).insert_peak(0, w).remove_valley(2).drop_identity(1), D),
        "merge: coev then trace": _is_identity(Chain(merge).insert_valley(0, n).remove_peak(2).drop_identity(1), D),
        "merge: unit then counit": _is_identity(Chain(merge).insert_peak(1, w).remove_valley(1).drop_identity(0), D),
    }


def trace_matches_demazure(a, b, D=12) -> bool:
    """trace_counit agrees with the polynomial Frobenius trace on every basis element."""
    f = trace_counit(a, b)
    n, w = _n(a, b), (a, b)
    B, T = f.src, f.tgt
    for d in range(0, D + 1):
        M = f.matrix(d)
        for j in range(B.dim(d)):
            fac = B.element(d, j)
            prod = {}
            for e0, c0 in fac[0].items():
                for e1, c1 in fac[1].items():
                    e = tuple(x + y for x, y in zip(e0, e1))
                    prod[e] = prod.get(e, 0) + c0 * c1
            p = Poly(sum(n), {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in prod.items() if c})
            tr = frobenius_trace(w, n, p)
            g = {e: UNIT * c.numerator / c.denominator for e, c in tr.terms.items()}
            want = T.coords(T.normalize([(UNIT, (g,))]), d + f.deg) if g else [0] * T.dim(d + f.deg)
            got = [M[r, j] for r in range(M.nrows())]
            if [linalg.to_frac(x) for x in got] != [Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else Fraction(x) for x in want]:
                return False
    return True


def digon_dims(b, s, D=16) -> bool:
    """Graded dimensions of the shifted digon (b)(s,b-s)(b) against qbinom(b,s) Hilb(R_b)."""
    from ..polydemazure import hilbert
    from ..qalgebra import qbinom, qpow, HilbertSeries
    seq = ((b,), (s, b - s), (b,))
    B = bim(seq)
    B.check_dims(D)
    lhs = B.hilbert() * qpow(web_shift(seq))
    rhs = hilbert((b,)) * HilbertSeries(qbinom(b, s))
    lo = -s * (b - s)
    return lhs.expand(D, low=lo) == rhs.expand(D, low=lo) and lhs == rhs
