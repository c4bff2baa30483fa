"""Bigraded Laurent polynomials, quantum integers and rational Hilbert series.

q is the internal grading (polynomial variables sit in q-degree 2) and t is
the homological grading.  All coefficients are exact rationals.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class BiLaurent:
    """Laurent polynomial in q and t with rational coefficients."""

    __slots__ = ("_c", "_h")

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[(int(k[0]), int(k[1]))] = v
        self._c = c
        self._h = None

    # constructors
    @classmethod
    def const(cls, c) -> "BiLaurent":
        return cls({(0, 0): c})

    @classmethod
    def mono(cls, qe: int = 0, te: int = 0, c=1) -> "BiLaurent":
        return cls({(qe, te): c})

    @classmethod
    def from_q(cls, coeffs: Mapping[int, object]) -> "BiLaurent":
        return cls({(k, 0): v for k, v in coeffs.items()})

    @classmethod
    def _raw(cls, c: dict) -> "BiLaurent":
        out = cls.__new__(cls)
        out._c = c
        out._h = None
        return out

    # access
    def items(self):
        return self._c.items()

    def coeff(self, qe: int, te: int = 0) -> Fraction:
        return self._c.get((qe, te), Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def t_degrees(self) -> set[int]:
        return {k[1] for k in self._c}

    def q_range(self) -> tuple[int, int]:
        if not self._c:
            raise ValueError("zero polynomial has no q-range")
        qs = [k[0] for k in self._c]
        return min(qs), max(qs)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def q_part(self) -> dict[int, Fraction]:
        """Coefficients of the t-degree zero part, keyed by q-exponent."""
        return {k[0]: v for k, v in self._c.items() if k[1] == 0}

    # arithmetic
    def __add__(self, other):
        other = _lift(other)
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return BiLaurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return BiLaurent._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        c: dict = {}
        for (a1, b1), v1 in self._c.items():
            for (a2, b2), v2 in other._c.items():
                k = (a1 + a2, b1 + b2)
                c[k] = c.get(k, 0) + v1 * v2
        return BiLaurent._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (k, v), = self._c.items()
            return BiLaurent({(-k[0] * -e, -k[1] * -e): 1 / v ** -e})
        out = BiLaurent.const(1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, qe: int = 0, te: int = 0) -> "BiLaurent":
        return BiLaurent._raw({(k[0] + qe, k[1] + te): v for k, v in self._c.items()})

    def bar(self) -> "BiLaurent":
        """The involution q -> q^-1 (t untouched)."""
        return BiLaurent._raw({(-k[0], k[1]): v for k, v in self._c.items()})

    def at_q1(self) -> Fraction:
        return sum(self._c.values(), Fraction(0))

    def exact_div(self, other: "BiLaurent") -> "BiLaurent":
        """Exact division of t-free Laurent polynomials; raises if inexact."""
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.t_degrees() - {0} or other.t_degrees() - {0}:
            raise ValueError("exact_div only handles t-degree zero")
        if self.is_zero():
            return ZERO
        rem = dict(self.q_part())
        den = other.q_part()
        dtop, dlow = max(den), min(den)
        floor = min(rem) - dlow  # lowest possible quotient exponent
        quo: dict[int, Fraction] = {}
        while rem:
            e = max(rem) - dtop
            if e < floor:
                raise ArithmeticError("inexact Laurent division")
            c = rem[max(rem)] / den[dtop]
            quo[e] = c
            for k, v in den.items():
                s = rem.get(k + e, 0) - c * v
                if s:
                    rem[k + e] = s
                else:
                    rem.pop(k + e, None)
        return BiLaurent.from_q(quo)

    def euler(self) -> "BiLaurent":
        return euler_char(self)

    # comparison / hashing
    def __eq__(self, other):
        try:
            other = _lift(other)
        except TypeError:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    def __bool__(self):
        return bool(self._c)

    # rendering
    def sorted_terms(self):
        return sorted(self._c.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for (qe, te), v in self.sorted_terms():
            mon = []
            if qe:
                mon.append("q" if qe == 1 else f"q^{qe}")
            if te:
                mon.append("t" if te == 1 else f"t^{te}")
            m = "*".join(mon)
            if not m:
                parts.append(str(v))
            elif v == 1:
                parts.append(m)
            elif v == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{v}*{m}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self) -> list:
        return [[qe, te, v.numerator, v.denominator] for (qe, te), v in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable) -> "BiLaurent":
        return cls({(a, b): Fraction(n, d) for a, b, n, d in data})


def _lift(x) -> BiLaurent:
    if isinstance(x, BiLaurent):
        return x
    if isinstance(x, (int, Fraction)):
        return BiLaurent.const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as BiLaurent")


ZERO = BiLaurent()
ONE = BiLaurent.const(1)
Q = BiLaurent.mono(1, 0)
T = BiLaurent.mono(0, 1)


def qpow(k: int) -> BiLaurent:
    return BiLaurent.mono(k, 0)


def qint(n: int) -> BiLaurent:
    """Balanced quantum integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError("qint expects n >= 0")
    return BiLaurent.from_q({n - 1 - 2 * i: 1 for i in range(n)})


def qfactorial(n: int) -> BiLaurent:
    out = ONE
    for i in range(1, n + 1):
        out = out * qint(i)
    return out


def qbinom(n: int, k: int) -> BiLaurent:
    """Balanced q-binomial, computed with the q-Pascal recursion."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return _qbinom_cached(n, k)


_QB: dict = {}


def _qbinom_cached(n: int, k: int) -> BiLaurent:
    key = (n, k)
    if key not in _QB:
        if k == 0 or k == n:
            _QB[key] = ONE
        else:
            _QB[key] = qpow(k) * _qbinom_cached(n - 1, k) + qpow(k - n) * _qbinom_cached(n - 1, k - 1)
    return _QB[key]


def qbinom_product(n: int, k: int) -> BiLaurent:
    """Same value via [n]!/([k]![n-k]!); used as an independent cross-check."""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return qfactorial(n).exact_div(qfactorial(k) * qfactorial(n - k))


def grassmannian_poincare(s: int, b: int) -> BiLaurent:
    """q^{-s(b-s)} times the Poincare polynomial of Gr(s, b).

    Cells are counted by partitions in an s x (b-s) box; a cell of dimension
    |lambda| contributes cohomological degree 2|lambda|.
    """
    if not 0 <= s <= b:
        raise ValueError(f"need 0 <= s <= b, got s={s}, b={b}")
    counts = Counter(sum(lam) for lam in _box_partitions(s, b - s))
    return BiLaurent.from_q({2 * size - s * (b - s): c for size, c in counts.items()})


def _box_partitions(rows: int, cols: int):
    def rec(i, cap):
        if i == rows:
            yield ()
            return
        for v in range(cap, -1, -1):
            for rest in rec(i + 1, v):
                yield (v,) + rest
    yield from rec(0, cols)


def euler_char(x: BiLaurent) -> BiLaurent:
    """Set t = -1."""
    c: dict = {}
    for (qe, te), v in x.items():
        c[qe] = c.get(qe, 0) + (-v if te % 2 else v)
    return BiLaurent.from_q(c)


# ---------------------------------------------------------------- Hilbert series

class HilbertSeries:
    """numerator / prod (1 - q^d) with even d > 0; numerator is t-free."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiLaurent, den: Iterable[int] = ()):
        num = _lift(num)
        if num.t_degrees() - {0}:
            raise ValueError("Hilbert series numerators are t-free")
        den = Counter(den)
        for d in den:
            if d <= 0 or d % 2:
                raise ValueError(f"denominator exponents must be positive even, got {d}")
        self.num, self.den = _cancel(num, den)

    @classmethod
    def polynomial_ring(cls, nvars: int) -> "HilbertSeries":
        return cls(ONE, [2] * nvars)

    def __mul__(self, other):
        if isinstance(other, HilbertSeries):
            return HilbertSeries(self.num * other.num, self.den + other.den)
        return HilbertSeries(self.num * _lift(other), self.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HilbertSeries):
            if other.num.is_zero():
                raise ZeroDivisionError("division by the zero series")
            num = self.num
            for d, m in other.den.items():
                for _ in range(m):
                    num = num * (ONE - qpow(d))
            den = Counter(self.den)
            # divide by other.num: must clear exactly against our denominators
            num = _divide_num(num, other.num, den)
            return HilbertSeries(num, den)
        other = _lift(other)
        return HilbertSeries(_divide_num(self.num, other, Counter(self.den)), self.den)

    def __add__(self, other):
        den = self.den | other.den
        a = self.num
        for d, m in (den - self.den).items():
            for _ in range(m):
                a = a * (ONE - qpow(d))
        b = other.num
        for d, m in (den - other.den).items():
            for _ in range(m):
                b = b * (ONE - qpow(d))
        return HilbertSeries(a + b, den)

    def __neg__(self):
        return HilbertSeries(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        # reduced forms are not unique ((1-q^4) = (1-q^2)(1+q^2)); cross-multiply
        a, b = self.num, other.num
        for d, m in other.den.items():
            a = a * (ONE - qpow(d)) ** m
        for d, m in self.den.items():
            b = b * (ONE - qpow(d)) ** m
        return a == b

    def __hash__(self):
        return hash(tuple(self.expand(24, low=-24)))

    def expand(self, bound: int, low: int | None = None) -> list[Fraction]:
        """Coefficients of q^low .. q^bound (low defaults to min(0, lowest numerator exponent))."""
        if low is None:
            low = min(0, self.num.q_range()[0]) if self.num else 0
        series = {k: v for k, v in self.num.q_part().items() if k <= bound}
        for d in sorted(self.den.elements()):
            # multiply by 1/(1-q^d) = sum_j q^{jd}
            acc: dict = {}
            for k, v in series.items():
                for e in range(k, bound + 1, d):
                    acc[e] = acc.get(e, 0) + v
            series = acc
        return [series.get(k, Fraction(0)) for k in range(low, bound + 1)]

    def coeff(self, k: int) -> Fraction:
        return self.expand(k, low=k)[0]

    def __str__(self):
        den = " ".join(f"(1-q^{d})" + (f"^{m}" if m > 1 else "") for d, m in sorted(self.den.items()))
        return f"({self.num}) / [{den}]" if den else str(self.num)

    __repr__ = __str__


def _divide_num(num: BiLaurent, divisor: BiLaurent, den: Counter) -> BiLaurent:
    try:
        return num.exact_div(divisor)
    except ArithmeticError:
        pass
    # absorb denominator factors into the numerator until the division clears
    for d in sorted(list(den.elements())):
        num = num * (ONE - qpow(d))
        den[d] -= 1
        if den[d] == 0:
            del den[d]
        try:
            return num.exact_div(divisor)
        except ArithmeticError:
            continue
    raise ArithmeticError("Hilbert series division leaves a non-series denominator")


def _cancel(num: BiLaurent, den: Counter) -> tuple[BiLaurent, Counter]:
    """Cancel factors (1 - q^d) that divide the numerator exactly."""
    den = Counter({d: m for d, m in den.items() if m > 0})
    if num.is_zero():
        return num, Counter()
    changed = True
    while changed:
        changed = False
        for d in sorted(den):
            try:
                cand = num.exact_div(ONE - qpow(d))
            except ArithmeticError:
                continue
            num = cand
            den[d] -= 1
            if den[d] == 0:
                del den[d]
            changed = True
            break
    return num, den


def hilbert_mul(a: HilbertSeries, b: HilbertSeries) -> HilbertSeries:
    return a * b


def hilbert_div(a: HilbertSeries, b: HilbertSeries) -> HilbertSeries:
    return a / b


def hilbert_expand(h: HilbertSeries, bound: int) -> list[Fraction]:
    return h.expand(bound, low=0)
