"""Exact linear algebra over Q, thin wrappers around python-flint's fmpq_mat."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint


def fq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def to_frac(x) -> Fraction:
    x = fq(x)
    return Fraction(int(x.p), int(x.q))


def mat(rows: int, cols: int, entries=None) -> flint.fmpq_mat:
    if entries is None:
        return flint.fmpq_mat(rows, cols)
    return flint.fmpq_mat(rows, cols, [fq(e) for e in entries])


def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> flint.fmpq_mat:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = [fq(e) for r in rows for e in r]
    return flint.fmpq_mat(len(rows), ncols, flat) if rows else flint.fmpq_mat(0, ncols)


def zeros(rows: int, cols: int) -> flint.fmpq_mat:
    return flint.fmpq_mat(rows, cols)


def identity(n: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def is_zero(m: flint.fmpq_mat) -> bool:
    return all(e == 0 for e in m.entries())


def rank(m: flint.fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def nullspace(m: flint.fmpq_mat) -> flint.fmpq_mat:
    """Columns spanning {x : m x = 0}; shape (ncols, nullity)."""
    r, c = m.nrows(), m.ncols()
    if c == 0:
        return flint.fmpq_mat(0, 0)
    if r == 0:
        return identity(c)
    R, rk = m.rref()
    pivots, row = [], 0
    for j in range(c):
        if row < rk and R[row, j] != 0:
            pivots.append(j)
            row += 1
    free = [j for j in range(c) if j not in set(pivots)]
    out = flint.fmpq_mat(c, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, p in enumerate(pivots):
            out[p, k] = -R[i, f]
    return out


def solve_consistent(A: flint.fmpq_mat, B: flint.fmpq_mat) -> flint.fmpq_mat | None:
    """Some X with A X = B, or None.  A may be rectangular / singular."""
    r, c = A.nrows(), A.ncols()
    k = B.ncols()
    if c == 0:
        return flint.fmpq_mat(0, k) if is_zero(B) else None
    aug = flint.fmpq_mat(r, c + k)
    for i in range(r):
        for j in range(c):
            aug[i, j] = A[i, j]
        for j in range(k):
            aug[i, c + j] = B[i, j]
    R, rk = aug.rref()
    X = flint.fmpq_mat(c, k)
    row = 0
    for j in range(c):
        if row < rk and R[row, j] != 0:
            for t in range(k):
                X[j, t] = R[row, c + t]
            row += 1
    for i in range(row, rk):
        if any(R[i, c + t] != 0 for t in range(k)):
            return None
    return X


def hstack(mats: Sequence[flint.fmpq_mat], rows: int) -> flint.fmpq_mat:
    cols = sum(m.ncols() for m in mats)
    out = flint.fmpq_mat(rows, cols)
    off = 0
    for m in mats:
        for i in range(m.nrows()):
            for j in range(m.ncols()):
                out[i, off + j] = m[i, j]
        off += m.ncols()
    return out


def vstack(mats: Sequence[flint.fmpq_mat], cols: int) -> flint.fmpq_mat:
    rows = sum(m.nrows() for m in mats)
    out = flint.fmpq_mat(rows, cols)
    off = 0
    for m in mats:
        for i in range(m.nrows()):
            for j in range(m.ncols()):
                out[off + i, j] = m[i, j]
        off += m.nrows()
    return out


def block(m: flint.fmpq_mat, rows: Sequence[int], cols: Sequence[int]) -> flint.fmpq_mat:
    out = flint.fmpq_mat(len(rows), len(cols))
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            out[a, b] = m[i, j]
    return out


def scalar_ratio(a: flint.fmpq_mat, b: flint.fmpq_mat):
    """lambda with a = lambda*b (both nonzero), or None if not proportional."""
    lam = None
    ea, eb = a.entries(), b.entries()
    if len(ea) != len(eb):
        return None
    for x, y in zip(ea, eb):
        if y == 0:
            if x != 0:
                return None
            continue
        r = x / y
        if lam is None:
            lam = r
        elif r != lam:
            return None
    return lam
