"""Compositions, the composition cube, S_n combinatorics and bifactorization cubes.

Compositions are plain tuples of positive ints.  Permutations are tuples in
one-line notation on 0..n-1 (so w[i] is the image of i); simple reflection
s_i (1-based, 1 <= i < n) swaps i-1 and i.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Composition = tuple
Permutation = tuple

REDUCED_WORD_CAP = 10_000


def comp(parts: Iterable[int]) -> Composition:
    c = tuple(int(p) for p in parts)
    if any(p < 1 for p in c):
        raise ValueError(f"composition parts must be positive: {c}")
    return c


def parse_comp(s: str) -> Composition:
    """'43' -> (4, 3); '1,10' -> (1, 10)."""
    s = s.strip()
    if "," in s:
        return comp(x for x in s.split(",") if x)
    return comp(int(ch) for ch in s)


def comp_str(c: Composition) -> str:
    if not c:
        return "()"
    if all(p < 10 for p in c):
        return "".join(map(str, c))
    return ",".join(map(str, c))


def strip_zeros(parts: Iterable[int]) -> Composition:
    return tuple(p for p in parts if p)


# ---------------------------------------------------------------- the cube

def comp_to_cube(c: Composition) -> tuple[int, ...]:
    bits = []
    for i, p in enumerate(c):
        bits.extend([0] * (p - 1))
        if i < len(c) - 1:
            bits.append(1)
    return tuple(bits)


def cube_to_comp(bits: Sequence[int], n: int | None = None) -> Composition:
    if n is not None and len(bits) != max(n - 1, 0):
        raise ValueError(f"expected {max(n - 1, 0)} bits for n={n}, got {len(bits)}")
    if n == 0:
        return ()
    parts, run = [], 1
    for b in bits:
        if b:
            parts.append(run)
            run = 1
        else:
            run += 1
    parts.append(run)
    return tuple(parts)


def compositions(n: int) -> list[Composition]:
    if n == 0:
        return [()]
    return [cube_to_comp(bits) for bits in itertools.product((0, 1), repeat=n - 1)]


def refines(fine: Composition, coarse: Composition) -> bool:
    """True if fine >= coarse in Comp(n), i.e. coarse is obtained by merging parts of fine."""
    if sum(fine) != sum(coarse):
        return False
    bf, bc = comp_to_cube(fine), comp_to_cube(coarse)
    return all(x >= y for x, y in zip(bf, bc))


def splits(c: Composition) -> list[Composition]:
    out = []
    for i, p in enumerate(c):
        for k in range(1, p):
            out.append(c[:i] + (k, p - k) + c[i + 1:])
    return out


def merges(c: Composition) -> list[Composition]:
    return [c[:i] + (c[i] + c[i + 1],) + c[i + 2:] for i in range(len(c) - 1)]


def refinement_covers(c: Composition, direction: str = "up") -> list[Composition]:
    """Covers above (splits) or below (merges) c."""
    if direction == "up":
        return splits(c)
    if direction == "down":
        return merges(c)
    raise ValueError("direction must be 'up' or 'down'")


def concat(c: Composition, d: Composition) -> Composition:
    return tuple(c) + tuple(d)


def meet(c: Composition, d: Composition) -> Composition:
    """Common refinement (bitwise or of cube coordinates)."""
    return cube_to_comp([x | y for x, y in zip(comp_to_cube(c), comp_to_cube(d))])


def join(c: Composition, d: Composition) -> Composition:
    return cube_to_comp([x & y for x, y in zip(comp_to_cube(c), comp_to_cube(d))])


# ---------------------------------------------------------------- permutations

def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def simple(i: int, n: int) -> Permutation:
    w = list(range(n))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def perm_mul(u: Permutation, v: Permutation) -> Permutation:
    """(u v)(i) = u(v(i))."""
    return tuple(u[j] for j in v)


def perm_inv(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, j in enumerate(w):
        out[j] = i
    return tuple(out)


def length(w: Permutation) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def blocks(c: Composition) -> list[range]:
    out, start = [], 0
    for p in c:
        out.append(range(start, start + p))
        start += p
    return out


def parabolic_gens(c: Composition) -> list[int]:
    """1-based simple reflections generating S_c."""
    return [i + 1 for i, b in enumerate(comp_to_cube(c)) if b == 0]


def longest_element(c: Composition) -> Permutation:
    w = []
    for blk in blocks(c):
        w.extend(reversed(blk))
    return tuple(w)


def longest_length(c: Composition) -> int:
    return sum(p * (p - 1) // 2 for p in c)


def parabolic_subgroup(c: Composition) -> list[Permutation]:
    pieces = [list(itertools.permutations(blk)) for blk in blocks(c)]
    return [tuple(itertools.chain.from_iterable(ch)) for ch in itertools.product(*pieces)]


def reduced_word(w: Permutation) -> list[int]:
    """Lexicographically smallest reduced word, found greedily from the left."""
    w = tuple(w)
    word = []
    while True:
        winv = perm_inv(w)
        for i in range(1, len(w)):
            if winv[i - 1] > winv[i]:  # left descent
                word.append(i)
                w = perm_mul(simple(i, len(w)), w)
                break
        else:
            return word


def all_reduced_words(w: Permutation, cap: int = REDUCED_WORD_CAP) -> list[list[int]]:
    out: list[list[int]] = []

    def rec(u, suffix):
        if len(out) >= cap:
            return
        if length(u) == 0:
            out.append(list(suffix))
            return
        for i in range(1, len(u)):
            if u[i - 1] > u[i]:  # right descent
                rec(perm_mul(u, simple(i, len(u))), [i] + suffix)

    rec(tuple(w), [])
    return sorted(out)


def word_to_perm(word: Sequence[int], n: int) -> Permutation:
    w = identity_perm(n)
    for i in word:
        w = perm_mul(w, simple(i, n))
    return w


def min_coset_reps(fine: Composition, coarse: Composition) -> list[Permutation]:
    """Minimal length representatives of W_coarse / W_fine (w with w s > w for s in S_fine)."""
    gens = parabolic_gens(fine)
    out = []
    for w in parabolic_subgroup(coarse):
        if all(w[i - 1] < w[i] for i in gens):
            out.append(w)
    return out


# ---------------------------------------------------------------- bifactorization cubes

@dataclass(frozen=True)
class BifactCube:
    """A sub-cube of Comp(n) described position-wise.

    pos[p] is the set of cube coordinates whose join gives bit p+1: the empty
    set means fixed 0, a singleton a free coordinate, and a coordinate shared
    between two positions realizes a linked pair.  A two-element set is the
    join class coming from the base square Q(11,11).
    """

    n: int
    ab: Composition
    cd: Composition
    dim: int
    pos: tuple[frozenset, ...]
    clauses: tuple[str, ...] = field(default=(), compare=False)

    def vertex_bits(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.dim:
            raise ValueError(f"vertex needs {self.dim} coordinates")
        return tuple(int(any(v[j] for j in s)) for s in self.pos)

    def vertex(self, v: Sequence[int]) -> Composition:
        return cube_to_comp(self.vertex_bits(v), self.n)

    def vertices(self) -> list[tuple[tuple[int, ...], Composition]]:
        return [(v, self.vertex(v)) for v in itertools.product((0, 1), repeat=self.dim)]

    def edges(self):
        out = []
        for v in itertools.product((0, 1), repeat=self.dim):
            for j in range(self.dim):
                if v[j] == 0:
                    w = v[:j] + (1,) + v[j + 1:]
                    out.append((v, w))
        return out

    def classes(self) -> dict:
        """Position classes: fixed0, free, pairs, joins (1-based positions)."""
        owners: dict[int, list[int]] = {}
        out = {"fixed0": [], "fixed1": [], "free": [], "pairs": [], "joins": []}
        for p, s in enumerate(self.pos, start=1):
            if not s:
                out["fixed0"].append(p)
            elif len(s) > 1:
                out["joins"].append(p)
            for j in s:
                owners.setdefault(j, []).append(p)
        for j, ps in sorted(owners.items()):
            if len(self.pos[ps[0] - 1]) == 1 and len(ps) == 1:
                out["free"].append(ps[0])
            elif len(ps) == 2 and all(len(self.pos[p - 1]) == 1 for p in ps):
                out["pairs"].append(tuple(ps))
        return out


class BifactError(ValueError):
    pass


def _bifact(a: int, b: int, c: int, d: int) -> tuple[list[frozenset], int, list[str]]:
    """Returns (position sets, dimension, clause trail) for Q(ab,cd)."""
    if a < c:
        pos, dim, trail = _bifact(c, d, a, b)
        swap = {0: 1, 1: 0}
        pos = [frozenset(swap.get(j, j) for j in s) for s in pos]
        return pos, dim, trail + ["(6) transpose"]
    if a == d:  # then b == c and a >= b
        if a == 1 and b == 1:
            return [frozenset({0, 1})], 2, ["(1) base Q(11,11)"]
        if b == 1:
            pos = [frozenset({0})] + [frozenset()] * (a - 2) + [frozenset({1})]
            return pos, 2, [f"(2) base Q({a}1,1{a})"]
        inner, dim, trail = _bifact(a - 1, b - 1, b - 1, a - 1)
        new = frozenset({dim})
        return [new] + inner + [new], dim + 1, trail + ["(3) linked pair"]
    if d > a:
        m = d - a  # Q(a(c+m), c(a+m)) = Q(ac,ca) x {0,1} x {0}^(m-1)
        inner, dim, trail = _bifact(a, c, c, a)
        pos = inner + [frozenset({dim})] + [frozenset()] * (m - 1)
        return pos, dim + 1, trail + [f"(4/5) right offset m={m}"]
    m = a - d  # Q((d+m)b, (b+m)d) = {0}^(m-1) x {0,1} x Q(db,bd)
    inner, dim, trail = _bifact(d, b, b, d)
    pos = [frozenset()] * (m - 1) + [frozenset({dim})] + inner
    return pos, dim + 1, trail + [f"(4/5) left offset m={m}"]


def bifact_cube(ab: Composition, cd: Composition) -> BifactCube:
    ab, cd = tuple(ab), tuple(cd)
    if len(ab) != 2 or len(cd) != 2:
        raise BifactError(f"Q needs two-part compositions, got {ab}, {cd}")
    a, b = ab
    c, d = cd
    if min(a, b, c, d) < 1:
        raise BifactError(f"parts must be positive: {ab}, {cd}")
    if a + b != c + d:
        raise BifactError(f"totals differ: {a + b} vs {c + d}")
    pos, dim, trail = _bifact(a, b, c, d)
    n = a + b
    if len(pos) != n - 1:
        raise BifactError(f"clause chain produced {len(pos)} positions for n={n}")
    Q = BifactCube(n, ab, cd, dim, tuple(pos), tuple(trail))
    src = (0, 1) + (0,) * (dim - 2)
    tgt = (1, 0) + (0,) * (dim - 2)
    if Q.vertex(src) != ab or Q.vertex(tgt) != cd:
        raise BifactError(f"clause chain for Q({ab},{cd}) has wrong corners "
                          f"{Q.vertex(src)}, {Q.vertex(tgt)}")
    return Q


def bialg_quadruples(ab: Composition, cd: Composition) -> list[tuple[int, int, int, int]]:
    a, b = ab
    c, d = cd
    if a + b != c + d:
        raise ValueError("totals differ")
    out = []
    for i in range(a + 1):
        j, k = a - i, c - i
        l = b - k
        if k >= 0 and l >= 0 and j + l == d:
            out.append((i, j, k, l))
    return sorted(out, key=lambda t: t[1])


# ---------------------------------------------------------------- zigzag words

@dataclass(frozen=True)
class ZigzagWord:
    """Vertices of a zigzag from the source corner to the target corner."""

    cube_vertices: tuple[tuple[int, ...], ...]
    comps: tuple[Composition, ...]

    def legs(self) -> list[str]:
        out = []
        for u, v in zip(self.comps, self.comps[1:]):
            if u == v:
                out.append("id")
            elif refines(v, u):
                out.append("ind")
            elif refines(u, v):
                out.append("res")
            else:
                raise ValueError(f"incomparable step {u} -> {v}")
        return out

    def label(self) -> str:
        return "/".join("".join(map(str, v)) for v in self.cube_vertices)


def bc_word_vertices(dim: int, e: int, v: Sequence[int]) -> list[tuple[int, ...]]:
    v = tuple(v)
    start = (0, 1) + (0,) * (dim - 2)
    end = (1, 0) + (0,) * (dim - 2)
    if e == 0:
        mid = [(0, 1) + v, (0, 0) + v, (1, 0) + v]
    else:
        mid = [(1, 1) + v]
    seq = [start] + mid + [end]
    out = [seq[0]]
    for x in seq[1:]:
        if x != out[-1]:
            out.append(x)
    return out


def zigzag_vertices(Q: BifactCube) -> dict[tuple[int, ...], ZigzagWord]:
    """BC-cube vertex (e, v...) -> zigzag word through Q."""
    if Q.dim < 2:
        raise ValueError("zigzag words need a cube of dimension >= 2")
    out = {}
    for ev in itertools.product((0, 1), repeat=Q.dim - 1):
        verts = bc_word_vertices(Q.dim, ev[0], ev[1:])
        out[ev] = ZigzagWord(tuple(verts), tuple(Q.vertex(x) for x in verts))
    return out


# ---------------------------------------------------------------- exports

def comp_poset_dot(n: int) -> str:
    lines = [f'digraph "Comp({n})" {{', "  rankdir=LR;"]
    for c in compositions(n):
        lines.append(f'  "{comp_str(c)}";')
    for c in compositions(n):
        for f in splits(c):
            lines.append(f'  "{comp_str(c)}" -> "{comp_str(f)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def comp_poset_json(n: int) -> dict:
    verts = compositions(n)
    return {
        "schema": 1,
        "n": n,
        "vertices": [{"composition": list(c), "bits": list(comp_to_cube(c))} for c in verts],
        "edges": [[list(c), list(f)] for c in verts for f in splits(c)],
    }


def bifact_dot(Q: BifactCube) -> str:
    name = f"Q({comp_str(Q.ab)},{comp_str(Q.cd)})"
    lines = [f'digraph "{name}" {{']
    for v, c in Q.vertices():
        key = "".join(map(str, v))
        lines.append(f'  "{key}" [label="{key}\\n{comp_str(c)}"];')
    for u, w in Q.edges():
        lines.append(f'  "{"".join(map(str, u))}" -> "{"".join(map(str, w))}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def bifact_json(Q: BifactCube) -> dict:
    words = zigzag_vertices(Q) if Q.dim >= 2 else {}
    return {
        "schema": 1,
        "ab": list(Q.ab),
        "cd": list(Q.cd),
        "n": Q.n,
        "dim": Q.dim,
        "positions": [sorted(s) for s in Q.pos],
        "clauses": list(Q.clauses),
        "vertices": [{"coords": list(v), "composition": list(c)} for v, c in Q.vertices()],
        "edges": [[list(u), list(w)] for u, w in Q.edges()],
        "bc_cube": [
            {"vertex": list(k), "word": w.label(), "compositions": [list(c) for c in w.comps]}
            for k, w in words.items()
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
