"""Acceptance checks, one test per criterion (numbered 1-12).

Every check is exact. Each test also asserts its own wall-clock budget.
Run just these with ``pytest tests/test_acceptance.py -v``.
"""
import itertools
import json
import random
import time
from contextlib import contextmanager

import pytest

from schober import hecke
from schober.bimodcx.foams import digon_dims
from schober.bimodcx.suites import (T22_HINT, bc_exact_case, expl_case, suite_koszul, suite_pkls, twist_case)
from schober.hecke import identity, merge_class, schur_compose, split_class
from schober.polydemazure import Poly, demazure
from schober.qalgebra import qbinom
from schober.schobercli import SuiteConfig, run_schober_suite
from schober.symcomb import all_reduced_words


@contextmanager
def budget(seconds):
    t0 = time.perf_counter()
    yield
    took = time.perf_counter() - t0
    assert took < seconds, f"took {took:.1f}s, budget {seconds}s"


def failures(rep):
    return [c.to_json() for c in rep.failures()][:3]


def _random_poly(rng, n, maxdeg=8, terms=8):
    d = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, maxdeg)):
            e[rng.randrange(n)] += 1
        d[tuple(e)] = rng.randint(-5, 5)
    return Poly(n, d)


def test_c01_demazure_calculus():
    rng = random.Random(20261019)
    with budget(30):
        for n in range(1, 6):
            words = [all_reduced_words(tuple(w)) for w in itertools.permutations(range(n))]
            for _ in range(50):
                p = _random_poly(rng, n)
                memo = {(): p}

                def val(word):
                    # rightmost letter acts first; shared suffixes are computed once
                    if word not in memo:
                        memo[word] = demazure(word[0], val(word[1:]))
                    return memo[word]

                for ws in words:
                    first = val(tuple(ws[0]))
                    assert all(val(tuple(w)) == first for w in ws[1:])
                for i in range(1, n):
                    assert demazure(i, demazure(i, p)).is_zero()


def test_c02_digon():
    with budget(60):
        for b in range(2, 7):
            for s in range(1, b):
                lhs = schur_compose(merge_class(s, b - s), split_class(s, b - s))
                assert lhs == identity((b,)).scale(qbinom(b, s)), (b, s)
        assert hecke.suite_digon(6).passed
        for b in (2, 3):
            for s in range(1, b):
                assert digon_dims(b, s, 16), (b, s)


def test_c03_colored_braid_relations():
    with budget(120):
        rep = hecke.suite_braid(5)
        assert rep.passed, failures(rep)
        kinds = {c.inputs.get("relation") or c.inputs.get("form") for c in rep.cases}
        assert {"braid", "split-right", "split-left", "merge-left", "merge-right"} <= kinds


def test_c04_bialgebra_decategorified():
    with budget(120):
        rep = hecke.suite_bialgebra(6)
        assert rep.passed, failures(rep)
        for c in rep.cases:
            (a, _), (_, d) = c.inputs["ab"], c.inputs["cd"]
            for t in c.inputs["terms"]:
                s = t["ijkl"][3]
                assert t["shift"] == -s * (s + a - d)
        assert len(rep.cases) == sum((m - 1) ** 2 for m in range(2, 7))


def test_c05_square_switch():
    with budget(60):
        rep = hecke.suite_squareswitch(5, 2)
        assert rep.passed, failures(rep)
        assert len(rep.cases) > 0


def test_c06_defect_and_twist_decategorified():
    with budget(120):
        rep = hecke.suite_defect(6)
        assert rep.passed, failures(rep)
        kinds = [c.inputs["kind"] for c in rep.cases]
        assert "defect" in kinds and "twist" in kinds


def test_c07_categorified_a1():
    with budget(60):
        tw = twist_case((1, 1), 16)
        assert tw["status"] == "pass", tw
        ex = expl_case(2, 16)
        assert ex["status"] == "pass", ex
        assert ex["minimal"] == ["q^2 t^1 (2,2)"]


def test_c08_categorified_a2():
    with budget(300):
        for ab in [(1, 2), (2, 1)]:
            c = bc_exact_case(ab, 16)
            assert c["status"] == "pass", c
        for ab in [(2, 1), (1, 2)]:
            c = twist_case(ab, 16)
            assert c["status"] == "pass", c


def test_c09_t22():
    with budget(600):
        c = twist_case((2, 2), 12, hints=T22_HINT)
        assert c["status"] == "pass", c


def test_c10_koszul_suite():
    with budget(600):
        rep = suite_koszul(16)
        bad = [c for c in rep["cases"] if c["status"] != "pass"]
        assert not bad, bad
        # d(zeta_b) is the unit (-1)^(b-1); the other zetas are closed
        for c in rep["cases"]:
            if c["name"].startswith("zeta lemma"):
                b = int(c["name"].split("b=")[1].split()[0])
                assert c["unit_at_b"] == (-1) ** (b - 1)
                assert c["d_zeta"] == ["0"] * (b - 1) + [str((-1) ** (b - 1))]
        rep = suite_pkls(16)
        bad = [c["name"] for c in rep["cases"] if c["status"] != "pass"]
        assert not bad, bad


def test_c11_perverse_data():
    with budget(30):
        res = hecke.check_a2(hecke.a2_data())
        assert all(res.values()), [k for k, v in res.items() if not v]
        for rel in ["tsf = ga", "af* = g*ts", "fb = stg", "bg* = f*st", "hh* = id + af*s^-1 g",
                    "ii* = id + bg*t^-1 f", "tst = sts"]:
            assert rel in res
        assert sum(1 for k in res if k.startswith("(")) >= 7
        muts = hecke.mutation_report(hecke.a2_data(), hecke.check_a2)
        assert muts and all(m["failed"] for m in muts)


@pytest.mark.slow
def test_c12_end_to_end():
    with budget(1800):
        cfg = SuiteConfig.from_dict({}, env={})
        first = run_schober_suite(cfg)
        assert first.passed, {k: first.condition_status(k) for k in first.conditions}
        second = run_schober_suite(cfg)
        a = json.dumps(first.content(), sort_keys=True)
        b = json.dumps(second.content(), sort_keys=True)
        assert a == b
