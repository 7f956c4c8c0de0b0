"""Acceptance gate: AC1-AC10 on the full default roster.

Each criterion runs once; the verdict line for every criterion is printed in
the pytest terminal summary (see conftest.py).  Besides the overall verdict,
each test pins the exact counts the criterion is stated in terms of.
"""

import time

import pytest

from twlab.acceptance import CRITERIA, Z6_WITNESS, SuiteConfig

RESULTS: dict = {}
TIME_LIMITS = {"AC1": 60.0, "AC2": 120.0}


def _cases(rep, needle):
    return [c for c in rep.cases if needle in c.law]


def check_ac1(rep):
    got = {c.law.split(":")[0]: c.got["elements"] for c in _cases(rep, "bijection onto")}
    assert got == {"GF(2,1)": 4, "GF(3,1)": 27, "GF(2,2)": 256, "GF(5,1)": 3125}
    assert all(c.got["distinct_images"] == c.got["elements"] for c in _cases(rep, "bijection onto"))
    # the three small fields run every part, GF(5) only the bijection ones
    assert len([c for c in rep.cases if c.law.startswith("GF(5,1)")]) == 3


def check_ac2(rep):
    verdicts = {c.law: c.got for c in rep.cases}
    assert sum(verdicts.values()) == 5 and len(verdicts) == 10
    assert verdicts["mu_Z/6 bijective over B=Z/6xZ/2"] is False


def check_ac3(rep):
    sizes = {c.input["R"]: c.input["decompositions"] for c in rep.cases}
    # |R|^(number of primitive idempotents of R)
    assert sizes == {"Z/2": 2, "Z/3": 3, "Z/4": 4, "Z/6": 36, "GF(2,2)": 4}


def check_ac4(rep):
    (z6,) = _cases(rep, "Z/6")
    assert z6.got["witness"] == Z6_WITNESS == "3*x^4*y^2 + 2*x^3*y^3 + 3*x^2*y^4"
    assert [c.got for c in rep.cases if c is not z6] == [True] * 4


def check_ac5(rep):
    # 3 models x (Monoid 2 ops + AbGroup 3 + CommRing 5) x 2 generator sets, plus hom checks
    assert len(_cases(rep, "coop diagram")) == 3 * 10 * 2
    assert len(_cases(rep, "hom structures agree")) == 3 * 3 * 2


def check_ac6(rep):
    # every |S1|, |S2| in {0, 1, 2} for each of Z/2, Z/3, Z/4
    labels = {c.law.split(":")[0] for c in rep.cases}
    assert labels == {f"Z/{n} |S1|={a} |S2|={b}" for n in (2, 3, 4) for a in range(3) for b in range(3)}


def check_ac7(rep):
    modes = {c.input["instance"]: (c.input["mode"], c.input["triples"]) for c in rep.cases if "instance" in c.input}
    assert modes["PolyTW(Biring(GF(2,1), q=2))"] == ("exhaustive", 4 ** 3)
    assert modes["PolyTW(Biring(GF(3,1), q=3))"] == ("exhaustive", 27 ** 3)
    assert modes["FunTW(GF(2,1))"] == ("exhaustive", 4 ** 3)
    assert modes["FunTW(GF(3,1))"] == ("exhaustive", 27 ** 3)
    assert modes["MonoidPlethory(e/g)"][0] == "sampled"
    assert modes["MonoidPlethory(e/g/g2)"][0] == "sampled"
    assert [c.input["pairs"] for c in _cases(rep, "eta(a.b)")] == [16, 729]


def check_ac8(rep):
    assert [c.got for c in rep.cases[:3]] == [True, True, True]
    assert rep.cases[3].got == {"verdict": False, "witness": Z6_WITNESS}


def check_ac9(rep):
    assert len(_cases(rep, "delta_0")) == 4
    assert _cases(rep, "decompositions")[0].got == 36


def check_ac10(rep):
    assert [c.got for c in rep.cases] == [1, 1, 1, 1]


CHECKS = {f"AC{k}": globals()[f"check_ac{k}"] for k in range(1, 11)}


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key):
    title, fn = CRITERIA[key]
    start = time.perf_counter()
    rep = fn(SuiteConfig())
    elapsed = time.perf_counter() - start
    s = rep.summary()
    ok = rep.passed
    detail = f"{s['passed']}/{s['total']} cases, {elapsed:.1f}s"
    limit = TIME_LIMITS.get(key)
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f" (limit {limit:.0f}s)"
    RESULTS[key] = (title, ok, detail)
    assert rep.passed, [c.law for c in rep.failures]
    CHECKS[key](rep)
    if limit is not None:
        assert elapsed < limit
