import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from twlab.biring import Biring
from twlab.errors import CapExceeded, InstanceMismatch, NotAMonoid
from twlab.finring import ring
from twlab.poly import ZZ, Polynomial, evaluate, parse_polynomial, substitute
from twlab.toycoh import FunctionElement
from twlab.twmon import (
    FiniteMonoid,
    FunTW,
    MonoidPlethory,
    PolyTW,
    cogroup_uniqueness,
    currying_iso,
    descent_check,
    eta_transport,
    tw_compose,
    verify_tw_axioms,
)


def band():
    # identity adjoined to the left-zero band {a, b}: not commutative
    return FiniteMonoid(["e", "a", "b"], [[0, 1, 2], [1, 1, 1], [2, 2, 2]])


def poly_tw(spec, q=None):
    return PolyTW(Biring(ring(spec), q))


# -- composition ---------------------------------------------------------------


def test_poly_composition_example():
    T = poly_tw("GF(2,1)", 2)
    R = T.ring
    a, b = parse_polynomial("x^2", R), parse_polynomial("x + 1", R)
    assert tw_compose(T, a, b) == parse_polynomial("x + 1", R)


def test_cyclic_group_generators_compose():
    T = MonoidPlethory(FiniteMonoid.cyclic(2))
    g = T.var(1)
    assert tw_compose(T, g, g) == T.var(0) == T.unit


def test_compose_rejects_foreign_elements():
    T = poly_tw("Z/3")
    with pytest.raises(InstanceMismatch):
        tw_compose(T, T.unit, Polynomial.variable(ring("Z/3"), "y"))
    F = FunTW(ring("Z/2"))
    with pytest.raises(InstanceMismatch):
        tw_compose(F, F.unit, FunctionElement.identity(ring("Z/3")))


def test_trivial_monoid_is_composition_over_z():
    T = MonoidPlethory(FiniteMonoid.trivial())
    x, xe = Polynomial.variable(ZZ, "x"), T.unit
    rng = random.Random(5)
    for _ in range(10):
        a, b = T.random_element(rng), T.random_element(rng)
        plain = substitute(substitute(a, {"x_e": x}), {"x": substitute(b, {"x_e": x})})
        assert substitute(tw_compose(T, a, b), {"x_e": x}) == plain


def _act(M, f, m):
    # (m.f)(k) = f(k m), so that m.(n.f) = (mn).f
    return tuple(f[M.mul(k, m)] for k in range(M.size))


F101 = ring("Z/101")


def _run(T, P, f):
    # the natural operation on A^M (A = Z/101) defined by P: x_m -> m.f, pointwise
    M = T.monoid
    images = {T.vars[m]: _act(M, f, m) for m in range(M.size)}
    return tuple(
        evaluate(P, {v: images[v][k] for v in T.vars}, F101) for k in range(M.size)
    )


@pytest.mark.parametrize("monoid", [FiniteMonoid.cyclic(3), band()], ids=["C3", "band"])
def test_monoid_plethory_composition_is_composition_of_operations(monoid):
    T = MonoidPlethory(monoid)
    rng = random.Random(1)
    for _ in range(8):
        a, b = T.random_element(rng), T.random_element(rng)
        f = tuple(rng.randrange(101) for _ in range(monoid.size))
        assert _run(T, tw_compose(T, a, b), f) == _run(T, a, _run(T, b, f))


# -- axioms --------------------------------------------------------------------


@pytest.mark.parametrize("T", [
    FunTW(ring("GF(2,1)")),
    FunTW(ring("GF(3,1)")),
    FunTW(ring("Z/4")),
    poly_tw("GF(2,1)", 2),
    poly_tw("GF(3,1)", 3),
    poly_tw("GF(2,2)", 4),
    poly_tw("Z/6"),
    MonoidPlethory(FiniteMonoid.trivial()),
    MonoidPlethory(FiniteMonoid.cyclic(2)),
    MonoidPlethory(band()),
], ids=lambda T: T.name)
def test_instances_satisfy_axioms(T):
    rep = verify_tw_axioms(T, seed=2)
    assert rep.passed, rep.failures
    assert len(rep.cases) == 9


def test_z6_with_modulus_six_breaks_the_axioms():
    rep = verify_tw_axioms(poly_tw("Z/6", 6), seed=0, n_samples=4)
    assert not rep.passed
    failed = {c.law for c in rep.failures}
    assert "associativity (a.b).c = a.(b.c)" in failed


def test_exhaustive_and_sampled_paths_agree():
    T = poly_tw("GF(2,1)", 2)
    full = verify_tw_axioms(T)
    sampled = verify_tw_axioms(T, samples=T.elements())
    assert full.passed and sampled.passed
    assert [c.law for c in full.cases] == [c.law for c in sampled.cases]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_unit_laws_over_z5(coeffs):
    T = poly_tw("Z/5")
    a = Polynomial.from_dense(T.ring, coeffs)
    assert tw_compose(T, T.unit, a) == a == tw_compose(T, a, T.unit)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_monoid_plethory_unit_laws(coeffs):
    T = MonoidPlethory(FiniteMonoid.cyclic(3))
    a = Polynomial.zero(ZZ)
    for m, c in enumerate(coeffs):
        a = a + Polynomial.integer(ZZ, c) * T.var(m % 3) ** (m // 3 + 1)
    assert tw_compose(T, T.unit, a) == a == tw_compose(T, a, T.unit)


def test_eta_transport():
    for spec in ("GF(2,1)", "GF(3,1)"):
        assert eta_transport(ring(spec)).passed
    # over Z/4 reducing by x^4 - x changes functions (2^4 = 0), so the square fails
    assert not eta_transport(ring("Z/4")).passed


@pytest.mark.slow
def test_eta_transport_gf4():
    rep = eta_transport(ring("GF(2,2)"))
    assert rep.passed and rep.cases[0].input == {"pairs": 65536}


# -- monoids -------------------------------------------------------------------


def test_monoid_validation():
    with pytest.raises(NotAMonoid):
        FiniteMonoid(["a", "e"], [[0, 0], [0, 1]])
    with pytest.raises(NotAMonoid):
        FiniteMonoid(["e"], [[0, 0]])
    # identity first but not associative: a.a = b, a.b = e, b.a = a, b.b = b
    with pytest.raises(NotAMonoid):
        FiniteMonoid(["e", "a", "b"], [[0, 1, 2], [1, 2, 0], [2, 1, 2]])
    assert FiniteMonoid.cyclic(4).carrier == ("e", "g", "g2", "g3")


# -- descent -------------------------------------------------------------------


@pytest.mark.parametrize("spec", ["GF(2,1)", "GF(3,1)", "GF(2,2)"])
def test_descent_holds_for_fields(spec):
    R = ring(spec)
    rep = descent_check(poly_tw(spec), R.size, seed=1)
    assert rep.passed and rep.cases[-1].got is True


def test_descent_fails_for_z6():
    rep = descent_check(poly_tw("Z/6"), 6)
    assert not rep.passed
    assert rep.cases[0].got["witness"] == "3*x^4*y^2 + 2*x^3*y^3 + 3*x^2*y^4"
    assert rep.cases[-1].got is False


def test_descent_needs_unreduced_instance():
    with pytest.raises(InstanceMismatch):
        descent_check(poly_tw("GF(2,1)", 2), 2)
    with pytest.raises(InstanceMismatch):
        descent_check(FunTW(ring("Z/2")), 2)


# -- currying and co-groups ----------------------------------------------------


@pytest.mark.parametrize("n1,n2,spec,size", [(2, 2, "Z/3", 81), (1, 3, "Z/2", 8), (2, 0, "Z/3", 1), (0, 2, "Z/2", 1)])
def test_currying_is_an_isomorphism(n1, n2, spec, size):
    rep = currying_iso(n1, n2, ring(spec), roster=[ring("Z/3"), ring("Z/2xZ/3"), ring("Z/6")])
    assert rep.passed, rep.failures
    assert rep.cases[0].got["domain"] == size


def test_currying_naturality_counts_ring_maps():
    # ring maps Z/2 -> Z/2, Z/2 -> Z/6 (1 |-> 1 needs 2 = 0: none), Z/2 -> Z/2xZ/2
    rep = currying_iso(["a", "b"], ["u"], ring("Z/2"), roster=[ring("Z/2"), ring("Z/6"), ring("Z/2xZ/2")])
    assert rep.cases[-1].input["ring_maps"] == 2


def test_currying_cap():
    with pytest.raises(CapExceeded):
        currying_iso(3, 3, ring("Z/3"))


@pytest.mark.parametrize("n", range(1, 9))
def test_cogroup_structure_is_unique(n):
    assert cogroup_uniqueness(n) == 1


def test_cogroup_cap():
    with pytest.raises(CapExceeded):
        cogroup_uniqueness(100)
    with pytest.raises(ValueError):
        cogroup_uniqueness(0)
