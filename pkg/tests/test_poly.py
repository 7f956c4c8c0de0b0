import itertools

import pytest
from hypothesis import given, settings, strategies as st

from twlab.errors import (
    InvalidModulusDegree,
    MixedCoefficientRings,
    PolynomialParseError,
    UnboundVariable,
)
from twlab.finring import ring
from twlab.poly import (
    ZZ,
    Polynomial,
    evaluate,
    format_polynomial,
    parse_polynomial,
    reduce_xq,
    substitute,
)

Z6 = ring("Z/6")
GF4 = ring("GF(2,2)")
GF3 = ring("GF(3,1)")


def polys(R, names=("x", "y"), max_deg=4, max_terms=5):
    coeff = st.integers(-5, 5) if R is ZZ else st.integers(0, R.size - 1)
    mono = st.tuples(*[st.integers(0, max_deg) for _ in names])

    def build(items):
        P = Polynomial.zero(R)
        for exps, c in items:
            term = Polynomial.monomial(R, dict(zip(names, exps)), c if R is not ZZ else None)
            P = P + (term * c if R is ZZ else term)
        return P

    return st.lists(st.tuples(mono, coeff), max_size=max_terms).map(build)


def points(R, names=("x", "y")):
    return st.fixed_dictionaries({n: st.integers(0, R.size - 1) for n in names})


# -- ring structure ----------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys(Z6), polys(Z6), polys(Z6))
def test_ring_laws_over_z6(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(Z6)


@settings(max_examples=60, deadline=None)
@given(polys(GF4), polys(GF4), points(GF4))
def test_evaluation_is_a_ring_map(a, b, env):
    add, mul = GF4.add_table, GF4.mul_table
    assert evaluate(a + b, env, GF4) == add[evaluate(a, env, GF4), evaluate(b, env, GF4)]
    assert evaluate(a * b, env, GF4) == mul[evaluate(a, env, GF4), evaluate(b, env, GF4)]


# -- substitution ----------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(polys(Z6, ("x",), 3), polys(Z6, ("x", "y"), 2, 3), polys(Z6, ("y",), 2, 3), points(Z6, ("y",)))
def test_substitution_commutes_with_evaluation(P, Q, S, env):
    # P(Q(x=S)) evaluated at y equals P evaluated at Q evaluated at (S(y), y)
    inner = substitute(Q, {"x": S, "y": Polynomial.variable(Z6, "y")})
    lhs = evaluate(substitute(P, {"x": inner}), env, Z6)
    s_val = evaluate(S, env, Z6)
    q_val = evaluate(Q, {"x": s_val, "y": env["y"]}, Z6)
    assert lhs == evaluate(P, {"x": q_val}, Z6)


@settings(max_examples=40, deadline=None)
@given(polys(ZZ, ("x",), 3, 3), polys(ZZ, ("x",), 2, 3), polys(ZZ, ("x",), 2, 3))
def test_substitution_is_associative(P, Q, S):
    lhs = substitute(substitute(P, {"x": Q}), {"x": S})
    rhs = substitute(P, {"x": substitute(Q, {"x": S})})
    assert lhs == rhs


def test_substitution_is_simultaneous():
    x, y = Polynomial.variable(ZZ, "x"), Polynomial.variable(ZZ, "y")
    assert substitute(x - y, {"x": y, "y": x}) == y - x


def test_substitution_examples():
    Z2 = ring("Z/2")
    x, y = Polynomial.variable(Z2, "x"), Polynomial.variable(Z2, "y")
    assert substitute(x ** 2, {"x": x + y}) == x ** 2 + y ** 2
    assert substitute(x ** 3, {"x": x * y}) == x ** 3 * y ** 3
    P = x ** 3 + x + 1
    assert substitute(P, {"x": x}) == P


def test_unbound_variable():
    x = Polynomial.variable(Z6, "x")
    with pytest.raises(UnboundVariable):
        evaluate(x, {}, Z6)
    with pytest.raises(UnboundVariable):
        substitute(x * Polynomial.variable(Z6, "y"), {"x": x})


def test_mixed_rings_rejected():
    with pytest.raises(MixedCoefficientRings):
        Polynomial.variable(Z6, "x") + Polynomial.variable(GF3, "x")


# -- reduction modulo x^q = x --------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys(GF4, ("x",), 12))
def test_reduce_preserves_functions_on_the_field(P):
    Q = reduce_xq(P, 4)
    assert Q.degree("x") <= 3
    for r in range(4):
        assert evaluate(P, {"x": r}, GF4) == evaluate(Q, {"x": r}, GF4)


@settings(max_examples=60, deadline=None)
@given(polys(Z6, ("x", "y"), 9), polys(Z6, ("x", "y"), 9))
def test_reduce_is_idempotent_and_multiplicative(P, Q):
    r = lambda F: reduce_xq(F, 6, ("x", "y"))
    assert r(r(P)) == r(P)
    assert r(P * Q) == r(r(P) * r(Q))
    assert r(P + Q) == r(P) + r(Q)


@settings(max_examples=40, deadline=None)
@given(polys(GF3, ("x",), 5), polys(GF3, ("x",), 3))
def test_multiples_of_the_modulus_reduce_to_zero(M, P):
    x = Polynomial.variable(GF3, "x")
    assert reduce_xq(M * (x ** 3 - x), 3).is_zero()
    assert reduce_xq(P + M * (x ** 3 - x), 3) == reduce_xq(P, 3)


def test_reduce_exponent_table():
    x = Polynomial.variable(ZZ, "x")
    # q = 4: exponents 1..3 fixed, 4 -> 1, 5 -> 2, 7 -> 1
    assert [reduce_xq(x ** e, 4).degree("x") for e in range(8)] == [0, 1, 2, 3, 1, 2, 3, 1]


def test_reduce_rejects_small_q():
    with pytest.raises(InvalidModulusDegree):
        reduce_xq(Polynomial.variable(ZZ, "x"), 1)


# -- text ----------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys(ZZ))
def test_format_parse_roundtrip_over_z(P):
    assert parse_polynomial(format_polynomial(P), ZZ) == P


@settings(max_examples=60, deadline=None)
@given(polys(GF4))
def test_format_parse_roundtrip_over_gf4(P):
    assert parse_polynomial(format_polynomial(P), GF4) == P


def test_display_is_graded_lex():
    P = parse_polynomial("1 + x + y^2 + x*y + x^3", ZZ)
    assert format_polynomial(P) == "x^3 + x*y + y^2 + x + 1"


def test_integer_literals_map_through_z():
    # in GF(4) the literal 3 is 1 + 1 + 1 = 1, and [2] names a carrier element
    P = parse_polynomial("3*x + [2]", GF4)
    assert P.coefficient({"x": 1}) == GF4.one
    assert P.constant_term() == 2


@pytest.mark.parametrize("text,offset", [("x +", 3), ("x ^ y", 4), ("(x + 1", 6), ("x $ 2", 2)])
def test_parse_error_offsets(text, offset):
    with pytest.raises(PolynomialParseError) as info:
        parse_polynomial(text, ZZ)
    assert info.value.offset == offset


def test_binomial_coefficients_mod_six():
    x, y = Polynomial.variable(Z6, "x"), Polynomial.variable(Z6, "y")
    P = (x + y) ** 6
    from math import comb

    for k in range(7):
        assert P.coefficient({"x": k, "y": 6 - k}) == Z6.from_int(comb(6, k))
    assert sorted(Z6.encoding(c) for c in P.terms.values()) == sorted(
        comb(6, k) % 6 for k in range(7) if comb(6, k) % 6
    )


def test_dense_roundtrip():
    for coeffs in itertools.product(range(3), repeat=3):
        P = Polynomial.from_dense(GF3, coeffs)
        assert Polynomial.from_dense(GF3, P.dense("x")) == P
