import itertools

import pytest

from twlab.errors import ForeignElement, ReducibleModulus, RingSpecParseError
from twlab.finring import (
    FiniteRing,
    GaloisField,
    Product,
    ZmodN,
    build_ring,
    find_irreducible,
    idempotents,
    is_irreducible,
    parse_ring_spec,
    ring,
)

ROSTER = ["Z/1", "Z/2", "Z/4", "Z/6", "Z/12", "GF(2,1)", "GF(2,2)", "GF(3,2)", "GF(2,3)", "Z/2xZ/3", "Z/2xZ/2"]


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def _reducible_brute(poly, p):
    # poly is reducible iff it is a product of two monic polys of positive degree
    k = len(poly) - 1
    for d in range(1, k):
        for lo in itertools.product(range(p), repeat=d):
            for lo2 in itertools.product(range(p), repeat=k - d):
                if _polymul(lo + (1,), lo2 + (1,), p) == tuple(poly):
                    return True
    return False


@pytest.mark.parametrize("spec", ROSTER)
def test_axioms_hold(spec):
    R = ring(spec)
    assert all(v == 0 for v in R.verify_axioms().values())


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 12])
def test_zmod_matches_python_arithmetic(n):
    R = ring(f"Z/{n}")
    for a in range(n):
        for b in range(n):
            ia, ib = R.element(a), R.element(b)
            assert R.encoding(R.add(ia, ib)) == (a + b) % n
            assert R.encoding(R.mul(ia, ib)) == (a * b) % n


def test_canonical_order_puts_zero_then_one():
    for spec in ROSTER[1:]:
        R = ring(spec)
        assert R.zero == 0 and R.one == 1
        assert R.add(R.zero, R.one) == R.one


def test_gf4_generator_squares_to_g_plus_one():
    R = ring("GF(2,2)")
    g = R.element((0, 1))
    assert R.encoding(R.mul(g, g)) == (1, 1)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_find_irreducible_against_factor_search(p, k):
    m = find_irreducible(p, k)
    assert len(m) == k + 1 and m[-1] == 1
    assert k == 1 or not _reducible_brute(m, p)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_is_irreducible_agrees_with_brute_force(p, k):
    for lo in itertools.product(range(p), repeat=k):
        poly = lo + (1,)
        assert is_irreducible(poly, p) == (not _reducible_brute(poly, p))


def test_gf_is_field_with_cyclic_units():
    for spec, q in [("GF(2,2)", 4), ("GF(3,2)", 9), ("GF(2,3)", 8)]:
        R = ring(spec)
        assert R.is_field()
        assert len(R.units()) == q - 1
        orders = []
        for u in R.units():
            k = next(k for k in range(1, q) if R.pow(u, k) == R.one)
            orders.append(k)
        assert max(orders) == q - 1


@pytest.mark.parametrize("n", [2, 4, 6, 10, 12, 30, 9])
def test_idempotent_count_is_two_to_the_prime_factors(n):
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))]
    assert len(idempotents(ring(f"Z/{n}"))) == 2 ** len(primes)


def test_idempotents_of_small_rings():
    R = ring("Z/6")
    assert sorted(R.encoding(e) for e in R.idempotents()) == [0, 1, 3, 4]
    R = ring("Z/12")
    assert sorted(R.encoding(e) for e in R.idempotents()) == [0, 1, 4, 9]


def test_product_is_isomorphic_to_crt():
    P, Z = ring("Z/2xZ/3"), ring("Z/6")
    phi = [P.from_int(k) for k in range(6)]
    assert sorted(phi) == list(range(6))
    for a in range(6):
        for b in range(6):
            assert phi[(a + b) % 6] == P.add(phi[a], phi[b])
            assert phi[(a * b) % 6] == P.mul(phi[a], phi[b])
    assert Z.characteristic == P.characteristic == 6


def test_nilpotents_and_inverse():
    R = ring("Z/12")
    assert sorted(R.encoding(e) for e in R.nilpotents()) == [0, 6]
    five = R.element(5)
    assert R.mul(five, R.inverse(five)) == R.one
    with pytest.raises(ZeroDivisionError):
        R.inverse(R.element(2))


def test_check_rejects_foreign_index():
    R = ring("Z/3")
    with pytest.raises(ForeignElement):
        R.check(3)


@pytest.mark.parametrize(
    "text,spec",
    [
        ("Z/6", ZmodN(6)),
        (" GF( 2 , 2 ) ", GaloisField(2, 2)),
        ("Z/2 x Z/3", Product(ZmodN(2), ZmodN(3))),
        ("Z/2xZ/3xZ/5", Product(Product(ZmodN(2), ZmodN(3)), ZmodN(5))),
        ("Z/2x(Z/3xZ/5)", Product(ZmodN(2), Product(ZmodN(3), ZmodN(5)))),
        ("GF(2,2;x^2+x+1)", GaloisField(2, 2, (1, 1, 1))),
    ],
)
def test_parse_ring_spec(text, spec):
    assert parse_ring_spec(text) == spec


@pytest.mark.parametrize("text,offset", [("Z/0", 2), ("GF(4,1)", 3), ("GF(2,0)", 5), ("Q/3", 0), ("Z/2x", 4)])
def test_parse_errors_carry_byte_offsets(text, offset):
    with pytest.raises(RingSpecParseError) as info:
        parse_ring_spec(text)
    assert info.value.offset == offset


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        build_ring(GaloisField(2, 2, (1, 0, 1)))


def test_tables_are_read_only():
    R = ring("Z/5")
    with pytest.raises(ValueError):
        R.add_table[0, 0] = 1


def test_custom_ring_from_tables():
    # F_2 x F_2 written by hand
    carrier = [(0, 0), (1, 1), (1, 0), (0, 1)]
    idx = {c: i for i, c in enumerate(carrier)}
    add = [[idx[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)] for b in carrier] for a in carrier]
    mul = [[idx[(a[0] * b[0], a[1] * b[1])] for b in carrier] for a in carrier]
    R = FiniteRing("hand", carrier, add, mul)
    assert all(v == 0 for v in R.verify_axioms().values())
    assert len(R.idempotents()) == 4


def test_zero_ring():
    R = ring("Z/1")
    assert R.size == 1 and R.zero == R.one == 0
    assert R.idempotents() == frozenset({0})
