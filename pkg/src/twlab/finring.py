"""Finite commutative unital rings as addition/multiplication tables.

Elements are carrier *indices*: plain ints ``0 .. size-1``.  Index 0 is the
additive zero, index 1 the unit (for rings with more than one element) and
the rest follow the encoding order.  The encodings themselves live in
``FiniteRing.carrier``:

* ``Z/n``      residues ``0 .. n-1`` (index == residue)
* ``GF(p,k)``  coefficient tuples ``(c0, ..., c_{k-1})`` of the class of
  ``c0 + c1 g + ...``; index == ``sum c_i p**i``
* products     pairs ``(left, right)`` of component encodings
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import (
    ForeignElement,
    NonPrimeModulus,
    ReducibleModulus,
    RingSpecParseError,
    ZeroSize,
)

AXIOM_CAP = 64


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class ZmodN:
    n: int

    def __str__(self):
        return f"Z/{self.n}"


@dataclass(frozen=True)
class GaloisField:
    p: int
    k: int
    modulus: Optional[tuple] = None  # monic, coefficients low -> high, length k+1

    def __str__(self):
        if self.modulus is None:
            return f"GF({self.p},{self.k})"
        return f"GF({self.p},{self.k};{format_dense(self.modulus)})"


@dataclass(frozen=True)
class Product:
    left: "RingSpec"
    right: "RingSpec"

    def __str__(self):
        right = f"({self.right})" if isinstance(self.right, Product) else str(self.right)
        return f"{self.left}x{right}"


RingSpec = Union[ZmodN, GaloisField, Product]


# ---------------------------------------------------------------------------
# dense polynomials over Z/p (coefficient tuples, low -> high)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _polymod(a, m, p):
    """Remainder of ``a`` by monic ``m`` over Z/p."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm]) if len(a) > dm else _trim(a)


def _monic_polys(p, degree):
    # all monic polynomials of the given degree, increasing in sum c_i p^i
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """True iff monic ``poly`` (coefficients low -> high) has no monic factor of degree 1..deg/2 over Z/p."""
    poly = tuple(c % p for c in poly)
    k = len(poly) - 1
    if k < 1 or poly[-1] != 1:
        return False
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(p, d):
            if not _polymod(poly, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, k: int) -> tuple:
    """Least monic irreducible polynomial of degree ``k`` over Z/p.

    Candidates are scanned in increasing order of ``sum c_i p**i`` over the
    non-leading coefficients, so the constant term is least significant.
    """
    if not is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    if k < 1:
        raise ZeroSize(f"extension degree must be >= 1, got {k}")
    for cand in _monic_polys(p, k):
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


def format_dense(coeffs, var="x") -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        mono = var if e == 1 else f"{var}^{e}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# rings


class FiniteRing:
    """A finite commutative unital ring given by its operation tables.

    Instances are immutable; the numpy tables are flagged read-only.
    """

    __slots__ = ("spec", "name", "carrier", "add_table", "mul_table", "neg_table",
                 "_index", "_multiples", "__weakref__")

    def __init__(self, name, carrier, add_table, mul_table, neg_table=None, spec=None):
        self.spec = spec
        self.name = name
        self.carrier = tuple(carrier)
        size = len(self.carrier)
        add = kernels.as_index_array(add_table)
        mul = kernels.as_index_array(mul_table)
        if add.shape != (size, size) or mul.shape != (size, size):
            raise ValueError("operation tables must be size x size")
        if neg_table is None:
            neg_table = np.argmin(add != 0, axis=1) if size else np.zeros(0)
        neg = kernels.as_index_array(neg_table)
        for t in (add, mul, neg):
            t.setflags(write=False)
        self.add_table, self.mul_table, self.neg_table = add, mul, neg
        self._index = {enc: i for i, enc in enumerate(self.carrier)}
        if len(self._index) != size:
            raise ValueError("carrier has duplicate encodings")
        self._multiples = None

    # identity and display --------------------------------------------------
    def __repr__(self):
        return f"FiniteRing({self.name}, size={self.size})"

    def __str__(self):
        return self.name

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (self.carrier == other.carrier
                and np.array_equal(self.add_table, other.add_table)
                and np.array_equal(self.mul_table, other.mul_table))

    def __hash__(self):
        return hash((self.name, len(self.carrier)))

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(range(len(self.carrier)))

    @property
    def size(self) -> int:
        return len(self.carrier)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 if len(self.carrier) > 1 else 0

    # elements ----------------------------------------------------------------
    def check(self, a) -> int:
        if isinstance(a, (bool, np.bool_)) or not isinstance(a, (int, np.integer)):
            raise ForeignElement(f"{a!r} is not an element index of {self.name}")
        a = int(a)
        if not 0 <= a < len(self.carrier):
            raise ForeignElement(f"{a} is not an element index of {self.name}")
        return a

    def element(self, encoding) -> int:
        """Index of the element with the given canonical encoding."""
        try:
            return self._index[encoding]
        except (KeyError, TypeError):
            raise ForeignElement(f"{encoding!r} is not a canonical element of {self.name}") from None

    def encoding(self, a):
        return self.carrier[self.check(a)]

    def label(self, a) -> str:
        enc = self.encoding(a)
        return str(enc)

    # arithmetic --------------------------------------------------------------
    def add(self, a, b) -> int:
        return int(self.add_table[self.check(a), self.check(b)])

    def mul(self, a, b) -> int:
        return int(self.mul_table[self.check(a), self.check(b)])

    def neg(self, a) -> int:
        return int(self.neg_table[self.check(a)])

    def sub(self, a, b) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        a = self.check(a)
        result = self.one
        while e:
            if e & 1:
                result = int(self.mul_table[result, a])
            a = int(self.mul_table[a, a])
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == 0

    @property
    def characteristic(self) -> int:
        return len(self._integer_multiples())

    def _integer_multiples(self):
        if self._multiples is None:
            mult = [0]
            while True:
                nxt = int(self.add_table[mult[-1], self.one])
                if nxt == 0:
                    break
                mult.append(nxt)
            self._multiples = tuple(mult)
        return self._multiples

    def from_int(self, c: int) -> int:
        """Image of the integer ``c`` under the unique ring map Z -> R."""
        mult = self._integer_multiples()
        return mult[c % len(mult)]

    # structure -------------------------------------------------------------
    def idempotents(self) -> frozenset:
        diag = self.mul_table[np.arange(self.size), np.arange(self.size)]
        return frozenset(int(e) for e in np.flatnonzero(diag == np.arange(self.size)))

    def units(self) -> frozenset:
        return frozenset(int(a) for a in np.flatnonzero((self.mul_table == self.one).any(axis=1)))

    def inverse(self, a) -> int:
        row = np.flatnonzero(self.mul_table[self.check(a)] == self.one)
        if not len(row):
            raise ZeroDivisionError(f"{self.label(a)} is not invertible in {self.name}")
        return int(row[0])

    def nilpotents(self) -> frozenset:
        out = set()
        for a in range(self.size):
            x = a
            for _ in range(self.size):
                if x == 0:
                    out.add(a)
                    break
                x = int(self.mul_table[x, a])
        return frozenset(out)

    def is_field(self) -> bool:
        return self.size >= 2 and len(self.units()) == self.size - 1

    def verify_axioms(self, cap: int = AXIOM_CAP) -> dict:
        """Exhaustive commutative-unital-ring axiom check; violation count per axiom.

        Rings above ``cap`` elements are trusted by construction and return
        an empty dict.
        """
        if self.size > cap:
            return {}
        return kernels.ring_axioms(self.add_table, self.mul_table, self.neg_table, self.zero, self.one)

    def enumerate(self) -> list:
        return list(range(self.size))

    def enumerate_with_prefix(self, prefix) -> list:
        """Carrier indices starting with ``prefix`` (deduplicated), then canonical order."""
        seen, out = set(), []
        for a in list(prefix) + self.enumerate():
            a = self.check(a)
            if a not in seen:
                seen.add(a)
                out.append(a)
        return out


# ---------------------------------------------------------------------------
# construction


def _canonical_order(encodings, zero, one):
    rest = [e for e in encodings if e != zero and e != one]
    head = [zero] if zero == one else [zero, one]
    return head + rest


def _build_zmod(spec: ZmodN) -> FiniteRing:
    n = spec.n
    if not isinstance(n, int) or n < 1:
        raise ZeroSize(f"Z/n needs n >= 1, got {n!r}")
    r = np.arange(n, dtype=np.int64)
    return FiniteRing(str(spec), range(n), (r[:, None] + r[None, :]) % n,
                      (r[:, None] * r[None, :]) % n, (-r) % n, spec=spec)


def _build_gf(spec: GaloisField) -> FiniteRing:
    p, k = spec.p, spec.k
    if not is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    if k < 1:
        raise ZeroSize(f"extension degree must be >= 1, got {k}")
    modulus = spec.modulus
    if modulus is None:
        modulus = find_irreducible(p, k)
        name = f"GF({p},{k})"
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {k}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{format_dense(modulus)} is reducible over Z/{p}")
        name = str(spec)
    size = p ** k
    digits = np.array([[(v // p ** i) % p for i in range(k)] for v in range(size)], dtype=np.int64)
    weights = p ** np.arange(k, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    # product of coefficient vectors, then fold x^e for e >= k with x^k = -sum m_i x^i
    prod = np.zeros((size, size, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
    for e in range(2 * k - 2, k - 1, -1):
        c = prod[:, :, e] % p
        prod[:, :, e] = 0
        for i in range(k):
            prod[:, :, e - k + i] -= c * modulus[i]
    mul = (prod[:, :, :k] % p) @ weights
    neg = ((-digits) % p) @ weights
    carrier = [tuple(int(c) for c in row) for row in digits]
    return FiniteRing(name, carrier, add, mul, neg, spec=spec)


def _build_product(spec: Product) -> FiniteRing:
    L, R = build_ring(spec.left), build_ring(spec.right)
    pairs = [(a, b) for a in range(L.size) for b in range(R.size)]
    order = _canonical_order(pairs, (L.zero, R.zero), (L.one, R.one))
    pos = {pr: i for i, pr in enumerate(order)}
    la = np.array([a for a, _ in order], dtype=np.int64)
    rb = np.array([b for _, b in order], dtype=np.int64)
    lut = np.empty((L.size, R.size), dtype=np.int64)
    for (a, b), i in pos.items():
        lut[a, b] = i
    add = lut[L.add_table[la[:, None], la[None, :]], R.add_table[rb[:, None], rb[None, :]]]
    mul = lut[L.mul_table[la[:, None], la[None, :]], R.mul_table[rb[:, None], rb[None, :]]]
    neg = lut[L.neg_table[la], R.neg_table[rb]]
    carrier = [(L.carrier[a], R.carrier[b]) for a, b in order]
    return FiniteRing(str(spec), carrier, add, mul, neg, spec=spec)


@lru_cache(maxsize=256)
def build_ring(spec: RingSpec) -> FiniteRing:
    """Build the ring described by ``spec`` with its canonical carrier order."""
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
        return build_ring(spec)
    if isinstance(spec, ZmodN):
        return _build_zmod(spec)
    if isinstance(spec, GaloisField):
        return _build_gf(spec)
    if isinstance(spec, Product):
        return _build_product(spec)
    raise TypeError(f"not a ring spec: {spec!r}")


def ring(text: str) -> FiniteRing:
    """Shorthand: ``ring("Z/6")``."""
    return build_ring(parse_ring_spec(text))


def idempotents(R: FiniteRing) -> frozenset:
    return R.idempotents()


# ---------------------------------------------------------------------------
# ring-spec grammar
#
#   spec    := atom ('x' atom)*            left associative product
#   atom    := 'Z/' int | 'GF(' int ',' int [';' poly] ')' | '(' spec ')'
#   poly    := dense polynomial in x with integer coefficients


class _SpecParser:
    def __init__(self, text):
        self.text = text
        self.raw = text.encode()
        self.pos = 0

    def error(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        raise RingSpecParseError(msg, len(self.text[:pos].encode()))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos]), start

    def parse(self):
        spec = self.product()
        self.skip()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return spec

    def product(self):
        spec = self.atom()
        while self.peek("x") or self.peek("X") or self.peek("×"):
            self.pos += 1
            spec = Product(spec, self.atom())
        return spec

    def atom(self):
        if self.peek("("):
            self.pos += 1
            spec = self.product()
            self.expect(")")
            return spec
        if self.peek("Z/"):
            self.pos += 2
            n, at = self.integer()
            if n < 1:
                self.error("Z/n needs n >= 1", at)
            return ZmodN(n)
        if self.peek("GF("):
            self.pos += 3
            p, at_p = self.integer()
            if not is_prime(p):
                self.error(f"{p} is not prime", at_p)
            self.expect(",")
            k, at_k = self.integer()
            if k < 1:
                self.error("extension degree must be >= 1", at_k)
            modulus = None
            if self.peek(";"):
                self.pos += 1
                self.skip()
                start = self.pos
                depth = 0
                while self.pos < len(self.text) and not (self.text[self.pos] == ")" and depth == 0):
                    depth += {"(": 1, ")": -1}.get(self.text[self.pos], 0)
                    self.pos += 1
                modulus = self.dense(self.text[start:self.pos], start, p, k)
            self.expect(")")
            return GaloisField(p, k, modulus)
        self.error("expected 'Z/', 'GF(' or '('")

    def dense(self, body, start, p, k):
        from .poly import PolynomialParseError, parse_polynomial, ZZ

        try:
            poly = parse_polynomial(body, ZZ)
        except PolynomialParseError as exc:
            self.error(f"bad modulus: {exc}", start + exc.offset)
        if poly.variables() - {"x"}:
            self.error("modulus must be a polynomial in x", start)
        coeffs = poly.dense("x")
        coeffs = [c % p for c in coeffs] + [0] * max(0, k + 1 - len(coeffs))
        if len(_trim(coeffs)) != k + 1 or coeffs[k] != 1:
            self.error(f"modulus must be monic of degree {k}", start)
        return tuple(coeffs[: k + 1])


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``Z/6``, ``GF(2,2)``, ``GF(2,2;x^2+x+1)``, ``Z/2xZ/3``."""
    return _SpecParser(text).parse()
