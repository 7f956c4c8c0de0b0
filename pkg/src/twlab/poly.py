"""Sparse multivariate polynomials over Z or a FiniteRing.

A polynomial is a dict from monomials to nonzero coefficients.  Monomials
are tuples of ``(variable, exponent)`` pairs sorted by variable name, with
no zero exponents; the empty tuple is the constant monomial.  Coefficients
are Python ints over ``ZZ`` and carrier indices over a ``FiniteRing``.

Text format: ``3*x^2*y + 1``.  An integer literal denotes the image of
that integer in the coefficient ring; ``[i]`` denotes carrier index ``i``
and is what the printer emits for elements that are not integer images
(e.g. the generator of GF(4)).
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import (
    ForeignElement,
    InvalidModulusDegree,
    MixedCoefficientRings,
    PolynomialParseError,
    UnboundVariable,
)


class IntegerRing:
    """The integers as a coefficient ring (arbitrary precision)."""

    name = "ZZ"
    zero = 0
    one = 1

    def __repr__(self):
        return "ZZ"

    __str__ = __repr__

    def __reduce__(self):
        return "ZZ"

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, int):
            try:
                import numpy as np

                if isinstance(a, np.integer):
                    return int(a)
            except ImportError:  # pragma: no cover
                pass
            raise ForeignElement(f"{a!r} is not an integer")
        return a

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def from_int(self, c):
        return int(c)

    def is_zero(self, a):
        return a == 0


ZZ = IntegerRing()


def _monomial(exps: Mapping[str, int]) -> tuple:
    return tuple(sorted((v, int(e)) for v, e in exps.items() if e))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: tuple) -> int:
    return sum(e for _, e in m)


def _display_key(m: tuple):
    # graded lex, variables alphabetical (x > y > z)
    return (-_mono_degree(m), [(v, -e) for v, e in m])


class Polynomial:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms: Mapping[tuple, int] | None = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if not ring.is_zero(c)}
        self._hash = None

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {(): ring.check(c)})

    @classmethod
    def integer(cls, ring, n: int):
        return cls(ring, {(): ring.from_int(n)})

    @classmethod
    def one(cls, ring):
        return cls(ring, {(): ring.one})

    @classmethod
    def variable(cls, ring, name: str, exponent: int = 1):
        return cls(ring, {((name, exponent),) if exponent else (): ring.one})

    @classmethod
    def monomial(cls, ring, exps: Mapping[str, int], coeff=None):
        return cls(ring, {_monomial(exps): ring.one if coeff is None else ring.check(coeff)})

    @classmethod
    def from_dense(cls, ring, coeffs: Iterable, var: str = "x"):
        terms = {}
        for e, c in enumerate(coeffs):
            terms[((var, e),) if e else ()] = ring.check(c)
        return cls(ring, terms)

    # basics -----------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == Polynomial.integer(self.ring, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"Polynomial({self.ring}, {self})"

    def __str__(self):
        return format_polynomial(self)

    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(_mono_degree(m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def coefficient(self, exps: Mapping[str, int] | tuple = ()):
        m = exps if isinstance(exps, tuple) else _monomial(exps)
        return self.terms.get(m, self.ring.zero)

    def constant_term(self):
        return self.terms.get((), self.ring.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _display_key(mc[0]))

    def dense(self, var: str = "x") -> list:
        """Coefficient list (low -> high) of a polynomial in at most ``var``."""
        extra = self.variables() - {var}
        if extra:
            raise UnboundVariable(f"not univariate in {var}: has {sorted(extra)}")
        out = [self.ring.zero] * (self.degree(var) + 1 if self.terms else 0)
        for m, c in self.terms.items():
            out[m[0][1] if m else 0] = c
        return out

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise MixedCoefficientRings(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Polynomial.integer(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        R = self.ring
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = R.add(terms[m], c) if m in terms else c
        return Polynomial(R, terms)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return Polynomial(R, {m: R.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        R = self.ring
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = R.mul(c1, c2)
                if R.is_zero(c):
                    continue
                m = _mono_mul(m1, m2)
                terms[m] = R.add(terms[m], c) if m in terms else c
        return Polynomial(R, terms)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by the coefficient-ring element ``c``."""
        R = self.ring
        c = R.check(c)
        return Polynomial(R, {m: R.mul(c, v) for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def change_ring(self, R):
        """Image of an integer polynomial under Z -> R."""
        if self.ring == R:
            return self
        if self.ring is not ZZ:
            raise MixedCoefficientRings(f"cannot map {self.ring} coefficients into {R}")
        return Polynomial(R, {m: R.from_int(c) for m, c in self.terms.items()})


# ---------------------------------------------------------------------------
# operations


def variable(ring, name="x"):
    return Polynomial.variable(ring, name)


def substitute(P: Polynomial, bindings: Mapping[str, Polynomial]) -> Polynomial:
    """Simultaneous substitution ``P[v := bindings[v]]``."""
    R = P.ring
    for v in P.variables():
        if v not in bindings:
            raise UnboundVariable(f"variable {v!r} is not bound")
    for Q in bindings.values():
        if not isinstance(Q, Polynomial) or Q.ring != R:
            raise MixedCoefficientRings(f"binding over {getattr(Q, 'ring', Q)} for polynomial over {R}")
    powers: dict = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = bindings[v] if e == 1 else power(v, e - 1) * bindings[v]
        return powers[key]

    total = Polynomial.zero(R)
    for m, c in P.terms.items():
        term = Polynomial.constant(R, c)
        for v, e in m:
            term = term * power(v, e)
        total = total + term
    return total


def evaluate(P: Polynomial, env: Mapping[str, int], R) -> int:
    """Value of ``P`` at ``env`` (carrier indices of ``R``).

    Integer polynomials are first mapped through Z -> R.
    """
    if P.ring is ZZ:
        coeff = R.from_int
    elif P.ring == R:
        coeff = int
    else:
        raise MixedCoefficientRings(f"polynomial over {P.ring} evaluated in {R}")
    values = {}
    for v in P.variables():
        if v not in env:
            raise UnboundVariable(f"variable {v!r} is not bound")
        values[v] = R.check(env[v])
    add, mul = R.add_table, R.mul_table
    total = R.zero
    for m, c in P.terms.items():
        t = coeff(c)
        for v, e in m:
            t = int(mul[t, R.pow(values[v], e)])
        total = int(add[total, t])
    return total


def reduce_exponent(e: int, q: int) -> int:
    return e if e <= 0 else 1 + (e - 1) % (q - 1)


def reduce_xq(P: Polynomial, q: int, vars: Iterable[str] = ("x",)) -> Polynomial:
    """Normal form of ``P`` modulo ``(v^q - v)`` for every ``v`` in ``vars``."""
    if not isinstance(q, int) or q < 2:
        raise InvalidModulusDegree(f"q must be an integer >= 2, got {q!r}")
    vs = set(vars)
    R = P.ring
    terms: dict = {}
    for m, c in P.terms.items():
        m2 = tuple((v, reduce_exponent(e, q) if v in vs else e) for v, e in m)
        terms[m2] = R.add(terms[m2], c) if m2 in terms else c
    return Polynomial(R, terms)


# ---------------------------------------------------------------------------
# text format


def _coeff_text(R, c) -> str:
    if R is ZZ:
        return str(c)
    mult = R._integer_multiples()
    if c in mult:
        return str(mult.index(c))
    return f"[{c}]"


def format_polynomial(P: Polynomial) -> str:
    if not P.terms:
        return "0"
    R = P.ring
    parts = []
    for m, c in P.sorted_terms():
        negative = R is ZZ and c < 0
        mag = -c if negative else c
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
        ctext = _coeff_text(R, mag)
        if not m:
            body = ctext
        elif ctext == "1":
            body = mono
        else:
            body = f"{ctext}*{mono}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(\[\d+\])|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _PolyParser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            kind = m.lastindex
            if kind is not None:
                start = m.start(kind)
                self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def offset(self, pos):
        return len(self.text[:pos].encode())

    def error(self, msg):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise PolynomialParseError(msg, self.offset(pos))

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            self.error("empty polynomial")
        p = self.expr()
        if self.i != len(self.tokens):
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        negate = False
        if self.peek()[1] in ("-", "+"):
            negate = self.take()[1] == "-"
        p = self.term()
        if negate:
            p = -p
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        p = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, text, _ = self.peek()
            if kind != 1:
                self.error("expected an exponent")
            self.take()
            p = p ** int(text)
        return p

    def atom(self):
        kind, text, pos = self.peek()
        R = self.ring
        if kind == 1:
            self.take()
            return Polynomial.integer(R, int(text))
        if kind == 2:
            self.take()
            try:
                return Polynomial.constant(R, int(text[1:-1]))
            except ForeignElement:
                raise PolynomialParseError(f"{text} is not an element of {R}", self.offset(pos)) from None
        if kind == 3:
            self.take()
            return Polynomial.variable(R, text)
        if text == "(":
            self.take()
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return p
        self.error("expected a number, variable or '('" if text is not None else "unexpected end of input")


def parse_polynomial(text: str, ring=ZZ) -> Polynomial:
    """Parse the text format; errors carry a byte offset."""
    return _PolyParser(text, ring).parse()
