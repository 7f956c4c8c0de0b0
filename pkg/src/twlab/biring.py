"""The biring R<x> and its quotients R<x>/(x^q - x).

Tensor legs follow one convention throughout: the first factor of
``B (x) B`` is the variable ``x`` and the second is ``y`` (a third leg, where
needed, is ``z``).  A co-pair is therefore just a ``Polynomial`` in x and y.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import CapExceeded, ForeignVariable, InvalidModulusDegree
from .finring import FiniteRing
from .poly import Polynomial, evaluate, reduce_exponent, reduce_xq, substitute
from .report import Report

CoPair = Polynomial  # element of B (x) B in the two-variable realisation

QUOTIENT_TABLE_CAP = 4096


class Biring:
    """R<x>, or R<x>/(x^q - x) when ``modulus_q`` is given."""

    def __init__(self, base: FiniteRing, modulus_q: Optional[int] = None):
        if modulus_q is not None and (not isinstance(modulus_q, int) or modulus_q < 2):
            raise InvalidModulusDegree(f"q must be an integer >= 2, got {modulus_q!r}")
        self.base = base
        self.modulus_q = modulus_q

    def __repr__(self):
        q = f", q={self.modulus_q}" if self.modulus_q else ""
        return f"Biring({self.base}{q})"

    def __eq__(self, other):
        return isinstance(other, Biring) and (self.base, self.modulus_q) == (other.base, other.modulus_q)

    def __hash__(self):
        return hash((self.base, self.modulus_q))

    def var(self, name="x") -> Polynomial:
        return Polynomial.variable(self.base, name)

    @property
    def x(self):
        return self.var("x")

    @property
    def y(self):
        return self.var("y")

    @property
    def z(self):
        return self.var("z")

    def const(self, c) -> Polynomial:
        return Polynomial.constant(self.base, c)

    def canonical(self, P: Polynomial, vars: Iterable[str] = ("x", "y", "z")) -> Polynomial:
        P = P.change_ring(self.base)
        if self.modulus_q is None:
            return P
        return reduce_xq(P, self.modulus_q, vars)

    def element(self, P) -> Polynomial:
        """Canonical element of B built from a polynomial (or text) in x."""
        if isinstance(P, str):
            from .poly import parse_polynomial

            P = parse_polynomial(P, self.base)
        P = _univariate(P.change_ring(self.base))
        return self.canonical(P, ("x",))

    def elements(self):
        """All canonical elements of the quotient (requires a modulus)."""
        return [self.quotient.polynomial(i) for i in range(self.quotient.size)]

    @cached_property
    def quotient(self) -> "QuotientAlgebra":
        if self.modulus_q is None:
            raise CapExceeded("R<x> without a modulus is infinite")
        return QuotientAlgebra(self.base, self.modulus_q)


def _univariate(P: Polynomial) -> Polynomial:
    extra = P.variables() - {"x"}
    if extra:
        raise ForeignVariable(f"expected a polynomial in x, found {sorted(extra)}")
    return P


# ---------------------------------------------------------------------------
# co-operations


def coadd(B: Biring, P: Polynomial) -> CoPair:
    """Co-addition: P(x + y)."""
    P = _univariate(P.change_ring(B.base))
    return B.canonical(substitute(P, {"x": B.x + B.y}), ("x", "y"))


def comul(B: Biring, P: Polynomial) -> CoPair:
    """Co-multiplication: P(x * y)."""
    P = _univariate(P.change_ring(B.base))
    return B.canonical(substitute(P, {"x": B.x * B.y}), ("x", "y"))


def counit(B: Biring, P: Polynomial, r: int) -> int:
    """epsilon_r: evaluation at r.  epsilon_0 and epsilon_1 are the co-units of coadd and comul."""
    P = _univariate(P.change_ring(B.base))
    return evaluate(P, {"x": B.base.check(r)}, B.base)


def coinverse(B: Biring, P: Polynomial) -> Polynomial:
    """Co-inverse for co-addition: P(-x)."""
    P = _univariate(P.change_ring(B.base))
    return B.canonical(substitute(P, {"x": -B.x}), ("x",))


def split_copair(C: CoPair, left: str = "x", right: str = "y"):
    """Expand a co-pair as a list of (a', a'') with C = sum a' (x) a''; both legs in x.

    The coefficient rides on the left leg.
    """
    R = C.ring
    out = []
    for m, c in C.sorted_terms():
        d = dict(m)
        extra = set(d) - {left, right}
        if extra:
            raise ForeignVariable(f"co-pair has foreign variables {sorted(extra)}")
        a1 = Polynomial(R, {((("x", d[left]),) if d.get(left) else ()): c})
        a2 = Polynomial(R, {((("x", d[right]),) if d.get(right) else ()): R.one})
        out.append((a1, a2))
    return out


@dataclass
class CoidealResult:
    is_coideal: bool
    witness: Optional[Polynomial] = None
    failed: Optional[str] = None
    report: Optional[Report] = None

    def __bool__(self):
        return self.is_coideal


def is_coideal(B: Biring, q: int) -> CoidealResult:
    """Decide whether (x^q - x) is a co-ideal for coadd, comul and every co-unit.

    Membership in I(x)B + B(x)I is decided by the normal form modulo
    (x^q - x, y^q - y): the quotient is free on x^i y^j with i, j < q.  On
    failure the nonzero normal form (or the first nonzero counit value) is
    returned as the witness.
    """
    if not isinstance(q, int) or q < 2:
        raise InvalidModulusDegree(f"q must be an integer >= 2, got {q!r}")
    free = Biring(B.base)
    gen = free.x ** q - free.x
    rep = Report(f"is_coideal({B.base}, q={q})")
    witness, failed = None, None
    for law, image in (("coadd", coadd(free, gen)), ("comul", comul(free, gen))):
        nf = reduce_xq(image, q, ("x", "y"))
        rep.add(f"{law}(x^{q} - x) in I(x)B + B(x)I", str(gen), "0", str(nf), nf.is_zero())
        if not nf.is_zero() and witness is None:
            witness, failed = nf, law
    for r in range(B.base.size):
        v = counit(free, gen, r)
        rep.add("counit(x^q - x) = 0", {"r": B.base.label(r)}, B.base.label(0), B.base.label(v), v == 0)
        if v != 0 and witness is None:
            witness, failed = Polynomial.constant(B.base, v), f"counit[{B.base.label(r)}]"
    return CoidealResult(witness is None, witness, failed, rep)


def verify_colaws(B: Biring, sample: Iterable[Polynomial]) -> Report:
    """Co-ring laws on each sample element; the report lists every check.

    When a modulus is present the first case records whether (x^q - x) is a
    co-ideal at all, so an ill-defined quotient is flagged even if the
    bookkeeping laws go through.
    """
    rep = Report(f"colaws({B})")
    if B.modulus_q is not None:
        co = is_coideal(B, B.modulus_q)
        rep.add("configuration: (x^q - x) is a co-ideal", {"q": B.modulus_q}, True, co.is_coideal,
                co.is_coideal)
    x, y, z = B.x, B.y, B.z
    one = Polynomial.one(B.base)
    zero = Polynomial.zero(B.base)

    def canon(P):
        return B.canonical(P, ("x", "y", "z"))

    for P in sample:
        P = B.element(P)
        tag = str(P)
        cp, cm = coadd(B, P), comul(B, P)
        # (D (x) id) D == (id (x) D) D
        for name, D, sub in (("coadd", cp, x + y), ("comul", cm, x * y)):
            left = canon(substitute(D, {"x": sub, "y": z}))
            right = canon(substitute(D, {"x": x, "y": substitute(sub, {"x": y, "y": z})}))
            rep.add(f"{name} coassociative", tag, str(left), str(right))
            swapped = canon(substitute(D, {"x": y, "y": x}))
            rep.add(f"{name} cocommutative", tag, str(D), str(swapped))
        # counits: epsilon_0 for coadd, epsilon_1 for comul, on either leg
        for name, D, unit in (("coadd", cp, zero), ("comul", cm, one)):
            for leg, bind in (("left", {"x": unit, "y": x}), ("right", {"x": x, "y": unit})):
                got = canon(substitute(D, bind))
                rep.add(f"{name} {leg} counit", tag, str(P), str(got))
        # x(y + z) = xy + xz, routed through comul-then-coadd vs coadd-then-comul-and-fold
        left = canon(substitute(cm, {"x": x, "y": y + z}))
        right = canon(substitute(cp, {"x": x * y, "y": x * z}))
        rep.add("distributive interchange", tag, str(left), str(right))
        # 0 * x = 0
        got = canon(substitute(cm, {"x": zero, "y": x}))
        rep.add("comul absorbs epsilon_0", tag, str(B.const(counit(B, P, 0))), str(got))
        # antipode: fold (id (x) coinverse) coadd == epsilon_0 * 1
        got = canon(substitute(cp, {"x": x, "y": -x}))
        rep.add("coinverse antipode law", tag, str(B.const(counit(B, P, 0))), str(got))
    return rep


# ---------------------------------------------------------------------------
# tabulated quotient R[x]/(x^q - x)


class QuotientAlgebra:
    """R[x]/(x^q - x) over a finite R, with elements indexed densely.

    Element ``i`` has coefficient indices given by the base-|R| digits of
    ``i`` (constant term least significant), so index 0 is zero, index 1 the
    unit and index |R| the class of x.
    """

    def __init__(self, base: FiniteRing, q: int):
        if not isinstance(q, int) or q < 2:
            raise InvalidModulusDegree(f"q must be an integer >= 2, got {q!r}")
        self.base = base
        self.q = q
        self.size = base.size ** q
        if self.size > 10 ** 7:
            raise CapExceeded(f"|R|^q = {self.size} is too large to enumerate")
        i = np.arange(self.size, dtype=np.int64)
        self.coeffs = np.stack([(i // base.size ** k) % base.size for k in range(q)], axis=1)
        self.coeffs.setflags(write=False)
        self._weights = base.size ** np.arange(q, dtype=np.int64)

    def __repr__(self):
        return f"QuotientAlgebra({self.base}, q={self.q})"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 if self.size > 1 else 0

    @property
    def x(self):
        return self.base.one * int(self._weights[1])

    def polynomial(self, i: int) -> Polynomial:
        return Polynomial.from_dense(self.base, (int(c) for c in self.coeffs[i]), "x")

    def index(self, P: Polynomial) -> int:
        P = reduce_xq(_univariate(P.change_ring(self.base)), self.q, ("x",))
        dense = P.dense("x")
        return int(sum(int(c) * int(w) for c, w in zip(dense, self._weights)))

    def scalar(self, c: int) -> int:
        return int(c)

    @cached_property
    def exponent_index(self):
        q = self.q
        return np.array([[reduce_exponent(i + j, q) for j in range(q)] for i in range(q)], dtype=np.int64)

    def _check_tables(self):
        if self.size > QUOTIENT_TABLE_CAP:
            raise CapExceeded(f"operation tables for {self.size} elements exceed cap {QUOTIENT_TABLE_CAP}")

    @cached_property
    def add_table(self):
        self._check_tables()
        c = self.coeffs
        out = self.base.add_table[c[:, None, :], c[None, :, :]] @ self._weights
        out.setflags(write=False)
        return out

    @cached_property
    def neg_table(self):
        out = self.base.neg_table[self.coeffs] @ self._weights
        out.setflags(write=False)
        return out

    @cached_property
    def mul_table(self):
        self._check_tables()
        n = self.size
        left = np.repeat(self.coeffs, n, axis=0)
        right = np.tile(self.coeffs, (n, 1))
        dense = kernels.table_conv(left, right, self.exponent_index, self.q,
                                   self.base.add_table, self.base.mul_table, self.base.zero)
        out = (dense @ self._weights).reshape(n, n)
        out.setflags(write=False)
        return out

    @cached_property
    def compose_table(self):
        """``comp[a, b]`` = class of a(b)."""
        self._check_tables()
        scalar = np.arange(self.base.size, dtype=np.int64)
        out = kernels.compose_table(self.coeffs, scalar, self.add_table, self.mul_table, self.zero, self.one)
        out.setflags(write=False)
        return out

    def value_table(self):
        """``vals[a, r]`` = a(r) for every element a and every r in R."""
        R = self.base
        return kernels.eval_points(self.coeffs, R.add_table, R.mul_table, R.zero, R.one)

    def as_ring(self) -> FiniteRing:
        carrier = [tuple(int(c) for c in row) for row in self.coeffs]
        return FiniteRing(f"{self.base}[x]/(x^{self.q}-x)", carrier, self.add_table, self.mul_table,
                          self.neg_table)
