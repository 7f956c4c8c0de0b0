"""Tall-Wraith monoids: three concrete instances and their law checkers.

An instance supplies a composition product, the ring operations, and the
tensor expansions of its co-operations; :func:`verify_tw_axioms` then checks
the unfolded plethory laws.  Small finite instances are tabulated and checked
with the kernels, everything else is sampled with a recorded seed.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .biring import Biring, coadd, comul, counit, is_coideal, split_copair
from .errors import CapExceeded, InstanceMismatch, InvalidModulusDegree, NotAMonoid
from .finring import FiniteRing
from .poly import ZZ, Polynomial, reduce_xq, substitute
from .report import Report
from .toycoh import FunctionElement, compose as fn_compose, eta

EXHAUSTIVE_CAP = 64
CURRY_CAP = 4096
COGROUP_CAP = 64


# ---------------------------------------------------------------------------
# finite monoids


class FiniteMonoid:
    """Carrier labels (identity first) and a multiplication table on their indices."""

    def __init__(self, carrier: Sequence[str], table):
        self.carrier = tuple(str(c) for c in carrier)
        self.table = np.array(table, dtype=np.int64)
        n = len(self.carrier)
        if n == 0 or self.table.shape != (n, n):
            raise NotAMonoid(f"table shape {self.table.shape} does not match {n} elements")
        if self.table.min() < 0 or self.table.max() >= n:
            raise NotAMonoid("table entries out of range")
        r = np.arange(n)
        if not ((self.table[0] == r).all() and (self.table[:, 0] == r).all()):
            raise NotAMonoid("first element is not a two-sided identity")
        count, *first = kernels.assoc_violations(self.table)
        if count:
            raise NotAMonoid(f"not associative at {tuple(self.carrier[i] for i in first)}")
        self.table.setflags(write=False)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteMonoid":
        labels = ["e", "g"] + [f"g{k}" for k in range(2, n)]
        return cls(labels[:n], [[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def trivial(cls) -> "FiniteMonoid":
        return cls(["e"], [[0]])

    @property
    def size(self):
        return len(self.carrier)

    @property
    def identity(self):
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __repr__(self):
        return f"FiniteMonoid({list(self.carrier)})"

    def __eq__(self, other):
        return isinstance(other, FiniteMonoid) and self.carrier == other.carrier and (self.table == other.table).all()

    def __hash__(self):
        return hash(self.carrier)


# ---------------------------------------------------------------------------
# instances


class TWInstance:
    """Interface shared by the concrete instances."""

    name = "tw"

    def contains(self, a) -> bool:
        raise NotImplementedError

    def check(self, a):
        if not self.contains(a):
            raise InstanceMismatch(f"{a!r} is not an element of {self.name}")
        return a

    def compose(self, a, b):
        raise NotImplementedError

    @property
    def unit(self):
        raise NotImplementedError

    def elements(self) -> Optional[list]:
        """The whole carrier when it is finite, else None."""
        return None

    def key(self, a):
        return a


class PolyTW(TWInstance):
    """R<x> (or R<x>/(x^q - x)) with composition of polynomials."""

    def __init__(self, biring: Biring):
        self.biring = biring
        self.name = f"PolyTW({biring})"

    @property
    def ring(self):
        return self.biring.base

    def contains(self, a) -> bool:
        return isinstance(a, Polynomial) and a.ring == self.ring and a.variables() <= {"x"}

    def canon(self, P):
        return self.biring.canonical(P, ("x",))

    def compose(self, a, b):
        return self.canon(substitute(a, {"x": b}))

    @property
    def unit(self):
        return self.biring.x

    @property
    def zero(self):
        return Polynomial.zero(self.ring)

    @property
    def one(self):
        return Polynomial.one(self.ring)

    def add(self, a, b):
        return self.canon(a + b)

    def mul(self, a, b):
        return self.canon(a * b)

    def coadd_terms(self, a):
        return split_copair(coadd(self.biring, a))

    def comul_terms(self, a):
        return split_copair(comul(self.biring, a))

    def constants(self):
        return [(self.ring.label(r), r) for r in range(self.ring.size)]

    def const(self, r):
        return Polynomial.constant(self.ring, r)

    def counit(self, a, r):
        return counit(self.biring, a, r)

    def elements(self):
        if self.biring.modulus_q is None:
            return None
        return self.biring.elements()

    def random_element(self, rng: random.Random, degree: int = 3):
        R = self.ring
        return self.canon(Polynomial.from_dense(R, [rng.randrange(R.size) for _ in range(degree + 1)]))


class FunTW(TWInstance):
    """R^R with pointwise ring operations and composition of functions."""

    def __init__(self, ring: FiniteRing):
        self.ring = ring
        self.name = f"FunTW({ring})"

    def contains(self, a) -> bool:
        return isinstance(a, FunctionElement) and a.ring == self.ring

    def key(self, a):
        return a.table

    def compose(self, a, b):
        return fn_compose(a, b)

    @property
    def unit(self):
        return FunctionElement.identity(self.ring)

    @property
    def zero(self):
        return FunctionElement.constant(self.ring, self.ring.zero)

    @property
    def one(self):
        return FunctionElement.constant(self.ring, self.ring.one)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def _terms(self, a, table):
        # f(r1 op r2) = sum over (r1, r2) of f(r1 op r2) delta_r1 (x) delta_r2
        R = self.ring
        out = []
        for r1 in range(R.size):
            for r2 in range(R.size):
                v = a.table[table[r1, r2]]
                out.append((FunctionElement.constant(R, v) * FunctionElement.delta(R, r1),
                            FunctionElement.delta(R, r2)))
        return out

    def coadd_terms(self, a):
        return self._terms(a, self.ring.add_table)

    def comul_terms(self, a):
        return self._terms(a, self.ring.mul_table)

    def constants(self):
        return [(self.ring.label(r), r) for r in range(self.ring.size)]

    def const(self, r):
        return FunctionElement.constant(self.ring, r)

    def counit(self, a, r):
        return a.table[r]

    def elements(self):
        R = self.ring
        return [FunctionElement(R, t) for t in itertools.product(range(R.size), repeat=R.size)]

    def random_element(self, rng: random.Random, degree: int = 3):
        R = self.ring
        return FunctionElement(R, [rng.randrange(R.size) for _ in range(R.size)])


class MonoidPlethory(TWInstance):
    """Z[x_m : m in M] with P (.) Q = P[x_m := sigma_m(Q)], sigma_m(x_n) = x_(m n).

    The generators are ring-like, so coadd and comul act variable-wise.
    """

    def __init__(self, monoid: FiniteMonoid, sample_constants: Iterable[int] = (-2, -1, 0, 1, 2)):
        self.monoid = monoid
        self.name = f"MonoidPlethory({'/'.join(monoid.carrier)})"
        self.vars = tuple(f"x_{m}" for m in monoid.carrier)
        self._constants = tuple(sample_constants)

    @property
    def ring(self):
        return ZZ

    def var(self, m: int) -> Polynomial:
        return Polynomial.variable(ZZ, self.vars[m])

    def contains(self, a) -> bool:
        return isinstance(a, Polynomial) and a.ring is ZZ and a.variables() <= set(self.vars)

    def sigma(self, m: int, Q: Polynomial) -> Polynomial:
        M = self.monoid
        return substitute(Q, {self.vars[n]: self.var(M.mul(m, n)) for n in range(M.size)})

    def compose(self, a, b):
        return substitute(a, {self.vars[m]: self.sigma(m, b) for m in range(self.monoid.size)})

    @property
    def unit(self):
        return self.var(self.monoid.identity)

    @property
    def zero(self):
        return Polynomial.zero(ZZ)

    @property
    def one(self):
        return Polynomial.one(ZZ)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def _legs(self, C):
        left = {f"y_{m}": None for m in self.monoid.carrier}
        out = []
        for mono, c in C.sorted_terms():
            l = tuple((v, e) for v, e in mono if v not in left)
            r = tuple((v.replace("y_", "x_", 1), e) for v, e in mono if v in left)
            out.append((Polynomial(ZZ, {l: c}), Polynomial(ZZ, {r: 1})))
        return out

    def _shadow(self, m):
        return Polynomial.variable(ZZ, f"y_{self.monoid.carrier[m]}")

    def coadd_terms(self, a):
        C = substitute(a, {v: self.var(m) + self._shadow(m) for m, v in enumerate(self.vars)})
        return self._legs(C)

    def comul_terms(self, a):
        C = substitute(a, {v: self.var(m) * self._shadow(m) for m, v in enumerate(self.vars)})
        return self._legs(C)

    def constants(self):
        return [(str(c), c) for c in self._constants]

    def const(self, c):
        return Polynomial.integer(ZZ, c)

    def counit(self, a, c):
        return substitute(a, {v: self.const(c) for v in self.vars}).constant_term()

    def random_element(self, rng: random.Random, degree: int = 2):
        P = Polynomial.zero(ZZ)
        monos = [()]
        for d in range(1, degree + 1):
            monos += list(itertools.combinations_with_replacement(range(self.monoid.size), d))
        for mono in rng.sample(monos, min(len(monos), 3)):
            term = Polynomial.integer(ZZ, rng.choice([-2, -1, 1, 2, 3]))
            for m in mono:
                term = term * self.var(m)
            P = P + term
        return P


def tw_compose(T: TWInstance, a, b):
    """a (.) b in the instance T."""
    return T.compose(T.check(a), T.check(b))


# ---------------------------------------------------------------------------
# axiom suite

_LAWS = (
    "associativity (a.b).c = a.(b.c)",
    "left unit x.a = a",
    "right unit a.x = a",
    "(a+b).c = a.c + b.c",
    "(ab).c = (a.c)(b.c)",
    "1.c = 1",
    "a.(b+c) = sum a'.b a''.c over coadd(a)",
    "a.(bc) = sum a'.b a''.c over comul(a)",
    "a.const_r = epsilon_r(a) 1",
)


def _fold(T, terms, b, c):
    acc = T.zero
    for l, r in terms:
        acc = T.add(acc, T.mul(T.compose(l, b), T.compose(r, c)))
    return acc


def _tables(T: TWInstance, elems: list):
    index = {T.key(e): i for i, e in enumerate(elems)}
    n = len(elems)

    def idx(e):
        try:
            return index[T.key(e)]
        except KeyError:
            raise InstanceMismatch(f"{e!r} left the carrier of {T.name}") from None

    comp = np.empty((n, n), dtype=np.int64)
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            comp[i, j] = idx(T.compose(a, b))
            add[i, j] = idx(T.add(a, b))
            mul[i, j] = idx(T.mul(a, b))

    def csr(expand):
        ptr, lt, rt = [0], [], []
        for a in elems:
            for l, r in expand(a):
                lt.append(idx(l))
                rt.append(idx(r))
            ptr.append(len(lt))
        return np.array(ptr), np.array(lt, dtype=np.int64), np.array(rt, dtype=np.int64)

    return idx, comp, add, mul, csr(T.coadd_terms), csr(T.comul_terms)


def _exhaustive(T: TWInstance, elems: list, rep: Report):
    n = len(elems)
    idx, comp, add, mul, cadd, cmul = _tables(T, elems)
    zero, one, unit = idx(T.zero), idx(T.one), idx(T.unit)
    scope = {"instance": T.name, "triples": n ** 3, "mode": "exhaustive"}

    def case(law, outcome):
        count, *first = outcome
        got = {"violations": count}
        if count:
            got["first"] = [str(elems[i]) if i >= 0 else None for i in first]
        rep.add(law, scope, {"violations": 0}, got)

    r = np.arange(n)
    case(_LAWS[0], kernels.assoc_violations(comp))
    left = np.flatnonzero(comp[unit] != r)
    right = np.flatnonzero(comp[:, unit] != r)
    case(_LAWS[1], (len(left), *(left[:1].tolist() or [-1]), -1, -1))
    case(_LAWS[2], (len(right), *(right[:1].tolist() or [-1]), -1, -1))
    case(_LAWS[3], kernels.left_compat(comp, add))
    case(_LAWS[4], kernels.left_compat(comp, mul))
    bad = np.flatnonzero(comp[one] != one)
    case(_LAWS[5], (len(bad), -1, *(bad[:1].tolist() or [-1]), -1))
    case(_LAWS[6], kernels.right_coterm(comp, add, add, mul, zero, *cadd))
    case(_LAWS[7], kernels.right_coterm(comp, mul, add, mul, zero, *cmul))
    bad = []
    for a, e in enumerate(elems):
        for _, rho in T.constants():
            if comp[a, idx(T.const(rho))] != idx(T.const(T.counit(e, rho))):
                bad.append((a, rho))
    case(_LAWS[8], (len(bad), *(bad[0][:1] if bad else [-1]), -1, -1))


def _sampled(T: TWInstance, triples: list, rep: Report):
    scope = {"instance": T.name, "triples": len(triples), "mode": "sampled"}
    bad = {law: [] for law in _LAWS}
    for a, b, c in triples:
        ab_c = T.compose(T.compose(a, b), c)
        checks = (
            (ab_c, T.compose(a, T.compose(b, c))),
            (T.compose(T.unit, a), a),
            (T.compose(a, T.unit), a),
            (T.compose(T.add(a, b), c), T.add(T.compose(a, c), T.compose(b, c))),
            (T.compose(T.mul(a, b), c), T.mul(T.compose(a, c), T.compose(b, c))),
            (T.compose(T.one, c), T.one),
            (T.compose(a, T.add(b, c)), _fold(T, T.coadd_terms(a), b, c)),
            (T.compose(a, T.mul(b, c)), _fold(T, T.comul_terms(a), b, c)),
        )
        for law, (lhs, rhs) in zip(_LAWS, checks):
            if T.key(lhs) != T.key(rhs):
                bad[law].append([str(a), str(b), str(c)])
        for label, rho in T.constants():
            if T.key(T.compose(a, T.const(rho))) != T.key(T.const(T.counit(a, rho))):
                bad[_LAWS[8]].append([str(a), label])
    for law in _LAWS:
        got = {"violations": len(bad[law])}
        if bad[law]:
            got["first"] = bad[law][0]
        rep.add(law, scope, {"violations": 0}, got)


def verify_tw_axioms(T: TWInstance, samples: Optional[Sequence] = None, *, seed: int = 0,
                     n_samples: int = 6, exhaustive_cap: int = EXHAUSTIVE_CAP) -> Report:
    """Check the plethory laws on T: associativity, units, left and right compatibility.

    Finite carriers of at most ``exhaustive_cap`` elements are checked over
    all triples through the kernels.  Otherwise every triple drawn from
    ``samples`` (default: unit, 0, 1 and ``n_samples`` seeded random elements)
    is checked directly.
    """
    rep = Report(f"verify_tw_axioms({T.name})", seed=seed)
    elems = T.elements() if samples is None else None
    if elems is not None and len(elems) <= exhaustive_cap:
        _exhaustive(T, elems, rep)
        return rep
    if samples is None:
        rng = random.Random(seed)
        samples = [T.unit, T.zero, T.one] + [T.random_element(rng) for _ in range(n_samples)]
    samples = [T.check(s) for s in samples]
    _sampled(T, list(itertools.product(samples, repeat=3)), rep)
    return rep


def eta_transport(R: FiniteRing, cap: int = 4096) -> Report:
    """eta(a (.) b) = eta(a) o eta(b) for every pair of reduced polynomials, q = |R|."""
    B = Biring(R, R.size)
    if B.quotient.size > cap:
        raise CapExceeded(f"{B.quotient.size} elements exceed cap {cap}")
    P, F = PolyTW(B), FunTW(R)
    elems = B.elements()
    etas = [eta(R, a) for a in elems]
    bad = []
    for a, ea in zip(elems, etas):
        for b, eb in zip(elems, etas):
            if eta(R, tw_compose(P, a, b)) != tw_compose(F, ea, eb):
                bad.append([str(a), str(b)])
    got = {"violations": len(bad)}
    if bad:
        got["first"] = bad[0]
    rep = Report(f"eta_transport({R})")
    rep.add("eta(a.b) = eta(a) o eta(b)", {"pairs": len(elems) ** 2}, {"violations": 0}, got)
    return rep


# ---------------------------------------------------------------------------
# descent to R<x>/(x^q - x)


def descent_check(T: PolyTW, q: int, *, seed: int = 0, lifts: int = 20, span: int = 4) -> Report:
    """Does (x^q - x) descend, i.e. is R<x>/(x^q - x) again a TW monoid?

    Evidence: the coideal decision, P.t - P.0 in I for t in I over the
    spanning family P = x^k, t = x^j (x^q - x) plus seeded random P, M,
    and left absorption t.P in I.  The combined verdict is the last case.
    """
    if not isinstance(T, PolyTW):
        raise InstanceMismatch("descent_check needs a PolyTW instance")
    if T.biring.modulus_q is not None:
        raise InstanceMismatch("descent_check needs R<x> without a modulus")
    if not isinstance(q, int) or q < 2:
        raise InvalidModulusDegree(f"q must be an integer >= 2, got {q!r}")
    R = T.ring
    rep = Report(f"descent_check({R}, q={q})", seed=seed)
    x = T.unit
    gen = x ** q - x

    def in_ideal(P):
        return reduce_xq(P, q, ("x",)).is_zero()

    co = is_coideal(Biring(R), q)
    rep.add("(x^q - x) is a coideal", {"q": q}, {"coideal": True},
            {"coideal": co.is_coideal, "witness": None if co.witness is None else str(co.witness),
             "failed": co.failed}, passed=co.is_coideal)

    rng = random.Random(seed)

    def rand_poly(deg):
        return Polynomial.from_dense(R, [rng.randrange(R.size) for _ in range(deg + 1)])

    Ps = [x ** k for k in range(q + span)] + [rand_poly(q + 2) for _ in range(lifts)]
    ts = [x ** j * gen for j in range(span)] + [rand_poly(3) * gen for _ in range(lifts)]
    zero = Polynomial.zero(R)
    bad_right, bad_left = [], []
    for P in Ps:
        P0 = substitute(P, {"x": zero})
        for t in ts:
            if not in_ideal(substitute(P, {"x": t}) - P0):
                bad_right.append([str(P), str(t)])
            if not in_ideal(substitute(t, {"x": P})):
                bad_left.append([str(t), str(P)])
    scope = {"P": len(Ps), "t": len(ts), "seed": seed}
    for law, bad in (("P.t - P.0 in I for t in I", bad_right), ("t.P in I for t in I", bad_left)):
        got = {"violations": len(bad)}
        if bad:
            got["first"] = bad[0]
        rep.add(law, scope, {"violations": 0}, got)
    verdict = all(c.passed for c in rep.cases)
    rep.add("quotient inherits TW structure", {"q": q}, True, verdict)
    return rep


# ---------------------------------------------------------------------------
# strong monoidality: currying


def _ring_homs(A: FiniteRing, B: FiniteRing) -> list:
    """All unital ring maps A -> B by brute force."""
    out = []
    for f in itertools.product(range(B.size), repeat=A.size):
        if f[A.one] != B.one:
            continue
        if all(f[A.add_table[a, b]] == B.add_table[f[a], f[b]] and f[A.mul_table[a, b]] == B.mul_table[f[a], f[b]]
               for a in range(A.size) for b in range(A.size)):
            out.append(f)
    return out


def currying_iso(S1, S2, A: FiniteRing, roster: Sequence[FiniteRing] = (), cap: int = CURRY_CAP) -> Report:
    """Set(S1 x S2, A) -> Set(S1, Set(S2, A)) is a ring isomorphism, natural in A.

    Sets are sizes or label sequences.  Naturality is checked against every
    ring map A -> A' for A' in ``roster``.
    """
    s1 = range(S1) if isinstance(S1, int) else range(len(S1))
    s2 = range(S2) if isinstance(S2, int) else range(len(S2))
    n1, n2 = len(s1), len(s2)
    size = A.size ** (n1 * n2)
    if size > cap:
        raise CapExceeded(f"|A|^(|S1||S2|) = {size} exceeds cap {cap}")
    rep = Report(f"currying_iso(|S1|={n1}, |S2|={n2}, {A})")
    pairs = [(i, j) for i in s1 for j in s2]
    flat = list(itertools.product(range(A.size), repeat=len(pairs)))
    inner = list(itertools.product(range(A.size), repeat=n2))
    nested = list(itertools.product(inner, repeat=n1))

    def curry(f):
        vals = dict(zip(pairs, f))
        return tuple(tuple(vals[(i, j)] for j in s2) for i in s1)

    def uncurry(g):
        return tuple(g[i][j] for i, j in pairs)

    image = [curry(f) for f in flat]
    rep.add("curry is a bijection", {"elements": size},
            {"domain": len(flat), "codomain": len(nested), "image": len(nested)},
            {"domain": len(flat), "codomain": len(nested), "image": len(set(image))})
    rep.add("uncurry o curry = id", {"elements": size}, 0, sum(uncurry(g) != f for f, g in zip(flat, image)))

    def pw(table, u, v):
        return tuple(int(table[a, b]) for a, b in zip(u, v))

    def pw2(table, g, h):
        return tuple(pw(table, gi, hi) for gi, hi in zip(g, h))

    bad = {"add": 0, "mul": 0}
    for f, cf in zip(flat, image):
        for g, cg in zip(flat, image):
            bad["add"] += curry(pw(A.add_table, f, g)) != pw2(A.add_table, cf, cg)
            bad["mul"] += curry(pw(A.mul_table, f, g)) != pw2(A.mul_table, cf, cg)
    rep.add("curry preserves +", {"pairs": size ** 2}, 0, bad["add"])
    rep.add("curry preserves *", {"pairs": size ** 2}, 0, bad["mul"])
    zero = tuple([A.zero] * len(pairs))
    one = tuple([A.one] * len(pairs))
    rep.add("curry preserves 0 and 1",
            {"pairs": len(pairs)},
            [list(map(list, ((A.zero,) * n2,) * n1)), list(map(list, ((A.one,) * n2,) * n1))],
            [list(map(list, curry(zero))), list(map(list, curry(one)))])

    homs = 0
    bad_nat = 0
    for A2 in roster:
        for phi in _ring_homs(A, A2):
            homs += 1
            for f, cf in zip(flat, image):
                lhs = curry(tuple(phi[v] for v in f))
                rhs = tuple(tuple(phi[v] for v in row) for row in cf)
                bad_nat += lhs != rhs
    rep.add("natural in A along ring maps to the roster",
            {"roster": [str(r) for r in roster], "ring_maps": homs}, 0, bad_nat)
    return rep


# ---------------------------------------------------------------------------
# co-group structures on Z/n in abelian groups


def cogroup_uniqueness(n: int, cap: int = COGROUP_CAP) -> int:
    """Count co-group structures (alpha, nu, zeta) on Z/n in Ab.

    alpha: Z/n -> Z/n + Z/n is fixed by alpha(1) = (a, b) (n^2 choices),
    nu: Z/n -> Z/n by nu(1) (n choices), and zeta: Z/n -> 0 is unique.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds cap {cap}")
    elems = range(n)
    count = 0
    for a, b in itertools.product(elems, repeat=2):
        def alpha(v):
            return (a * v % n, b * v % n)

        # coassociativity: (alpha + id) alpha = (id + alpha) alpha in (Z/n)^3
        coassoc = all(
            (*alpha(alpha(v)[0]), alpha(v)[1]) == (alpha(v)[0], *alpha(alpha(v)[1])) for v in elems
        )
        # counit: (zeta + id) alpha = id = (id + zeta) alpha
        counit_ok = all(alpha(v)[1] == v and alpha(v)[0] == v for v in elems)
        if not (coassoc and counit_ok):
            continue
        for c in elems:
            # coinverse: fold (id + nu) alpha = 0 = fold (nu + id) alpha
            if all((alpha(v)[0] + c * alpha(v)[1]) % n == 0 and (c * alpha(v)[0] + alpha(v)[1]) % n == 0
                   for v in elems):
                count += 1
    return count
