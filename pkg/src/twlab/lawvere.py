"""Finitary equational theories, finite models and co-operations on free algebras.

Free algebras are never materialised: an element of F(S) is a term over
the generators S, and equalities are decided by evaluating in finite
models.  The co-operation attached to an n-ary operation sends each
generator s to ``op(s<1>, ..., s<n>)`` in the free algebra on S x {1..n}
and extends to all terms by substitution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    CarrierTooLarge,
    DepthTooLarge,
    TheoryParseError,
    UnboundVariable,
    UnknownOperation,
)
from .report import Report

CARRIER_CAP = 8
GENERATOR_CAP = 3
DEPTH_CAP = 3
TERM_CAP = 20000


# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()


class Var(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name):
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other):
        return isinstance(other, Var) and self.name == other.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return str(self.name)


class App(Term):
    __slots__ = ("op", "args", "_hash")

    def __init__(self, op, args: Sequence[Term] = ()):
        self.op = op
        self.args = tuple(args)
        self._hash = hash(("app", op, self.args))

    def __eq__(self, other):
        return (isinstance(other, App) and self._hash == other._hash
                and self.op == other.op and self.args == other.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"App({self.op!r}, {list(self.args)!r})"

    def __str__(self):
        if not self.args:
            return str(self.op)
        return "(" + " ".join([str(self.op)] + [str(a) for a in self.args]) + ")"


@dataclass(frozen=True, order=True)
class TaggedGenerator:
    """Generator ``gen`` in the ``tag``-th summand of an n-fold coproduct of free algebras."""

    gen: object
    tag: int

    def __str__(self):
        return f"{self.gen}<{self.tag}>"


def term_vars(t: Term) -> list:
    """Variables of ``t`` in order of first occurrence."""
    out: dict = {}

    def walk(u):
        if isinstance(u, Var):
            out.setdefault(u.name, None)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return list(out)


def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def substitute_term(t: Term, bindings: Mapping) -> Term:
    memo: dict = {}

    def go(u):
        if u in memo:
            return memo[u]
        if isinstance(u, Var):
            if u.name not in bindings:
                raise UnboundVariable(f"variable {u.name!r} is not bound")
            r = bindings[u.name]
        else:
            r = App(u.op, [go(a) for a in u.args])
        memo[u] = r
        return r

    return go(t)


# ---------------------------------------------------------------------------
# theories


@dataclass(frozen=True)
class TheoryPresentation:
    name: str
    operations: tuple  # ((symbol, arity), ...)
    identities: tuple = ()  # ((lhs, rhs), ...)

    def __post_init__(self):
        arities = dict(self.operations)
        if len(arities) != len(self.operations):
            raise ValueError(f"duplicate operation symbol in {self.name}")
        for lhs, rhs in self.identities:
            for t in (lhs, rhs):
                self.check_term(t)

    def arity(self, op) -> int:
        for sym, n in self.operations:
            if sym == op:
                return n
        raise UnknownOperation(f"{op!r} is not an operation of {self.name}")

    @property
    def symbols(self) -> list:
        return [s for s, _ in self.operations]

    def check_term(self, t: Term):
        if isinstance(t, App):
            if len(t.args) != self.arity(t.op):
                raise ArityMismatch(f"{t.op} takes {self.arity(t.op)} arguments, got {len(t.args)}")
            for a in t.args:
                self.check_term(a)
        return t

    def to_text(self) -> str:
        lines = [f"theory {self.name}"]
        lines += [f"op {s} {n}" for s, n in self.operations]
        lines += [f"id {l} = {r}" for l, r in self.identities]
        return "\n".join(lines) + "\n"


def _sexpr_tokens(text: str, base: int):
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            yield ch, base + i
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            yield text[i:j], base + i
            i = j


def parse_term(text: str, arities: Mapping[str, int], base: int = 0) -> Term:
    """Parse an S-expression term.  Bare symbols naming nullary operations are constants."""
    toks = list(_sexpr_tokens(text, base))
    pos = 0

    def err(msg, at):
        raise TheoryParseError(msg, at)

    def parse():
        nonlocal pos
        if pos >= len(toks):
            err("unexpected end of term", base + len(text))
        tok, at = toks[pos]
        pos += 1
        if tok == ")":
            err("unexpected ')'", at)
        if tok != "(":
            return App(tok) if arities.get(tok) == 0 else Var(tok)
        if pos >= len(toks):
            err("unexpected end of term", base + len(text))
        op, op_at = toks[pos]
        pos += 1
        if op not in arities:
            err(f"unknown operation {op!r}", op_at)
        args = []
        while pos < len(toks) and toks[pos][0] != ")":
            args.append(parse())
        if pos >= len(toks):
            err("missing ')'", base + len(text))
        pos += 1
        if len(args) != arities[op]:
            err(f"{op} takes {arities[op]} arguments, got {len(args)}", op_at)
        return App(op, args)

    t = parse()
    if pos != len(toks):
        err("trailing input after term", toks[pos][1])
    return t


def parse_theory(text: str, name: str | None = None) -> TheoryPresentation:
    """Parse the declarative format: ``theory N`` / ``op SYM ARITY`` / ``id TERM = TERM``."""
    ops: list = []
    ids: list = []
    offset = 0
    raw = text.encode()
    for line in raw.split(b"\n"):
        start = offset
        offset += len(line) + 1
        body = line.split(b"#", 1)[0].decode()
        stripped = body.strip()
        if not stripped:
            continue
        lead = start + (len(body) - len(body.lstrip()))
        word, _, rest = stripped.partition(" ")
        rest_at = lead + len(word) + 1
        if word == "theory":
            name = rest.strip() or name
        elif word == "op":
            parts = rest.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise TheoryParseError("expected 'op <symbol> <arity>'", lead)
            ops.append((parts[0], int(parts[1])))
        elif word == "id":
            if "=" not in rest.replace("(=", "( "):
                raise TheoryParseError("expected 'id <term> = <term>'", lead)
            arities = dict(ops)
            # split on the '=' that sits at parenthesis depth 0
            depth, cut = 0, None
            for k, ch in enumerate(rest):
                depth += {"(": 1, ")": -1}.get(ch, 0)
                if ch == "=" and depth == 0:
                    cut = k
                    break
            if cut is None:
                raise TheoryParseError("expected '=' between terms", lead)
            lhs = parse_term(rest[:cut], arities, rest_at)
            rhs = parse_term(rest[cut + 1:], arities, rest_at + cut + 1)
            ids.append((lhs, rhs))
        else:
            raise TheoryParseError(f"unknown directive {word!r}", lead)
    return TheoryPresentation(name or "anonymous", tuple(ops), tuple(ids))


MONOID_TEXT = """\
theory Monoid
op * 2
op e 0
id (* (* x y) z) = (* x (* y z))
id (* e x) = x
id (* x e) = x
"""

ABGROUP_TEXT = """\
theory AbGroup
op + 2
op neg 1
op 0 0
id (+ (+ x y) z) = (+ x (+ y z))
id (+ x y) = (+ y x)
id (+ 0 x) = x
id (+ (neg x) x) = 0
"""

COMMRING_TEXT = """\
theory CommRing
op + 2
op * 2
op neg 1
op 0 0
op 1 0
id (+ (+ x y) z) = (+ x (+ y z))
id (+ x y) = (+ y x)
id (+ 0 x) = x
id (+ (neg x) x) = 0
id (* (* x y) z) = (* x (* y z))
id (* x y) = (* y x)
id (* 1 x) = x
id (* x (+ y z)) = (+ (* x y) (* x z))
"""

MONOID = parse_theory(MONOID_TEXT)
ABGROUP = parse_theory(ABGROUP_TEXT)
COMMRING = parse_theory(COMMRING_TEXT)
BUILTINS = {"Monoid": MONOID, "AbGroup": ABGROUP, "CommRing": COMMRING}


def builtin(name: str) -> TheoryPresentation:
    try:
        return BUILTINS[name]
    except KeyError:
        raise UnknownOperation(f"no built-in theory {name!r}; have {sorted(BUILTINS)}") from None


# ---------------------------------------------------------------------------
# finite algebras


@dataclass
class FiniteAlgebra:
    """Carrier labels plus, per operation, an ``arity``-dimensional table of carrier indices."""

    theory: TheoryPresentation
    carrier: tuple
    tables: dict = field(default_factory=dict)

    def __post_init__(self):
        self.carrier = tuple(self.carrier)
        n = len(self.carrier)
        tables = {}
        for sym, arity in self.theory.operations:
            if sym not in self.tables:
                raise UnknownOperation(f"no table for operation {sym!r}")
            t = np.asarray(self.tables[sym], dtype=np.int64)
            if t.shape != (n,) * arity:
                raise ArityMismatch(f"table for {sym} has shape {t.shape}, expected {(n,) * arity}")
            if t.size and (t.min() < 0 or t.max() >= n):
                raise ValueError(f"table for {sym} leaves the carrier")
            t.setflags(write=False)
            tables[sym] = t
        self.tables = tables

    @property
    def size(self) -> int:
        return len(self.carrier)

    def apply(self, op, args):
        return self.tables[op][tuple(args)] if args else self.tables[op][()]

    @classmethod
    def from_ring(cls, theory: TheoryPresentation, R) -> "FiniteAlgebra":
        """The reduct of a finite ring to a built-in theory (Monoid uses multiplication)."""
        available = {"+": R.add_table, "*": R.mul_table, "neg": R.neg_table,
                     "0": np.int64(R.zero), "1": np.int64(R.one), "e": np.int64(R.one)}
        tables = {}
        for sym, _ in theory.operations:
            if sym not in available:
                raise UnknownOperation(f"ring {R} has no interpretation for {sym!r}")
            tables[sym] = available[sym]
        return cls(theory, tuple(R.label(a) for a in range(R.size)), tables)

    def power(self, k: int) -> "FiniteAlgebra":
        """Pointwise structure on maps {0..k-1} -> A (carrier tuples in lexicographic order)."""
        n = self.size
        cells = list(itertools.product(range(n), repeat=k))
        pos = {c: i for i, c in enumerate(cells)}
        tables = {}
        for sym, arity in self.theory.operations:
            base = self.tables[sym]
            shape = (len(cells),) * arity
            t = np.empty(shape, dtype=np.int64)
            for idx in itertools.product(range(len(cells)), repeat=arity):
                args = [cells[i] for i in idx]
                t[idx] = pos[tuple(int(base[tuple(a[j] for a in args)]) for j in range(k))]
            tables[sym] = t
        carrier = tuple(tuple(self.carrier[i] for i in c) for c in cells)
        return FiniteAlgebra(self.theory, carrier, tables)


def left_zero_monoid(n: int = 2) -> FiniteAlgebra:
    """The left-zero band a*b = a with e := 0; a semigroup, never a monoid for n >= 2."""
    r = np.arange(n)
    return FiniteAlgebra(MONOID, tuple(range(n)), {"*": np.repeat(r[:, None], n, axis=1), "e": 0})


def eval_term(t: Term, A: FiniteAlgebra, env: Mapping) -> int:
    """Value of ``t`` in ``A`` under ``env`` (variable -> carrier index)."""
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundVariable(f"variable {t.name!r} is not bound")
        return int(env[t.name])
    arity = A.theory.arity(t.op)
    if len(t.args) != arity:
        raise ArityMismatch(f"{t.op} takes {arity} arguments, got {len(t.args)}")
    return int(A.apply(t.op, [eval_term(a, A, env) for a in t.args]))


def eval_batch(t: Term, A: FiniteAlgebra, env: Mapping, memo: dict | None = None):
    """Vectorised ``eval_term``: ``env`` maps variables to equal-length index arrays."""
    if memo is None:
        memo = {}
    hit = memo.get(t)
    if hit is not None:
        return hit
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundVariable(f"variable {t.name!r} is not bound")
        out = env[t.name]
    else:
        arity = A.theory.arity(t.op)
        if len(t.args) != arity:
            raise ArityMismatch(f"{t.op} takes {arity} arguments, got {len(t.args)}")
        if not t.args:
            length = len(next(iter(env.values()))) if env else 1
            out = np.full(length, A.tables[t.op][()], dtype=np.int64)
        else:
            out = A.tables[t.op][tuple(eval_batch(a, A, env, memo) for a in t.args)]
    memo[t] = out
    return out


def _assignments(names: Sequence, size: int) -> dict:
    """All assignments names -> range(size) as parallel arrays, first name slowest."""
    k = len(names)
    if k == 0:
        return {}
    grid = np.indices((size,) * k).reshape(k, -1)
    return {name: grid[i].astype(np.int64) for i, name in enumerate(names)}


@dataclass
class ModelCheck:
    ok: bool
    identity: tuple | None = None
    env: dict | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "model"
        lhs, rhs = self.identity
        return f"{lhs} = {rhs} fails at {self.env}"


def is_model(A: FiniteAlgebra, cap: int = CARRIER_CAP) -> ModelCheck:
    """Every identity under every assignment; the first failure is the counterexample."""
    if A.size > cap:
        raise CarrierTooLarge(f"carrier of size {A.size} exceeds cap {cap}")
    for lhs, rhs in A.theory.identities:
        names = term_vars(lhs) + [v for v in term_vars(rhs) if v not in term_vars(lhs)]
        env = _assignments(names, A.size)
        if A.size == 0 or (names and not len(next(iter(env.values())))):
            continue
        memo: dict = {}
        bad = np.flatnonzero(eval_batch(lhs, A, env, memo) != eval_batch(rhs, A, env, memo))
        if len(bad):
            k = int(bad[0])
            return ModelCheck(False, (lhs, rhs), {v: A.carrier[int(env[v][k])] for v in names})
    return ModelCheck(True)


# ---------------------------------------------------------------------------
# co-operations on free algebras


def co_operation_on_free(T: TheoryPresentation, op, S: Sequence) -> dict:
    """Generator images of the co-operation F(S) -> F(S x {1..n}) for ``op`` of arity n."""
    n = T.arity(op)
    return {s: App(op, [Var(TaggedGenerator(s, i)) for i in range(1, n + 1)]) for s in S}


def apply_co_operation(T: TheoryPresentation, op, t: Term, S: Sequence) -> Term:
    """Image of the element ``t`` of F(S): the algebra map determined by generator images."""
    return substitute_term(t, co_operation_on_free(T, op, S))


def enumerate_terms(T: TheoryPresentation, S: Sequence, depth: int, cap: int = TERM_CAP) -> list:
    """All terms over S of depth <= ``depth`` (variables and constants have depth 0)."""
    terms = [Var(s) for s in S] + [App(sym) for sym, n in T.operations if n == 0]
    seen = set(terms)
    for _ in range(depth):
        new = []
        for sym, n in T.operations:
            if n == 0:
                continue
            for args in itertools.product(terms, repeat=n):
                t = App(sym, args)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
                    if len(seen) > cap:
                        raise DepthTooLarge(f"more than {cap} terms at depth {depth}")
        if not new:
            break
        terms.extend(new)
    return terms


def _check_caps(A, S, depth=0, cap_carrier=CARRIER_CAP, cap_generators=GENERATOR_CAP, cap_depth=DEPTH_CAP):
    if A.size > cap_carrier:
        raise CarrierTooLarge(f"carrier of size {A.size} exceeds cap {cap_carrier}")
    if len(S) > cap_generators:
        raise CarrierTooLarge(f"{len(S)} generators exceed cap {cap_generators}")
    if depth > cap_depth:
        raise DepthTooLarge(f"depth {depth} exceeds cap {cap_depth}")


def verify_coop_property(T: TheoryPresentation, op, S: Sequence, A: FiniteAlgebra, depth: int = 2,
                         *, cap_carrier: int = CARRIER_CAP, cap_depth: int = DEPTH_CAP) -> Report:
    """Check that the co-operation realises ``op`` on Hom(F(S), A).

    For every n-tuple of maps f_i: S -> A, the bottom row of the diagram
    (apply the co-operation, map each summand by f_i-hat, fold) must agree
    with the top row (diagonal, f_1 x ... x f_n, op_A) extended to F(S),
    i.e. with the homomorphism determined by s -> op_A(f_1(s), ..., f_n(s)).
    Agreement is tested on the generators and on every term of depth <= depth.
    """
    _check_caps(A, S, depth, cap_carrier=cap_carrier, cap_depth=cap_depth)
    rep = Report(f"coop[{T.name}, {op}, S={list(S)}, |A|={A.size}, depth={depth}]")
    model = is_model(A, cap=cap_carrier)
    rep.add("A is a model of T", T.name, "model", model.describe(), model.ok)
    if not model:
        return rep
    n = T.arity(op)
    tagged = [TaggedGenerator(s, i) for i in range(1, n + 1) for s in S]
    env = _assignments(tagged, A.size)
    if not env:
        env = {"__unit__": np.zeros(1, dtype=np.int64)}
    length = len(next(iter(env.values())))
    # top row on generators: s -> op_A(f_1(s), ..., f_n(s))
    top = {}
    for s in S:
        args = [env[TaggedGenerator(s, i)] for i in range(1, n + 1)]
        top[s] = A.tables[op][tuple(args)] if args else np.full(length, A.tables[op][()], dtype=np.int64)
    images = co_operation_on_free(T, op, S)
    bottom_memo: dict = {}
    gen_bad = sum(int(np.count_nonzero(eval_batch(images[s], A, env, bottom_memo) != top[s])) for s in S)
    rep.add("lower-left square on generators", {"generators": [str(s) for s in S], "tuples": length},
            0, gen_bad)
    top_env = {s: top[s] for s in S} or {"__unit__": np.zeros(length, dtype=np.int64)}
    top_memo: dict = {}
    terms = enumerate_terms(T, S, depth)
    bad, first = 0, None
    for t in terms:
        lhs = eval_batch(apply_co_operation(T, op, t, S), A, env, bottom_memo)
        rhs = eval_batch(t, A, top_env, top_memo)
        if np.ndim(lhs) == 0 or len(lhs) != length:
            lhs = np.broadcast_to(lhs, (length,))
        if np.ndim(rhs) == 0 or len(rhs) != length:
            rhs = np.broadcast_to(rhs, (length,))
        miss = np.flatnonzero(lhs != rhs)
        if len(miss):
            bad += len(miss)
            if first is None:
                k = int(miss[0])
                first = {"term": str(t), "f": {str(g): A.carrier[int(env[g][k])] for g in tagged}}
    rep.add("diagram commutes on terms", {"terms": len(terms), "tuples": length}, 0,
            bad if first is None else {"failures": bad, "first": first}, bad == 0)
    return rep


def hom_structures_agree(T: TheoryPresentation, S: Sequence, A: FiniteAlgebra,
                         *, cap_carrier: int = CARRIER_CAP, cap_hom: int = 64) -> Report:
    """Pointwise T-structure on maps S -> A versus the co-operation-induced one.

    Exhaustive over every operation and every argument tuple of maps.  Also
    checks that the resulting structure on A^S is itself a model of T.
    """
    _check_caps(A, S, cap_carrier=cap_carrier)
    rep = Report(f"hom[{T.name}, S={list(S)}, |A|={A.size}]")
    maps = list(itertools.product(range(A.size), repeat=len(S)))
    for op, n in T.operations:
        images = co_operation_on_free(T, op, S)
        bad = 0
        count = 0
        for fs in itertools.product(maps, repeat=n):
            count += 1
            pointwise = tuple(int(A.apply(op, [f[j] for f in fs])) for j in range(len(S)))
            env = {TaggedGenerator(s, i + 1): fs[i][j] for i in range(n) for j, s in enumerate(S)}
            induced = tuple(eval_term(images[s], A, env) for s in S)
            bad += pointwise != induced
        rep.add(f"structures agree on {op}", {"maps": len(maps), "tuples": count}, 0, bad)
    if len(maps) <= cap_hom:
        lifted = A.power(len(S))
        model = is_model(lifted, cap=cap_hom)
        rep.add("Hom(F(S), A) is a model of T", {"size": len(maps)}, "model", model.describe(), model.ok)
    return rep
