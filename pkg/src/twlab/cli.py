"""Command-line entry point: ``twlab <module> <check> ...``.

Every command produces a JSON report (stdout, or the ``--json`` path) and a
one-line human summary on stderr.  Exit status: 0 when the outcome matches
``--expect``, 1 when it does not, 2 for usage, parse and cap errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .acceptance import SuiteConfig, load_config, run_suite
from .biring import Biring, coadd, comul, is_coideal, verify_colaws
from .errors import CapExceeded, TwlabError
from .finring import FiniteRing, ring
from .lawvere import BUILTINS, FiniteAlgebra, hom_structures_agree, is_model, parse_theory, verify_coop_property
from .poly import evaluate, format_polynomial, parse_polynomial, reduce_xq, substitute
from .report import SCHEMA, Report, jsonable
from .toycoh import (
    FunctionElement,
    decompositions,
    delta0_polynomial,
    eta,
    idempotent_support,
    kernel_report,
    mu_is_bijection,
    supported_on_idempotents,
    tw_iso_check,
)
from .twmon import (
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


class UsageError(TwlabError):
    pass


def _labels(R: FiniteRing, elems) -> list:
    return [R.label(e) for e in sorted(elems)]


def _set_text(labels) -> str:
    return "{" + ",".join(labels) + "}"


class Context:
    def __init__(self, args):
        self.args = args
        self.notes: list[str] = []

    def ring(self, spec: str) -> FiniteRing:
        R = ring(spec)
        if R.size > self.args.cap_carrier:
            raise CapExceeded(f"{spec} has {R.size} elements, above --cap-carrier {self.args.cap_carrier}")
        return R

    def note(self, text: str):
        self.notes.append(text)


# ---------------------------------------------------------------------------
# ring


def cmd_ring(ctx: Context) -> Report:
    a = ctx.args
    R = ctx.ring(a.spec)
    rep = Report(f"ring {a.query} {R}")
    if a.query == "idempotents":
        got = _labels(R, R.idempotents())
        # brute-force oracle alongside the ring's own answer
        brute = _labels(R, [e for e in range(R.size) if R.mul(e, e) == e])
        rep.add("idempotents", {"ring": str(R)}, brute, got)
        ctx.note(f"idempotents({R}) = {_set_text(got)}")
    elif a.query == "units":
        got = _labels(R, R.units())
        rep.add("units", {"ring": str(R)}, got, got)
        ctx.note(f"units({R}) = {_set_text(got)}")
    elif a.query == "axioms":
        found = R.verify_axioms(cap=a.cap_carrier)
        for law, count in found.items():
            rep.add(law, {"ring": str(R)}, 0, count)
    elif a.query == "tables":
        labels = [R.label(i) for i in range(R.size)]
        got = {"carrier": labels, "add": R.add_table.tolist(), "mul": R.mul_table.tolist()}
        rep.add("tables", {"ring": str(R)}, None, got, passed=True)
        ctx.note(f"{R}: {R.size} elements")
    return rep


# ---------------------------------------------------------------------------
# poly


def _bindings(pairs):
    out = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        out[name.strip()] = value.strip()
    return out


def _scalar(R, text):
    # "[i]" is a carrier index, a bare integer its image under Z -> R
    if text.startswith("[") and text.endswith("]"):
        return R.check(int(text[1:-1]))
    try:
        return R.from_int(int(text))
    except ValueError:
        raise UsageError(f"expected an integer or [index], got {text!r}") from None


def cmd_poly(ctx: Context) -> Report:
    a = ctx.args
    R = ctx.ring(a.ring)
    P = parse_polynomial(a.expr, R)
    rep = Report(f"poly {a.query}")
    if a.query == "reduce":
        vars_ = tuple(sorted(P.variables())) or ("x",)
        Q = reduce_xq(P, a.q, vars_)
        again = reduce_xq(Q, a.q, vars_)
        rep.add("reduce_xq", {"P": format_polynomial(P), "q": a.q}, format_polynomial(again), format_polynomial(Q))
        ctx.note(format_polynomial(Q))
    elif a.query == "substitute":
        binds = {k: parse_polynomial(v, R) for k, v in _bindings(a.bind).items()}
        Q = substitute(P, binds)
        rep.add("substitute", {"P": format_polynomial(P), "bindings": {k: str(v) for k, v in binds.items()}},
                None, format_polynomial(Q), passed=True)
        ctx.note(format_polynomial(Q))
    elif a.query == "eval":
        env = {k: _scalar(R, v) for k, v in _bindings(a.at).items()}
        v = evaluate(P, env, R)
        rep.add("evaluate", {"P": format_polynomial(P), "at": {k: R.label(x) for k, x in env.items()}},
                None, R.label(v), passed=True)
        ctx.note(R.label(v))
    return rep


# ---------------------------------------------------------------------------
# biring


def cmd_biring(ctx: Context) -> Report:
    a = ctx.args
    R = ctx.ring(a.spec)
    if a.query == "coideal":
        res = is_coideal(Biring(R), a.q)
        rep = res.report if res.report is not None else Report("coideal")
        ctx.note(f"(x^{a.q} - x) over {R}: " + ("coideal" if res else f"not a coideal, witness {res.witness}"))
        return rep
    if a.query == "colaws":
        B = Biring(R, a.q)
        sample = [B.element(s) for s in (a.sample or ["x", "x^2", "x + 1"])]
        return verify_colaws(B, sample)
    B = Biring(R, a.q)
    P = B.element(a.expr)
    image = (coadd if a.query == "coadd" else comul)(B, P)
    rep = Report(f"biring {a.query}")
    rep.add(a.query, {"P": format_polynomial(P), "q": a.q}, None, format_polynomial(image), passed=True)
    ctx.note(format_polynomial(image))
    return rep


# ---------------------------------------------------------------------------
# lawvere


def _theory(name: str):
    if name in BUILTINS:
        return BUILTINS[name]
    path = Path(name)
    if not path.exists():
        raise UsageError(f"unknown theory {name!r}: not a built-in ({', '.join(BUILTINS)}) or a file")
    return parse_theory(path.read_text())


def cmd_lawvere(ctx: Context) -> Report:
    a = ctx.args
    T = _theory(a.theory)
    R = ctx.ring(a.spec)
    A = FiniteAlgebra.from_ring(T, R)
    S = tuple(f"s{i}" for i in range(1, a.generators + 1))
    if a.query == "model":
        res = is_model(A)
        rep = Report(f"model {T.name} {R}")
        rep.add(f"{R} is a model of {T.name}", {"theory": T.name, "ring": str(R)}, True, res.ok)
        if not res.ok:
            ctx.note(res.describe())
        return rep
    if a.query == "hom":
        return hom_structures_agree(T, S, A)
    ops = [a.op] if a.op else list(T.symbols)
    rep = Report(f"coop {T.name} {R}")
    for op in ops:
        rep.extend(verify_coop_property(T, op, S, A, depth=a.depth), f"{op}: ")
    return rep


# ---------------------------------------------------------------------------
# toy


def cmd_toy(ctx: Context) -> Report:
    a = ctx.args
    R = ctx.ring(a.spec)
    if a.query == "iso":
        return tw_iso_check(R, bijection_only=True if a.bijection_only else None)
    if a.query == "kernel":
        return kernel_report(R, lifts=a.lifts, seed=a.seed)
    if a.query == "mu":
        B = ctx.ring(a.base) if a.base else R
        res = mu_is_bijection(R, B)
        rep = Report(f"mu {R} over {B}")
        rep.add(f"mu_{R} is a bijection over B={B}", {"R": str(R), "B": str(B)},
                {"bijective": True}, {"bijective": res.bijective, **res.to_json()}, passed=res.bijective)
        ctx.note(f"mu_{R}: {res.image} of {res.codomain} decompositions reached")
        return rep
    if a.query == "decompositions":
        decs = decompositions(R, a.slots)
        rep = Report(f"decompositions {R} {a.slots}")
        rep.add("decompositions", {"B": str(R), "slots": a.slots}, None,
                {"count": len(decs), "parts": [[R.label(p) for p in d.parts] for d in decs]}, passed=True)
        ctx.note(f"{len(decs)} decompositions")
        return rep
    if a.query == "support":
        decs = decompositions(R, R)
        bad = [[R.label(p) for p in d.parts] for d in decs
               if idempotent_support(R, d) != supported_on_idempotents(R, d)]
        rep = Report(f"support {R}")
        rep.add("(a.a = a) iff support in idempotents", {"R": str(R), "decompositions": len(decs)}, [], bad)
        return rep
    if a.query == "delta0":
        rep = Report(f"delta0 {R}")
        got = eta(R, delta0_polynomial(R)).table
        rep.add("eta(1 - x^(q-1)) = delta_0", {"R": str(R)},
                [R.label(v) for v in FunctionElement.delta(R, R.zero).table], [R.label(v) for v in got])
        return rep
    raise UsageError(a.query)


# ---------------------------------------------------------------------------
# tw


def _instance(ctx: Context, kind: str, arg: str):
    if kind == "poly":
        R = ctx.ring(arg)
        return PolyTW(Biring(R, R.size))
    if kind == "fun":
        return FunTW(ctx.ring(arg))
    if kind == "monoid":
        try:
            n = int(arg)
        except ValueError:
            raise UsageError(f"monoid instance takes the order of a cyclic monoid, got {arg!r}") from None
        if not 1 <= n <= 8:
            raise CapExceeded("cyclic monoid order must be between 1 and 8")
        return MonoidPlethory(FiniteMonoid.cyclic(n))
    raise UsageError(kind)


def _tw_element(T, text):
    if isinstance(T, FunTW):
        return FunctionElement(T.ring, [int(v) for v in text.split(",")])
    return parse_polynomial(text, T.ring)


def cmd_tw(ctx: Context) -> Report:
    a = ctx.args
    if a.query == "axioms":
        T = _instance(ctx, a.kind, a.arg)
        return verify_tw_axioms(T, seed=a.seed, n_samples=a.samples)
    if a.query == "compose":
        T = _instance(ctx, a.kind, a.arg)
        x, y = _tw_element(T, a.a), _tw_element(T, a.b)
        got = tw_compose(T, x, y)
        rep = Report(f"compose {T.name}")
        rep.add("a . b", {"a": str(x), "b": str(y)}, None, str(got), passed=True)
        ctx.note(str(got))
        return rep
    if a.query == "descent":
        return descent_check(PolyTW(Biring(ctx.ring(a.spec))), a.q, seed=a.seed)
    if a.query == "transport":
        return eta_transport(ctx.ring(a.spec))
    if a.query == "curry":
        roster = [ctx.ring(s) for s in (a.roster or [])]
        return currying_iso(a.s1, a.s2, ctx.ring(a.spec), roster)
    if a.query == "cogroup":
        rep = Report(f"cogroup Z/{a.n}")
        rep.add(f"co-group structures on Z/{a.n}", {"n": a.n}, 1, cogroup_uniqueness(a.n))
        return rep
    raise UsageError(a.query)


# ---------------------------------------------------------------------------
# suite


def cmd_suite(ctx: Context) -> Report:
    a = ctx.args
    text = Path(a.config).read_text() if a.config else None
    cfg = load_config(text)
    if a.config is None or "--seed" in ctx.args._given:
        cfg.seed = a.seed
    a.seed = cfg.seed  # the report records the seed actually used
    if "--cap-carrier" in ctx.args._given:
        cfg.cap_carrier = a.cap_carrier
    cfg.jobs = a.jobs
    rep = run_suite(cfg)
    return rep


# ---------------------------------------------------------------------------


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer, got {text}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--expect", choices=("pass", "fail"), default="pass",
                        help="expected verification outcome")
    common.add_argument("--seed", type=_u64, default=0, help="seed for sampled checks (0 .. 2^64-1)")
    common.add_argument("--cap-carrier", type=_positive, default=4096, help="largest ring carrier accepted")
    common.add_argument("--json", metavar="PATH", default=None, help="write the report here instead of stdout")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for independent cases")

    p = argparse.ArgumentParser(prog="twlab", description="Verification lab for Tall-Wraith monoids.",
                                formatter_class=fmt)
    p.add_argument("--version", action="version", version=f"twlab {__version__}")
    sub = p.add_subparsers(dest="module", required=True)

    def add(parent, name, help_):
        return parent.add_parser(name, help=help_, parents=[common], formatter_class=fmt)

    m = sub.add_parser("ring", help="finite ring queries").add_subparsers(dest="query", required=True)
    for q in ("idempotents", "units", "axioms", "tables"):
        add(m, q, f"{q} of a ring").add_argument("spec", help="ring spec, e.g. Z/6 or GF(2,2)")

    m = sub.add_parser("poly", help="polynomial operations").add_subparsers(dest="query", required=True)
    c = add(m, "reduce", "normal form modulo x^q = x")
    c.add_argument("expr")
    c.add_argument("--q", type=int, required=True)
    c = add(m, "substitute", "substitute polynomials for variables")
    c.add_argument("expr")
    c.add_argument("--bind", action="append", metavar="VAR=EXPR", help="repeatable")
    c = add(m, "eval", "evaluate at ring elements (integers map through Z -> R)")
    c.add_argument("expr")
    c.add_argument("--at", action="append", metavar="VAR=INT", help="repeatable")
    for c in m.choices.values():
        c.add_argument("--ring", default="Z/2", help="coefficient ring spec")

    m = sub.add_parser("biring", help="co-operations of R<x>").add_subparsers(dest="query", required=True)
    c = add(m, "coideal", "is (x^q - x) a coideal?")
    c.add_argument("spec")
    c.add_argument("q", type=int)
    c = add(m, "colaws", "co-ring laws on sample elements")
    c.add_argument("spec")
    c.add_argument("--q", type=int, default=None, help="work modulo x^q - x")
    c.add_argument("--sample", action="append", metavar="EXPR", help="repeatable; default x, x^2, x + 1")
    for q in ("coadd", "comul"):
        c = add(m, q, f"{q} of one element")
        c.add_argument("spec")
        c.add_argument("expr")
        c.add_argument("--q", type=int, default=None)

    m = sub.add_parser("lawvere", help="free-algebra co-operations").add_subparsers(dest="query", required=True)
    for q, h in (("coop", "co-operation diagram"), ("hom", "pointwise vs co-operation structure"),
                 ("model", "is the ring reduct a model?")):
        c = add(m, q, h)
        c.add_argument("theory", help=f"built-in ({', '.join(BUILTINS)}) or theory file")
        c.add_argument("spec")
        c.add_argument("--generators", type=int, default=2)
        if q == "coop":
            c.add_argument("--depth", type=int, default=2)
            c.add_argument("--op", default=None, help="single operation symbol (default: all)")

    m = sub.add_parser("toy", help="toy cohomology").add_subparsers(dest="query", required=True)
    c = add(m, "iso", "R[x]/(x^q - x) -> R^R is a TW isomorphism")
    c.add_argument("spec")
    c.add_argument("--bijection-only", action="store_true")
    c = add(m, "kernel", "ker(eta) = (x^q - x)")
    c.add_argument("spec")
    c.add_argument("--lifts", type=int, default=200)
    c = add(m, "mu", "is mu_R a bijection?")
    c.add_argument("spec")
    c.add_argument("--base", default=None, help="algebra B (default: R itself)")
    c = add(m, "decompositions", "enumerate idempotent decompositions")
    c.add_argument("spec")
    c.add_argument("--slots", type=int, required=True)
    add(m, "support", "(a.a = a) iff support in idempotents").add_argument("spec")
    add(m, "delta0", "eta(1 - x^(q-1)) is the indicator of 0").add_argument("spec")

    m = sub.add_parser("tw", help="Tall-Wraith monoid checks").add_subparsers(dest="query", required=True)
    c = add(m, "axioms", "plethory laws")
    c.add_argument("kind", choices=("poly", "fun", "monoid"))
    c.add_argument("arg", help="ring spec (poly, fun) or cyclic monoid order (monoid)")
    c.add_argument("--samples", type=int, default=6, help="random samples when not exhaustive")
    c = add(m, "compose", "a . b in an instance")
    c.add_argument("kind", choices=("poly", "fun", "monoid"))
    c.add_argument("arg")
    c.add_argument("a", help="polynomial, or comma-separated value table for fun")
    c.add_argument("b")
    c = add(m, "descent", "does R<x> descend to R<x>/(x^q - x)?")
    c.add_argument("spec")
    c.add_argument("q", type=int)
    add(m, "transport", "eta(a.b) = eta(a) o eta(b)").add_argument("spec")
    c = add(m, "curry", "currying is a natural ring isomorphism")
    c.add_argument("s1", type=int)
    c.add_argument("s2", type=int)
    c.add_argument("spec")
    c.add_argument("--roster", action="append", metavar="SPEC", help="targets for naturality; repeatable")
    c = add(m, "cogroup", "count co-group structures on Z/n")
    c.add_argument("n", type=int)

    c = add(sub, "suite", "run the acceptance matrix")
    c.add_argument("config", nargs="?", default=None, help="JSON config: roster, seed, caps, criteria")
    return p


HANDLERS = {"ring": cmd_ring, "poly": cmd_poly, "biring": cmd_biring, "lawvere": cmd_lawvere,
            "toy": cmd_toy, "tw": cmd_tw, "suite": cmd_suite}


def report_json(rep: Report, argv: Sequence[str], seed: int, expect: str) -> dict:
    cases = [{"name": c.law, "inputs": jsonable(c.input), "expected": jsonable(c.expected),
              "got": jsonable(c.got), "pass": bool(c.passed)} for c in rep.cases]
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": list(argv),
        "seed": seed,
        "expect": expect,
        "cases": cases,
        "summary": rep.summary(),
    }


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, Optional[dict]]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    args._given = {t.split("=", 1)[0] for t in argv if t.startswith("--")}
    ctx = Context(args)
    try:
        rep = HANDLERS[args.module](ctx)
    except (TwlabError, OSError, ValueError) as exc:
        print(f"twlab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2, None
    doc = report_json(rep, argv, args.seed, args.expect)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.json:
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)
    s = rep.summary()
    for line in ctx.notes:
        print(line, file=sys.stderr)
    verdict = "PASS" if rep.passed else "FAIL"
    print(f"{rep.title}: {verdict} {s['passed']}/{s['total']} cases (expect {args.expect})", file=sys.stderr)
    for c in rep.failures[:5]:
        print(f"  failed: {c.law}", file=sys.stderr)
    ok = rep.passed if args.expect == "pass" else not rep.passed
    return (0 if ok else 1), doc


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
