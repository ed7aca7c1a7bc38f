"""Proof terms, the natural-deduction checker and long normal forms."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from arcadian.formula import (
    And, Atom, BOT, Bottom, Exists, Forall, Formula, FormulaParser, Imp, Or,
    alpha_eq, free_vars, is_pseudo_atom, show, show_atomic, substitute,
)
from arcadian.lexer import Cursor


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Proj:
    index: int  # 1 or 2
    term: "Term"


@dataclass(frozen=True)
class Inl:
    annot: Formula  # the whole disjunction
    term: "Term"


@dataclass(frozen=True)
class Inr:
    annot: Formula
    term: "Term"


@dataclass(frozen=True)
class Case:
    major: "Term"
    lvar: str
    lformula: Formula
    lbody: "Term"
    rvar: str
    rformula: Formula
    rbody: "Term"


@dataclass(frozen=True)
class Lam:
    var: str
    annot: Formula
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class TLam:
    evar: str
    body: "Term"


@dataclass(frozen=True)
class TApp:
    term: "Term"
    witness: str


@dataclass(frozen=True)
class Pack:
    term: "Term"
    witness: str
    var: str
    body: Formula  # the packed term proves body[var := witness]


@dataclass(frozen=True)
class Let:
    var: str
    evar: str
    formula: Formula  # type of var, mentions evar
    major: "Term"
    body: "Term"


@dataclass(frozen=True)
class Abort:
    annot: Formula
    term: "Term"


Term = Union[Var, Pair, Proj, Inl, Inr, Case, Lam, App, TLam, TApp, Pack, Let, Abort]

SPINE = (Var, App, Proj, TApp)
INTRO = (Lam, Pair, Inl, Inr, TLam, Pack)
IMPROPER = (Case, Let, Abort)


def subterms(m: Term) -> Iterator[Term]:
    match m:
        case Var():
            return
        case Pair(a, b) | App(a, b):
            yield a
            yield b
        case Proj(_, a) | Inl(_, a) | Inr(_, a) | Lam(_, _, a) | TLam(_, a) \
                | TApp(a, _) | Pack(a, _, _, _) | Abort(_, a):
            yield a
        case Case(a, _, _, b, _, _, c):
            yield a
            yield b
            yield c
        case Let(_, _, _, a, b):
            yield a
            yield b


def free_term_vars(m: Term) -> frozenset[str]:
    match m:
        case Var(x):
            return frozenset({x})
        case Case(a, x, _, b, y, _, c):
            return free_term_vars(a) | (free_term_vars(b) - {x}) | (free_term_vars(c) - {y})
        case Lam(x, _, body):
            return free_term_vars(body) - {x}
        case Let(x, _, _, a, b):
            return free_term_vars(a) | (free_term_vars(b) - {x})
    out = frozenset()
    for s in subterms(m):
        out |= free_term_vars(s)
    return out


def free_fo_vars(m: Term) -> frozenset[str]:
    match m:
        case Var():
            return frozenset()
        case Inl(f, a) | Inr(f, a) | Abort(f, a):
            return free_vars(f) | free_fo_vars(a)
        case Lam(_, f, a):
            return free_vars(f) | free_fo_vars(a)
        case Case(a, _, f, b, _, g, c):
            return free_fo_vars(a) | free_vars(f) | free_vars(g) | free_fo_vars(b) | free_fo_vars(c)
        case TLam(x, a):
            return free_fo_vars(a) - {x}
        case TApp(a, y):
            return free_fo_vars(a) | {y}
        case Pack(a, y, x, f):
            return free_fo_vars(a) | {y} | (free_vars(f) - {x})
        case Let(_, x, f, a, b):
            return free_fo_vars(a) | ((free_vars(f) | free_fo_vars(b)) - {x})
    out = frozenset()
    for s in subterms(m):
        out |= free_fo_vars(s)
    return out


# --------------------------------------------------------------------------
# contexts

class Context(Mapping[str, Formula]):
    """Immutable assignment of formulas to proof variables."""

    __slots__ = ("_items", "_fo")

    def __init__(self, items: Mapping[str, Formula] | Iterable = ()):
        self._items = dict(items)
        self._fo = None

    def __getitem__(self, x: str) -> Formula:
        return self._items[x]

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def extend(self, x: str, f: Formula) -> "Context":
        new = dict(self._items)
        new[x] = f
        return Context(new)

    @property
    def fo_vars(self) -> frozenset[str]:
        if self._fo is None:
            fo = frozenset()
            for f in self._items.values():
                fo |= free_vars(f)
            self._fo = fo
        return self._fo

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{x}: {show(f)}" for x, f in self._items.items()) + "}"


def as_context(gamma) -> Context:
    return gamma if isinstance(gamma, Context) else Context(gamma or {})


# --------------------------------------------------------------------------
# checking

class TypeCheckError(Exception):
    rule = "?"


class UnboundVariable(TypeCheckError):
    rule = "var"

    def __init__(self, name: str):
        super().__init__(f"unbound proof variable {name}")
        self.name = name


class RuleMismatch(TypeCheckError):
    def __init__(self, rule: str, expected, found):
        exp = show(expected) if not isinstance(expected, str) else expected
        fnd = show(found) if not isinstance(found, str) else found
        super().__init__(f"({rule}) expected {exp}, found {fnd}")
        self.rule = rule
        self.expected = expected
        self.found = found


class EigenvariableViolation(TypeCheckError):
    def __init__(self, rule: str, var: str, why: str):
        super().__init__(f"({rule}) eigenvariable {var} {why}")
        self.rule = rule
        self.var = var


class IllTyped(Exception):
    pass


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    error: TypeCheckError | None = None

    @property
    def reason(self) -> str:
        return "" if self.error is None else str(self.error)

    def __bool__(self) -> bool:
        return self.ok


def _naive_subst(f: Formula, x: str, y: str) -> Formula:
    """Substitution that ignores capture; only used to diagnose it."""
    match f:
        case Atom(p, args):
            return Atom(p, tuple(y if a == x else a for a in args))
        case And(a, b):
            return And(_naive_subst(a, x, y), _naive_subst(b, x, y))
        case Or(a, b):
            return Or(_naive_subst(a, x, y), _naive_subst(b, x, y))
        case Imp(a, b):
            return Imp(_naive_subst(a, x, y), _naive_subst(b, x, y))
        case Forall(z, body) | Exists(z, body):
            return f if z == x else type(f)(z, _naive_subst(body, x, y))
    return f


def infer(gamma: Context, m: Term) -> Formula:
    """Synthesize the formula proved by m."""
    match m:
        case Var(x):
            if x not in gamma:
                raise UnboundVariable(x)
            return gamma[x]
        case Proj(i, a):
            t = infer(gamma, a)
            if not isinstance(t, And):
                raise RuleMismatch(f"∧E{i}", "a conjunction", t)
            return t.left if i == 1 else t.right
        case App(a, b):
            t = infer(gamma, a)
            if not isinstance(t, Imp):
                raise RuleMismatch("→E", "an implication", t)
            check(gamma, b, t.left)
            return t.right
        case TApp(a, y):
            t = infer(gamma, a)
            if not isinstance(t, Forall):
                raise RuleMismatch("∀E", "a universal formula", t)
            return substitute(t.body, {t.var: y})
        case Lam(x, f, body):
            return Imp(f, infer(gamma.extend(x, f), body))
        case Pair(a, b):
            return And(infer(gamma, a), infer(gamma, b))
        case Inl(f, _) | Inr(f, _):
            check(gamma, m, f)
            return f
        case Pack(_, _, x, f):
            check(gamma, m, Exists(x, f))
            return Exists(x, f)
        case Abort(f, a):
            check(gamma, a, BOT)
            return f
        case TLam(x, body):
            if x in gamma.fo_vars:
                raise EigenvariableViolation("∀I", x, "is free in the context")
            return Forall(x, infer(gamma, body))
        case Case(a, x, f, b, y, g, c):
            _check_case_major(gamma, m)
            r = infer(gamma.extend(x, f), b)
            check(gamma.extend(y, g), c, r)
            return r
        case Let(x, ev, f, a, b):
            _check_let_major(gamma, m)
            r = infer(gamma.extend(x, f), b)
            if ev in free_vars(r):
                raise EigenvariableViolation("∃E", ev, "is free in the conclusion")
            return r
    raise TypeError(f"not a proof term: {m!r}")


def _check_case_major(gamma: Context, m: Case) -> None:
    t = infer(gamma, m.major)
    if not isinstance(t, Or):
        raise RuleMismatch("∨E", "a disjunction", t)
    if not alpha_eq(t.left, m.lformula):
        raise RuleMismatch("∨E", t.left, m.lformula)
    if not alpha_eq(t.right, m.rformula):
        raise RuleMismatch("∨E", t.right, m.rformula)


def _check_let_major(gamma: Context, m: Let) -> None:
    t = infer(gamma, m.major)
    if not isinstance(t, Exists):
        raise RuleMismatch("∃E", "an existential formula", t)
    if m.evar in gamma.fo_vars:
        raise EigenvariableViolation("∃E", m.evar, "is free in the context")
    if m.evar in free_vars(t):
        raise EigenvariableViolation("∃E", m.evar, "is free in the eliminated formula")
    opened = substitute(t.body, {t.var: m.evar})
    if not alpha_eq(opened, m.formula):
        raise RuleMismatch("∃E", opened, m.formula)


def check(gamma: Context, m: Term, phi: Formula) -> None:
    """Raise a TypeCheckError unless gamma ⊢ m : phi."""
    match m:
        case Lam(x, f, body):
            if not isinstance(phi, Imp):
                raise RuleMismatch("→I", phi, "an abstraction")
            if not alpha_eq(f, phi.left):
                raise RuleMismatch("→I", phi.left, f)
            check(gamma.extend(x, f), body, phi.right)
        case Pair(a, b):
            if not isinstance(phi, And):
                raise RuleMismatch("∧I", phi, "a pair")
            check(gamma, a, phi.left)
            check(gamma, b, phi.right)
        case Inl(f, a) | Inr(f, a):
            rule = "∨I1" if isinstance(m, Inl) else "∨I2"
            if not isinstance(phi, Or):
                raise RuleMismatch(rule, phi, "an injection")
            if not alpha_eq(f, phi):
                raise RuleMismatch(rule, phi, f)
            check(gamma, a, phi.left if isinstance(m, Inl) else phi.right)
        case TLam(x, body):
            if not isinstance(phi, Forall):
                raise RuleMismatch("∀I", phi, "a universal abstraction")
            if x in gamma.fo_vars:
                raise EigenvariableViolation("∀I", x, "is free in the context")
            if x in free_vars(phi):
                raise EigenvariableViolation("∀I", x, "is free in the conclusion")
            check(gamma, body, substitute(phi.body, {phi.var: x}))
        case Pack(a, y, x, f):
            if not isinstance(phi, Exists) or not alpha_eq(Exists(x, f), phi):
                raise RuleMismatch("∃I", phi, Exists(x, f))
            check(gamma, a, substitute(f, {x: y}))
        case Case(_, x, f, b, y, g, c):
            _check_case_major(gamma, m)
            check(gamma.extend(x, f), b, phi)
            check(gamma.extend(y, g), c, phi)
        case Let(x, ev, f, _, b):
            _check_let_major(gamma, m)
            if ev in free_vars(phi):
                raise EigenvariableViolation("∃E", ev, "is free in the conclusion")
            check(gamma.extend(x, f), b, phi)
        case Abort(f, a):
            if not alpha_eq(f, phi):
                raise RuleMismatch("⊥E", phi, f)
            check(gamma, a, BOT)
        case TApp(a, y):
            t = infer(gamma, a)
            if not isinstance(t, Forall):
                raise RuleMismatch("∀E", "a universal formula", t)
            got = substitute(t.body, {t.var: y})
            if alpha_eq(got, phi):
                return
            captured = _naive_subst(t.body, t.var, y)
            if not alpha_eq(captured, got) and alpha_eq(captured, phi):
                raise EigenvariableViolation("∀E", y, "would be captured by a binder")
            raise RuleMismatch("∀E", phi, got)
        case _:
            t = infer(gamma, m)
            if not alpha_eq(t, phi):
                rule = {Var: "var", App: "→E", Proj: f"∧E{getattr(m, 'index', '')}"}[type(m)]
                raise RuleMismatch(rule, phi, t)


def type_check(gamma, m: Term, phi: Formula) -> CheckResult:
    try:
        check(as_context(gamma), m, phi)
    except TypeCheckError as exc:
        return CheckResult(False, exc)
    return CheckResult(True)


# --------------------------------------------------------------------------
# normal forms

class NFClass(enum.Enum):
    INTRODUCTION = "introduction"
    PROPER_ELIMINATOR = "proper eliminator"
    IMPROPER_ELIMINATOR = "improper eliminator"
    NOT_NORMAL = "not normal"


def classify_nf(m: Term) -> NFClass:
    match m:
        case Var():
            return NFClass.PROPER_ELIMINATOR
        case App(a, b):
            ok = classify_nf(a) is NFClass.PROPER_ELIMINATOR and classify_nf(b) is not NFClass.NOT_NORMAL
            return NFClass.PROPER_ELIMINATOR if ok else NFClass.NOT_NORMAL
        case Proj(_, a) | TApp(a, _):
            ok = classify_nf(a) is NFClass.PROPER_ELIMINATOR
            return NFClass.PROPER_ELIMINATOR if ok else NFClass.NOT_NORMAL
        case Case(a, _, _, b, _, _, c):
            ok = (classify_nf(a) is NFClass.PROPER_ELIMINATOR
                  and classify_nf(b) is not NFClass.NOT_NORMAL
                  and classify_nf(c) is not NFClass.NOT_NORMAL)
            return NFClass.IMPROPER_ELIMINATOR if ok else NFClass.NOT_NORMAL
        case Let(_, _, _, a, b):
            ok = classify_nf(a) is NFClass.PROPER_ELIMINATOR and classify_nf(b) is not NFClass.NOT_NORMAL
            return NFClass.IMPROPER_ELIMINATOR if ok else NFClass.NOT_NORMAL
        case Abort(_, a):
            ok = classify_nf(a) is NFClass.PROPER_ELIMINATOR
            return NFClass.IMPROPER_ELIMINATOR if ok else NFClass.NOT_NORMAL
    if all(classify_nf(s) is not NFClass.NOT_NORMAL for s in subterms(m)):
        return NFClass.INTRODUCTION
    return NFClass.NOT_NORMAL


def _spine_type(gamma: Context, p: Term) -> Formula | None:
    """Type of a proper-eliminator spine whose arguments are lnfs, else None."""
    match p:
        case Var(x):
            return gamma.get(x)
        case App(a, b):
            t = _spine_type(gamma, a)
            if not isinstance(t, Imp) or not _lnf(gamma, b, t.left):
                return None
            return t.right
        case Proj(i, a):
            t = _spine_type(gamma, a)
            if not isinstance(t, And):
                return None
            return t.left if i == 1 else t.right
        case TApp(a, y):
            t = _spine_type(gamma, a)
            if not isinstance(t, Forall):
                return None
            return substitute(t.body, {t.var: y})
    return None


def _quasi_long(gamma: Context, p: Term) -> bool:
    t = _spine_type(gamma, p)
    return t is not None and (is_pseudo_atom(t) or isinstance(t, Bottom))


def _lnf(gamma: Context, m: Term, phi: Formula) -> bool:
    match m:
        case Lam(x, f, body):
            return _lnf(gamma.extend(x, f), body, phi.right)
        case Pair(a, b):
            return _lnf(gamma, a, phi.left) and _lnf(gamma, b, phi.right)
        case Inl(_, a):
            return _lnf(gamma, a, phi.left)
        case Inr(_, a):
            return _lnf(gamma, a, phi.right)
        case TLam(x, body):
            return _lnf(gamma, body, substitute(phi.body, {phi.var: x}))
        case Pack(a, y, x, f):
            return _lnf(gamma, a, substitute(f, {x: y}))
        case Case(a, x, f, b, y, g, c):
            return (_quasi_long(gamma, a) and _lnf(gamma.extend(x, f), b, phi)
                    and _lnf(gamma.extend(y, g), c, phi))
        case Let(x, _, f, a, b):
            return _quasi_long(gamma, a) and _lnf(gamma.extend(x, f), b, phi)
        case Abort(_, a):
            return _quasi_long(gamma, a)
    return _quasi_long(gamma, m)


def is_lnf(gamma, m: Term, phi: Formula) -> bool:
    """Whether m is a long normal form of phi (m must type-check)."""
    gamma = as_context(gamma)
    res = type_check(gamma, m, phi)
    if not res.ok:
        raise IllTyped(res.reason)
    return _lnf(gamma, m, phi)


# --------------------------------------------------------------------------
# alpha-equivalence of terms

def term_alpha_eq(a: Term, b: Term) -> bool:
    """Equality up to renaming of bound proof and first-order variables."""

    def fo(name, env):
        return env.get(name, name)

    def form(f, env):
        return substitute(f, {k: v for k, v in env.items() if k in free_vars(f)})

    def go(a, b, pa, pb, fa, fb, depth):
        if type(a) is not type(b):
            return False
        fresh = f"%{depth}"
        match a:
            case Var(x):
                return pa.get(x, x) == pb.get(b.name, b.name)
            case Pair(l1, r1):
                return go(l1, b.left, pa, pb, fa, fb, depth) and go(r1, b.right, pa, pb, fa, fb, depth)
            case App(l1, r1):
                return go(l1, b.fun, pa, pb, fa, fb, depth) and go(r1, b.arg, pa, pb, fa, fb, depth)
            case Proj(i, t):
                return i == b.index and go(t, b.term, pa, pb, fa, fb, depth)
            case Inl(f, t) | Inr(f, t) | Abort(f, t):
                return (alpha_eq(form(f, fa), form(b.annot, fb))
                        and go(t, b.term, pa, pb, fa, fb, depth))
            case Lam(x, f, t):
                return (alpha_eq(form(f, fa), form(b.annot, fb))
                        and go(t, b.body, {**pa, x: fresh}, {**pb, b.var: fresh}, fa, fb, depth + 1))
            case TLam(x, t):
                return go(t, b.body, pa, pb, {**fa, x: fresh}, {**fb, b.evar: fresh}, depth + 1)
            case TApp(t, y):
                return fo(y, fa) == fo(b.witness, fb) and go(t, b.term, pa, pb, fa, fb, depth)
            case Pack(t, y, x, f):
                return (fo(y, fa) == fo(b.witness, fb)
                        and alpha_eq(form(Exists(x, f), fa), form(Exists(b.var, b.body), fb))
                        and go(t, b.term, pa, pb, fa, fb, depth))
            case Case(t, x, f, l, y, g, r):
                return (go(t, b.major, pa, pb, fa, fb, depth)
                        and alpha_eq(form(f, fa), form(b.lformula, fb))
                        and alpha_eq(form(g, fa), form(b.rformula, fb))
                        and go(l, b.lbody, {**pa, x: fresh}, {**pb, b.lvar: fresh}, fa, fb, depth + 1)
                        and go(r, b.rbody, {**pa, y: fresh}, {**pb, b.rvar: fresh}, fa, fb, depth + 1))
            case Let(x, ev, f, t, body):
                fa2, fb2 = {**fa, ev: fresh + "e"}, {**fb, b.evar: fresh + "e"}
                return (go(t, b.major, pa, pb, fa, fb, depth)
                        and alpha_eq(form(f, fa2), form(b.formula, fb2))
                        and go(body, b.body, {**pa, x: fresh}, {**pb, b.var: fresh}, fa2, fb2, depth + 1))
        return False

    return go(a, b, {}, {}, {}, {}, 0)


# --------------------------------------------------------------------------
# concrete syntax

TERM_KEYWORDS = frozenset({"case", "of", "inl", "inr", "p1", "p2", "pack", "to",
                           "let", "in", "abort", "forall", "exists", "bot"})


class TermParser:
    def __init__(self, text: str):
        self.cur = Cursor(text)
        self.fp = FormulaParser(self.cur)

    def parse(self) -> Term:
        m = self.term()
        self.cur.finish()
        return m

    def ident(self) -> str:
        return self.cur.ident(TERM_KEYWORDS)

    def term(self) -> Term:
        cur = self.cur
        if cur.accept("\\"):
            x = self.ident()
            cur.expect(":")
            f = self.fp.formula()
            cur.expect(".")
            return Lam(x, f, self.term())
        if cur.accept(r"\\"):
            x = self.ident()
            cur.expect(".")
            return TLam(x, self.term())
        if cur.accept("pack"):
            m = self.term()
            cur.expect(",")
            y = self.ident()
            cur.expect("to")
            x = self.ident()
            cur.expect(".")
            return Pack(m, y, x, self.fp.formula())
        if cur.accept("let"):
            cur.expect("[")
            ev = self.ident()
            cur.expect(",")
            x = self.ident()
            cur.expect(":")
            f = self.fp.formula()
            cur.expect("]")
            cur.expect("=")
            m = self.term()
            cur.expect("in")
            return Let(x, ev, f, m, self.term())
        if cur.accept("case"):
            m = self.term()
            cur.expect("of")
            cur.expect("{")
            x = self.ident()
            cur.expect(":")
            f = self.fp.formula()
            cur.expect("=>")
            left = self.term()
            cur.expect("|")
            y = self.ident()
            cur.expect(":")
            g = self.fp.formula()
            cur.expect("=>")
            right = self.term()
            cur.expect("}")
            return Case(m, x, f, left, y, g, right)
        return self.application()

    def application(self) -> Term:
        m = self.prefixed()
        while True:
            if self.cur.accept("@"):
                m = TApp(m, self.ident())
            elif self.cur.tok.kind == "id" and self.cur.tok.text not in TERM_KEYWORDS \
                    or self.cur.peek("(") or self.cur.peek("<"):
                m = App(m, self.atom())
            else:
                return m

    def prefixed(self) -> Term:
        cur = self.cur
        for kw, idx in (("p1", 1), ("p2", 2)):
            if cur.accept(kw):
                return Proj(idx, self.prefixed())
        for kw, ctor in (("inl", Inl), ("inr", Inr), ("abort", Abort)):
            if cur.accept(kw):
                cur.expect("[")
                f = self.fp.formula()
                cur.expect("]")
                return ctor(f, self.prefixed())
        return self.atom()

    def atom(self) -> Term:
        cur = self.cur
        if cur.accept("("):
            m = self.term()
            cur.expect(")")
            return m
        if cur.accept("<"):
            a = self.term()
            cur.expect(",")
            b = self.term()
            cur.expect(">")
            return Pair(a, b)
        return Var(self.ident())


def parse_term(text: str) -> Term:
    return TermParser(text).parse()


_BINDER, _APP, _ATOMIC = range(3)


def _term_level(m: Term) -> int:
    if isinstance(m, (Var, Pair)):
        return _ATOMIC
    if isinstance(m, (App, TApp, Proj, Inl, Inr, Abort)):
        return _APP
    return _BINDER


def _tfmt(m: Term, prec: int) -> str:
    if _term_level(m) < prec:
        return "(" + _tfmt(m, _BINDER) + ")"
    match m:
        case Var(x):
            return x
        case Pair(a, b):
            return f"<{_tfmt(a, _BINDER)}, {_tfmt(b, _BINDER)}>"
        case App(a, b):
            return f"{_tfmt(a, _APP)} {_tfmt(b, _ATOMIC)}"
        case TApp(a, y):
            return f"{_tfmt(a, _APP)} @{y}"
        case Proj(i, a):
            return f"p{i} {_tfmt(a, _ATOMIC)}"
        case Inl(f, a):
            return f"inl[{show(f)}] {_tfmt(a, _ATOMIC)}"
        case Inr(f, a):
            return f"inr[{show(f)}] {_tfmt(a, _ATOMIC)}"
        case Abort(f, a):
            return f"abort[{show(f)}] {_tfmt(a, _ATOMIC)}"
        case Lam(x, f, body):
            return f"\\{x}:{show_atomic(f)}. {_tfmt(body, _BINDER)}"
        case TLam(x, body):
            return f"\\\\{x}. {_tfmt(body, _BINDER)}"
        case Pack(a, y, x, f):
            return f"pack {_tfmt(a, _APP)}, {y} to {x}. {show(f)}"
        case Let(x, ev, f, a, b):
            return f"let [{ev}, {x}:{show(f)}] = {_tfmt(a, _BINDER)} in {_tfmt(b, _BINDER)}"
        case Case(a, x, f, b, y, g, c):
            return (f"case {_tfmt(a, _BINDER)} of {{{x}:{show(f)} => {_tfmt(b, _BINDER)}"
                    f" | {y}:{show(g)} => {_tfmt(c, _BINDER)}}}")
    raise TypeError(f"not a proof term: {m!r}")


def show_term(m: Term) -> str:
    return _tfmt(m, _BINDER)
