"""Prove a formula: search for an accepting run, extract a term, check it."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterator

from arcadian.construction import build, initial_id
from arcadian.formula import (
    And, Forall, Formula, FormulaTree, Imp, free_vars, show, substitute, universal_closure,
)
from arcadian.machine import (
    ArcadianAutomaton, Budget, ProvenUnreachable, RunTree, SearchStats, search,
)
from arcadian.proofterm import (
    App, Abort, Case, Inl, Inr, Lam, Let, Pack, Pair, Proj, TApp, TLam, Term, Var,
    is_lnf, type_check,
)

__all__ = ["Budget", "ProveResult", "Proved", "NotFoundWithinFuel", "Exhausted",
           "prove", "extract", "verify", "eta_expand", "emergence_violations",
           "MalformedRun", "VerificationFailed"]


class MalformedRun(Exception):
    pass


class VerificationFailed(AssertionError):
    """An extracted term did not check; this is always an internal bug."""


@dataclass
class ProveResult:
    formula: Formula
    stats: SearchStats
    automaton: ArcadianAutomaton | None = field(default=None, repr=False)

    @property
    def proved(self) -> bool:
        return isinstance(self, Proved)


@dataclass
class Proved(ProveResult):
    run: RunTree | None = field(default=None, repr=False)
    term: Term | None = None


@dataclass
class NotFoundWithinFuel(ProveResult):
    depth_cut: bool = True
    eigen_cut: bool = False


@dataclass
class Exhausted(ProveResult):
    """No accepting run exists; the bounded space was explored completely."""


# --------------------------------------------------------------------------
# extraction

class _Fresh:
    def __init__(self):
        self.labels = 0
        self.eigen = 0

    def label(self) -> str:
        self.labels += 1
        return f"y{self.labels}"

    def eigenvar(self, avoid) -> str:
        while True:
            self.eigen += 1
            z = f"Z{self.eigen}"
            if z not in avoid:
                return z


def eta_expand(m: Term, phi: Formula, avoid=frozenset(), fresh: _Fresh | None = None) -> Term:
    """The η-long form of a proper eliminator m of type phi."""
    fresh = fresh or _Fresh()
    match phi:
        case Imp(a, b):
            y = fresh.label()
            arg = eta_expand(Var(y), a, avoid, fresh)
            return Lam(y, a, eta_expand(App(m, arg), b, avoid, fresh))
        case And(a, b):
            return Pair(eta_expand(Proj(1, m), a, avoid, fresh),
                        eta_expand(Proj(2, m), b, avoid, fresh))
        case Forall(x, b):
            z = fresh.eigenvar(set(avoid) | free_vars(phi))
            return TLam(z, eta_expand(TApp(m, z), substitute(b, {x: z}), avoid | {z}, fresh))
    return m


def _one(t: RunTree, n: int) -> list[RunTree]:
    if len(t.children) != n:
        raise MalformedRun(f"{t.id.state} has {len(t.children)} children, expected {n}")
    return t.children


def extract(run: RunTree, aut: ArcadianAutomaton) -> Term:
    """Read a proof term off an accepting run, following the instruction patterns."""
    tree = aut.tree
    fresh = _Fresh()

    def goal(t: RunTree) -> Formula:
        return tree.instantiate(t.id.node, dict(t.id.w))

    def entry_formula(t: RunTree) -> tuple[str, Formula]:
        e = t.id.store[-1]
        return e.label, tree.instantiate(e.node, dict(e.binding))

    def choice(t: RunTree, key: str) -> str:
        c = dict(t.choice)
        if key not in c:
            raise MalformedRun(f"edge {t.instruction} lacks a {key} choice")
        return c[key]

    def go(t: RunTree) -> Term:
        q = t.id.state
        if q.universal:
            return intro(t)
        (c,) = _one(t, 1)
        p = c.instruction.pattern
        match p:
            case 13:
                x = Var(choice(c, "label"))
                if q.flavor == "spine":
                    return x
                return eta_expand(x, goal(t), frozenset(t.id.V), fresh)
            case 6:
                return intro(c)
            case 3:
                left = tree.children(t.id.node)[0]
                ctor = Inl if c.instruction.operands[0] == left else Inr
                return ctor(goal(t), go(c))
            case 7:
                return Proj(c.instruction.guard.pattern[-1] + 1, go(c))
            case 10:
                return TApp(go(c), choice(c, "witness"))
            case 9:
                c17, c18 = _one(c, 2)
                return App(go(c17), go(c18))
            case 8:
                c14, c15, c16 = _one(c, 3)
                x, f = entry_formula(c15)
                y, g = entry_formula(c16)
                return Case(go(c14), x, f, go(c15), y, g, go(c16))
            case 11:
                c19, c20 = _one(c, 2)
                x, f = entry_formula(c20)
                return Let(x, choice(c20, "eigen"), f, go(c19), go(c20))
            case 12:
                (c21,) = _one(c, 1)
                return Abort(goal(t), go(c21))
        raise MalformedRun(f"pattern ({p}) cannot leave an existential state")

    def intro(t: RunTree) -> Term:
        match t.id.state.flavor, tree.labels[t.id.node]:
            case "plain", "imp":
                (c,) = _one(t, 1)
                x, f = entry_formula(c)
                return Lam(x, f, go(c))
            case "plain", "and":
                a, b = _one(t, 2)
                return Pair(go(a), go(b))
            case "plain", "forall":
                (c,) = _one(t, 1)
                return TLam(choice(c, "eigen"), go(c))
            case "plain", "exists":
                (c,) = _one(t, 1)
                f = goal(t)
                return Pack(go(c), choice(c, "witness"), f.var, f.body)
        raise MalformedRun(f"{t.id.state} is not an introduction state")

    return go(run)


# --------------------------------------------------------------------------
# checks

def verify(phi: Formula, m: Term) -> bool:
    return type_check({}, m, phi).ok


def _ids(run: RunTree) -> Iterator:
    for t in run.walk():
        yield t.id


def emergence_violations(aut: ArcadianAutomaton, run: RunTree) -> list[str]:
    """Goal and assumption formulas of every ID that did not emerge from the root."""
    tree = aut.tree
    bad = []
    for id in _ids(run):
        goal = tree.instantiate(id.node, dict(id.w))
        if not tree.emerged_from(goal):
            bad.append(f"goal {show(goal)} at {id.describe()}")
        for e in id.store:
            f = tree.instantiate(e.node, dict(e.binding))
            if not tree.emerged_from(f):
                bad.append(f"assumption {show(f)} at {id.describe()}")
    return bad


def close(phi: Formula) -> Formula:
    if free_vars(phi):
        closed = universal_closure(phi)
        warnings.warn(f"formula has free variables; proving its universal closure {show(closed)}",
                      stacklevel=3)
        return closed
    return phi


def prove(phi: Formula, fuel: Budget = Budget(), timeout: float | None = None) -> ProveResult:
    """Search for a proof of phi within fuel; any returned term has been checked."""
    phi = close(phi)
    aut, _ = build(FormulaTree(phi))
    try:
        res = search(aut, initial_id(aut), fuel, timeout=timeout)
    except TimeoutError:
        return NotFoundWithinFuel(phi, SearchStats(), aut, True, False)
    if res.run is None:
        if isinstance(res.reason, ProvenUnreachable):
            return Exhausted(phi, res.stats, aut)
        return NotFoundWithinFuel(phi, res.stats, aut, res.reason.depth_cut, res.reason.eigen_cut)
    term = extract(res.run, aut)
    check = type_check({}, term, phi)
    if not check.ok:
        raise VerificationFailed(f"extracted term does not prove {show(phi)}: {check.reason}")
    if not is_lnf({}, term, phi):
        raise VerificationFailed(f"extracted term for {show(phi)} is not a long normal form")
    return Proved(phi, res.stats, aut, res.run, term)
