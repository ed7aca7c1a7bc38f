"""Decision procedures for intuitionistic propositional logic.

``decide_prop`` runs Dyckhoff's contraction-free calculus G4ip, which
terminates without any fuel.  ``kripke_valid`` is a second, semantic oracle
that evaluates a formula in every Kripke model on small rooted frames.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from arcadian.formula import And, Atom, Bottom, Exists, Forall, Formula, Imp, Or, show


class NotPropositional(ValueError):
    pass


def _check_prop(f: Formula) -> None:
    match f:
        case Atom(_, args):
            if args:
                raise NotPropositional(f"atom {show(f)} has arguments")
        case And(a, b) | Or(a, b) | Imp(a, b):
            _check_prop(a)
            _check_prop(b)
        case Forall() | Exists():
            raise NotPropositional(f"quantifier in {show(f)}")


def decide_prop(phi: Formula) -> bool:
    """Whether phi is an intuitionistic propositional tautology."""
    _check_prop(phi)
    return _g4ip(frozenset(), phi)


def _is_atomic(f: Formula) -> bool:
    return isinstance(f, Atom)


@lru_cache(maxsize=1 << 18)
def _g4ip(ctx: frozenset, goal: Formula) -> bool:
    if goal in ctx or any(isinstance(f, Bottom) for f in ctx):
        return True

    # invertible left rules
    for f in ctx:
        rest = ctx - {f}
        match f:
            case And(a, b):
                return _g4ip(rest | {a, b}, goal)
            case Or(a, b):
                return _g4ip(rest | {a}, goal) and _g4ip(rest | {b}, goal)
            case Imp(Bottom(), _):
                return _g4ip(rest, goal)
            case Imp(Atom() as p, b) if p in ctx:
                return _g4ip(rest | {b}, goal)
            case Imp(And(a, b), c):
                return _g4ip(rest | {Imp(a, Imp(b, c))}, goal)
            case Imp(Or(a, b), c):
                return _g4ip(rest | {Imp(a, c), Imp(b, c)}, goal)

    # invertible right rules
    match goal:
        case Imp(a, b):
            return _g4ip(ctx | {a}, b)
        case And(a, b):
            return _g4ip(ctx, a) and _g4ip(ctx, b)

    # the remaining choices
    if isinstance(goal, Or) and (_g4ip(ctx, goal.left) or _g4ip(ctx, goal.right)):
        return True
    for f in ctx:
        if isinstance(f, Imp) and isinstance(f.left, Imp):
            a, b = f.left.left, f.left.right
            c = f.right
            rest = ctx - {f}
            if _g4ip(rest | {Imp(b, c)}, Imp(a, b)) and _g4ip(rest | {c}, goal):
                return True
    return False


# --------------------------------------------------------------------------
# Kripke semantics

# rooted partial orders with at most three worlds, as "above" relations
_FRAMES = {
    1: [((0,),)],
    2: [((0, 1), (1,))],
    3: [((0, 1, 2), (1, 2), (2,)),   # chain
        ((0, 1, 2), (1,), (2,))],    # fork
}


def frames(max_worlds: int = 3):
    for n in range(1, max_worlds + 1):
        yield from _FRAMES[n]


def _atoms(f: Formula, acc: set) -> set:
    match f:
        case Atom(p, _):
            acc.add(p)
        case And(a, b) | Or(a, b) | Imp(a, b):
            _atoms(a, acc)
            _atoms(b, acc)
    return acc


def _upsets(above):
    n = len(above)
    for bits in itertools.product((False, True), repeat=n):
        if all(not bits[u] or all(bits[v] for v in above[u]) for u in range(n)):
            yield frozenset(u for u in range(n) if bits[u])


def forces(above, val: dict, u: int, f: Formula) -> bool:
    match f:
        case Atom(p, _):
            return u in val[p]
        case Bottom():
            return False
        case And(a, b):
            return forces(above, val, u, a) and forces(above, val, u, b)
        case Or(a, b):
            return forces(above, val, u, a) or forces(above, val, u, b)
        case Imp(a, b):
            return all(not forces(above, val, v, a) or forces(above, val, v, b) for v in above[u])
    raise NotPropositional(show(f))


def countermodel(phi: Formula, max_worlds: int = 3):
    """A (frame, valuation) whose root does not force phi, or None."""
    _check_prop(phi)
    atoms = sorted(_atoms(phi, set()))
    for above in frames(max_worlds):
        ups = list(_upsets(above))
        for choice in itertools.product(ups, repeat=len(atoms)):
            val = dict(zip(atoms, choice))
            if not forces(above, val, 0, phi):
                return above, val
    return None


def kripke_valid(phi: Formula, max_worlds: int = 3) -> bool:
    return countermodel(phi, max_worlds) is None
