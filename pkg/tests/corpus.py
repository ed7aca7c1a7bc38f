"""Shared formulas and generators for the test suite."""
import random

from arcadian.formula import (
    And, Atom, BOT, Exists, Forall, Imp, Or, free_vars, universal_closure,
)

EXAMPLE = "(forall x. P(x)) -> forall y. exists x. P(x)"

PROVABLE = [
    "p -> p",
    "p -> q -> p",
    "(p -> q -> r) -> (p -> q) -> p -> r",
    r"p /\ q -> q /\ p",
    r"p -> p \/ q",
    r"p \/ q -> q \/ p",
    "bot -> p",
    r"~~(p \/ ~p)",
    "(forall x. P(x) -> Q(x)) -> (forall x. P(x)) -> forall x. Q(x)",
    "(forall x. P(x)) -> ~exists x. ~P(x)",
    "(exists x. P(x)) -> ~forall x. ~P(x)",
    "(exists x. forall y. R(x,y)) -> forall y. exists x. R(x,y)",
    r"(forall x. P(x) /\ Q(x)) -> (forall x. P(x)) /\ (forall x. Q(x))",
    r"(exists x. P(x) \/ Q(x)) -> (exists x. P(x)) \/ (exists x. Q(x))",
    EXAMPLE,
]

NON_THEOREMS = [
    "((p -> q) -> p) -> p",
    r"p \/ ~p",
    "~~p -> p",
    "(forall y. exists x. R(x,y)) -> exists x. forall y. R(x,y)",
    "exists x. P(x) -> forall y. P(y)",
]

_PREDS = {"p": 0, "q": 0, "r": 0, "P": 1, "Q": 1, "R": 2}
_VARS = ("x", "y", "z")


def random_formula(rng: random.Random, depth: int = 6):
    """A formula over a fixed signature; may be open."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.08:
            return BOT
        pred = rng.choice(sorted(_PREDS))
        return Atom(pred, tuple(rng.choice(_VARS) for _ in range(_PREDS[pred])))
    kind = rng.randrange(6)
    if kind < 3:
        ctor = (And, Or, Imp)[kind]
        return ctor(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 5:
        return Imp(random_formula(rng, depth - 1), BOT)
    ctor = Forall if kind == 3 else Exists
    return ctor(rng.choice(_VARS), random_formula(rng, depth - 1))


def random_closed(rng: random.Random, depth: int = 6):
    f = random_formula(rng, depth)
    return universal_closure(f) if free_vars(f) else f


def propositional(n: int):
    """Every formula over atoms p, q with exactly n connectives among /\\, \\/, ->, ~."""
    if n == 0:
        yield Atom("p")
        yield Atom("q")
        return
    for a in propositional(n - 1):
        yield Imp(a, BOT)
    for i in range(n):
        for a in propositional(i):
            for b in propositional(n - 1 - i):
                yield And(a, b)
                yield Or(a, b)
                yield Imp(a, b)


def count_propositional(n: int) -> int:
    counts = [2]
    for k in range(1, n + 1):
        counts.append(counts[k - 1] + 3 * sum(counts[i] * counts[k - 1 - i] for i in range(k)))
    return counts[n]
