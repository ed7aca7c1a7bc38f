"""Proof search for intuitionistic first-order logic via Arcadian automata."""

from arcadian.formula import (
    And, Atom, Bottom, BOT, Exists, Forall, Formula, FormulaTree, Imp, Or,
    alpha_eq, free_vars, parse, show,
)
from arcadian.engine import Budget, Exhausted, NotFoundWithinFuel, Proved, prove, verify
from arcadian.proofterm import parse_term, show_term, type_check

__all__ = [
    "And", "Atom", "Bottom", "BOT", "Exists", "Forall", "Formula", "FormulaTree",
    "Imp", "Or", "alpha_eq", "free_vars", "parse", "show",
    "Budget", "Exhausted", "NotFoundWithinFuel", "Proved", "prove", "verify",
    "parse_term", "show_term", "type_check",
]
