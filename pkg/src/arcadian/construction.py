"""Compile a closed formula into its Arcadian automaton."""
from __future__ import annotations

import json
from typing import NamedTuple

from arcadian.formula import (
    Formula, FormulaTree, NodeId, free_vars, ln_key, node_str, show,
)
from arcadian.machine import (
    AXIOM, EXISTENTIAL, ID, UNIVERSAL, ArcadianAutomaton, Guard, Instruction, StateId,
    StoreEntry, binding,
)
from arcadian.proofterm import as_context


class NotEmerged(ValueError):
    def __init__(self, formula: Formula):
        super().__init__(f"{show(formula)} did not emerge from the goal formula")
        self.formula = formula


class Build(NamedTuple):
    automaton: ArcadianAutomaton
    table: list  # (pattern id, Instruction), in dump order


def q_check(n: NodeId) -> StateId:
    return StateId(EXISTENTIAL, n)


def q_spine(n: NodeId) -> StateId:
    return StateId(EXISTENTIAL, n, "spine")


def q_intro(n: NodeId) -> StateId:
    return StateId(UNIVERSAL, n)


def _flavored(m: NodeId, flavor: str, target: NodeId | None = None) -> StateId:
    return StateId(UNIVERSAL, m, flavor, target)


_INTRO_LABELS = ("imp", "and", "forall", "exists")
_PSEUDO_LABELS = ("atom", "or", "exists", "bot")


def build(phi: Formula | FormulaTree) -> Build:
    """The automaton whose emptiness coincides with provability of phi."""
    t = phi if isinstance(phi, FormulaTree) else FormulaTree(phi)
    lab = t.labels
    nodes = t.nodes
    ors = [n for n in nodes if lab[n] == "or"]
    exs = [n for n in nodes if lab[n] == "exists"]
    bot = t.bottom_node
    i: dict[StateId, list[Instruction]] = {}
    states = {AXIOM}

    def add(pattern, src, kind, ops, target, guard=None):
        states.add(src)
        states.add(target)
        i.setdefault(src, []).append(Instruction(pattern, src, kind, ops, target, guard))

    def eliminations(m: NodeId, src: StateId):
        for n in nodes:
            kids = t.children(n)
            match lab[n]:
                case "and":
                    for idx, c in enumerate(kids):
                        if t.unifiable(c, m):
                            add(7, src, "jmp", (n,), q_spine(n), Guard(c, t.fv[n]))
                case "forall":
                    if t.unifiable(kids[0], m):
                        add(10, src, "jmp", (n,), q_spine(n), Guard(kids[0], t.fv[n] | {n}))
                case "imp":
                    if t.unifiable(kids[1], m):
                        add(9, src, "jmp", (m,), _flavored(m, "imp", n),
                            Guard(kids[1], t.fv[n], "aux"))

    for m in nodes:
        kids = t.children(m)
        qm = q_check(m)
        states.add(qm)
        add(13, qm, "check", (m, m), AXIOM)
        if lab[m] in _INTRO_LABELS:
            add(6, qm, "jmp", (m,), q_intro(m))
        if lab[m] == "or":
            add(3, qm, "jmp", (kids[0],), q_check(kids[0]))
            add(3, qm, "jmp", (kids[1],), q_check(kids[1]))
        if lab[m] in _PSEUDO_LABELS:
            eliminations(m, qm)
        for d in ors:
            add(8, qm, "load", (d,), _flavored(m, "or", d))
        for e in exs:
            add(11, qm, "load", (e,), _flavored(m, "ex", e))
        if bot is not None:
            add(12, qm, "jmp", (m,), _flavored(m, "bot"))

        sp = q_spine(m)
        add(13, sp, "check", (m, m), AXIOM)
        eliminations(m, sp)

        match lab[m]:
            case "imp":
                add(1, q_intro(m), "store", (kids[0], kids[1]), q_check(kids[1]))
            case "and":
                add(2, q_intro(m), "jmp", (kids[0],), q_check(kids[0]))
                add(2, q_intro(m), "jmp", (kids[1],), q_check(kids[1]))
            case "forall":
                add(4, q_intro(m), "new", (kids[0],), q_check(kids[0]))
            case "exists":
                add(5, q_intro(m), "instr", (kids[0],), q_check(kids[0]))

    # universal groups for the eliminations, one state per eliminated node
    for q in sorted(states):
        m = q.node
        match q.flavor:
            case "or":
                d = q.target
                left, right = t.children(d)
                add(14, q, "jmp", (d,), q_spine(d))
                add(15, q, "store", (left, m), q_check(m))
                add(16, q, "store", (right, m), q_check(m))
            case "imp":
                n = q.target
                left, _ = t.children(n)
                add(17, q, "jmp", (n,), q_spine(n))
                add(18, q, "jmp", (left,), q_check(left))
            case "ex":
                e = q.target
                add(19, q, "jmp", (e,), q_spine(e))
                add(20, q, "instl", (t.children(e)[0], m), q_check(m))
            case "bot":
                add(21, q, "jmp", (bot,), q_spine(bot))

    aut = ArcadianAutomaton(t, states, q_check(()), (), i)
    table = sorted(((ins.pattern, ins) for ins in aut.instructions),
                   key=lambda p: (p[0], p[1].source, p[1].operands, p[1].target, p[1].describe()))
    return Build(aut, table)


def initial_id(aut: ArcadianAutomaton) -> ID:
    return ID(aut.initial_state, aut.initial_node)


def _emergence(t: FormulaTree, psi: Formula) -> tuple[NodeId, dict]:
    target = ln_key(psi)
    for n in t.nodes:
        v = t.match(n, target)
        if v is not None:
            return n, v
    raise NotEmerged(psi)


def judgment_to_id(gamma, psi: Formula, aut: ArcadianAutomaton) -> ID:
    """The ID whose acceptance corresponds to derivability of gamma ⊢ psi."""
    t = aut.tree
    gamma = as_context(gamma)
    node, w = _emergence(t, psi)
    store = []
    eigen = set(free_vars(psi))
    for x, f in gamma.items():
        n, v = _emergence(t, f)
        store.append(StoreEntry(n, binding(v), x))
        eigen |= free_vars(f)
    return ID(q_check(node), node, binding(w), (), tuple(store), tuple(sorted(eigen)))


def dump_table(aut: ArcadianAutomaton, table=None) -> str:
    """One line per instruction: ``(id) state: kind operands, target``."""
    if table is None:
        table = sorted(((ins.pattern, ins) for ins in aut.instructions),
                       key=lambda p: (p[0], p[1].source, p[1].operands, p[1].target, p[1].describe()))
    return "\n".join(ins.describe() for _, ins in table) + "\n"


def automaton_to_json(aut: ArcadianAutomaton) -> str:
    t = aut.tree
    return json.dumps({
        "formula": show(t.root),
        "nodes": [{"node": node_str(n), "label": t.labels[n], "formula": show(t.formulas[n])}
                  for n in t.nodes],
        "states": [{"name": str(q), "polarity": q.polarity, "node": node_str(q.node),
                    "flavor": q.flavor} for q in aut.states],
        "instructions": [{
            "pattern": ins.pattern, "source": str(ins.source), "kind": ins.kind,
            "operands": [node_str(n) for n in ins.operands], "target": str(ins.target),
            "guard": None if ins.guard is None else {
                "pattern": node_str(ins.guard.pattern),
                "domain": sorted(node_str(n) for n in ins.guard.domain),
                "into": ins.guard.into},
        } for ins in aut.instructions],
        "fv": {node_str(n): sorted(node_str(b) for b in t.fv[n]) for n in t.nodes},
    }, ensure_ascii=False, indent=2)
