"""Generic Arcadian automata: IDs, instruction semantics, acceptance and runs."""
from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from arcadian.formula import FormulaTree, NodeId, node_str, parse_node

EXISTENTIAL = "∃"
UNIVERSAL = "∀"

KINDS = ("store", "jmp", "new", "check", "instl", "instr", "load")


@dataclass(frozen=True, order=True)
class StateId:
    """A state owned by a tree node.

    ``flavor`` is one of plain, spine, or, imp, ex, bot, axiom.  Flavored
    universal states carry the eliminated node in ``target``.  Spine states
    are existential states that only build elimination spines.
    """

    polarity: str
    node: NodeId
    flavor: str = "plain"
    target: NodeId | None = None

    @property
    def universal(self) -> bool:
        return self.polarity == UNIVERSAL

    def __str__(self) -> str:
        if self.flavor == "axiom":
            return "q∀axiom"
        n = node_str(self.node)
        match self.flavor:
            case "plain":
                return f"q{self.polarity}({n})"
            case "spine":
                return f"q∃E({n})"
            case "or":
                return f"q∀({n};∨@{node_str(self.target)})"
            case "imp":
                return f"q∀({n};→@{node_str(self.target)})"
            case "ex":
                return f"q∀({n};∃@{node_str(self.target)})"
            case "bot":
                return f"q∀({n};⊥)"
        raise ValueError(self.flavor)


AXIOM = StateId(UNIVERSAL, (), "axiom")


@dataclass(frozen=True)
class Guard:
    """Side condition of an elimination jump.

    The jump is possible for every binding v over ``domain`` such that the
    formula at ``pattern`` under v equals the current goal.  With
    ``into='aux'`` the solution is stored in w′ instead of becoming the new
    goal binding.
    """

    pattern: NodeId
    domain: frozenset
    into: str = "goal"


@dataclass(frozen=True)
class Instruction:
    pattern: int
    source: StateId
    kind: str
    operands: tuple  # one or two nodes
    target: StateId
    guard: Guard | None = None

    def describe(self) -> str:
        ops = ", ".join(node_str(n) for n in self.operands)
        via = f" via {node_str(self.guard.pattern)}" if self.guard else ""
        return f"({self.pattern}) {self.source}: {self.kind} {ops}{via}, {self.target}"

    def __str__(self) -> str:
        return self.describe()


# --------------------------------------------------------------------------
# instantaneous descriptions

Binding = tuple  # sorted tuple of (node, eigenvariable) pairs


def binding(d: Mapping | Iterable = ()) -> Binding:
    return tuple(sorted(dict(d).items()))


def restrict(d: Mapping, nodes: Iterable) -> Binding:
    return tuple(sorted((n, d[n]) for n in nodes if n in d))


@dataclass(frozen=True)
class StoreEntry:
    node: NodeId
    binding: Binding
    label: str


@dataclass(frozen=True)
class ID:
    state: StateId
    node: NodeId
    w: Binding = ()
    waux: Binding = ()
    store: tuple = ()  # of StoreEntry, in insertion order
    V: tuple = ()

    def describe(self) -> str:
        def b(x):
            return "[" + ", ".join(f"{node_str(n)}↦{y}" for n, y in x) + "]"
        s = ", ".join(f"⟨{node_str(e.node)},{b(e.binding)},{e.label}⟩" for e in self.store)
        return (f"⟨{self.state}, {node_str(self.node)}, {b(self.w)}, {b(self.waux)}, "
                f"{{{s}}}, {{{', '.join(self.V)}}}⟩")


@dataclass(frozen=True)
class Successor:
    id: ID
    choice: tuple = ()  # (key, value) pairs describing the resolved nondeterminism

    @property
    def choices(self) -> dict:
        return dict(self.choice)


class UnknownState(KeyError):
    pass


class NotApplicable(Exception):
    pass


# --------------------------------------------------------------------------
# the automaton

class ArcadianAutomaton:
    def __init__(self, tree: FormulaTree, states: Iterable[StateId], initial_state: StateId,
                 initial_node: NodeId, i: Mapping[StateId, Sequence[Instruction]]):
        self.tree = tree
        self.states = tuple(sorted(set(states)))
        self.initial_state = initial_state
        self.initial_node = initial_node
        self.i = {q: tuple(i.get(q, ())) for q in self.states}
        self.fv = tree.fv
        self._by_name = {str(q): q for q in self.states}
        self._by_desc = {ins.describe(): ins for ins in self.instructions}
        self._keys: dict = {}

    @property
    def instructions(self) -> list[Instruction]:
        return [ins for q in self.states for ins in self.i[q]]

    def available(self, q: StateId) -> tuple[Instruction, ...]:
        try:
            return self.i[q]
        except KeyError:
            raise UnknownState(str(q)) from None

    def state_named(self, name: str) -> StateId:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownState(name) from None

    def instruction_named(self, desc: str) -> Instruction:
        try:
            return self._by_desc[desc]
        except KeyError:
            raise NotApplicable(f"no instruction {desc!r}") from None

    def key(self, node: NodeId, w: Binding) -> tuple:
        k = (node, w)
        r = self._keys.get(k)
        if r is None:
            r = self.tree.key(node, dict(w))
            self._keys[k] = r
        return r

    def step(self, id: ID, ins: Instruction) -> list[Successor]:
        return step(self, id, ins)


def _fresh_eigen(V: Sequence[str]) -> str:
    k = len(V) + 1
    while f"X{k}" in V:
        k += 1
    return f"X{k}"


def _fresh_label(store: Sequence[StoreEntry]) -> str:
    used = {e.label for e in store}
    k = len(store) + 1
    while f"x{k}" in used:
        k += 1
    return f"x{k}"


def _extensions(base: dict, nodes: Iterable, V: Sequence[str]):
    """All bindings over ``nodes`` extending ``base``, free values from V."""
    missing = sorted(n for n in nodes if n not in base)
    for values in itertools.product(V, repeat=len(missing)):
        d = dict(base)
        d.update(zip(missing, values))
        yield d


def step(aut: ArcadianAutomaton, id: ID, ins: Instruction) -> list[Successor]:
    """Every ID reachable from ``id`` by one execution of ``ins``.

    Raises NotApplicable when there is none (no matching assumption, empty
    working domain, unsolvable guard).
    """
    out = successors(aut, id, ins)
    if not out:
        raise NotApplicable(f"{ins.describe()} has no successor from {id.describe()}")
    return out


def successors(aut: ArcadianAutomaton, id: ID, ins: Instruction) -> list[Successor]:
    """Like ``step`` but returns an empty list instead of raising."""
    if ins not in aut.available(id.state):
        raise NotApplicable(f"{ins.describe()} is not available in {id.state}")
    fv = aut.fv
    w = dict(id.w)
    aux = dict(id.waux)
    both = {**w, **aux}  # w′ ⊕ w
    out: list[Successor] = []
    seen = set()

    def emit(nid: ID, choice=()):
        if (nid, choice) not in seen:
            seen.add((nid, choice))
            out.append(Successor(nid, tuple(choice)))

    match ins.kind:
        case "store":
            rho, rho2 = ins.operands
            label = _fresh_label(id.store)
            entry = StoreEntry(rho, restrict(both, fv[rho]), label)
            emit(ID(ins.target, rho2, restrict(w, fv[rho2]), (), id.store + (entry,), id.V),
                 (("label", label),))
        case "jmp":
            (rho,) = ins.operands
            g = ins.guard
            if g is None:
                for d in _extensions(restrict_dict(both, fv[rho]), fv[rho], id.V):
                    emit(ID(ins.target, rho, binding(d), (), id.store, id.V))
            else:
                sol = aut.tree.match(g.pattern, aut.key(id.node, id.w))
                if sol is not None:
                    for v in _extensions(sol, g.domain, id.V):
                        if g.into == "aux":
                            emit(ID(ins.target, id.node, id.w, binding(v), id.store, id.V),
                                 (("binding", _show_binding(v)),))
                        else:
                            choice = (("witness", v[rho]),) if rho in g.domain and rho not in fv[rho] else ()
                            emit(ID(ins.target, rho, restrict(v, fv[rho]), (), id.store, id.V), choice)
        case "new":
            (rho,) = ins.operands
            y = _fresh_eigen(id.V)
            d = {**w, id.node: y}
            emit(ID(ins.target, rho, restrict(d, fv[rho]), (), id.store, id.V + (y,)),
                 (("eigen", y),))
        case "instr":
            (rho,) = ins.operands
            for y in id.V:
                d = {**w, id.node: y}
                emit(ID(ins.target, rho, restrict(d, fv[rho]), (), id.store, id.V),
                     (("witness", y),))
        case "instl":
            rho, rho2 = ins.operands
            parent = rho[:-1]
            y = _fresh_eigen(id.V)
            d = {**w, **aux, parent: y}
            label = _fresh_label(id.store)
            entry = StoreEntry(rho, restrict(d, fv[rho]), label)
            emit(ID(ins.target, rho2, restrict(w, fv[rho2]), (), id.store + (entry,), id.V + (y,)),
                 (("eigen", y), ("label", label)))
        case "load":
            (rho,) = ins.operands
            for v in _extensions({}, fv[rho], id.V):
                emit(ID(ins.target, id.node, id.w, binding(v), id.store, id.V),
                     (("binding", _show_binding(v)),))
        case "check":
            rho, rho2 = ins.operands
            goal = aut.key(id.node, id.w)
            for e in id.store:
                if aut.key(e.node, e.binding) == goal:
                    emit(ID(ins.target, rho2, restrict(w, fv[rho2]), (), id.store, id.V),
                         (("label", e.label),))
        case _:
            raise ValueError(f"unknown instruction kind {ins.kind}")
    return out


def restrict_dict(d: Mapping, nodes: Iterable) -> dict:
    return {n: d[n] for n in nodes if n in d}


def _show_binding(v: Mapping) -> str:
    return ",".join(f"{node_str(n)}={y}" for n, y in sorted(v.items()))


# --------------------------------------------------------------------------
# canonical forms

def _canon(aut: ArcadianAutomaton, id: ID):
    ren: dict[str, int] = {}

    def name(y):
        r = ren.get(y)
        if r is None:
            r = ren[y] = len(ren)
        return r

    w = tuple((n, name(y)) for n, y in id.w)
    aux = tuple((n, name(y)) for n, y in id.waux)
    reps: dict = {}
    for e in id.store:
        k = aut.key(e.node, e.binding)
        if k not in reps or e.node < reps[k].node:
            reps[k] = e
    keys = list(reps)
    store = []
    big = 1 << 30
    while keys:
        best = min(keys, key=lambda k: (k[0], tuple(ren.get(y, big) for y in k[1]), k[1]))
        keys.remove(best)
        store.append((best[0], tuple(name(y) for y in best[1])))
    for y in id.V:
        name(y)
    return (id.state, id.node, w, aux, tuple(store), len(id.V)), ren, reps


def canonical_key(aut: ArcadianAutomaton, id: ID) -> tuple:
    """Hashable summary equal for IDs that are interchangeable for acceptance.

    Eigenvariables are renamed in first-use order over w, w′ and then the
    store; store entries are reduced to their formulas, so duplicate
    assumptions and labels disappear.
    """
    return _canon(aut, id)[0]


def canonicalize(aut: ArcadianAutomaton, id: ID) -> ID:
    """Rename eigenvariables to X1.. in first-use order, dedupe and sort S, erase labels."""
    _, ren, reps = _canon(aut, id)

    def r(b):
        return tuple((n, f"X{ren[y] + 1}") for n, y in b)

    entries = [StoreEntry(e.node, r(e.binding), "") for e in reps.values()]
    entries.sort(key=lambda e: (aut.key(e.node, e.binding), e.node))
    return ID(id.state, id.node, r(id.w), r(id.waux), tuple(entries),
              tuple(f"X{i + 1}" for i in range(len(id.V))))


# --------------------------------------------------------------------------
# run trees

@dataclass
class RunTree:
    id: ID
    instruction: Instruction | None = None  # the edge that produced this ID
    choice: tuple = ()
    children: list = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    @property
    def size(self) -> int:
        return sum(1 for _ in self.walk())

    @property
    def height(self) -> int:
        return 1 + max((c.height for c in self.children), default=0)

    def kinds(self) -> list[str]:
        """Instruction kinds in pre-order."""
        return [n.instruction.kind for n in self.walk() if n.instruction is not None]

    def to_dict(self) -> dict:
        i = self.id
        return {
            "state": str(i.state),
            "node": node_str(i.node),
            "w": {node_str(n): y for n, y in i.w},
            "wAux": {node_str(n): y for n, y in i.waux},
            "store": [{"node": node_str(e.node),
                       "binding": {node_str(n): y for n, y in e.binding},
                       "label": e.label} for e in i.store],
            "V": list(i.V),
            "instruction": None if self.instruction is None else self.instruction.describe(),
            "choice": dict(self.choice) if self.choice else None,
            "children": [c.to_dict() for c in self.children],
        }

    def to_json(self, formula_text: str | None = None, indent: int | None = 2) -> str:
        d = self.to_dict()
        if formula_text is not None:
            d = {"formula": formula_text, **d}
        return json.dumps(d, ensure_ascii=False, indent=indent)

    def to_dot(self) -> str:
        lines = ["digraph run {", "  node [shape=box, fontname=monospace];"]
        counter = itertools.count()

        def esc(s: str) -> str:
            return s.replace("\\", "\\\\").replace('"', '\\"')

        def go(t: RunTree) -> int:
            me = next(counter)
            lines.append(f'  n{me} [label="{esc(t.id.describe())}"];')
            for c in t.children:
                k = go(c)
                ins = c.instruction
                ops = ", ".join(node_str(n) for n in ins.operands)
                lines.append(f'  n{me} -> n{k} [label="({ins.pattern}) {ins.kind} {esc(ops)}"];')
            return me

        go(self)
        lines.append("}")
        return "\n".join(lines) + "\n"


class ReplayError(Exception):
    pass


def _binding_from_json(d: Mapping) -> Binding:
    return binding({parse_node(k): v for k, v in d.items()})


def run_from_dict(aut: ArcadianAutomaton, d: Mapping, parent: RunTree | None = None) -> RunTree:
    """Rebuild a run from its JSON form (without checking it)."""
    try:
        id = ID(aut.state_named(d["state"]), parse_node(d["node"]),
                _binding_from_json(d["w"]), _binding_from_json(d["wAux"]),
                tuple(StoreEntry(parse_node(e["node"]), _binding_from_json(e["binding"]), e["label"])
                      for e in d["store"]),
                tuple(d["V"]))
        ins = None if d["instruction"] is None else aut.instruction_named(d["instruction"])
        choice = tuple((d.get("choice") or {}).items())
    except (KeyError, TypeError, ValueError, UnknownState) as exc:
        raise ReplayError(f"malformed run node: {exc}") from None
    t = RunTree(id, ins, choice)
    t.children = [run_from_dict(aut, c, t) for c in d["children"]]
    return t


def run_from_json(aut: ArcadianAutomaton, text: str) -> RunTree:
    return run_from_dict(aut, json.loads(text))


def replay(aut: ArcadianAutomaton, run: RunTree) -> None:
    """Re-execute every edge with ``step``; raise ReplayError on any mismatch."""
    for t in run.walk():
        q = t.id.state
        avail = aut.available(q)
        if q.universal:
            if [c.instruction for c in t.children] != list(avail):
                raise ReplayError(f"universal {q} does not cover its instructions")
        elif len(t.children) != 1:
            raise ReplayError(f"existential {q} must have exactly one child")
        for c in t.children:
            succ = successors(aut, t.id, c.instruction)
            if Successor(c.id, c.choice) not in succ:
                raise ReplayError(f"edge {c.instruction.describe()} does not produce {c.id.describe()}")
    for t in run.walk():
        if not t.children and not (t.id.state.universal and not aut.available(t.id.state)):
            raise ReplayError(f"leaf {t.id.state} is not accepting")


# --------------------------------------------------------------------------
# bounded acceptance

@dataclass(frozen=True)
class Budget:
    depth: int = 24
    max_eigen: int = 3


@dataclass
class SearchStats:
    expanded: int = 0
    max_depth: int = 0
    max_v: int = 0
    seconds: float = 0.0
    iterations: int = 0


@dataclass(frozen=True)
class FuelExhausted:
    """Some branch was cut by the depth or eigenvariable bound."""

    depth_cut: bool
    eigen_cut: bool


@dataclass(frozen=True)
class ProvenUnreachable:
    """The bounded space was explored with only loop cuts: no accepting run exists."""


@dataclass
class SearchResult:
    run: RunTree | None
    reason: FuelExhausted | ProvenUnreachable | None
    stats: SearchStats


INF = float("inf")


@dataclass
class _Fail:
    loop_ref: float = INF  # shallowest path level a loop cut below referred to
    depth_cut: bool = False
    eigen_cut: bool = False

    def absorb(self, other: "_Fail") -> None:
        self.loop_ref = min(self.loop_ref, other.loop_ref)
        self.depth_cut |= other.depth_cut
        self.eigen_cut |= other.eigen_cut


class _Search:
    def __init__(self, aut: ArcadianAutomaton, budget: Budget, deadline: float | None):
        self.aut = aut
        self.budget = budget
        self.memo: dict = {}  # canonical key -> (remaining depth or INF, eigen_cut)
        self.stats = SearchStats()
        self.deadline = deadline

    def solve(self, t: RunTree, depth: int, level: int, path: dict):
        """Return True after filling t.children, or a _Fail."""
        aut = self.aut
        id = t.id
        q = id.state
        avail = aut.available(q)
        if q.universal and not avail:
            return True
        key = canonical_key(aut, id)
        if key in path:
            return _Fail(loop_ref=path[key])
        hit = self.memo.get(key)
        if hit is not None and hit[0] >= depth:
            return _Fail(depth_cut=hit[0] != INF, eigen_cut=hit[1])
        if depth == 0:
            return _Fail(depth_cut=True)
        st = self.stats
        st.expanded += 1
        st.max_depth = max(st.max_depth, level + 1)
        if self.deadline is not None and st.expanded % 1024 == 0 and time.monotonic() > self.deadline:
            raise TimeoutError("search deadline exceeded")
        path[key] = level
        fail = _Fail()
        try:
            if q.universal:
                children = []
                for ins in avail:
                    child = self._some(t, ins, depth, level, path, fail)
                    if child is None:
                        break
                    children.append(child)
                else:
                    t.children = children
                    return True
            else:
                for ins in avail:
                    child = self._some(t, ins, depth, level, path, fail)
                    if child is not None:
                        t.children = [child]
                        return True
        finally:
            del path[key]
        if fail.loop_ref >= level:
            self.memo[key] = (depth if fail.depth_cut else INF, fail.eigen_cut)
            fail.loop_ref = INF
        return fail

    def _some(self, t, ins, depth, level, path, fail) -> RunTree | None:
        cap = self.budget.max_eigen
        for s in successors(self.aut, t.id, ins):
            if len(s.id.V) > cap:
                fail.eigen_cut = True
                continue
            self.stats.max_v = max(self.stats.max_v, len(s.id.V))
            child = RunTree(s.id, ins, s.choice)
            r = self.solve(child, depth - 1, level + 1, path)
            if r is True:
                return child
            fail.absorb(r)
        return None


def search(aut: ArcadianAutomaton, id: ID, fuel: Budget = Budget(),
           timeout: float | None = None) -> SearchResult:
    """Iterative-deepening AND-OR search for an accepting run from ``id``."""
    start = time.monotonic()
    s = _Search(aut, fuel, None if timeout is None else start + timeout)
    reason = ProvenUnreachable()
    for depth in range(1, fuel.depth + 1):
        s.stats.iterations += 1
        root = RunTree(id)
        r = s.solve(root, depth, 0, {})
        if r is True:
            s.stats.seconds = time.monotonic() - start
            return SearchResult(root, None, s.stats)
        if not r.depth_cut:
            reason = FuelExhausted(False, True) if r.eigen_cut else ProvenUnreachable()
            break
        reason = FuelExhausted(True, r.eigen_cut)
    s.stats.seconds = time.monotonic() - start
    return SearchResult(None, reason, s.stats)


def accepts(aut: ArcadianAutomaton, id: ID, fuel: Budget = Budget()) -> RunTree | None:
    return search(aut, id, fuel).run


# --------------------------------------------------------------------------
# structural checks

@dataclass(frozen=True)
class Violation:
    detail: str

    def __str__(self) -> str:
        return f"{type(self).__name__}: {self.detail}"


class DuplicateOwnership(Violation):
    pass


class DanglingNode(Violation):
    pass


class DanglingState(Violation):
    pass


class WrongSource(Violation):
    pass


class BadOperands(Violation):
    pass


class VacuousUniversal(Violation):
    pass


_ARITY = {"store": 2, "jmp": 1, "new": 1, "check": 2, "instl": 2, "instr": 1, "load": 1}


def well_formed(aut: ArcadianAutomaton) -> list[Violation]:
    out: list[Violation] = []
    owner: dict[Instruction, StateId] = {}
    states = set(aut.states)
    if aut.initial_state not in states:
        out.append(DanglingState(f"initial state {aut.initial_state}"))
    if aut.initial_node not in aut.tree:
        out.append(DanglingNode(f"initial node {node_str(aut.initial_node)}"))
    for q in aut.states:
        if q.universal and not aut.i[q] and q.flavor != "axiom":
            out.append(VacuousUniversal(f"{q} has no instructions"))
        if q.node not in aut.tree:
            out.append(DanglingNode(f"state {q} owned by a non-node"))
        for ins in aut.i[q]:
            if ins in owner and owner[ins] != q:
                out.append(DuplicateOwnership(f"{ins.describe()} owned by {owner[ins]} and {q}"))
            owner.setdefault(ins, q)
            if ins.source != q:
                out.append(WrongSource(f"{ins.describe()} listed under {q}"))
            if ins.kind not in _ARITY or len(ins.operands) != _ARITY[ins.kind]:
                out.append(BadOperands(ins.describe()))
            for n in ins.operands + ((ins.guard.pattern,) if ins.guard else ()):
                if n not in aut.tree:
                    out.append(DanglingNode(f"{ins.describe()} names {node_str(n)}"))
            if ins.target not in states:
                out.append(DanglingState(f"{ins.describe()} targets {ins.target}"))
    return out
