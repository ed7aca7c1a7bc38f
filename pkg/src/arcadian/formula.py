"""First-order formulas: AST, concrete syntax, binder structure and matching.

Formulas are immutable dataclasses.  Alpha-equivalence is decided on a
locally nameless *key*: a nested tuple ``shape`` in which bound occurrences
are de Bruijn indices ``('b', k)`` and free occurrences are numbered by first
occurrence ``('f', i)``, paired with the tuple of free names in that order.
Two formulas are alpha-equal iff their keys are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Union

from arcadian.lexer import Cursor, ParseError

NodeId = tuple  # path of child indices from the root; () is the root


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[str, ...] = ()


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Bottom:
    pass


BOT = Bottom()
Formula = Union[Atom, And, Or, Imp, Forall, Exists, Bottom]
Binary = (And, Or, Imp)
Quantifier = (Forall, Exists)


class FormulaError(Exception):
    pass


class ArityError(ParseError):
    pass


class NotClosed(FormulaError):
    pass


class VarNotFree(FormulaError):
    pass


class IncompleteBinding(FormulaError):
    pass


def neg(f: Formula) -> Formula:
    return Imp(f, BOT)


def is_pseudo_atom(f: Formula) -> bool:
    return isinstance(f, (Atom, Or, Exists))


# --------------------------------------------------------------------------
# variables and substitution

@lru_cache(maxsize=None)
def free_vars(f: Formula) -> frozenset[str]:
    match f:
        case Atom(_, args):
            return frozenset(args)
        case And(a, b) | Or(a, b) | Imp(a, b):
            return free_vars(a) | free_vars(b)
        case Forall(x, body) | Exists(x, body):
            return free_vars(body) - {x}
        case Bottom():
            return frozenset()
    raise TypeError(f"not a formula: {f!r}")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    name = base
    while name in avoid:
        name += "'"
    return name


def substitute(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Capture-avoiding renaming of free variables."""
    if not mapping:
        return f
    match f:
        case Atom(p, args):
            return Atom(p, tuple(mapping.get(x, x) for x in args))
        case And(a, b):
            return And(substitute(a, mapping), substitute(b, mapping))
        case Or(a, b):
            return Or(substitute(a, mapping), substitute(b, mapping))
        case Imp(a, b):
            return Imp(substitute(a, mapping), substitute(b, mapping))
        case Forall(x, body) | Exists(x, body):
            fv = free_vars(body)
            inner = {k: v for k, v in mapping.items() if k != x and k in fv}
            if not inner:
                return f
            if x in inner.values():
                y = fresh_name(x, fv | set(inner.values()))
                body = substitute(body, {x: y})
                x = y
            return type(f)(x, substitute(body, inner))
        case Bottom():
            return f
    raise TypeError(f"not a formula: {f!r}")


def universal_closure(f: Formula) -> Formula:
    for x in sorted(free_vars(f), reverse=True):
        f = Forall(x, f)
    return f


# --------------------------------------------------------------------------
# locally nameless keys

@lru_cache(maxsize=None)
def ln_key(f: Formula) -> tuple:
    """Return ``(shape, free_names)``; equal keys iff alpha-equal formulas."""
    free: dict[str, int] = {}

    def go(f, env):
        match f:
            case Atom(p, args):
                out = []
                for x in args:
                    for k in range(len(env) - 1, -1, -1):
                        if env[k] == x:
                            out.append(("b", len(env) - 1 - k))
                            break
                    else:
                        out.append(("f", free.setdefault(x, len(free))))
                return ("atom", p, tuple(out))
            case And(a, b):
                return ("and", go(a, env), go(b, env))
            case Or(a, b):
                return ("or", go(a, env), go(b, env))
            case Imp(a, b):
                return ("imp", go(a, env), go(b, env))
            case Forall(x, body):
                return ("all", go(body, env + (x,)))
            case Exists(x, body):
                return ("ex", go(body, env + (x,)))
            case Bottom():
                return ("bot",)
        raise TypeError(f"not a formula: {f!r}")

    shape = go(f, ())
    return shape, tuple(free)


def alpha_eq(a: Formula, b: Formula) -> bool:
    return a == b or ln_key(a) == ln_key(b)


@lru_cache(maxsize=None)
def _renumber(shape: tuple, remap: tuple) -> tuple:
    tag = shape[0]
    if tag == "atom":
        return ("atom", shape[1],
                tuple(("f", remap[a[1]]) if a[0] == "f" else a for a in shape[2]))
    if tag in ("and", "or", "imp"):
        return (tag, _renumber(shape[1], remap), _renumber(shape[2], remap))
    if tag in ("all", "ex"):
        return (tag, _renumber(shape[1], remap))
    return shape


def _count_free(shape: tuple, acc: set) -> set:
    tag = shape[0]
    if tag == "atom":
        acc.update(a[1] for a in shape[2] if a[0] == "f")
    elif tag in ("and", "or", "imp"):
        _count_free(shape[1], acc)
        _count_free(shape[2], acc)
    elif tag in ("all", "ex"):
        _count_free(shape[1], acc)
    return acc


@lru_cache(maxsize=None)
def match_shapes(pattern: tuple, target: tuple) -> tuple | None:
    """Match free slots of ``pattern`` against free slots of ``target``.

    Returns, for every free index of the pattern, the target index it maps
    to, or None when the shapes disagree.  Distinct pattern slots may map to
    the same target slot.
    """
    assign: dict[int, int] = {}

    def walk(p, t) -> bool:
        if p[0] != t[0]:
            return False
        tag = p[0]
        if tag == "atom":
            if p[1] != t[1] or len(p[2]) != len(t[2]):
                return False
            for a, b in zip(p[2], t[2]):
                if a[0] == "f":
                    if b[0] != "f":
                        return False
                    if assign.setdefault(a[1], b[1]) != b[1]:
                        return False
                elif a != b:
                    return False
            return True
        if tag in ("and", "or", "imp"):
            return walk(p[1], t[1]) and walk(p[2], t[2])
        if tag in ("all", "ex"):
            return walk(p[1], t[1])
        return True

    if not walk(pattern, target):
        return None
    return tuple(assign[i] for i in range(len(assign)))


@lru_cache(maxsize=None)
def shapes_unifiable(a: tuple, b: tuple) -> bool:
    """Whether some instantiation of the free slots makes the shapes equal."""
    if a[0] != b[0]:
        return False
    tag = a[0]
    if tag == "atom":
        if a[1] != b[1] or len(a[2]) != len(b[2]):
            return False
        for x, y in zip(a[2], b[2]):
            if (x[0] == "f") != (y[0] == "f"):
                return False
            if x[0] == "b" and x != y:
                return False
        return True
    if tag in ("and", "or", "imp"):
        return shapes_unifiable(a[1], b[1]) and shapes_unifiable(a[2], b[2])
    if tag in ("all", "ex"):
        return shapes_unifiable(a[1], b[1])
    return True


# --------------------------------------------------------------------------
# concrete syntax

FORMULA_KEYWORDS = frozenset({"forall", "exists", "bot"})

_QUANT, _IMP, _OR, _AND, _NEG, _ATOM = range(6)


class FormulaParser:
    """Recursive-descent parser; quantifier scope extends maximally right."""

    def __init__(self, cur: Cursor, arities: dict[str, int] | None = None):
        self.cur = cur
        self.arities = {} if arities is None else arities

    def formula(self) -> Formula:
        if self.cur.peek("forall") or self.cur.peek("exists"):
            return self.quantifier()
        left = self.disj()
        if self.cur.accept("->"):
            return Imp(left, self.formula())
        return left

    def quantifier(self) -> Formula:
        if self.cur.accept("forall"):
            kind = Forall
        else:
            self.cur.expect("exists")
            kind = Exists
        x =self.cur.ident(FORMULA_KEYWORDS)
        self.cur.expect(".")
        return kind(x, self.formula())

    def disj(self) -> Formula:
        f = self.conj()
        while self.cur.accept("\\/"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.cur.accept("/\\"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        cur = self.cur
        if cur.accept("~"):
            return Imp(self.unary(), BOT)
        if cur.peek("forall") or cur.peek("exists"):
            return self.quantifier()
        if cur.accept("("):
            f = self.formula()
            cur.expect(")")
            return f
        if cur.accept("bot"):
            return BOT
        pos = cur.tok.pos
        name = cur.ident(FORMULA_KEYWORDS)
        args: list[str] = []
        if cur.accept("("):
            args.append(cur.ident(FORMULA_KEYWORDS))
            while cur.accept(","):
                args.append(cur.ident(FORMULA_KEYWORDS))
            cur.expect(")")
        known = self.arities.setdefault(name, len(args))
        if known != len(args):
            raise ArityError(
                f"predicate {name} used with arity {len(args)} but earlier with {known}", pos)
        return Atom(name, tuple(args))


def parse(text: str) -> Formula:
    cur = Cursor(text)
    f = FormulaParser(cur).formula()
    cur.finish()
    return f


def _level(f: Formula) -> int:
    match f:
        case Forall() | Exists():
            return _QUANT
        case Imp(_, Bottom()):
            return _NEG
        case Imp():
            return _IMP
        case Or():
            return _OR
        case And():
            return _AND
    return _ATOM


def _fmt(f: Formula, prec: int, tail: bool) -> str:
    lvl = _level(f)
    if (lvl == _QUANT and not tail) or (lvl != _QUANT and lvl < prec):
        return "(" + _fmt(f, _QUANT, True) + ")"
    match f:
        case Atom(p, ()):
            return p
        case Atom(p, args):
            return f"{p}({', '.join(args)})"
        case Bottom():
            return "bot"
        case Forall(x, body):
            return f"forall {x}. {_fmt(body, _QUANT, True)}"
        case Exists(x, body):
            return f"exists {x}. {_fmt(body, _QUANT, True)}"
        case Imp(a, Bottom()):
            return "~" + _fmt(a, _NEG, tail)
        case Imp(a, b):
            return f"{_fmt(a, _OR, False)} -> {_fmt(b, _IMP, tail)}"
        case Or(a, b):
            return f"{_fmt(a, _OR, False)} \\/ {_fmt(b, _AND, tail)}"
        case And(a, b):
            return f"{_fmt(a, _AND, False)} /\\ {_fmt(b, _NEG, tail)}"
    raise TypeError(f"not a formula: {f!r}")


def show(f: Formula) -> str:
    """Print with minimal parentheses; ``parse(show(f))`` is alpha-equal to f."""
    return _fmt(f, _QUANT, True)


def show_atomic(f: Formula) -> str:
    """Print, parenthesized unless atomic."""
    s = show(f)
    return s if isinstance(f, (Atom, Bottom)) else f"({s})"


# --------------------------------------------------------------------------
# indexed syntax trees

def node_str(n: NodeId) -> str:
    return "".join(map(str, n)) if n else "ε"


def parse_node(s: str) -> NodeId:
    return () if s in ("", "ε") else tuple(int(c) for c in s)


def _label(f: Formula) -> str:
    return {Atom: "atom", And: "and", Or: "or", Imp: "imp", Forall: "forall",
            Exists: "exists", Bottom: "bot"}[type(f)]


class FormulaTree:
    """Syntax tree of a closed formula, addressed by child-index paths."""

    def __init__(self, root: Formula):
        if free_vars(root):
            raise NotClosed(f"formula has free variables {sorted(free_vars(root))}")
        self.root = root
        self.formulas: dict[NodeId, Formula] = {}
        stack = [((), root)]
        while stack:
            n, f = stack.pop()
            self.formulas[n] = f
            if isinstance(f, Binary):
                stack.append((n + (1,), f.right))
                stack.append((n + (0,), f.left))
            elif isinstance(f, Quantifier):
                stack.append((n + (0,), f.body))
        self.nodes: tuple[NodeId, ...] = tuple(sorted(self.formulas))
        self.labels = {n: _label(f) for n, f in self.formulas.items()}
        self.fv: dict[NodeId, frozenset] = {
            n: frozenset(self.bind(n, x) for x in free_vars(f))
            for n, f in self.formulas.items()
        }
        bots = [n for n in self.nodes if self.labels[n] == "bot"]
        self.bottom_node: NodeId | None = bots[0] if bots else None
        self._shape: dict[NodeId, tuple] = {}
        self._keys: dict = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, n) -> bool:
        return n in self.formulas

    def formula_at(self, n: NodeId) -> Formula:
        return self.formulas[n]

    def label(self, n: NodeId) -> str:
        return self.labels[n]

    def children(self, n: NodeId) -> list[NodeId]:
        f = self.formulas[n]
        if isinstance(f, Binary):
            return [n + (0,), n + (1,)]
        if isinstance(f, Quantifier):
            return [n + (0,)]
        return []

    def parent(self, n: NodeId) -> NodeId | None:
        return n[:-1] if n else None

    def is_quantifier(self, n: NodeId) -> bool:
        return self.labels[n] in ("forall", "exists")

    def bound_var(self, n: NodeId) -> str:
        return self.formulas[n].var

    def bind(self, n: NodeId, x: str) -> NodeId:
        """The closest quantifier ancestor of ``n`` binding ``x``."""
        if x not in free_vars(self.formulas[n]):
            raise VarNotFree(f"{x} is not free at node {node_str(n)}")
        p = n
        while p:
            p = p[:-1]
            f = self.formulas[p]
            if isinstance(f, Quantifier) and f.var == x:
                return p
        raise NotClosed(f"{x} is unbound")  # unreachable for closed roots

    # -- instances ---------------------------------------------------------

    def shape(self, n: NodeId) -> tuple:
        """``(shape, binder nodes)`` of the formula at n, free slots by binder."""
        s = self._shape.get(n)
        if s is None:
            shape, names = ln_key(self.formulas[n])
            s = (shape, tuple(self.bind(n, x) for x in names))
            self._shape[n] = s
        return s

    def key(self, n: NodeId, w: Mapping) -> tuple:
        """Alpha-key of the formula at n instantiated by binding w."""
        shape, binders = self.shape(n)
        try:
            names = tuple(w[b] for b in binders)
        except KeyError as exc:
            raise IncompleteBinding(
                f"binding lacks node {node_str(exc.args[0])} needed at {node_str(n)}") from None
        if len(set(names)) == len(names):
            return shape, names
        distinct = tuple(dict.fromkeys(names))
        remap = tuple(distinct.index(x) for x in names)
        return _renumber(shape, remap), distinct

    def instantiate(self, n: NodeId, w: Mapping) -> Formula:
        f = self.formulas[n]
        mapping = {}
        for x in free_vars(f):
            b = self.bind(n, x)
            if b not in w:
                raise IncompleteBinding(
                    f"binding lacks node {node_str(b)} needed at {node_str(n)}")
            mapping[x] = w[b]
        return substitute(f, mapping)

    def match(self, n: NodeId, key: tuple) -> dict | None:
        """Binding v over the binders of n with key(n, v) == key, if any."""
        shape, binders = self.shape(n)
        assign = match_shapes(shape, key[0])
        if assign is None:
            return None
        names = key[1]
        return {b: names[j] for b, j in zip(binders, assign)}

    def unifiable(self, a: NodeId, b: NodeId) -> bool:
        return shapes_unifiable(self.shape(a)[0], self.shape(b)[0])

    def emerged_from(self, psi: Formula) -> list[tuple[NodeId, dict]]:
        """All (node, substitution) pairs with formula-at-node[sub] alpha-equal psi."""
        target = ln_key(psi)
        out = []
        for n in self.nodes:
            v = self.match(n, target)
            if v is not None:
                out.append((n, {self.bound_var(b): y for b, y in v.items()}))
        return out


def index(f: Formula) -> FormulaTree:
    return FormulaTree(f)


def bind(t: FormulaTree, n: NodeId, x: str) -> NodeId:
    return t.bind(n, x)


def instantiate(t: FormulaTree, n: NodeId, w: Mapping) -> Formula:
    return t.instantiate(n, w)


def emerged_from(psi: Formula, t: FormulaTree) -> list[tuple[NodeId, dict]]:
    return t.emerged_from(psi)
