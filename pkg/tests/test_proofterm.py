
import pytest

from arcadian.formula import Atom, BOT, Imp, Or, parse, substitute
from arcadian.proofterm import (
    Abort, App, Case, Context, IllTyped, Inl, Lam, Let, NFClass, Pack, Pair, Proj, TApp,
    TLam, UnboundVariable, Var, classify_nf, free_fo_vars, free_term_vars, is_lnf,
    parse_term, show_term, term_alpha_eq, type_check,
)

from checker_cases import RAW, cases

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_free_term_vars():
    assert free_term_vars(Var("x")) == {"x"}
    assert free_term_vars(Lam("x", p, Var("x"))) == set()
    assert free_term_vars(Case(Var("z"), "x", p, Var("x"), "y", q, Var("w"))) == {"z", "w"}
    assert free_term_vars(Let("x", "X", p, Var("e"), App(Var("x"), Var("k")))) == {"e", "k"}


def test_free_fo_vars():
    assert free_fo_vars(Inl(Or(Atom("P", ("x",)), q), Var("z"))) == {"x"}
    assert free_fo_vars(TLam("X", TApp(Var("f"), "X"))) == set()
    assert free_fo_vars(TApp(Var("f"), "Y")) == {"Y"}
    assert free_fo_vars(parse_term("let [Y, u:P(Y)] = e in pack u, Y to x. Q(x, Z)")) == {"Z"}


@pytest.mark.parametrize("rule, gamma, term, phi, err", list(cases()),
                         ids=[f"{c[0]}-{'ok' if c[4] is None else 'bad'}" for c in RAW])
def test_rule_harness(rule, gamma, term, phi, err):
    res = type_check(gamma, term, phi)
    if err is None:
        assert res.ok, res.reason
    else:
        assert not res.ok and isinstance(res.error, err), res.reason


def test_spec_examples():
    gamma = {"x": r, "y": Imp(r, Or(p, q))}
    assert type_check({}, Lam("x", p, Var("x")), Imp(p, p)).ok
    assert type_check(gamma, App(Var("y"), Var("x")), Or(p, q)).ok
    res = type_check({"x": Atom("P", ("Y",))}, TLam("Y", Var("x")), parse("forall Y. P(Y)"))
    assert not res.ok and res.error.rule == "∀I"


def test_unbound_variable():
    res = type_check({}, Var("x"), p)
    assert isinstance(res.error, UnboundVariable)


def test_mismatch_names_rule_and_formulas():
    res = type_check({}, parse_term(r"\x:p. x"), parse("p -> q"))
    assert res.error.rule == "var" and res.error.expected == q and res.error.found == p


def test_checker_accepts_alpha_variants_of_annotations():
    assert type_check({}, parse_term(r"\x:forall y. P(y). x"),
                      parse("(forall z. P(z)) -> forall w. P(w)")).ok


# property: weakening and alpha invariance --------------------------------

ACCEPTED = [(g, m, f) for _, g, m, f, e in cases() if e is None]


@pytest.mark.parametrize("gamma, term, phi", ACCEPTED)
def test_weakening(gamma, term, phi):
    for extra in (p, parse("forall x. P(x)"), BOT):
        assert type_check({**gamma, "fresh9": extra}, term, phi).ok


def _rename_bound(m, k=[0]):
    """Rename every bound proof variable and eigenvariable to a fresh name."""
    k[0] += 1
    s = str(k[0])
    match m:
        case Lam(x, f, b):
            return Lam(x + "_" + s, f, _subst_var(_rename_bound(b), x, x + "_" + s))
        case TLam(x, b):
            return TLam(x + "_" + s, _subst_fo(_rename_bound(b), x, x + "_" + s))
        case Pair(a, b):
            return Pair(_rename_bound(a), _rename_bound(b))
        case App(a, b):
            return App(_rename_bound(a), _rename_bound(b))
    return m


def _subst_var(m, x, y):
    match m:
        case Var(z):
            return Var(y) if z == x else m
        case Lam(z, f, b):
            return m if z == x else Lam(z, f, _subst_var(b, x, y))
        case TLam(z, b):
            return TLam(z, _subst_var(b, x, y))
        case Pair(a, b):
            return Pair(_subst_var(a, x, y), _subst_var(b, x, y))
        case App(a, b):
            return App(_subst_var(a, x, y), _subst_var(b, x, y))
        case Proj(i, a):
            return Proj(i, _subst_var(a, x, y))
        case TApp(a, w):
            return TApp(_subst_var(a, x, y), w)
    raise NotImplementedError(m)


def _subst_fo(m, x, y):
    match m:
        case Var():
            return m
        case Lam(z, f, b):
            return Lam(z, substitute(f, {x: y}), _subst_fo(b, x, y))
        case TLam(z, b):
            return m if z == x else TLam(z, _subst_fo(b, x, y))
        case Pair(a, b):
            return Pair(_subst_fo(a, x, y), _subst_fo(b, x, y))
        case App(a, b):
            return App(_subst_fo(a, x, y), _subst_fo(b, x, y))
        case Proj(i, a):
            return Proj(i, _subst_fo(a, x, y))
        case TApp(a, w):
            return TApp(_subst_fo(a, x, y), y if w == x else w)
    raise NotImplementedError(m)


ALPHA = [
    (r"\x:p. \y:q. x", "p -> q -> p"),
    (r"\f:forall x. P(x) -> Q(x). \g:forall x. P(x). \\X. f @X (g @X)",
     "(forall x. P(x) -> Q(x)) -> (forall x. P(x)) -> forall x. Q(x)"),
    (r"\x:(p /\ q). <p2 x, p1 x>", r"p /\ q -> q /\ p"),
]


@pytest.mark.parametrize("term, phi", ALPHA)
def test_alpha_invariance(term, phi):
    m = parse_term(term)
    renamed = _rename_bound(m)
    assert renamed != m and term_alpha_eq(renamed, m)
    assert type_check({}, renamed, parse(phi)).ok == type_check({}, m, parse(phi)).ok is True
    # renaming bound names in the formula as well
    assert type_check({}, renamed, parse(phi.replace("x.", "u.").replace("(x)", "(u)"))).ok


def test_term_alpha_eq_distinguishes_structure():
    assert term_alpha_eq(parse_term(r"\a:p. \\X. a"), parse_term(r"\b:p. \\Z. b"))
    assert not term_alpha_eq(parse_term(r"\a:p. \b:p. a"), parse_term(r"\a:p. \b:p. b"))
    assert not term_alpha_eq(parse_term("f @X"), parse_term("f @Y"))
    assert term_alpha_eq(parse_term("let [X, u:P(X)] = e in pack u, X to x. P(x)"),
                         parse_term("let [Y, v:P(Y)] = e in pack v, Y to z. P(z)"))


# normal forms --------------------------------------------------------------

def test_classify_nf():
    assert classify_nf(Var("x")) is NFClass.PROPER_ELIMINATOR
    assert classify_nf(App(Lam("x", p, Var("x")), Var("y"))) is NFClass.NOT_NORMAL
    assert classify_nf(Abort(p, Var("z"))) is NFClass.IMPROPER_ELIMINATOR
    assert classify_nf(Lam("x", p, Var("x"))) is NFClass.INTRODUCTION
    assert classify_nf(Proj(1, Pair(Var("a"), Var("b")))) is NFClass.NOT_NORMAL
    assert classify_nf(TApp(TLam("X", Var("a")), "Y")) is NFClass.NOT_NORMAL
    assert classify_nf(Case(Inl(Or(p, q), Var("a")), "x", p, Var("x"), "y", q, Var("y"))) \
        is NFClass.NOT_NORMAL
    assert classify_nf(Let("x", "X", p, Pack(Var("a"), "Y", "z", p), Var("x"))) \
        is NFClass.NOT_NORMAL
    assert classify_nf(Lam("x", p, App(Lam("y", p, Var("y")), Var("x")))) is NFClass.NOT_NORMAL


def test_is_lnf():
    gamma = Context({"x": r, "y": Imp(r, Or(p, q))})
    assert is_lnf(gamma, App(Var("y"), Var("x")), Or(p, q))
    assert not is_lnf(gamma, Var("y"), Imp(r, Or(p, q)))
    assert is_lnf(gamma, parse_term(r"\z:r. y z"), Imp(r, Or(p, q)))
    long_case = parse_term(r"case y x of {a:p => inl[p \/ q] a | b:q => inr[p \/ q] b}")
    assert is_lnf(gamma, long_case, Or(p, q))
    assert is_lnf({}, Lam("x", p, Var("x")), Imp(p, p))
    assert not is_lnf({}, parse_term(r"\x:(p /\ q). x"), parse(r"p /\ q -> p /\ q"))
    assert is_lnf({}, parse_term(r"\x:(p /\ q). <p1 x, p2 x>"), parse(r"p /\ q -> p /\ q"))
    # a spine with a non-long argument
    assert not is_lnf({"f": parse("(p -> p) -> q"), "g": parse("p -> p")},
                      App(Var("f"), Var("g")), q)


def test_is_lnf_requires_a_typed_term():
    with pytest.raises(IllTyped):
        is_lnf({}, Var("x"), p)


def test_lnf_implies_normal():
    for _, gamma, term, phi, err in cases():
        if err is None and is_lnf(gamma, term, phi):
            assert classify_nf(term) is not NFClass.NOT_NORMAL


# concrete syntax ----------------------------------------------------------

SYNTAX = [
    r"\x:p. x",
    r"\x:(p -> q). \y:p. x y",
    r"\\X. f @X (g @X)",
    r"<p1 x, p2 (y z)>",
    r"case d of {a:p => inl[p \/ q] a | b:q => inr[p \/ q] b}",
    r"let [Y, u:P(Y)] = e in pack u, Y to x. P(x)",
    r"abort[p /\ q] (f z)",
    r"\x:(forall x. exists y. R(x, y)). \\X. x @X",
    r"f (\x:p. x) <a, b>",
    r"p1 p2 x",
]


@pytest.mark.parametrize("text", SYNTAX)
def test_term_round_trip(text):
    m = parse_term(text)
    assert parse_term(show_term(m)) == m


def test_term_printer_output():
    assert show_term(Lam("x", Imp(p, q), App(Var("x"), Var("y")))) == r"\x:(p -> q). x y"
    assert show_term(App(Var("f"), App(Var("g"), Var("a")))) == "f (g a)"
    assert show_term(TApp(Proj(1, Var("x")), "X")) == "p1 x @X"
