import random

import pytest

from arcadian.construction import (
    NotEmerged, automaton_to_json, build, dump_table, initial_id, judgment_to_id, q_check,
)
from arcadian.engine import extract
from arcadian.formula import Atom, NotClosed, parse
from arcadian.machine import AXIOM, ID, Budget, StoreEntry, accepts, replay
from arcadian.proofterm import type_check

from corpus import EXAMPLE, PROVABLE, random_closed

E, N0, N00, N1, N10, N100 = (), (0,), (0, 0), (1,), (1, 0), (1, 0, 0)


@pytest.fixture(scope="module")
def example():
    return build(parse(EXAMPLE))


def lines(build_result):
    return dump_table(*build_result).splitlines()


def test_example_table_contains_the_listed_instructions(example):
    table = lines(example)
    expected = [
        "(1) q∀(ε): store 0, 1, q∃(1)",
        "(4) q∀(0): new 00, q∃(00)",
        "(4) q∀(1): new 10, q∃(10)",
        "(5) q∀(10): instr 100, q∃(100)",
        "(10) q∃(00): jmp 0 via 00, q∃E(0)",
        "(10) q∃(100): jmp 0 via 00, q∃E(0)",
    ]
    for m in ("ε", "1", "10"):
        expected.append(f"(19) q∀({m};∃@10): jmp 10, q∃E(10)")
        expected.append(f"(20) q∀({m};∃@10): instl 100, {m}, q∃({m})")
    for m in ("ε", "0", "00", "1", "10", "100"):
        expected.append(f"(13) q∃({m}): check {m}, {m}, q∀axiom")
    for line in expected:
        assert line in table


def test_introduction_jumps_only_at_introduction_nodes(example):
    aut, table = example
    sixes = sorted(i.operands[0] for p, i in table if p == 6)
    assert sixes == [E, N0, N1, N10]  # never at the atoms 00 and 100
    assert not any(p in (12, 21) for p, _ in table)  # no bottom in the formula


def test_bot_implies_bot_table():
    aut, table = build(parse("bot -> bot"))
    patterns = {p for p, _ in table}
    assert {1, 13, 12, 21} <= patterns and not patterns & {4, 5}
    checks = {i.source for p, i in table if p == 13}
    assert q_check((0,)) in checks and q_check((1,)) in checks
    assert sum(1 for p, _ in table if p == 12) == 3  # one per node
    assert {i.operands for p, i in table if p == 21} == {((0,),)}  # canonical bottom node


def test_identity_table():
    aut, table = build(parse("p -> p"))
    text = dump_table(aut, table)
    assert "(1) q∀(ε): store 0, 1, q∃(1)\n" in text
    assert "(6) q∃(ε): jmp ε, q∀(ε)\n" in text
    assert "(13) q∃(1): check 1, 1, q∀axiom\n" in text


def test_dump_is_deterministic():
    assert dump_table(*build(parse(EXAMPLE))) == dump_table(*build(parse(EXAMPLE)))


def test_build_rejects_open_formulas():
    with pytest.raises(NotClosed):
        build(Atom("P", ("x",)))


def test_automaton_json_lists_nodes_and_fv(example):
    import json
    d = json.loads(automaton_to_json(example.automaton))
    assert d["fv"]["00"] == ["0"] and d["fv"]["100"] == ["10"]
    assert len(d["instructions"]) == len(example.table)


# structural properties ---------------------------------------------------

def _random_builds(n=40, seed=9):
    rng = random.Random(seed)
    for _ in range(n):
        f = random_closed(rng, 6)
        yield f, build(f)


def test_universal_states_are_never_vacuous_and_check_is_everywhere():
    for _, (aut, _) in _random_builds():
        for q in aut.states:
            if q.universal and q != AXIOM:
                assert aut.available(q)
        for m in aut.tree.nodes:
            assert any(i.kind == "check" for i in aut.available(q_check(m)))


def test_pattern_ids_match_instruction_kinds():
    kinds = {1: "store", 2: "jmp", 3: "jmp", 4: "new", 5: "instr", 6: "jmp", 7: "jmp",
             8: "load", 9: "jmp", 10: "jmp", 11: "load", 12: "jmp", 13: "check", 14: "jmp",
             15: "store", 16: "store", 17: "jmp", 18: "jmp", 19: "jmp", 20: "instl", 21: "jmp"}
    for _, (aut, table) in _random_builds():
        for p, ins in table:
            assert kinds[p] == ins.kind
            if p == 1:
                assert aut.tree.labels[ins.source.node] == "imp"


def test_size_is_quadratic_in_the_number_of_nodes():
    for _, (aut, table) in _random_builds(60):
        n = len(aut.tree.nodes)
        assert len(aut.states) <= 4 * n * n + 4
        assert len(table) <= 12 * n * n + 4


# translation of judgments --------------------------------------------------

def test_initial_id():
    for text in (EXAMPLE, "bot", "p -> p"):
        aut, _ = build(parse(text))
        assert initial_id(aut) == ID(q_check(E), E)


def test_judgment_to_id(example):
    aut = example.automaton
    a = judgment_to_id({"x": parse("forall x. P(x)")}, parse("P(X1)"), aut)
    assert a == ID(q_check(N00), N00, ((N0, "X1"),), (), (StoreEntry(N0, (), "x"),), ("X1",))
    assert judgment_to_id({}, parse(EXAMPLE), aut) == initial_id(aut)
    with pytest.raises(NotEmerged):
        judgment_to_id({"x": parse("q")}, parse("p"), build(parse("p -> p")).automaton)


# one derivable judgment per natural-deduction rule; each must be accepted
LEMMA_CASES = [
    ("var", "p -> p", {"x": "p"}, "p"),
    ("→I", "q -> p -> p", {"y": "q"}, "p -> p"),
    ("→E", "(p -> q) -> p -> q", {"f": "p -> q", "a": "p"}, "q"),
    ("∧I", r"p -> q -> p /\ q", {"a": "p", "b": "q"}, r"p /\ q"),
    ("∧E", r"p /\ q -> q", {"x": r"p /\ q"}, "q"),
    ("∨I", r"p -> p \/ q", {"a": "p"}, r"p \/ q"),
    ("∨E", r"p \/ q -> (p -> r) -> (q -> r) -> r",
     {"d": r"p \/ q", "f": "p -> r", "g": "q -> r"}, "r"),
    ("∀I", "(forall x. P(x)) -> forall y. P(y)", {"f": "forall x. P(x)"}, "forall y. P(y)"),
    ("∀E", EXAMPLE, {"x": "forall x. P(x)"}, "P(X1)"),
    ("∃I", "forall y. P(y) -> exists x. P(x)", {"a": "P(X1)"}, "exists x. P(x)"),
    ("∃E", "(exists x. P(x)) -> (forall x. P(x) -> q) -> q",
     {"e": "exists x. P(x)", "k": "forall x. P(x) -> q"}, "q"),
    ("⊥E", "bot -> p", {"z": "bot"}, "p"),
]


@pytest.mark.parametrize("rule, phi, gamma, psi", LEMMA_CASES, ids=[c[0] for c in LEMMA_CASES])
def test_derivable_judgments_are_accepted(rule, phi, gamma, psi):
    aut, _ = build(parse(phi))
    ctx = {x: parse(f) for x, f in gamma.items()}
    run = accepts(aut, judgment_to_id(ctx, parse(psi), aut), Budget(12, 3))
    assert run is not None
    replay(aut, run)
    assert type_check(ctx, extract(run, aut), parse(psi)).ok


def test_corpus_builds_are_well_formed():
    from arcadian.machine import well_formed
    for text in PROVABLE:
        assert well_formed(build(parse(text)).automaton) == []
