from __future__ import annotations

import pytest

from lakepeg.grammar import (
    Any, Choice, GrammarError, Lake, Literal, Nonterminal, Not, Sequence,
    ZeroOrMore, build_grammar, check, seq, validate,
)


def blocks_rules():
    return [
        ("block", False, seq(Literal("{"), ZeroOrMore(Nonterminal("stmt")), Literal("}"))),
        ("stmt", False, Choice(Nonterminal("expr_stmt"), Nonterminal("block"))),
        ("expr_stmt", False, Sequence(ZeroOrMore(Lake("elake")), Literal(";"))),
    ]


def test_blocks_occurrence_numbering():
    g = build_grammar(blocks_rules() + [("elake", True, Not(Any()))])
    kinds = [(e.id, type(e).__name__) for e in g.expressions()]
    assert kinds == [
        (1, "Literal"), (2, "Nonterminal"), (3, "ZeroOrMore"), (4, "Sequence"),
        (5, "Literal"), (6, "Sequence"), (7, "Nonterminal"), (8, "Nonterminal"),
        (9, "Choice"), (10, "Lake"), (11, "ZeroOrMore"), (12, "Literal"),
        (13, "Sequence"), (14, "Any"), (15, "Not"),
    ]
    assert g.rules["block"].expr.id == 6
    assert g.rules["elake"].expr.id == 15


def test_source_grammar_has_thirteen_occurrences_and_an_unruled_lake():
    g = build_grammar(blocks_rules())
    assert len(g.expressions()) == 13
    assert g.start == "block"
    assert g.lakes == ["elake"]
    assert g.nonterminals == {"block", "stmt", "expr_stmt"}


def test_single_rule():
    g = build_grammar([("a", False, Literal("x"))])
    assert g.start == "a"
    assert [e.id for e in g.expressions()] == [1]


def test_duplicate_rule_rejected():
    with pytest.raises(GrammarError, match="duplicate"):
        build_grammar([("a", False, Literal("x")), ("a", False, Literal("y"))])


def test_empty_rule_list_rejected():
    with pytest.raises(GrammarError):
        build_grammar([])


def test_water_cannot_be_a_lake():
    with pytest.raises(GrammarError):
        build_grammar([("water", True, Any())])


def test_ids_do_not_affect_equality():
    a = Sequence(Literal("x", id=3), Literal("y", id=4), id=5)
    b = Sequence(Literal("x"), Literal("y"))
    assert a == b and hash(a) == hash(b)


def test_building_twice_is_deterministic():
    one = build_grammar(blocks_rules())
    two = build_grammar(blocks_rules())
    assert [(e.id, e) for e in one.expressions()] == [(e.id, e) for e in two.expressions()]


def test_blocks_validates_cleanly():
    assert validate(build_grammar(blocks_rules())) == []


def test_direct_left_recursion():
    g = build_grammar([("a", False, Sequence(Nonterminal("a"), Literal("x")))])
    diags = validate(g)
    assert [(d.code, d.symbol) for d in diags] == [("left-recursion", "a")]
    with pytest.raises(GrammarError):
        check(g)


def test_left_recursion_through_nullable_prefix():
    g = build_grammar([
        ("a", False, seq(Nonterminal("b"), Nonterminal("a"), Literal("x"))),
        ("b", False, ZeroOrMore(Literal("y"))),
    ])
    assert any(d.code == "left-recursion" and d.symbol == "a" for d in validate(g))


def test_left_recursion_through_lake_with_water():
    # the water copy inside the lake makes it call `w` first
    g = build_grammar([
        ("s", False, Lake("k")),
        ("water", False, Sequence(Lake("k"), Literal("x"))),
    ])
    assert any(d.code == "left-recursion" for d in validate(g))


def test_undefined_nonterminal():
    g = build_grammar([("a", False, Sequence(Literal("x"), Nonterminal("b")))])
    diags = validate(g)
    assert [(d.severity, d.code, d.symbol) for d in diags] == [("error", "undefined", "b")]


def test_unreachable_rule_is_a_warning():
    g = build_grammar([("a", False, Literal("x")), ("b", False, Literal("y"))])
    diags = validate(g)
    assert [(d.severity, d.code, d.symbol) for d in diags] == [("warning", "unreachable", "b")]
    check(g)


def test_water_is_reachable_through_lakes():
    g = build_grammar([("a", False, Lake("k")), ("water", False, Literal("y"))])
    assert validate(g) == []


def test_name_used_as_lake_and_nonterminal():
    g = build_grammar([("a", False, Sequence(Nonterminal("b"), Lake("b"))),
                       ("b", False, Literal("x"))])
    assert any(d.code == "vocabulary" for d in validate(g))
