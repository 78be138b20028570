"""Independent reference implementations used as test oracles.

``naive_parse`` is a plain backtracking PEG interpreter with no memo table.
It shares only the expression classes with the library; trees come back as
nested tuples so the comparison does not depend on the library's tree types.
"""

from __future__ import annotations

import random

from lakepeg.grammar import (
    And, Any, CharClass, Choice, Expr, Grammar, Literal, Lake, Nonterminal, Not,
    OneOrMore, Optional, Sequence, ZeroOrMore, build_grammar,
)
from lakepeg.packrat import Leaf, Node


def naive_parse(g: Grammar, text: str, start: str | None = None):
    """Return ``(end, tree)`` for a prefix match of ``start``, or None."""
    bodies = {name: r.expr for name, r in g.rules.items()}
    lakes = {name for name, r in g.rules.items() if r.lake}

    def run(e: Expr, pos: int):
        if isinstance(e, Literal):
            if text[pos:pos + len(e.text)] == e.text:
                return pos + len(e.text), [("leaf", pos, pos + len(e.text))]
            return None
        if isinstance(e, (CharClass, Any)):
            if pos >= len(text):
                return None
            if isinstance(e, CharClass):
                hit = any(lo <= text[pos] <= hi for lo, hi in e.ranges)
                if hit == e.negated:
                    return None
            return pos + 1, [("leaf", pos, pos + 1)]
        if isinstance(e, Nonterminal):
            r = run(bodies[e.name], pos)
            if r is None:
                return None
            kids = tuple(r[1]) if r[0] > pos else ()
            return r[0], [("node", e.name, e.name in lakes, pos, r[0], kids)]
        if isinstance(e, Sequence):
            a = run(e.left, pos)
            if a is None:
                return None
            b = run(e.right, a[0])
            if b is None:
                return None
            return b[0], a[1] + b[1]
        if isinstance(e, Choice):
            a = run(e.left, pos)
            return a if a is not None else run(e.right, pos)
        if isinstance(e, (ZeroOrMore, OneOrMore)):
            out = []
            if isinstance(e, OneOrMore):
                first = run(e.child, pos)
                if first is None:
                    return None
                pos, out = first[0], list(first[1])
            while True:
                r = run(e.child, pos)
                if r is None or r[0] == pos:
                    return pos, out
                pos = r[0]
                out += r[1]
        if isinstance(e, Optional):
            r = run(e.child, pos)
            return r if r is not None else (pos, [])
        if isinstance(e, Not):
            return (pos, []) if run(e.child, pos) is None else None
        if isinstance(e, And):
            return (pos, []) if run(e.child, pos) is not None else None
        raise TypeError(type(e).__name__)

    r = run(Nonterminal(start or g.start), 0)
    if r is None:
        return None
    return r[0], r[1][0]


def tree_shape(tree):
    """Library tree converted to the oracle's tuple form."""
    if isinstance(tree, Leaf):
        return ("leaf", tree.start, tree.end)
    assert isinstance(tree, Node)
    return ("node", tree.symbol, tree.lake, tree.start, tree.end,
            tuple(tree_shape(c) for c in tree.children))


# -- random grammars ---------------------------------------------------------

_TERMINALS = [Literal("a"), Literal("b"), Literal(";"), Literal("{"), Literal("}"),
              Literal("ab"), CharClass((("0", "9"),)), CharClass((("x", "x"),), True), Any()]


def random_expr(rng: random.Random, names: list[str], lakes: list[str], depth: int) -> Expr:
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.45:
            return rng.choice(_TERMINALS)
        if roll < 0.75:
            return Nonterminal(rng.choice(names))
        return Lake(rng.choice(lakes))
    op = rng.choice(["seq", "seq", "choice", "choice", "star", "plus", "opt", "not", "and"])
    if op in ("seq", "choice"):
        left = random_expr(rng, names, lakes, depth - 1)
        right = random_expr(rng, names, lakes, depth - 1)
        return Sequence(left, right) if op == "seq" else Choice(left, right)
    child = random_expr(rng, names, lakes, depth - 1)
    return {"star": ZeroOrMore, "plus": OneOrMore, "opt": Optional,
            "not": Not, "and": And}[op](child)


def random_grammar(rng: random.Random, max_rules: int = 10, max_depth: int = 4) -> Grammar:
    """Random extended grammar: 1..max_rules rules, at least one lake symbol in use."""
    n = rng.randint(1, max_rules)
    names = [f"r{i}" for i in range(n)]
    lakes = [f"k{i}" for i in range(rng.randint(1, 3))]
    ruled_lakes = [k for k in lakes if rng.random() < 0.5]
    rules = [(name, False, random_expr(rng, names, lakes, max_depth)) for name in names]
    rules += [(k, True, random_expr(rng, names, lakes, max_depth)) for k in ruled_lakes]
    # guarantee a lake reference
    name, flag, body = rules[0]
    rules[0] = (name, flag, Sequence(body, ZeroOrMore(Lake(lakes[0]))))
    if rng.random() < 0.3:
        rules.append(("water", False, random_expr(rng, names, lakes, 2)))
    return build_grammar(rules)


def random_input(rng: random.Random, alphabet: str, max_len: int = 64) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def translatable_grammars(seed: int, count: int):
    """Yield ``count`` random grammars that translate without errors, with their output."""
    from lakepeg.grammar import GrammarError
    from lakepeg.lowering import translate

    rng = random.Random(seed)
    produced = 0
    while produced < count:
        g = random_grammar(rng)
        try:
            normal, report = translate(g)
        except GrammarError:
            continue
        produced += 1
        yield g, normal, report
