"""Memoizing PEG interpreter producing labelled parse trees."""

from __future__ import annotations

import json
import sys
import threading
from dataclasses import dataclass
from typing import Iterator, Union

from .grammar import (
    NORMAL, And, Any, CharClass, Choice, Expr, Grammar, Lake, Literal,
    Nonterminal, Not, OneOrMore, Optional, Sequence, ZeroOrMore,
)
from .text import format_expr

__all__ = [
    "Node", "Leaf", "ParseTree", "ParseError", "PackratParser", "parse",
    "to_json", "tree_to_dict", "count_islands", "iter_nodes", "line_column",
]


@dataclass(frozen=True)
class Leaf:
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class Node:
    symbol: str
    start: int
    end: int
    children: tuple[ParseTree, ...] = ()
    lake: bool = False


ParseTree = Union[Node, Leaf]


def line_column(text: str, offset: int) -> tuple[int, int]:
    """1-based line and column of a character offset."""
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


class ParseError(Exception):
    """The input does not match; reports the farthest offset any terminal was tried at."""

    def __init__(self, text: str, offset: int, expected: list[str]):
        self.offset = offset
        self.expected = expected
        self.line, self.column = line_column(text, offset)
        found = repr(text[offset]) if offset < len(text) else "end of input"
        want = ", ".join(expected) if expected else "end of input"
        super().__init__(f"at line {self.line}, column {self.column} (offset {offset}): "
                         f"expected {want}, found {found}")


# Recursion depth grows with input nesting; run parses on a thread whose
# stack is large enough for a matching recursion limit.
_STACK_BYTES = 512 * 1024 * 1024
_RECURSION_LIMIT = 200_000


def _deep_call(func, *args):
    outcome: dict[str, object] = {}

    def target():
        try:
            outcome["value"] = func(*args)
        except BaseException as exc:  # re-raised on the calling thread
            outcome["error"] = exc

    # the recursion limit is process-wide; it is raised and left raised so
    # that concurrent parses never see it drop underneath them
    if sys.getrecursionlimit() < _RECURSION_LIMIT:
        sys.setrecursionlimit(_RECURSION_LIMIT)
    with _deep_lock:
        old_stack = threading.stack_size(_STACK_BYTES)
        try:
            worker = threading.Thread(target=target)
            worker.start()
        finally:
            threading.stack_size(old_stack)
    worker.join()
    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]


_deep_lock = threading.Lock()


class PackratParser:
    """Packrat interpreter over a normal grammar.

    Every expression occurrence is memoized per input offset, so each
    ``(occurrence, offset)`` cell is evaluated at most once per parse.
    Repetitions stop when an iteration succeeds without consuming input.
    """

    def __init__(self, grammar: Grammar):
        if grammar.stage != NORMAL and any(isinstance(e, Lake) for e in grammar.expressions()):
            raise ValueError("grammar still contains lake symbols; translate it first")
        self.grammar = grammar
        self._bodies = {name: r.expr for name, r in grammar.rules.items()}
        self._lake_rules = {name for name, r in grammar.rules.items() if r.lake}
        self._dispatch = {
            Literal: self._literal, CharClass: self._char_class, Any: self._any,
            Nonterminal: self._nonterminal, Sequence: self._sequence,
            Choice: self._choice, ZeroOrMore: self._zero_or_more,
            OneOrMore: self._one_or_more, Optional: self._optional,
            Not: self._not, And: self._and,
        }
        self.evaluations = 0

    def parse(self, text: str, start: str | None = None, prefix: bool = False) -> Node:
        start = start or self.grammar.start
        if start not in self._bodies:
            raise KeyError(f"unknown start symbol '{start}'")
        self._text = text
        self._memo: dict[tuple[int, int], tuple[int, tuple] | None] = {}
        self._far = 0
        self._expected: set[str] = set()
        self.evaluations = 0
        result = _deep_call(self._nonterminal, Nonterminal(start, id=-1), 0)
        if result is None:
            raise ParseError(text, self._far, sorted(self._expected))
        end, (tree,) = result
        if end != len(text) and not prefix:
            if self._far > end:
                raise ParseError(text, self._far, sorted(self._expected))
            expected = sorted(self._expected) if self._far == end else []
            raise ParseError(text, end, expected)
        return tree

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def _eval(self, e: Expr, pos: int):
        key = (e.id, pos)
        try:
            return self._memo[key]
        except KeyError:
            pass
        self.evaluations += 1
        result = self._dispatch[type(e)](e, pos)
        self._memo[key] = result
        return result

    def _fail(self, e: Expr, pos: int) -> None:
        if pos > self._far:
            self._far = pos
            self._expected = {format_expr(e)}
        elif pos == self._far:
            self._expected.add(format_expr(e))
        return None

    def _literal(self, e: Literal, pos: int):
        if self._text.startswith(e.text, pos):
            end = pos + len(e.text)
            return end, (Leaf(e.text, pos, end),)
        return self._fail(e, pos)

    def _char_class(self, e: CharClass, pos: int):
        if pos < len(self._text) and e.matches(self._text[pos]):
            return pos + 1, (Leaf(self._text[pos], pos, pos + 1),)
        return self._fail(e, pos)

    def _any(self, e: Any, pos: int):
        if pos < len(self._text):
            return pos + 1, (Leaf(self._text[pos], pos, pos + 1),)
        return self._fail(e, pos)

    def _nonterminal(self, e: Nonterminal, pos: int):
        result = self._eval(self._bodies[e.name], pos)
        if result is None:
            return None
        end, children = result
        if end == pos:
            # an empty match is a bare node, whatever empty calls it made
            children = ()
        lake = e.name in self._lake_rules
        return end, (Node(e.name, pos, end, children, lake),)

    def _sequence(self, e: Sequence, pos: int):
        first = self._eval(e.left, pos)
        if first is None:
            return None
        second = self._eval(e.right, first[0])
        if second is None:
            return None
        return second[0], first[1] + second[1]

    def _choice(self, e: Choice, pos: int):
        result = self._eval(e.left, pos)
        if result is not None:
            return result
        return self._eval(e.right, pos)

    def _repeat(self, child: Expr, pos: int, trees: list):
        while True:
            result = self._eval(child, pos)
            if result is None or result[0] == pos:
                return pos, tuple(trees)
            pos = result[0]
            trees.extend(result[1])

    def _zero_or_more(self, e: ZeroOrMore, pos: int):
        return self._repeat(e.child, pos, [])

    def _one_or_more(self, e: OneOrMore, pos: int):
        first = self._eval(e.child, pos)
        if first is None:
            return None
        return self._repeat(e.child, first[0], list(first[1]))

    def _optional(self, e: Optional, pos: int):
        result = self._eval(e.child, pos)
        return result if result is not None else (pos, ())

    def _not(self, e: Not, pos: int):
        return None if self._eval(e.child, pos) is not None else (pos, ())

    def _and(self, e: And, pos: int):
        return (pos, ()) if self._eval(e.child, pos) is not None else None


def parse(g: Grammar, text: str, start: str | None = None, prefix: bool = False) -> Node:
    """Parse ``text`` with a normal grammar; raises :class:`ParseError` on failure."""
    return PackratParser(g).parse(text, start, prefix)


def tree_to_dict(tree: ParseTree) -> dict:
    if isinstance(tree, Leaf):
        return {"text": tree.text, "start": tree.start, "end": tree.end}
    return {
        "symbol": tree.symbol,
        "lake": tree.lake,
        "start": tree.start,
        "end": tree.end,
        "children": [tree_to_dict(c) for c in tree.children],
    }


def to_json(tree: ParseTree, indent: int | None = None) -> str:
    separators = (",", ":") if indent is None else None
    return json.dumps(tree_to_dict(tree), ensure_ascii=False, indent=indent,
                      separators=separators)


def iter_nodes(tree: ParseTree) -> Iterator[ParseTree]:
    yield tree
    if isinstance(tree, Node):
        for child in tree.children:
            yield from iter_nodes(child)


def count_islands(tree: ParseTree, symbol: str) -> int:
    """Interior nodes labelled ``symbol``, nested ones included."""
    return sum(1 for n in iter_nodes(tree) if isinstance(n, Node) and n.symbol == symbol)
