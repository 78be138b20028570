"""In-memory model of extended, intermediate and normal PEGs.

Every expression node carries an occurrence id.  Ids are excluded from
equality and hashing, so two nodes compare equal when they are structurally
identical regardless of where they occur.  Ids are assigned in post-order
(operands before the operator, left to right), rule by rule, starting at 1.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterator, Sequence as SequenceT

__all__ = [
    "Expr", "Literal", "CharClass", "Any", "Nonterminal", "Lake",
    "Sequence", "Choice", "ZeroOrMore", "OneOrMore", "Optional", "Not", "And",
    "TERMINALS", "seq", "choice", "Rule", "Grammar", "Diagnostic",
    "GrammarError", "build_grammar", "validate", "nullable_symbols",
    "iter_postorder", "renumber",
]

WATER = "water"

EXTENDED = "extended"
INTERMEDIATE = "intermediate"
NORMAL = "normal"


@dataclass(frozen=True)
class Expr:
    id: int = field(default=0, compare=False, repr=False, kw_only=True)

    def children(self) -> tuple[Expr, ...]:
        return ()

    def rebuild(self, children: SequenceT[Expr], id: int = 0) -> Expr:
        return dataclasses.replace(self, id=id)


@dataclass(frozen=True)
class Literal(Expr):
    text: str


@dataclass(frozen=True)
class CharClass(Expr):
    ranges: tuple[tuple[str, str], ...]
    negated: bool = False

    def matches(self, ch: str) -> bool:
        inside = any(lo <= ch <= hi for lo, hi in self.ranges)
        return inside != self.negated


@dataclass(frozen=True)
class Any(Expr):
    pass


@dataclass(frozen=True)
class Nonterminal(Expr):
    name: str
    # set on references to lowered lake symbols in a normal grammar
    lake: bool = False


@dataclass(frozen=True)
class Lake(Expr):
    name: str


@dataclass(frozen=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.left, self.right)

    def rebuild(self, children, id=0):
        left, right = children
        return dataclasses.replace(self, left=left, right=right, id=id)


@dataclass(frozen=True)
class Sequence(_Binary):
    pass


@dataclass(frozen=True)
class Choice(_Binary):
    pass


@dataclass(frozen=True)
class _Unary(Expr):
    child: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.child,)

    def rebuild(self, children, id=0):
        (child,) = children
        return dataclasses.replace(self, child=child, id=id)


@dataclass(frozen=True)
class ZeroOrMore(_Unary):
    pass


@dataclass(frozen=True)
class OneOrMore(_Unary):
    pass


@dataclass(frozen=True)
class Optional(_Unary):
    pass


@dataclass(frozen=True)
class Not(_Unary):
    pass


@dataclass(frozen=True)
class And(_Unary):
    pass


TERMINALS = (Literal, CharClass, Any)


def seq(*items: Expr) -> Expr:
    """Left-associated sequence of one or more expressions."""
    if not items:
        raise ValueError("empty sequence")
    out = items[0]
    for item in items[1:]:
        out = Sequence(out, item)
    return out


def choice(*items: Expr) -> Expr:
    """Left-associated prioritized choice of one or more expressions."""
    if not items:
        raise ValueError("empty choice")
    out = items[0]
    for item in items[1:]:
        out = Choice(out, item)
    return out


def iter_postorder(expr: Expr) -> Iterator[Expr]:
    for child in expr.children():
        yield from iter_postorder(child)
    yield expr


def renumber(expr: Expr, first: int) -> tuple[Expr, int]:
    """Return a copy of ``expr`` with post-order ids starting at ``first``."""
    kids = []
    for child in expr.children():
        child, first = renumber(child, first)
        kids.append(child)
    return expr.rebuild(kids, id=first), first + 1


def strip_ids(expr: Expr) -> Expr:
    return expr.rebuild([strip_ids(c) for c in expr.children()], id=0)


@dataclass(frozen=True)
class Rule:
    name: str
    expr: Expr
    lake: bool = False
    # lake rule synthesised for a lake symbol that had no rule of its own
    implicit: bool = False
    # the last choice alternative (or whole body, if implicit) is a copy of the water
    water_tail: bool = False


class GrammarError(Exception):
    """Raised for structurally invalid grammars."""

    def __init__(self, message: str, diagnostics: SequenceT[Diagnostic] = ()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    code: str
    symbol: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.message}"


@dataclass(frozen=True)
class Grammar:
    """A PEG, possibly with lake symbols.

    ``stage`` is one of ``"extended"`` (as written), ``"intermediate"`` (water
    inserted into every lake rule) or ``"normal"`` (lakes lowered; ``lake``
    flags only record where a rule came from).
    """

    rules: dict[str, Rule]
    start: str
    stage: str = EXTENDED

    @property
    def water(self) -> Expr | None:
        rule = self.rules.get(WATER)
        return rule.expr if rule is not None else None

    @property
    def has_lake_semantics(self) -> bool:
        return self.stage != NORMAL

    @property
    def nonterminals(self) -> set[str]:
        return {r.name for r in self.rules.values() if not r.lake}

    @property
    def lakes(self) -> list[str]:
        """Lake names: ruled lakes in rule order, then unruled ones by first use."""
        if not self.has_lake_semantics:
            return []
        names = [r.name for r in self.rules.values() if r.lake]
        for e in self.expressions():
            if isinstance(e, Lake) and e.name not in names:
                names.append(e.name)
        return names

    def rule_of(self, name: str) -> Rule | None:
        return self.rules.get(name)

    def expressions(self) -> list[Expr]:
        """All expression occurrences, in id order."""
        out: list[Expr] = []
        for rule in self.rules.values():
            out.extend(iter_postorder(rule.expr))
        return out

    def owners(self) -> dict[int, str]:
        return {e.id: r.name for r in self.rules.values() for e in iter_postorder(r.expr)}

    def terminal_forms(self) -> set[Expr]:
        return {strip_ids(e) for e in self.expressions() if isinstance(e, TERMINALS)}

    def with_rules(self, rules: SequenceT[Rule], stage: str | None = None) -> Grammar:
        return _assemble(rules, self.start, stage or self.stage)


def _assemble(rules: SequenceT[Rule], start: str, stage: str) -> Grammar:
    table: dict[str, Rule] = {}
    next_id = 1
    for rule in rules:
        expr, next_id = renumber(rule.expr, next_id)
        table[rule.name] = dataclasses.replace(rule, expr=expr)
    return Grammar(table, start, stage)


def build_grammar(
    rules: SequenceT[tuple[str, bool, Expr]],
    start: str | None = None,
    stage: str = EXTENDED,
) -> Grammar:
    """Build a grammar from ``(name, is_lake, expr)`` triples.

    The start symbol defaults to the first rule.  A rule named ``water`` holds
    the global water expression; it stays an ordinary, referenceable rule.
    """
    if not rules:
        raise GrammarError("grammar has no rules")
    seen: set[str] = set()
    built = []
    for name, is_lake, expr in rules:
        if name in seen:
            raise GrammarError(f"duplicate rule {_show(name, is_lake)}")
        if name == WATER and is_lake:
            raise GrammarError("'water' is reserved and cannot be a lake")
        seen.add(name)
        built.append(Rule(name, expr, lake=is_lake))
    return _assemble(built, start or rules[0][0], stage)


def _show(name: str, lake: bool) -> str:
    return f"<{name}>" if lake else name


def effective_bodies(g: Grammar) -> dict[str, Expr]:
    """Rule bodies as they behave at parse time (water folded into lakes)."""
    bodies = {name: r.expr for name, r in g.rules.items()}
    if g.stage != EXTENDED:
        return bodies
    water = g.water if g.water is not None else Not(Any())
    for name, rule in g.rules.items():
        if rule.lake:
            bodies[name] = Choice(rule.expr, water)
    for name in g.lakes:
        bodies.setdefault(name, water)
    return bodies


def _ref_name(e: Expr) -> str | None:
    if isinstance(e, (Nonterminal, Lake)):
        return e.name
    return None


def nullable_symbols(bodies: dict[str, Expr]) -> set[str]:
    """Symbols whose body can succeed without consuming input."""
    result: set[str] = set()
    changed = True
    while changed:
        changed = False
        for name, body in bodies.items():
            if name not in result and expr_nullable(body, result):
                result.add(name)
                changed = True
    return result


def expr_nullable(e: Expr, nullable: set[str]) -> bool:
    if isinstance(e, TERMINALS):
        return False
    if isinstance(e, (Nonterminal, Lake)):
        return e.name in nullable
    if isinstance(e, Sequence):
        return expr_nullable(e.left, nullable) and expr_nullable(e.right, nullable)
    if isinstance(e, Choice):
        return expr_nullable(e.left, nullable) or expr_nullable(e.right, nullable)
    if isinstance(e, OneOrMore):
        return expr_nullable(e.child, nullable)
    return True  # ZeroOrMore, Optional, Not, And


def _leading_calls(e: Expr, nullable: set[str]) -> set[str]:
    """Symbols that ``e`` may invoke at its own start position."""
    name = _ref_name(e)
    if name is not None:
        return {name}
    if isinstance(e, Sequence):
        calls = _leading_calls(e.left, nullable)
        if expr_nullable(e.left, nullable):
            calls |= _leading_calls(e.right, nullable)
        return calls
    if isinstance(e, Choice):
        return _leading_calls(e.left, nullable) | _leading_calls(e.right, nullable)
    out: set[str] = set()
    for child in e.children():  # predicates evaluate their operand in place
        out |= _leading_calls(child, nullable)
    return out


def _left_recursive(bodies: dict[str, Expr]) -> list[str]:
    nullable = nullable_symbols(bodies)
    edges = {n: _leading_calls(b, nullable) & bodies.keys() for n, b in bodies.items()}
    found = []
    for name in bodies:
        stack, seen = list(edges[name]), set()
        while stack:
            cur = stack.pop()
            if cur == name:
                found.append(name)
                break
            if cur not in seen:
                seen.add(cur)
                stack.extend(edges[cur])
    return found


def validate(g: Grammar) -> list[Diagnostic]:
    """Report undefined symbols, left recursion (errors) and unreachable rules."""
    diags: list[Diagnostic] = []
    lake_refs = {e.name for e in g.expressions() if isinstance(e, Lake)}
    lake_rules = {r.name for r in g.rules.values() if r.lake}
    if g.has_lake_semantics:
        for name in sorted(g.nonterminals & (lake_refs | lake_rules)):
            diags.append(Diagnostic("error", "vocabulary", name,
                                    f"'{name}' is used both as a nonterminal and as a lake"))

    referenced = {e.name for e in g.expressions() if isinstance(e, Nonterminal)}
    if g.start not in g.rules:
        diags.append(Diagnostic("error", "undefined", g.start,
                                f"start symbol '{g.start}' has no rule"))
    lakes = set(g.lakes)
    for name in sorted(referenced - g.rules.keys() - lakes):
        diags.append(Diagnostic("error", "undefined", name,
                                f"undefined nonterminal '{name}'"))
    if any(d.severity == "error" for d in diags):
        return diags

    bodies = effective_bodies(g)
    for name in _left_recursive(bodies):
        shown = _show(name, name in lakes)
        diags.append(Diagnostic("error", "left-recursion", name,
                                f"left recursion on {shown}"))

    reachable = {g.start}
    todo = [g.start]
    while todo:
        body = bodies.get(todo.pop())
        if body is None:
            continue
        for e in iter_postorder(body):
            name = _ref_name(e)
            if name is not None and name not in reachable:
                reachable.add(name)
                todo.append(name)
    for name, rule in g.rules.items():
        if name not in reachable and not (name == WATER and lakes & reachable):
            diags.append(Diagnostic("warning", "unreachable", name,
                                    f"rule {_show(name, rule.lake)} is unreachable"))
    return diags


def check(g: Grammar) -> Grammar:
    """Validate ``g`` and raise :class:`GrammarError` on any error diagnostic."""
    errors = [d for d in validate(g) if d.severity == "error"]
    if errors:
        raise GrammarError("; ".join(d.message for d in errors), errors)
    return g
