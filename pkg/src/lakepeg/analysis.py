"""BEGINNING, SUCCEED and ALT tables for every expression occurrence.

All three are computed by chaotic (Gauss-Seidel) fixed-point iteration over
the occurrences of an intermediate grammar.  A pass visits every occurrence
once, updating sets in place; iteration stops after the first pass that
changes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence as SequenceT

from .grammar import (
    TERMINALS, And, Choice, Expr, Grammar, Lake, Nonterminal, Not, OneOrMore,
    Optional, Sequence, ZeroOrMore, strip_ids,
)
from .text import format_expr

__all__ = [
    "SymbolItem", "Terminal", "NonterminalRef", "LakeRef", "Epsilon", "EPSILON",
    "AnalysisTables", "compute_beginning", "compute_succeed", "compute_alt",
    "analyze", "format_set", "pass_bound",
]


class SymbolItem:
    """Element of an analysis set."""

    rank = 0

    def sort_key(self) -> tuple[int, str]:
        return (self.rank, str(self))


@dataclass(frozen=True)
class Epsilon(SymbolItem):
    rank = 0

    def __str__(self) -> str:
        return "ε"


@dataclass(frozen=True)
class NonterminalRef(SymbolItem):
    name: str
    rank = 1

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Terminal(SymbolItem):
    form: Expr  # Literal, CharClass or Any, ids stripped
    rank = 2

    def __str__(self) -> str:
        return format_expr(self.form)


@dataclass(frozen=True)
class LakeRef(SymbolItem):
    name: str
    rank = 3

    def __str__(self) -> str:
        return f"<{self.name}>"


EPSILON = Epsilon()

Table = dict[int, frozenset]


def ordered(items: Iterable[SymbolItem]) -> list[SymbolItem]:
    """Deterministic order: ε, nonterminals, terminals, lakes; by text within a kind."""
    return sorted(items, key=SymbolItem.sort_key)


def format_set(items: Iterable[SymbolItem]) -> str:
    return "{" + ", ".join(str(s) for s in ordered(items)) + "}"


def _symbol(e: Expr) -> SymbolItem:
    if isinstance(e, Lake):
        return LakeRef(e.name)
    if isinstance(e, Nonterminal):
        return LakeRef(e.name) if e.lake else NonterminalRef(e.name)
    return Terminal(strip_ids(e))


def pass_bound(g: Grammar) -> int:
    """Upper bound on passes: |E| * (|V_N| + |V_L| + |V_T|)."""
    vocab = len(g.nonterminals) + len(g.lakes) + len(g.terminal_forms())
    return len(g.expressions()) * vocab


@dataclass
class AnalysisTables:
    beginning: Table
    succeed: Table
    alt: Table
    # passes run per table, including the final pass that changed nothing
    passes: dict[str, int]
    history: dict[str, list[Table]] = field(default_factory=dict)

    @property
    def iterations(self) -> dict[str, int]:
        """Passes that changed at least one set."""
        return {k: v - 1 for k, v in self.passes.items()}


class _Context:
    def __init__(self, g: Grammar, order: SequenceT[int] | None):
        self.exprs = g.expressions()
        by_id = {e.id: e for e in self.exprs}
        self.order = [by_id[i] for i in order] if order is not None else self.exprs
        if sorted(e.id for e in self.order) != sorted(by_id):
            raise ValueError("order must be a permutation of the occurrence ids")
        self.bodies = {name: r.expr for name, r in g.rules.items()}

    def body(self, e: Expr) -> Expr | None:
        """Rule body for a nonterminal or lake occurrence, else None."""
        if isinstance(e, (Nonterminal, Lake)):
            return self.bodies.get(e.name)
        return None

    def run(self, name: str, step: Callable[[Expr, dict[int, set]], bool],
            tables: AnalysisTables | None, record: bool) -> tuple[Table, int]:
        sets: dict[int, set] = {e.id: set() for e in self.exprs}
        snapshots = []
        passes = 0
        while True:
            passes += 1
            changed = False
            for e in self.order:
                changed |= step(e, sets)
            if record:
                snapshots.append({k: frozenset(v) for k, v in sets.items()})
            if not changed:
                break
        if tables is not None and record:
            tables.history[name] = snapshots
        return {k: frozenset(v) for k, v in sets.items()}, passes


def _assign(sets: dict[int, set], key: int, value: set) -> bool:
    if sets[key] == value:
        return False
    sets[key] = set(value)
    return True


def _merge(sets: dict[int, set], key: int, value: Iterable) -> bool:
    before = len(sets[key])
    sets[key].update(value)
    return len(sets[key]) != before


def _beginning_step(ctx: _Context) -> Callable:
    eps = {EPSILON}

    def step(e: Expr, B: dict[int, set]) -> bool:
        if isinstance(e, TERMINALS):
            return _assign(B, e.id, {_symbol(e)})
        body = ctx.body(e)
        if body is not None:
            # a reference to a nullable rule is itself nullable
            return _assign(B, e.id, {_symbol(e)} | (eps & B[body.id]))
        if isinstance(e, (Optional, ZeroOrMore)):
            return _assign(B, e.id, B[e.child.id] | eps)
        if isinstance(e, OneOrMore):
            return _assign(B, e.id, set(B[e.child.id]))
        if isinstance(e, (Not, And)):
            return _assign(B, e.id, set(eps))
        if isinstance(e, Choice):
            return _assign(B, e.id, B[e.left.id] | B[e.right.id])
        if isinstance(e, Sequence):
            left = B[e.left.id]
            if EPSILON in left:
                return _assign(B, e.id, (left - eps) | B[e.right.id])
            return _assign(B, e.id, set(left))
        return False

    return step


def _succeed_step(ctx: _Context, B: Table) -> Callable:
    eps = {EPSILON}

    def step(e: Expr, S: dict[int, set]) -> bool:
        if isinstance(e, TERMINALS):
            return False
        body = ctx.body(e)
        if body is not None:
            return _merge(S, body.id, S[e.id])
        if isinstance(e, Optional):
            return _assign(S, e.child.id, S[e.id])
        if isinstance(e, (ZeroOrMore, OneOrMore)):
            return _assign(S, e.child.id, (S[e.id] | B[e.id]) - eps)
        if isinstance(e, (Not, And)):
            return _assign(S, e.child.id, set())
        if isinstance(e, Choice):
            a = _assign(S, e.left.id, S[e.id])
            b = _assign(S, e.right.id, S[e.id])
            return a or b
        if isinstance(e, Sequence):
            changed = _assign(S, e.right.id, S[e.id])
            follow = B[e.right.id]
            if EPSILON in follow:
                return _assign(S, e.left.id, (follow - eps) | S[e.right.id]) or changed
            return _assign(S, e.left.id, set(follow)) or changed
        return False

    return step


def _alt_step(ctx: _Context, B: Table, S: Table) -> Callable:
    eps = {EPSILON}

    def step(e: Expr, A: dict[int, set]) -> bool:
        if isinstance(e, TERMINALS):
            return False
        body = ctx.body(e)
        if body is not None:
            return _merge(A, body.id, A[e.id])
        if isinstance(e, (ZeroOrMore, OneOrMore, Optional)):
            return _assign(A, e.child.id, A[e.id] | S[e.id])
        if isinstance(e, Not):
            return _assign(A, e.child.id, set(S[e.id]))
        if isinstance(e, And):
            return _assign(A, e.child.id, A[e.id])
        if isinstance(e, Choice):
            changed = _assign(A, e.right.id, A[e.id])
            second = B[e.right.id]
            if EPSILON in second:
                value = A[e.id] | (second - eps) | S[e.right.id]
            else:
                value = A[e.id] | second
            return _assign(A, e.left.id, value) or changed
        if isinstance(e, Sequence):
            changed = _assign(A, e.left.id, A[e.id])
            value = A[e.id] if EPSILON in B[e.left.id] else set()
            return _assign(A, e.right.id, value) or changed
        return False

    return step


def compute_beginning(g: Grammar, order: SequenceT[int] | None = None) -> Table:
    ctx = _Context(g, order)
    return ctx.run("beginning", _beginning_step(ctx), None, False)[0]


def compute_succeed(g: Grammar, beginning: Table, order: SequenceT[int] | None = None) -> Table:
    ctx = _Context(g, order)
    return ctx.run("succeed", _succeed_step(ctx, beginning), None, False)[0]


def compute_alt(g: Grammar, beginning: Table, succeed: Table,
                order: SequenceT[int] | None = None) -> Table:
    ctx = _Context(g, order)
    return ctx.run("alt", _alt_step(ctx, beginning, succeed), None, False)[0]


def analyze(g: Grammar, order: SequenceT[int] | None = None, record: bool = False) -> AnalysisTables:
    """Compute all three tables; ``record`` keeps a snapshot after every pass."""
    ctx = _Context(g, order)
    tables = AnalysisTables({}, {}, {}, {})
    tables.beginning, tables.passes["beginning"] = ctx.run(
        "beginning", _beginning_step(ctx), tables, record)
    tables.succeed, tables.passes["succeed"] = ctx.run(
        "succeed", _succeed_step(ctx, tables.beginning), tables, record)
    tables.alt, tables.passes["alt"] = ctx.run(
        "alt", _alt_step(ctx, tables.beginning, tables.succeed), tables, record)
    return tables
