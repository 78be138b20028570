"""Lowering of lake symbols to plain PEG.

Step one appends the global water expression to every lake rule (and gives
unruled lakes a rule made of water alone).  Step two appends a wildcard
guarded by a not-predicate over the lake's alternative symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import (
    EPSILON, AnalysisTables, LakeRef, NonterminalRef, SymbolItem, Terminal,
    analyze, ordered,
)
from .grammar import (
    EXTENDED, INTERMEDIATE, NORMAL, Any, Choice, Expr, Grammar, GrammarError,
    Lake, Nonterminal, Not, Rule, Sequence, check, choice, strip_ids,
)

__all__ = [
    "EpsilonWarning", "LoweringReport", "insert_water", "lower_lakes",
    "check_epsilon_alternatives", "translate",
]


@dataclass(frozen=True)
class EpsilonWarning:
    lake: str
    symbol: str

    def __str__(self) -> str:
        return (f"warning: <{self.lake}> has alternative symbol {self.symbol} "
                f"which can match the empty string; its wildcard can never match")


@dataclass
class LoweringReport:
    lakes: list[str]
    alternatives: dict[str, list[SymbolItem]]
    warnings: list[EpsilonWarning] = field(default_factory=list)
    tables: AnalysisTables | None = field(default=None, repr=False)

    @property
    def alt_total(self) -> int:
        return sum(len(v) for v in self.alternatives.values())

    def to_dict(self) -> dict:
        return {
            "lakes": [
                {"lake": name, "alternatives": [str(s) for s in self.alternatives[name]]}
                for name in self.lakes
            ],
            "warnings": [{"lake": w.lake, "symbol": w.symbol} for w in self.warnings],
        }

    def to_text(self) -> str:
        lines = [f"<{name}>: " + " / ".join(str(s) for s in self.alternatives[name])
                 for name in self.lakes]
        lines.extend(str(w) for w in self.warnings)
        return "\n".join(lines)


def _default_water() -> Expr:
    return Not(Any())


def insert_water(g: Grammar) -> Grammar:
    """Append the water expression to every lake rule; define unruled lakes as water."""
    if g.stage != EXTENDED:
        return g
    water = g.water if g.water is not None else _default_water()
    rules = []
    for rule in g.rules.values():
        if rule.lake:
            rule = Rule(rule.name, Choice(rule.expr, water), lake=True, water_tail=True)
        rules.append(rule)
    for name in g.lakes:
        if name not in g.rules:
            rules.append(Rule(name, water, lake=True, implicit=True, water_tail=True))
    return g.with_rules(rules, INTERMEDIATE)


def _to_normal(e: Expr) -> Expr:
    if isinstance(e, Lake):
        return Nonterminal(e.name, lake=True)
    return e.rebuild([_to_normal(c) for c in e.children()])


def _symbol_expr(item: SymbolItem) -> Expr:
    if isinstance(item, Terminal):
        return strip_ids(item.form)
    if isinstance(item, NonterminalRef):
        return Nonterminal(item.name)
    if isinstance(item, LakeRef):
        return Nonterminal(item.name, lake=True)
    raise ValueError(f"{item} cannot appear in a lowered predicate")


def _guard(alternatives: list[SymbolItem], e: Expr) -> Expr:
    if not alternatives:
        return e
    return Sequence(Not(choice(*map(_symbol_expr, alternatives))), e)


def lower_lakes(gi: Grammar, tables: AnalysisTables) -> tuple[Grammar, LoweringReport]:
    """Rewrite each lake rule ``<X> <- e`` into ``<X> <- e / !(s1 / ... / sn) .``.

    The ``s_i`` are the members of ALT(e).  When the grammar defines its own
    water, the water copy inside the lake is put behind the same guard, so a
    water alternative can never swallow one of the lake's alternative symbols.
    """
    if gi.stage != INTERMEDIATE:
        raise ValueError(f"expected an intermediate grammar, got {gi.stage}")
    guarded_water = gi.water is not None
    report = LoweringReport(lakes=[], alternatives={}, tables=tables)
    rules = []
    for rule in gi.rules.values():
        if not rule.lake:
            rules.append(Rule(rule.name, _to_normal(rule.expr)))
            continue
        alts = ordered(tables.alt[rule.expr.id])
        report.lakes.append(rule.name)
        report.alternatives[rule.name] = alts
        body = _to_normal(rule.expr)
        if guarded_water and rule.water_tail:
            if rule.implicit:
                body = _guard(alts, body)
            else:
                body = Choice(body.left, _guard(alts, body.right))
        body = Choice(body, _guard(alts, Any()))
        rules.append(Rule(rule.name, body, lake=True))
    return gi.with_rules(rules, NORMAL), report


def check_epsilon_alternatives(gi: Grammar, alt, beginning) -> list[EpsilonWarning]:
    """Alternative symbols whose own rule is nullable make a lake's wildcard dead."""
    warnings = []
    for rule in gi.rules.values():
        if not rule.lake:
            continue
        for item in ordered(alt[rule.expr.id]):
            if not isinstance(item, (NonterminalRef, LakeRef)):
                continue
            target = gi.rules.get(item.name)
            if target is not None and EPSILON in beginning[target.expr.id]:
                warnings.append(EpsilonWarning(rule.name, str(item)))
    return warnings


def translate(g: Grammar) -> tuple[Grammar, LoweringReport]:
    """Validate, insert water, analyse, and lower ``g`` to a normal PEG.

    Warnings about nullable alternative symbols go into the report; they do
    not stop the translation.  Raises :class:`GrammarError` if the input is
    invalid, or if the generated predicates make the output left recursive.
    """
    check(g)
    if g.stage == NORMAL:
        return g, LoweringReport([], {})
    gi = insert_water(g)
    tables = analyze(gi)
    warnings = check_epsilon_alternatives(gi, tables.alt, tables.beginning)
    normal, report = lower_lakes(gi, tables)
    report.warnings = warnings
    try:
        check(normal)
    except GrammarError as exc:
        raise GrammarError("lowered grammar is invalid: " + str(exc), exc.diagnostics) from exc
    return normal, report

