"""Concrete syntax for (extended) PEGs: reading and writing.

    rule      <-  header '<-' choice
    header    <-  IDENT / '<' IDENT '>'
    choice    <-  sequence ('/' sequence)*
    sequence  <-  prefix+
    prefix    <-  ('!' / '&')* postfix
    postfix   <-  primary ('?' / '*' / '+')*
    primary   <-  literal / class / '.' / '(' choice ')' / IDENT / '<' IDENT '>'

A rule body runs until the next rule header or the end of the text.  ``#``
starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .grammar import (
    EXTENDED, NORMAL, Any, CharClass, Choice, Expr, Grammar, GrammarError, Lake,
    Literal, Nonterminal, Not, And, OneOrMore, Optional, Sequence, ZeroOrMore,
    build_grammar,
)

__all__ = ["SourceSpan", "GrammarSyntaxError", "read_grammar", "write_grammar", "format_expr"]


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class GrammarSyntaxError(GrammarError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.span = span


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    span: SourceSpan


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow><-)
  | (?P<lake><[A-Za-z_][A-Za-z0-9_]*>)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<literal>'(?:[^'\\\n]|\\.)*'|"(?:[^"\\\n]|\\.)*")
  | (?P<cls>\[(?:[^\]\\\n]|\\.)*\])
  | (?P<op>[/!&?*+().])
    """,
    re.VERBOSE,
)

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}
_CLASS_ESCAPES = {**_ESCAPES, "]": "]", "-": "-", "^": "^", "[": "["}


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1, 1)
        if m is None:
            raise GrammarSyntaxError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, value, SourceSpan(span.line, span.column, len(value))))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    return tokens


def _unescape(body: str, table: dict[str, str], span: SourceSpan) -> list[str]:
    chars = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in table:
                raise GrammarSyntaxError(f"unknown escape '\\{nxt}'", span)
            chars.append(table[nxt])
            i += 2
        else:
            chars.append(ch)
            i += 1
    return chars


def _parse_class(tok: _Token) -> CharClass:
    body = tok.value[1:-1]
    negated = body.startswith("^")
    if negated:
        body = body[1:]
    # mark escaped characters so an escaped '-' is never a range operator
    chars: list[tuple[str, bool]] = []
    i = 0
    while i < len(body):
        if body[i] == "\\":
            chars.append((_unescape(body[i:i + 2], _CLASS_ESCAPES, tok.span)[0], True))
            i += 2
        else:
            chars.append((body[i], False))
            i += 1
    ranges = []
    i = 0
    while i < len(chars):
        lo = chars[i][0]
        if i + 2 < len(chars) and chars[i + 1] == ("-", False):
            hi = chars[i + 2][0]
            if hi < lo:
                raise GrammarSyntaxError(f"reversed range {lo!r}-{hi!r}", tok.span)
            ranges.append((lo, hi))
            i += 3
        else:
            ranges.append((lo, lo))
            i += 1
    if not ranges:
        raise GrammarSyntaxError("empty character class", tok.span)
    return CharClass(tuple(ranges), negated)


class _Reader:
    def __init__(self, tokens: list[_Token], lakes: bool):
        self.tokens = tokens
        self.pos = 0
        self.lakes = lakes

    def peek(self, offset: int = 0) -> _Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_header(self) -> bool:
        tok, after = self.peek(), self.peek(1)
        return (tok is not None and tok.kind in ("ident", "lake")
                and after is not None and after.kind == "arrow")

    def fail(self, message: str) -> GrammarSyntaxError:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1].span
            span = SourceSpan(last.line, last.column + last.length, 0)
            return GrammarSyntaxError(message + " at end of input", span)
        return GrammarSyntaxError(f"{message}, found {tok.value!r}", tok.span)

    def rules(self):
        out = []
        while self.peek() is not None:
            if not self.at_header():
                raise self.fail("expected a rule header 'name <-'")
            head = self.next()
            self.next()
            is_lake = head.kind == "lake"
            name = head.value[1:-1] if is_lake else head.value
            if any(r[0] == name for r in out):
                raise GrammarSyntaxError(f"duplicate rule '{head.value}'", head.span)
            out.append((name, is_lake, self.choice()))
        return out

    def choice(self) -> Expr:
        expr = self.sequence()
        while self._op("/"):
            self.next()
            expr = Choice(expr, self.sequence())
        return expr

    def sequence(self) -> Expr:
        expr = self.prefix()
        while self._starts_item():
            expr = Sequence(expr, self.prefix())
        return expr

    def _op(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.value == value

    def _starts_item(self) -> bool:
        tok = self.peek()
        if tok is None or self.at_header():
            return False
        if tok.kind == "op":
            return tok.value in "!&(."
        return tok.kind in ("ident", "lake", "literal", "cls")

    def prefix(self) -> Expr:
        if self._op("!"):
            self.next()
            return Not(self.prefix())
        if self._op("&"):
            self.next()
            return And(self.prefix())
        return self.postfix()

    def postfix(self) -> Expr:
        expr = self.primary()
        while True:
            if self._op("?"):
                expr = Optional(expr)
            elif self._op("*"):
                expr = ZeroOrMore(expr)
            elif self._op("+"):
                expr = OneOrMore(expr)
            else:
                return expr
            self.next()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok is None or not self._starts_item():
            raise self.fail("expected an expression")
        self.next()
        if tok.kind == "ident":
            return Nonterminal(tok.value)
        if tok.kind == "lake":
            name = tok.value[1:-1]
            return Lake(name) if self.lakes else Nonterminal(name, lake=True)
        if tok.kind == "literal":
            text = "".join(_unescape(tok.value[1:-1], _ESCAPES, tok.span))
            if not text:
                raise GrammarSyntaxError("empty literal", tok.span)
            return Literal(text)
        if tok.kind == "cls":
            return _parse_class(tok)
        if tok.value == ".":
            return Any()
        inner = self.choice()
        if not self._op(")"):
            raise self.fail("expected ')'")
        self.next()
        return inner


def read_grammar(text: str, *, normal: bool = False, start: str | None = None) -> Grammar:
    """Parse grammar source.

    With ``normal=True`` the text is read as a plain PEG: ``<name>`` symbols
    become ordinary nonterminals that remember their lake origin.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise GrammarSyntaxError("empty grammar", SourceSpan(1, 1, 0))
    rules = _Reader(tokens, lakes=not normal).rules()
    return build_grammar(rules, start, NORMAL if normal else EXTENDED)


# -- writing ---------------------------------------------------------------

_CHOICE, _SEQ, _PREFIX, _POSTFIX, _PRIMARY = 1, 2, 3, 4, 5


def _quote(text: str) -> str:
    out = text.replace("\\", "\\\\").replace("'", "\\'")
    return "'" + out.replace("\n", "\\n").replace("\t", "\\t") + "'"


def _class_char(ch: str) -> str:
    if ch in "\\]-^[":
        return "\\" + ch
    return {"\n": "\\n", "\t": "\\t"}.get(ch, ch)


def _format_class(e: CharClass) -> str:
    parts = []
    for lo, hi in e.ranges:
        parts.append(_class_char(lo) if lo == hi else f"{_class_char(lo)}-{_class_char(hi)}")
    return "[" + ("^" if e.negated else "") + "".join(parts) + "]"


def _level(e: Expr) -> int:
    if isinstance(e, Choice):
        return _CHOICE
    if isinstance(e, Sequence):
        return _SEQ
    if isinstance(e, (Not, And)):
        return _PREFIX
    if isinstance(e, (ZeroOrMore, OneOrMore, Optional)):
        return _POSTFIX
    return _PRIMARY


def _wrap(e: Expr, minimum: int) -> str:
    text = format_expr(e)
    return text if _level(e) >= minimum else f"({text})"


def format_expr(e: Expr) -> str:
    """Render an expression with the fewest parentheses that re-read identically."""
    if isinstance(e, Literal):
        return _quote(e.text)
    if isinstance(e, CharClass):
        return _format_class(e)
    if isinstance(e, Any):
        return "."
    if isinstance(e, Nonterminal):
        return f"<{e.name}>" if e.lake else e.name
    if isinstance(e, Lake):
        return f"<{e.name}>"
    if isinstance(e, Choice):
        return f"{_wrap(e.left, _CHOICE)} / {_wrap(e.right, _SEQ)}"
    if isinstance(e, Sequence):
        return f"{_wrap(e.left, _SEQ)} {_wrap(e.right, _PREFIX)}"
    if isinstance(e, Not):
        return "!" + _wrap(e.child, _PREFIX)
    if isinstance(e, And):
        return "&" + _wrap(e.child, _PREFIX)
    suffix = {ZeroOrMore: "*", OneOrMore: "+", Optional: "?"}[type(e)]
    return _wrap(e.child, _POSTFIX) + suffix


def write_grammar(g: Grammar) -> str:
    lines = []
    for rule in g.rules.values():
        head = f"<{rule.name}>" if rule.lake else rule.name
        lines.append(f"{head} <- {format_expr(rule.expr)}")
    return "\n".join(lines) + "\n"
