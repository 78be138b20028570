"""Island parsing with lake symbols on top of a packrat PEG interpreter.

Typical use::

    from lakepeg import read_grammar, translate, parse

    normal, report = translate(read_grammar(source))
    tree = parse(normal, program_text)
"""

from .analysis import AnalysisTables, analyze, compute_alt, compute_beginning, compute_succeed
from .grammar import (
    Grammar, GrammarError, Diagnostic, Rule, build_grammar, validate,
    Literal, CharClass, Any, Nonterminal, Lake, Sequence, Choice,
    ZeroOrMore, OneOrMore, Optional, Not, And, seq, choice,
)
from .lowering import LoweringReport, check_epsilon_alternatives, insert_water, lower_lakes, translate
from .packrat import Leaf, Node, PackratParser, ParseError, count_islands, parse, to_json
from .text import GrammarSyntaxError, SourceSpan, read_grammar, write_grammar

__version__ = "0.1.0"
