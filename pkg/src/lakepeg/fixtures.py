"""Grammars and the sample program used throughout the docs and tests."""

from __future__ import annotations

from importlib import resources

from .grammar import Grammar
from .text import read_grammar

GRAMMARS = ("blocks", "nullable_alt", "full", "if_water", "if_lakes")


def fixture_text(name: str) -> str:
    """Raw text of a bundled file; grammars are ``<name>.peg``, the program is ``sample.txt``."""
    filename = name if "." in name else f"{name}.peg"
    return resources.files("lakepeg").joinpath("data", filename).read_text(encoding="utf-8")


def load_grammar(name: str) -> Grammar:
    return read_grammar(fixture_text(name))


def sample_program() -> str:
    return fixture_text("sample.txt")
