"""Command-line front end: ``lakepeg {translate,analyze,parse,stats}``.

Exit status is 0 on success, 1 when the input does not parse, and 2 for
usage, I/O and grammar errors.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .analysis import analyze, ordered
from .grammar import Grammar, GrammarError, check, validate
from .lowering import insert_water, translate
from .packrat import ParseError, parse, to_json
from .text import format_expr, read_grammar, write_grammar

EXIT_OK, EXIT_PARSE, EXIT_ERROR = 0, 1, 2

SETS = ("beginning", "succeed", "alt")


@dataclass(frozen=True)
class GrammarStats:
    rules: int
    lakes: int
    alt_total: int


def grammar_stats(g: Grammar) -> GrammarStats:
    """Rule count after water insertion (implicit lake rules included),
    lake count, and the summed size of every lake's alternative list."""
    _, report = translate(g)
    return GrammarStats(len(insert_water(g).rules), len(report.lakes), report.alt_total)


def _load(path: str, normal: bool) -> Grammar:
    text = Path(path).read_text(encoding="utf-8")
    return read_grammar(text, normal=normal)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _warn(g: Grammar, report) -> None:
    for d in validate(g):
        if d.severity == "warning":
            print(d, file=sys.stderr)
    for w in report.warnings:
        print(w, file=sys.stderr)


def cmd_translate(args) -> int:
    g = _load(args.grammar, args.normal)
    normal, report = translate(g)
    _warn(g, report)
    _emit(write_grammar(normal), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _load(args.grammar, args.normal)
    check(g)
    gi = insert_water(g)
    tables = analyze(gi)
    which = [s.strip() for s in args.sets.split(",") if s.strip()] if args.sets else list(SETS)
    unknown = set(which) - set(SETS)
    if unknown:
        raise GrammarError(f"unknown set(s): {', '.join(sorted(unknown))}")
    owners = gi.owners()
    rows = []
    for e in gi.expressions():
        row = {"id": e.id, "kind": type(e).__name__, "rule": owners[e.id], "expr": format_expr(e)}
        for name in which:
            row[name] = [str(s) for s in ordered(getattr(tables, name)[e.id])]
        rows.append(row)
    if args.json:
        doc = {"expressions": rows, "passes": {k: tables.passes[k] for k in which}}
        _emit(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", args.output)
    else:
        lines = ["\t".join(["id", "kind", "rule", *which])]
        for row in rows:
            sets = ["{" + ", ".join(row[name]) + "}" for name in which]
            lines.append("\t".join([f"e{row['id']}", row["kind"], row["rule"], *sets]))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_parse(args) -> int:
    g = _load(args.grammar, args.normal)
    normal, report = translate(g)
    _warn(g, report)
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        tree = parse(normal, text, args.start, prefix=args.prefix)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_ERROR
    except ParseError as exc:
        print(f"{args.input}: parse error {exc}", file=sys.stderr)
        return EXIT_PARSE
    _emit(to_json(tree) + "\n", args.json)
    return EXIT_OK


def cmd_stats(args) -> int:
    stats = grammar_stats(_load(args.grammar, args.normal))
    if args.json:
        _emit(json.dumps(asdict(stats)) + "\n", None)
    else:
        _emit(f"rules={stats.rules} lakes={stats.lakes} alt-total={stats.alt_total}\n", None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lakepeg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("-g", "--grammar", required=True, help="grammar file (UTF-8)")
        p.add_argument("--normal", action="store_true",
                       help="read <name> symbols as ordinary nonterminals (already lowered)")
        p.set_defaults(func=func)
        return p

    p = command("translate", cmd_translate, "lower lake symbols to a normal PEG")
    p.add_argument("-o", "--output", help="write the normal PEG here instead of stdout")

    p = command("analyze", cmd_analyze, "print BEGINNING / SUCCEED / ALT per expression")
    p.add_argument("--sets", help="comma-separated subset of beginning,succeed,alt (default: all)")
    p.add_argument("--json", action="store_true", help="emit a JSON document")
    p.add_argument("-o", "--output")

    p = command("parse", cmd_parse, "parse an input file and print its JSON parse tree")
    p.add_argument("input", help="file to parse")
    p.add_argument("--start", help="start symbol (default: first rule)")
    p.add_argument("--json", metavar="PATH", help="write the JSON tree here instead of stdout")
    p.add_argument("--prefix", action="store_true", help="allow unconsumed trailing input")

    p = command("stats", cmd_stats,
                "rules (after implicit lake rules are added), lakes, and total alternative symbols")
    p.add_argument("--json", action="store_true", help="emit a JSON document")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GrammarError as exc:
        for d in exc.diagnostics:
            print(f"{args.grammar}: {d}", file=sys.stderr)
        if not exc.diagnostics:
            print(f"{args.grammar}:{exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
