# Lowering lake symbols: each <lake> turns into a wildcard that refuses to
# eat its alternative symbols.  Nullable alternatives get flagged.
from lakepeg import read_grammar, translate, write_grammar
from lakepeg.fixtures import fixture_text

normal, report = translate(read_grammar(fixture_text("blocks")))
print(write_grammar(normal))
print(report.to_text(), "\n")

# With an explicit water rule the water copy inside each lake sits behind
# the same predicate, so strings are skipped whole but '}' still ends a block.
normal, report = translate(read_grammar(fixture_text("if_lakes")))
for name in report.lakes:
    print(f"<{name}> stops at:", ", ".join(map(str, report.alternatives[name])))
print()

# A lake whose alternative can match nothing can never skip a character.
risky = """
stmt <- expr ';'
expr <- <term>* opt
opt <- '++'?
"""
normal, report = translate(read_grammar(risky))
print(write_grammar(normal))
for warning in report.warnings:
    print(warning)
