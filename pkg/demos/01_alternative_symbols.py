# Which symbols stop a lake?  Walk the analysis for the small block grammar
# and watch ALT grow pass by pass until nothing changes.
from lakepeg import analyze, insert_water, read_grammar
from lakepeg.analysis import format_set
from lakepeg.text import format_expr

source = """
block <- '{' stmt* '}'
stmt <- expr_stmt / block
expr_stmt <- <elake>* ';'
"""

grammar = insert_water(read_grammar(source))
tables = analyze(grammar, record=True)
owners = grammar.owners()

print(f"{'id':>4}  {'rule':<10} {'expression':<22} {'BEGINNING':<18} SUCCEED")
for e in grammar.expressions():
    print(f"e{e.id:<3}  {owners[e.id]:<10} {format_expr(e):<22} "
          f"{format_set(tables.beginning[e.id]):<18} {format_set(tables.succeed[e.id])}")

# ALT after every pass; the last pass is the one that found nothing new
history = tables.history["alt"]
print("\nALT per pass")
for e in grammar.expressions():
    cells = "  ".join(f"{format_set(h[e.id]):<20}" for h in history[:-1])
    print(f"e{e.id:<3} {cells}")

elake = grammar.rules["elake"].expr
print(f"\n{tables.iterations['alt']} changing passes;",
      "alternative symbols of <elake>:", format_set(tables.alt[elake.id]))
