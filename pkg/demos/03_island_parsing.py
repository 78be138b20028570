# Pull if/else statements out of a program the grammar mostly ignores, once
# with hand-written water and once with lake symbols, and compare.
import time

from lakepeg import count_islands, parse, translate
from lakepeg.fixtures import load_grammar, sample_program
from lakepeg.packrat import Node, iter_nodes

program = sample_program()
print(program)


def islands(tree, symbol):
    return [(n.start, n.end) for n in iter_nodes(tree) if isinstance(n, Node) and n.symbol == symbol]


results = {}
for name in ("if_water", "if_lakes"):
    began = time.perf_counter()
    normal, _ = translate(load_grammar(name))
    tree = parse(normal, program)
    elapsed = time.perf_counter() - began
    results[name] = islands(tree, "if_else_stmt")
    print(f"{name}: {count_islands(tree, 'if_else_stmt')} if/else islands, "
          f"{count_islands(tree, 'STRING')} strings, {elapsed * 1000:.1f} ms")

for start, end in results["if_lakes"]:
    first_line = program[start:end].splitlines()[0]
    print(f"  [{start:>3}, {end:>3})  {first_line.strip()}")

print("same islands:", results["if_water"] == results["if_lakes"])
