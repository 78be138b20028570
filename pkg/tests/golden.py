"""Expected analysis values for the block / stmt / expr_stmt grammar with <elake>.

Rows are (BEGINNING, SUCCEED, ALT after passes 1..5).  Sets are written as
the sorted strings produced by ``format_set``.
"""

E = "{}"
R = "{'}'}"
BR = "{block, '}'}"

EXPECTED_SETS = {
    1: ("{'{'}", "{stmt, '}'}", [E, E, E, E, R]),
    2: ("{stmt}", "{stmt, '}'}", [R, R, R, R, R]),
    3: ("{ε, stmt}", R, [E, E, E, E, E]),
    4: ("{'{'}", R, [E, E, E, R, R]),
    5: (R, "{stmt, '}'}", [E, E, E, E, E]),
    6: ("{'{'}", "{stmt, '}'}", [E, E, R, R, R]),
    7: ("{expr_stmt}", "{stmt, '}'}", ["{block}", BR, BR, BR, BR]),
    8: ("{block}", "{stmt, '}'}", [E, R, R, R, R]),
    9: ("{block, expr_stmt}", "{stmt, '}'}", [E, R, R, R, R]),
    10: ("{ε, <elake>}", "{';', <elake>}",
         ["{';'}", "{';'}", "{block, ';'}", "{block, ';', '}'}", "{block, ';', '}'}"]),
    11: ("{ε, <elake>}", "{';'}", [E, "{block}", BR, BR, BR]),
    12: ("{';'}", "{stmt, '}'}", [E, "{block}", BR, BR, BR]),
    13: ("{';', <elake>}", "{stmt, '}'}", [E, "{block}", BR, BR, BR]),
    14: ("{.}", E, [E, E, E, E, E]),
    15: ("{ε}", "{';', <elake>}",
         [E, "{';'}", "{';'}", "{block, ';'}", "{block, ';', '}'}"]),
}

# operand of a not-predicate: its ALT is the SUCCEED of the predicate, checked separately
PREDICATE_OPERANDS = {14}

ALT_CHANGING_PASSES = 5
