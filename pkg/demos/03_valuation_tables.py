"""
Splitting patterns and discriminant-valuation tables
====================================================

At a tame prime, the inertia class alone determines the discriminant
valuation of a field and of its compositum with a ramified prime-cyclic
field.  ``generate_table`` enumerates, for each inertia class of the
degree-d side, every splitting pattern compatible with the class on both
the field and the compositum, together with the three valuation columns.
"""

from sdxa.groups import AbelianGroup
from sdxa.splitting import format_pattern, generate_table, parse_pattern

# ---------------------------------------------------------------------------
# The pattern grammar: (e^f ...) lists ramification index e and residue
# degree f per prime factor; f = 1 is left implicit, exponents >= 10 are
# brace-wrapped.  Parsing accepts glued digit runs; formatting is canonical.
# ---------------------------------------------------------------------------
for text in ("(1^2 1)", "(1^2 12)", "(2^2 1^{10})", "(5^5)"):
    pattern = parse_pattern(text)
    print(f"{text:>14} -> factors {pattern.factors}, degree {pattern.degree}, "
          f"valuation {pattern.valuation}, canonical {format_pattern(pattern)}")
print()

# ---------------------------------------------------------------------------
# The d = 3, A = C2 table: two nontrivial inertia classes, and the compositum
# valuation always falls short of 2*v(F) + 3*v(K) by the discrepancy delta.
# ---------------------------------------------------------------------------
for d, label in ((3, "C2"), (4, "C2"), (5, "C5")):
    group = AbelianGroup.from_label(label)
    table = generate_table(d, group)
    print(f"d = {d}, A = {label}   (largest possible discrepancy: {table.delta_cap})")
    for row in table.rows:
        f_cell = ", ".join(format_pattern(p) for p in row.f_splitting)
        fk_cell = ", ".join(format_pattern(p) for p in row.fk_splitting)
        print(f"  inertia {str(row.generator):12s} v(F) = {row.v_disc_f}  "
              f"v(FK) = {row.v_disc_fk}  delta = {row.delta}")
        print(f"    field patterns     : {f_cell}")
        print(f"    compositum patterns: {fk_cell}")
    print()
