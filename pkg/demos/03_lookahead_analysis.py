"""Lookahead tables and the class checkers.

Nullable, first and follow sets generalize to width k: first_k holds the
k-prefixes of everything an expression matches (the empty string marks
nullability), follow_k holds the k-wide contexts that can trail a
non-terminal when inputs carry k end markers.  On top of the tables sit
the checkers: LL(1) wants disjoint first sets (plus the follow condition
for nullable branches), strong-LL(k) wants disjoint first.follow
products.
"""

from pegcfg import compute_tables, is_ll1, is_strong_llk
from pegcfg.fixtures import G2_TEXT, g1, g2, g3

print(G2_TEXT)
tables = compute_tables(g2(), 2)
for name in tables.grammar.nonterminals:
    firsts = sorted(tables.first[name], key=lambda s: (len(s), s))
    follows = sorted(tables.follow[name], key=lambda s: (len(s), s))
    print(f"{name}: first_2 {firsts}  follow_2 {follows}")

print()
for label, report in [
    ("G3 is LL(1)", is_ll1(g3())),
    ("G1 is LL(1)", is_ll1(g1())),
    ("G2 is LL(1)", is_ll1(g2())),
    ("G2 is strong-LL(2)", is_strong_llk(g2(), 2)),
    ("G2 is strong-LL(1)", is_strong_llk(g2(), 1)),
]:
    print(f"{label}: {report.holds}")
    for violation in report.violations:
        print(f"    clash at {violation.nonterminal}: {violation.location}"
              f"  witnesses {list(violation.witnesses)}")
