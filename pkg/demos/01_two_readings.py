"""One grammar, two readings.

The same expression tree can be matched two ways.  Under the
non-deterministic reading a choice may take either branch, so a match
result is the set of prefix lengths the grammar can consume.  Under the
ordered reading the second branch only runs when the first fails, and
failure is an explicit outcome.  The fixture makes the gap concrete: on
the input ``abac`` the first reading consumes ``ab`` while the second
commits A to ``aba``, leaves ``c`` for B, and dies.
"""

from pegcfg import cfg_match, count_proof_trees, parse_grammar, peg_match
from pegcfg.fixtures import G1_TEXT

g = parse_grammar(G1_TEXT)
print(G1_TEXT)

for text in ("ab", "abab", "abac"):
    lengths = sorted(cfg_match(g, text).lengths)
    print(f"{text!r:8} non-deterministic: consumable prefixes {lengths}")
    print(f"{'':8} ordered:           {peg_match(g, text)}")

# Ambiguity is a property of the first reading only: two proof trees for
# the same span.  This fixture is unambiguous; a doubled alternative not.
print()
print("proof trees for 'abab':", dict(count_proof_trees(g, "abab").per_length))
doubled = parse_grammar("start: S\nS -> 'a' | 'a'\n")
report = count_proof_trees(doubled, "a")
print("S -> 'a' | 'a' on 'a':", dict(report.per_length), "ambiguous =", report.ambiguous)

looping = parse_grammar("start: S\nS -> S | 'a'\n")
print("S -> S | 'a' on 'a':", count_proof_trees(looping, "a").status)
