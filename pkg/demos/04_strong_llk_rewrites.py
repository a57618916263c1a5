"""Carrying a strong-LL(k) grammar to the ordered reading.

Two rewrites, both structure-preserving.  The front guard plants an
and-predicate before each alternative that peeks at the k symbols a
predictive parser would use to pick it; the back guard instead lets a
wrong alternative match and then vetoes it when the trailing context is
not in the owner's follow set, letting local backtracking move on.
Erasing the guards gives the source grammar back, node for node.
"""

from pegcfg import (
    compare_languages,
    erase_predicates,
    phi_after,
    phi_before,
    render_grammar,
)
from pegcfg.fixtures import g2

source = g2()
for label, rewrite in [("front guards", phi_before), ("back guards", phi_after)]:
    result = rewrite(source, 2)
    print(f"--- {label} (append {result.marker_arity} end markers to inputs)")
    print(render_grammar(result.grammar))
    report = compare_languages(result, 4, markers=2, against=source)
    print("language preserved:", report.verdict == "equal")
    print("erasure recovers the source:", erase_predicates(result.grammar) == source)
    print()
