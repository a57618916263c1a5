"""LL-regular grammars: deciding alternatives by regular partitions.

No fixed lookahead width decides between ``S -> A`` and ``S -> B`` here,
since both sides open with arbitrarily many ``a``s.  A regular partition
of the marker-terminated inputs can: each alternative's block set says
where the remaining input may fall, and disjoint block sets per choice
make the grammar LL-regular.  The rewrite guards each alternative with a
choice of its blocks' right-linear grammars (run inside a predicate), and
the marked languages coincide.

Note the partition granularity trap: the coarse three-way split (all of
a*c$, all of a*d$, rest) separates S's alternatives but lumps ``ac$``
with ``c$``, so the choice inside A is undecided and the check refuses.
"""

from pegcfg import (
    alternatives,
    block,
    compare_languages,
    is_ll_regular,
    render_grammar,
    rho_ll_regular,
)
from pegcfg.fixtures import (
    G5_TEXT,
    g5,
    g5_partition,
    g5_partition_coarse,
)

grammar = g5()
fine = g5_partition()
print(G5_TEXT)
print("fine partition blocks:", ", ".join(fine.names()))
for name in grammar.nonterminals:
    for alt in alternatives(grammar.productions[name]):
        hits = block(grammar, alt, name, fine)
        print(f"  blocks of alternative of {name}: {hits}")

print()
print("LL-regular w.r.t. fine partition:  ", is_ll_regular(grammar, fine).holds)
coarse_report = is_ll_regular(grammar, g5_partition_coarse())
print("LL-regular w.r.t. coarse partition:", coarse_report.holds,
      " undecided at:", sorted({v.nonterminal for v in coarse_report.violations}))

result = rho_ll_regular(grammar, fine)
print()
print(render_grammar(result.grammar))
report = compare_languages(result, 6, markers=1, against=grammar)
print("marked language preserved:", report.verdict == "equal")
