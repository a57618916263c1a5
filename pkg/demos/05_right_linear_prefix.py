"""Right-linear grammars and the prefix property.

For right-linear grammars the two readings agree as soon as no accepted
string is a proper prefix of another.  The fixture {a, aa} is the minimal
violation: ordered choice commits to ``a`` and never sees ``aa``.
Planting an end marker at the end of every alternative forces the prefix
property, and the automaton view (non-terminals as states) verifies it
exactly.
"""

from pegcfg import (
    cfg_language,
    peg_language,
    pi_prefix,
    prefix_property,
    render_grammar,
    rl_to_dfa,
)
from pegcfg.fixtures import G4_TEXT, g4

print(G4_TEXT)
print("generative:", sorted(cfg_language(g4(), 2)), " ordered:", sorted(peg_language(g4(), 2)))
print("prefix property:", prefix_property(g4()))

result = pi_prefix(g4())
print()
print(render_grammar(result.grammar))
print("prefix property now:", prefix_property(result.grammar))
print("generative:", sorted(cfg_language(result.grammar, 3)),
      " ordered:", sorted(peg_language(result.grammar, 3)))

dfa = rl_to_dfa(result.grammar)
print("automaton states:", dfa.n_states, " accepts 'aa$':", dfa.accepts("aa$"),
      " accepts 'aa':", dfa.accepts("aa"))
