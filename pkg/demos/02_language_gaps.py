"""Where the ordered reading loses strings, and why order matters.

The strong-LL(2) fixture accepts four strings as a generative grammar but
only three under ordered choice: matching ``cd``, the non-terminal A
succeeds through C and eats just ``c``, so the B branch that knows about
``cd`` never runs.  Swapping the alternatives of S does not fix it, it
just moves the lost string: ordered choice is not commutative.
"""

from pegcfg import cfg_language, compare_languages, peg_language
from pegcfg.fixtures import G2_TEXT, g2, g2_swapped

print(G2_TEXT)
print("generative, length <= 2: ", sorted(cfg_language(g2(), 2)))
print("ordered,    length <= 2: ", sorted(peg_language(g2(), 2)))
print("ordered, S -> B | A:     ", sorted(peg_language(g2_swapped(), 2)))

report = compare_languages(g2(), 2)
print()
print("diff verdict:", report.verdict)
print("only the generative side accepts:", list(report.only_cfg))
