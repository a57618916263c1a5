"""Canonical fixture grammars used across tests, demos, and docs.

G5's partition deserves a note.  The obvious three-way split of its
marker-terminated inputs (all ``a..ac$``, all ``a..ad$``, everything
else) does separate the start symbol's two alternatives, but it puts
``ac$`` and ``c$`` in one block, so the choice inside ``A -> 'a' A | 'c'``
is not decided by blocks alone and the grammar is not LL-regular with
respect to that coarse partition.  Refining by whether any leading ``a``
is present fixes it; ``G5_PARTITION`` is that five-block refinement and
is the partition the LL-regular pipeline uses.  The coarse version stays
available as the instructive negative case.
"""

from __future__ import annotations

from .analysis import RegularPartition
from .grammar import Grammar
from .textfmt import parse_grammar, parse_partition_blocks

G1_TEXT = """\
start: S
S -> A B
A -> 'a' 'b' 'a' | 'a'
B -> 'b'
"""

G2_TEXT = """\
start: S
S -> A | B
A -> 'a' 'b' | C
B -> 'a' | C 'd'
C -> 'c'
"""

G2_SWAPPED_TEXT = """\
start: S
S -> B | A
A -> 'a' 'b' | C
B -> 'a' | C 'd'
C -> 'c'
"""

G3_TEXT = """\
start: S
S -> 'a' | eps
"""

G3_UNORDERED_TEXT = """\
start: S
S -> eps | 'a'
"""

G4_TEXT = """\
start: S
S -> 'a' | 'a' 'a'
"""

G5_TEXT = """\
start: S
S -> A | B
A -> 'a' A | 'c'
B -> 'a' B | 'd'
"""

# Five blocks: a+c$ / c$ / a+d$ / d$ / everything else in {a,c,d}*$.
G5_PARTITION_TEXT = """\
block B1:
start: N
N -> 'a' M
M -> 'a' M | 'c' E
E -> '$'

block B2:
start: N
N -> 'c' E
E -> '$'

block B3:
start: N
N -> 'a' M
M -> 'a' M | 'd' E
E -> '$'

block B4:
start: N
N -> 'd' E
E -> '$'

block B5:
start: N
N -> 'a' N | '$' | 'c' M | 'd' M
M -> 'a' K | 'c' K | 'd' K
K -> 'a' K | 'c' K | 'd' K | '$'
"""

# The coarse split a*c$ / a*d$ / rest; valid as a partition, but too
# coarse to make G5 LL-regular (see the module docstring).
G5_PARTITION_COARSE_TEXT = """\
block B1:
start: N
N -> 'a' N | 'c' E
E -> '$'

block B2:
start: N
N -> 'a' N | 'd' E
E -> '$'

block B3:
start: N
N -> 'a' N | '$' | 'c' M | 'd' M
M -> 'a' K | 'c' K | 'd' K
K -> 'a' K | 'c' K | 'd' K | '$'
"""

# Overlapping variant: a*c$ is a subset of a*(c|d)$, so B1 and B2 clash.
G5_PARTITION_OVERLAP_TEXT = """\
block B1:
start: N
N -> 'a' N | 'c' E
E -> '$'

block B2:
start: N
N -> 'a' N | 'c' E | 'd' E
E -> '$'

block B3:
start: N
N -> 'a' N | '$' | 'c' M | 'd' M
M -> 'a' K | 'c' K | 'd' K
K -> 'a' K | 'c' K | 'd' K | '$'
"""

G5_PARTITION_TRIVIAL_TEXT = """\
block ALL:
start: N
N -> 'a' N | 'c' N | 'd' N | '$'
"""


def g1() -> Grammar:
    return parse_grammar(G1_TEXT)


def g2() -> Grammar:
    return parse_grammar(G2_TEXT)


def g2_swapped() -> Grammar:
    return parse_grammar(G2_SWAPPED_TEXT)


def g3() -> Grammar:
    return parse_grammar(G3_TEXT)


def g3_unordered() -> Grammar:
    return parse_grammar(G3_UNORDERED_TEXT)


def g4() -> Grammar:
    return parse_grammar(G4_TEXT)


def g5() -> Grammar:
    return parse_grammar(G5_TEXT)


def _partition(text: str) -> RegularPartition:
    return RegularPartition(tuple(parse_partition_blocks(text)))


def g5_partition() -> RegularPartition:
    return _partition(G5_PARTITION_TEXT)


def g5_partition_coarse() -> RegularPartition:
    return _partition(G5_PARTITION_COARSE_TEXT)


def g5_partition_overlap() -> RegularPartition:
    return _partition(G5_PARTITION_OVERLAP_TEXT)


def g5_partition_trivial() -> RegularPartition:
    return _partition(G5_PARTITION_TRIVIAL_TEXT)
