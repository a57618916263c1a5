"""Ordered-choice matching with explicit failure.

The second reading of a grammar: choice commits to its first branch
unless that branch fails outright, failure is a first-class outcome, and
the not-predicate turns failure into an empty success.  Matching is plain
recursive descent mirroring the inference rules one-to-one; an optional
packrat table keyed on (node, position) can be switched on and must never
change a result.

Left recursion would make this matcher loop, so grammars are vetted with
the structural check before matching; the caller sees a clear error
instead of non-termination.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass

from .exprs import (
    Choice,
    Concat,
    Empty,
    Expr,
    NonTerminal,
    Not,
    Star,
    Terminal,
)
from .grammar import Grammar, GrammarError, desugar, left_recursive_nonterminals

PREFIX_PAD = 3


@dataclass(frozen=True)
class PegMatchResult:
    """Either a consumed-prefix length or failure; never both, never more."""

    consumed: int | None

    @property
    def failed(self) -> bool:
        return self.consumed is None

    def __str__(self) -> str:
        return "fail" if self.failed else f"consumed {self.consumed}"


FAIL = PegMatchResult(None)


_vetted: "weakref.WeakValueDictionary[int, Grammar]" = weakref.WeakValueDictionary()


def require_complete(g: Grammar) -> Grammar:
    g = desugar(g)
    if _vetted.get(id(g)) is g:
        return g
    left_recursive = left_recursive_nonterminals(g)
    if left_recursive:
        raise GrammarError(
            "grammar is left-recursive: {" + ", ".join(sorted(left_recursive)) + "}; "
            "the backtracking matcher would not terminate"
        )
    _vetted[id(g)] = g
    return g


def peg_match(g: Grammar, text: str, expr: Expr | None = None, memo: bool = False) -> PegMatchResult:
    """Match a prefix of ``text`` under the ordered reading.

    Terminal mismatch and end of input fail; concatenation propagates
    failure; the second choice branch runs only when the first fails; a
    predicate succeeds without consuming exactly when its body fails.
    """
    g = require_complete(g)
    if expr is None:
        expr = g.start
    if any(isinstance(n, Star) for n in _nodes(expr)):
        raise GrammarError("desugar repetition before matching")
    table: dict[tuple[int, int], int | None] = {}

    def run(node: Expr, pos: int) -> int | None:
        if memo:
            key = (id(node), pos)
            if key in table:
                return table[key]
        out = step(node, pos)
        if memo:
            table[(id(node), pos)] = out
        return out

    def step(node: Expr, pos: int) -> int | None:
        if isinstance(node, Empty):
            return pos
        if isinstance(node, Terminal):
            if pos < len(text) and text[pos] == node.symbol:
                return pos + 1
            return None
        if isinstance(node, NonTerminal):
            return run(g.productions[node.name], pos)
        if isinstance(node, Concat):
            mid = run(node.left, pos)
            if mid is None:
                return None
            return run(node.right, mid)
        if isinstance(node, Choice):
            out = run(node.left, pos)
            if out is None:
                return run(node.right, pos)
            return out
        if isinstance(node, Not):
            return pos if run(node.inner, pos) is None else None
        raise AssertionError("unreachable")

    end = run(expr, 0)
    return FAIL if end is None else PegMatchResult(end)


def _nodes(expr: Expr):
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Concat, Choice)):
            stack.extend((node.left, node.right))
        elif isinstance(node, (Not, Star)):
            stack.append(node.inner)


def peg_language(
    g: Grammar, max_len: int, mode: str = "exact", memo: bool = False, pad: int = PREFIX_PAD
) -> frozenset[str]:
    """Enumerate strings recognized up to ``max_len``.

    Exact mode collects the strings matched in full.  Prefix mode collects
    ``x`` whenever some continuation of up to ``pad`` extra symbols lets
    the matcher consume exactly ``x``; unlike the non-deterministic
    reading, success here genuinely depends on what follows, so prefix
    mode is an under-approximation parameterized by the pad and is meant
    as a diagnostic.
    """
    if mode not in ("exact", "prefix"):
        raise ValueError(f"unknown mode {mode!r}")
    g = require_complete(g)
    alphabet = g.matching_alphabet
    out = set()
    for x in _strings(alphabet, max_len):
        if mode == "exact":
            if peg_match(g, x, memo=memo).consumed == len(x):
                out.add(x)
        else:
            for y in _strings(alphabet, pad):
                if peg_match(g, x + y, memo=memo).consumed == len(x):
                    out.add(x)
                    break
    return frozenset(out)


def _strings(alphabet, max_len):
    for n in range(max_len + 1):
        for tup in itertools.product(tuple(alphabet), repeat=n):
            yield "".join(tup)
