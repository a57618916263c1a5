"""Non-deterministic matching.

``cfg_match`` realizes the relational reading of a grammar: a match
result is the *set* of prefix lengths the expression can consume, because
a choice may take either branch.  The matcher computes that set as a
memoized least fixed point over (non-terminal, input position) pairs, so
left-recursive grammars still get their full, correct recognition sets:
the table of suffix-length sets over a fixed input is a finite lattice,
every rule is monotone, and iteration to stability lands on the least
fixed point, which is exactly the set of derivable matches.

``count_proof_trees`` counts distinct derivations per consumed length,
which is the ambiguity test: more than one tree for the same span means
the grammar is ambiguous.  A dependency cycle that participates in some
complete derivation can be pumped into arbitrarily many trees and is
reported as divergent rather than counted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

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
from .grammar import Grammar, GrammarError, desugar


@dataclass(frozen=True)
class CfgMatchResult:
    """Set of consumed-prefix lengths; empty set means no match at all."""

    lengths: frozenset[int]

    def matches_exactly(self, n: int) -> bool:
        return n in self.lengths

    @property
    def longest(self) -> int | None:
        return max(self.lengths) if self.lengths else None


def _check_expr(expr: Expr) -> None:
    if isinstance(expr, Not):
        raise GrammarError("not a PE-CFG expression: the predicate has no non-deterministic rule")
    if isinstance(expr, Star):
        raise GrammarError("desugar repetition before matching")
    if isinstance(expr, (Concat, Choice)):
        _check_expr(expr.left)
        _check_expr(expr.right)


class _FixpointMatcher:
    """One matching problem: a grammar, an input, and a growing table of
    suffix-length sets for every (non-terminal, position) pair touched."""

    def __init__(self, g: Grammar, text: str):
        self.g = g
        self.text = text
        self.table: dict[tuple[str, int], frozenset[int]] = {}
        self.discovered: set[tuple[str, int]] = set()

    def eval(self, expr: Expr, pos: int) -> frozenset[int]:
        if isinstance(expr, Empty):
            return frozenset((pos,))
        if isinstance(expr, Terminal):
            if pos < len(self.text) and self.text[pos] == expr.symbol:
                return frozenset((pos + 1,))
            return frozenset()
        if isinstance(expr, NonTerminal):
            key = (expr.name, pos)
            self.discovered.add(key)
            return self.table.get(key, frozenset())
        if isinstance(expr, Concat):
            out: set[int] = set()
            for mid in self.eval(expr.left, pos):
                out |= self.eval(expr.right, mid)
            return frozenset(out)
        if isinstance(expr, Choice):
            return self.eval(expr.left, pos) | self.eval(expr.right, pos)
        _check_expr(expr)
        raise AssertionError("unreachable")

    def solve(self, expr: Expr, pos: int = 0) -> frozenset[int]:
        while True:
            changed = False
            known = len(self.discovered)
            top = self.eval(expr, pos)
            for key in list(self.discovered):
                name, at = key
                value = self.eval(self.g.productions[name], at)
                if value != self.table.get(key, frozenset()):
                    self.table[key] = value
                    changed = True
            if not changed and len(self.discovered) == known:
                return top


def cfg_match(g: Grammar, text: str, expr: Expr | None = None) -> CfgMatchResult:
    """All prefix lengths of ``text`` that ``expr`` (default: the start
    expression) can consume under the non-deterministic reading."""
    g = desugar(g)
    if expr is None:
        expr = g.start
    _check_expr(expr)
    for name in g.nonterminals:
        _check_expr(g.productions[name])
    return CfgMatchResult(_FixpointMatcher(g, text).solve(expr))


def strings_over(alphabet: Iterable[str], max_len: int) -> Iterable[str]:
    alpha = tuple(alphabet)
    for n in range(max_len + 1):
        for tup in itertools.product(alpha, repeat=n):
            yield "".join(tup)


def cfg_language(g: Grammar, max_len: int, mode: str = "exact") -> frozenset[str]:
    """Enumerate the language up to ``max_len``.

    Both modes test ``|x| in cfg_match(g, x)``: full consumption of ``x``
    witnesses prefix membership for any continuation, since a match does
    not depend on the suffix left behind (that independence is itself
    property-tested rather than trusted).
    """
    if mode not in ("exact", "prefix"):
        raise ValueError(f"unknown mode {mode!r}")
    g = desugar(g)
    out = set()
    for x in strings_over(g.matching_alphabet, max_len):
        if len(x) in cfg_match(g, x).lengths:
            out.add(x)
    return frozenset(out)


# --- proof-tree counting ---------------------------------------------------

_DIVERGENT = object()


@dataclass(frozen=True)
class ProofTreeCount:
    """Distinct derivations per consumed length.

    ``status`` is ``exact`` when every count is finite and below the cap,
    ``capped`` when some count saturated, and ``divergent`` when a
    pumpable cycle makes some count infinite (those entries hold the cap).
    ``total`` is the sum of the stored counts and equals the true number
    of derivations only when exact.
    """

    per_length: Mapping[int, int]
    total: int
    status: str
    cap: int

    @property
    def ambiguous(self) -> bool:
        return self.status == "divergent" or any(v > 1 for v in self.per_length.values())


def count_proof_trees(g: Grammar, text: str, cap: int = 10**9) -> ProofTreeCount:
    g = desugar(g)
    for name in g.nonterminals:
        _check_expr(g.productions[name])
    _check_expr(g.start)

    matcher = _FixpointMatcher(g, text)
    top = matcher.solve(g.start)
    table = matcher.table

    def sets(expr: Expr, pos: int) -> frozenset[int]:
        # structural evaluation against the solved table
        return matcher.eval(expr, pos)

    # Dependency graph over (non-terminal, start, end) triples that occur
    # inside some complete derivation with matching spans.
    def occurrences(expr: Expr, pos: int, end: int) -> list[tuple[str, int, int]]:
        if isinstance(expr, NonTerminal):
            return [(expr.name, pos, end)]
        if isinstance(expr, Concat):
            out = []
            for mid in sets(expr.left, pos):
                if end in sets(expr.right, mid):
                    out.extend(occurrences(expr.left, pos, mid))
                    out.extend(occurrences(expr.right, mid, end))
            return out
        if isinstance(expr, Choice):
            out = []
            if end in sets(expr.left, pos):
                out.extend(occurrences(expr.left, pos, end))
            if end in sets(expr.right, pos):
                out.extend(occurrences(expr.right, pos, end))
            return out
        return []

    roots = [("", 0, end) for end in top]
    deps: dict[tuple[str, int, int], list[tuple[str, int, int]]] = {}
    stack = list(roots)
    while stack:
        node = stack.pop()
        if node in deps:
            continue
        name, pos, end = node
        expr = g.start if name == "" else g.productions[name]
        children = occurrences(expr, pos, end)
        deps[node] = children
        stack.extend(children)

    # Tarjan SCC; nodes on a nontrivial cycle have infinitely many trees.
    index: dict[tuple, int] = {}
    low: dict[tuple, int] = {}
    on_stack: set[tuple] = set()
    scc_stack: list[tuple] = []
    infinite: set[tuple] = set()
    counter = itertools.count()

    def strongconnect(v: tuple) -> None:
        work = [(v, iter(deps[v]))]
        index[v] = low[v] = next(counter)
        scc_stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    scc_stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(deps[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    w = scc_stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == node:
                        break
                if len(component) > 1 or node in deps[node]:
                    infinite.update(component)

    for root in roots:
        if root not in index:
            strongconnect(root)

    memo: dict[tuple[str, int, int], object] = {}

    def count_nt(node: tuple[str, int, int]):
        if node in infinite:
            return _DIVERGENT
        if node in memo:
            return memo[node]
        name, pos, end = node
        expr = g.start if name == "" else g.productions[name]
        memo[node] = value = count_expr(expr, pos, end)
        return value

    def mul(a, b):
        if a is _DIVERGENT or b is _DIVERGENT:
            return _DIVERGENT
        return min(a * b, cap + 1)

    def add(a, b):
        if a is _DIVERGENT or b is _DIVERGENT:
            return _DIVERGENT
        return min(a + b, cap + 1)

    def count_expr(expr: Expr, pos: int, end: int):
        if isinstance(expr, Empty):
            return 1 if pos == end else 0
        if isinstance(expr, Terminal):
            hit = pos < len(text) and text[pos] == expr.symbol and end == pos + 1
            return 1 if hit else 0
        if isinstance(expr, NonTerminal):
            return count_nt((expr.name, pos, end))
        if isinstance(expr, Concat):
            total = 0
            for mid in sets(expr.left, pos):
                if end in sets(expr.right, mid):
                    total = add(total, mul(count_expr(expr.left, pos, mid), count_expr(expr.right, mid, end)))
                    if total is _DIVERGENT:
                        return total
            return total
        if isinstance(expr, Choice):
            total = 0
            if end in sets(expr.left, pos):
                total = add(total, count_expr(expr.left, pos, end))
            if total is not _DIVERGENT and end in sets(expr.right, pos):
                total = add(total, count_expr(expr.right, pos, end))
            return total
        raise AssertionError("unreachable")

    per_length: dict[int, int] = {}
    status = "exact"
    for end in sorted(top):
        value = count_nt(("", 0, end))
        if value is _DIVERGENT:
            per_length[end] = cap
            status = "divergent"
        else:
            if value > cap:
                value = cap
                if status != "divergent":
                    status = "capped"
            per_length[end] = value
    return ProofTreeCount(per_length, sum(per_length.values()), status, cap)
