"""Lookahead analyses and grammar-class checkers.

FIRST/FOLLOW tables are parameterized by the lookahead width k: a first
set holds the k-prefixes of everything an expression can match (with the
empty string standing in for nullability), a follow set holds the k-wide
contexts that can trail a non-terminal when the input carries k copies of
the end marker, so每 follow string has width exactly k.  Both are classical
monotone fixed points; their agreement with the semantic definitions over
the matcher is property-tested rather than assumed.

The class checkers share one report shape and test, per choice:

* LL(1): disjoint first sets, and a nullable branch forces first/follow
  disjointness;
* strong-LL(k): disjoint ``first_k . follow_k`` products;
* LL-regular: disjoint sets of partition blocks into which the remaining
  input can fall, computed exactly by a context-free/regular intersection
  (a right-context grammar per non-terminal, composed with each block's
  automaton, tested for emptiness).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .automata import Dfa, difference, intersect, marker_universe, nfa_to_dfa, union
from .exprs import (
    END_MARKER,
    Choice,
    Concat,
    Empty,
    Expr,
    NonTerminal,
    Not,
    Star,
    Terminal,
    alternatives,
    concat_parts,
    walk,
)
from .grammar import (
    Grammar,
    GrammarError,
    desugar,
    normalize_bnf,
    nullable_nonterminals,
    remove_useless,
    require_bnf,
)
from .textfmt import render_expr

DEFAULT_MAX_K = 4


def take_k(x: str, k: int) -> str:
    """The k-prefix: the first k characters, or all of them if fewer."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return x[:k]


def cat_k(xs: Iterable[str], ys: Iterable[str], k: int) -> frozenset[str]:
    """Concatenate two string sets and truncate every result to its k-prefix."""
    ys = tuple(ys)
    return frozenset(take_k(x + y, k) for x in xs for y in ys)


def _reject_predicates(g: Grammar, what: str) -> None:
    for expr in g.expressions():
        for node in walk(expr):
            if isinstance(node, Not):
                raise GrammarError(f"{what} is defined for predicate-free grammars")


@dataclass(frozen=True)
class LookaheadTables:
    """Nullable/first/follow maps for one grammar at one lookahead width.

    ``first_of`` answers first-set queries for arbitrary subexpressions of
    the underlying grammar, which is what the transforms guard with.
    """

    k: int
    grammar: Grammar
    nullable: Mapping[str, bool]
    first: Mapping[str, frozenset[str]]
    follow: Mapping[str, frozenset[str]]

    def first_of(self, expr: Expr) -> frozenset[str]:
        if isinstance(expr, Empty):
            return frozenset(("",))
        if isinstance(expr, Terminal):
            return frozenset((expr.symbol,))
        if isinstance(expr, NonTerminal):
            try:
                return self.first[expr.name]
            except KeyError:
                raise GrammarError(f"no table entry for non-terminal {expr.name}") from None
        if isinstance(expr, Concat):
            return cat_k(self.first_of(expr.left), self.first_of(expr.right), self.k)
        if isinstance(expr, Choice):
            return self.first_of(expr.left) | self.first_of(expr.right)
        raise GrammarError("first sets are defined for predicate-free expressions")


def compute_tables(g: Grammar, k: int, max_k: int = DEFAULT_MAX_K) -> LookaheadTables:
    """Classical least-fixed-point tables.

    Useless symbols are dropped first (their follow contexts are not
    meaningful), and k is capped because follow-set sizes grow with the
    k-th power of the alphabet.
    """
    if not 1 <= k <= max_k:
        raise ValueError(f"k must be between 1 and {max_k}")
    g = desugar(g)
    _reject_predicates(g, "table computation")
    g = remove_useless(g)
    nullable = nullable_nonterminals(g)
    marker_context = frozenset((END_MARKER * k,))

    first: dict[str, frozenset[str]] = {name: frozenset() for name in g.nonterminals}

    def first_of(expr: Expr) -> frozenset[str]:
        if isinstance(expr, Empty):
            return frozenset(("",))
        if isinstance(expr, Terminal):
            return frozenset((expr.symbol,))
        if isinstance(expr, NonTerminal):
            return first[expr.name]
        if isinstance(expr, Concat):
            return cat_k(first_of(expr.left), first_of(expr.right), k)
        return first_of(expr.left) | first_of(expr.right)  # Choice

    changed = True
    while changed:
        changed = False
        for name in g.nonterminals:
            value = first_of(g.productions[name])
            if value != first[name]:
                first[name] = value
                changed = True

    follow: dict[str, frozenset[str]] = {name: frozenset() for name in g.nonterminals}

    def spread(expr: Expr, context: frozenset[str]) -> bool:
        """Push follow contexts down one production; True when any grew."""
        grew = False
        if isinstance(expr, NonTerminal):
            merged = follow[expr.name] | context
            if merged != follow[expr.name]:
                follow[expr.name] = merged
                grew = True
        elif isinstance(expr, Concat):
            grew |= spread(expr.right, context)
            grew |= spread(expr.left, cat_k(first_of(expr.right), context, k))
        elif isinstance(expr, Choice):
            grew |= spread(expr.left, context)
            grew |= spread(expr.right, context)
        return grew

    changed = True
    while changed:
        changed = False
        changed |= spread(g.start, marker_context)
        for name in g.nonterminals:
            changed |= spread(g.productions[name], follow[name])

    return LookaheadTables(
        k=k,
        grammar=g,
        nullable={name: name in nullable for name in g.nonterminals},
        first=first,
        follow=follow,
    )


# --- class reports ---------------------------------------------------------


@dataclass(frozen=True)
class ClassViolation:
    nonterminal: str
    location: str
    witnesses: tuple[str, ...]


@dataclass(frozen=True)
class ClassReport:
    kind: str
    holds: bool
    violations: tuple[ClassViolation, ...]

    def describe(self) -> str:
        if self.holds:
            return f"{self.kind}: holds"
        lines = [f"{self.kind}: fails"]
        for v in self.violations:
            witness = ", ".join(v.witnesses)
            lines.append(f"  {v.nonterminal}: {v.location}  [{witness}]")
        return "\n".join(lines)


def _sorted_witnesses(strings: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(strings, key=lambda s: (len(s), s)))


def is_ll1(g: Grammar) -> ClassReport:
    """Both LL(1) restrictions, per choice of every production: disjoint
    first sets, and when the right branch is nullable the left branch's
    first set must avoid the owner's follow set."""
    g = desugar(g)
    _reject_predicates(g, "the LL(1) check")
    require_bnf(g)
    tables = compute_tables(g, 1)
    g = tables.grammar
    violations: list[ClassViolation] = []
    for name in g.nonterminals:
        for node in walk(g.productions[name]):
            if not isinstance(node, Choice):
                continue
            left = tables.first_of(node.left)
            right = tables.first_of(node.right)
            clash = left & right
            if clash:
                violations.append(ClassViolation(name, render_expr(node), _sorted_witnesses(clash)))
            if "" in right:
                clash = left & tables.follow[name]
                if clash:
                    violations.append(
                        ClassViolation(name, render_expr(node), _sorted_witnesses(clash))
                    )
    return ClassReport("LL(1)", not violations, tuple(violations))


def is_strong_llk(g: Grammar, k: int) -> ClassReport:
    """Strong-LL(k): per choice, the ``first_k . follow_k`` products of the
    two branches are disjoint, so k symbols decide the alternative."""
    g = desugar(g)
    _reject_predicates(g, "the strong-LL(k) check")
    require_bnf(g)
    tables = compute_tables(g, k)
    g = tables.grammar
    violations: list[ClassViolation] = []
    for name in g.nonterminals:
        ctx = tables.follow[name]
        for node in walk(g.productions[name]):
            if not isinstance(node, Choice):
                continue
            left = cat_k(tables.first_of(node.left), ctx, k)
            right = cat_k(tables.first_of(node.right), ctx, k)
            clash = left & right
            if clash:
                violations.append(ClassViolation(name, render_expr(node), _sorted_witnesses(clash)))
    return ClassReport(f"strong-LL({k})", not violations, tuple(violations))


# --- right-linear grammars -------------------------------------------------


def is_right_linear(obj: Grammar | Expr) -> bool:
    """Concatenation only as terminal-then-rest; choice of right-linear
    parts; atoms are right-linear.  Predicates and sugar are not."""
    if isinstance(obj, Grammar):
        return all(is_right_linear(e) for e in obj.expressions())
    expr = obj
    if isinstance(expr, (Empty, Terminal, NonTerminal)):
        return True
    if isinstance(expr, Concat):
        return isinstance(expr.left, Terminal) and is_right_linear(expr.right)
    if isinstance(expr, Choice):
        return is_right_linear(expr.left) and is_right_linear(expr.right)
    return False


def _linearize(alt: Expr) -> tuple[list[str], str | None]:
    """A right-linear alternative as (terminal chain, optional tail)."""
    symbols: list[str] = []
    expr = alt
    while isinstance(expr, Concat):
        if not isinstance(expr.left, Terminal):
            raise GrammarError(f"not right-linear: {render_expr(alt)}")
        symbols.append(expr.left.symbol)
        expr = expr.right
    if isinstance(expr, Terminal):
        symbols.append(expr.symbol)
        return symbols, None
    if isinstance(expr, Empty):
        return symbols, None
    if isinstance(expr, NonTerminal):
        return symbols, expr.name
    raise GrammarError(f"not right-linear: {render_expr(alt)}")


def rl_to_dfa(g: Grammar, alphabet: Iterable[str] = ()) -> Dfa:
    """Encode a right-linear grammar as an NFA (one state per non-terminal
    plus an accept state) and determinize it."""
    if not is_right_linear(g):
        raise GrammarError("not a right-linear grammar")
    state_of = {name: i + 1 for i, name in enumerate(g.nonterminals)}
    accept = len(g.nonterminals) + 1
    counter = itertools.count(accept + 1)
    moves: dict[tuple[int, str], set[int]] = {}
    eps: dict[int, set[int]] = {}
    accepting: set[int] = {accept}

    def add_alt(src: int, alt: Expr) -> None:
        symbols, tail = _linearize(alt)
        if not symbols:
            if tail is None:
                accepting.add(src)
            else:
                eps.setdefault(src, set()).add(state_of[tail])
            return
        cur = src
        for i, ch in enumerate(symbols):
            last = i == len(symbols) - 1
            target = (state_of[tail] if tail else accept) if last else next(counter)
            moves.setdefault((cur, ch), set()).add(target)
            cur = target

    for alt in alternatives(g.start):
        add_alt(0, alt)
    for name in g.nonterminals:
        for alt in alternatives(g.productions[name]):
            add_alt(state_of[name], alt)

    used = {ch for (_, ch) in moves}
    n_states = max([accept, *[t for targets in moves.values() for t in targets]]) + 1
    return nfa_to_dfa(n_states, 0, accepting, moves, eps, used | set(alphabet))


def prefix_property(g: Grammar) -> bool:
    """True iff no accepted string is a proper prefix of another accepted
    string: in the determinized automaton, no accepting state may reach an
    accepting state over a non-empty path."""
    dfa = rl_to_dfa(g)
    order = sorted(dfa.alphabet)
    for source in dfa.accepting:
        seen: set[int] = set()
        frontier = [dfa.step(source, ch) for ch in order]
        while frontier:
            state = frontier.pop()
            if state in seen:
                continue
            seen.add(state)
            if state in dfa.accepting:
                return False
            frontier.extend(dfa.step(state, ch) for ch in order)
    return True


# --- regular partitions ----------------------------------------------------


@dataclass(frozen=True)
class PartitionReport:
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass(frozen=True)
class RegularPartition:
    """Ordered named blocks, each a right-linear grammar over terminals
    plus the end marker, jointly slicing the marker-terminated strings."""

    blocks: tuple[tuple[str, Grammar], ...]

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.blocks)

    def grammar(self, name: str) -> Grammar:
        for block_name, g in self.blocks:
            if block_name == name:
                return g
        raise KeyError(name)

    def payload_alphabet(self) -> frozenset[str]:
        out: set[str] = set()
        for _, g in self.blocks:
            out |= g.terminals
        return frozenset(out)

    def dfas(self, alphabet: Iterable[str]) -> dict[str, Dfa]:
        alpha = set(alphabet) | {END_MARKER}
        return {name: rl_to_dfa(g, alpha) for name, g in self.blocks}

    def validate(self, alphabet: Iterable[str] | None = None) -> PartitionReport:
        """Exact partition laws by automata algebra: pairwise disjointness
        and coverage of exactly the marker-terminated strings."""
        problems: list[str] = []
        if not self.blocks:
            return PartitionReport(("partition has no blocks",))
        for name, g in self.blocks:
            if not is_right_linear(g):
                problems.append(f"block {name} is not right-linear")
        if problems:
            return PartitionReport(tuple(problems))
        alpha = frozenset(alphabet) if alphabet is not None else self.payload_alphabet()
        dfas = self.dfas(alpha)
        names = self.names()
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                both = intersect(dfas[a], dfas[b])
                witness = both.shortest_accepted()
                if witness is not None:
                    problems.append(f"blocks {a} and {b} overlap on {witness!r}")
        universe = marker_universe(alpha, END_MARKER)
        combined = None
        for name in names:
            combined = dfas[name] if combined is None else union(combined, dfas[name])
        missing = difference(universe, combined).shortest_accepted()
        if missing is not None:
            problems.append(f"blocks do not cover {missing!r}")
        stray = difference(combined, universe).shortest_accepted()
        if stray is not None:
            problems.append(f"block string {stray!r} lies outside the marker-terminated universe")
        return PartitionReport(tuple(problems))

    def require_valid(self, alphabet: Iterable[str] | None = None) -> None:
        report = self.validate(alphabet)
        if not report.ok:
            raise GrammarError("invalid partition: " + "; ".join(report.problems))


def prefix_partition(alphabet: Iterable[str], k: int) -> RegularPartition:
    """The partition of marker-terminated strings by their k-prefix: one
    block per short string ``w$`` (|w| < k) and one per k-wide window."""
    alpha = sorted(set(alphabet))
    blocks: list[tuple[str, Grammar]] = []

    def name_for(tag: str) -> str:
        return "p_" + tag.replace(END_MARKER, "E")

    def chain(symbols: Sequence[str], tail: Expr) -> Expr:
        expr = tail
        for ch in reversed(symbols):
            expr = Concat(Terminal(ch), expr)
        return expr

    for n in range(k):
        for tup in itertools.product(alpha, repeat=n):
            tag = "".join(tup) + END_MARKER
            expr = chain(tup, Terminal(END_MARKER))
            blocks.append((name_for(tag), Grammar(("N",), {"N": expr}, NonTerminal("N"))))
    for tup in itertools.product(alpha, repeat=k):
        tag = "".join(tup)
        rest_alts: list[Expr] = [Concat(Terminal(ch), NonTerminal("R")) for ch in alpha]
        rest_alts.append(Terminal(END_MARKER))
        rest: Expr = rest_alts[-1]
        for part in reversed(rest_alts[:-1]):
            rest = Choice(part, rest)
        g = Grammar(
            ("N", "R"),
            {"N": chain(tup, NonTerminal("R")), "R": rest},
            NonTerminal("N"),
        )
        blocks.append((name_for(tag), g))
    return RegularPartition(tuple(blocks))


# --- lookahead blocks ------------------------------------------------------

Symbol = tuple[str, str]  # ("t", char) | ("n", name)


def _symbol_sequence(alt: Expr) -> list[Symbol]:
    out: list[Symbol] = []
    for part in concat_parts(alt):
        if isinstance(part, Empty):
            continue
        if isinstance(part, Terminal):
            out.append(("t", part.symbol))
        elif isinstance(part, NonTerminal):
            out.append(("n", part.name))
        else:
            raise GrammarError(
                f"alternative is not a symbol sequence: {render_expr(alt)}; normalize first"
            )
    return out


def _symbol_alternatives(g: Grammar) -> dict[str, list[list[Symbol]]]:
    return {
        name: [_symbol_sequence(alt) for alt in alternatives(g.productions[name])]
        for name in g.nonterminals
    }


def _right_context_rules(g: Grammar, rules: dict[str, list[list[Symbol]]]) -> dict[str, list[list[Symbol]]]:
    """Grammar of the suffixes that can follow each non-terminal in a
    complete marker-terminated match: one rule per occurrence (the symbols
    after the occurrence, then the context of the owner), seeded with the
    bare marker at the start symbol."""
    rc: dict[str, list[list[Symbol]]] = {_rc(name): [] for name in g.nonterminals}
    if not isinstance(g.start, NonTerminal):
        raise GrammarError("right contexts need a single-non-terminal start; normalize first")
    rc[_rc(g.start.name)].append([("t", END_MARKER)])
    for owner, alts in rules.items():
        for alt in alts:
            for i, (kind, name) in enumerate(alt):
                if kind == "n":
                    rc[_rc(name)].append(alt[i + 1:] + [("n", _rc(owner))])
    return rc


def _rc(name: str) -> str:
    return f"__rc_{name}"


def _cfl_dfa_nonempty(rules: dict[str, list[list[Symbol]]], start: str, dfa: Dfa) -> bool:
    """Emptiness of (context-free language ∩ automaton language) by the
    triple construction, reduced to reachability over state pairs."""
    states = range(dfa.n_states)
    identity = frozenset((q, q) for q in states)
    term_rel: dict[str, frozenset[tuple[int, int]]] = {}
    for ch in dfa.alphabet:
        term_rel[ch] = frozenset((q, dfa.step(q, ch)) for q in states)
    rel: dict[str, frozenset[tuple[int, int]]] = {name: frozenset() for name in rules}

    def compose(left: frozenset, right: frozenset) -> frozenset:
        by_src: dict[int, set[int]] = {}
        for a, b in right:
            by_src.setdefault(a, set()).add(b)
        return frozenset((a, c) for a, b in left for c in by_src.get(b, ()))

    changed = True
    while changed:
        changed = False
        for name, alts in rules.items():
            value: set[tuple[int, int]] = set(rel[name])
            for alt in alts:
                acc = identity
                for kind, sym in alt:
                    # a terminal outside the automaton's alphabet relates nothing
                    step = term_rel.get(sym, frozenset()) if kind == "t" else rel[sym]
                    acc = compose(acc, step)
                    if not acc:
                        break
                value |= acc
            frozen = frozenset(value)
            if frozen != rel[name]:
                rel[name] = frozen
                changed = True
    return any((dfa.start, f) in rel[start] for f in dfa.accepting)


class _BlockAnalyzer:
    """Shared machinery for block-set queries against one grammar and one
    partition: symbol rules, right-context rules, and block automata."""

    def __init__(self, g: Grammar, partition: RegularPartition):
        require_bnf(g, ordered=False)
        self.grammar = g
        self.partition = partition
        self.rules = _symbol_alternatives(g)
        self.rc = _right_context_rules(g, self.rules)
        alpha = g.terminals | partition.payload_alphabet()
        self.dfas = partition.dfas(alpha)

    def block_set(self, alt: Expr, owner: str) -> tuple[str, ...]:
        if owner not in self.grammar.productions:
            raise GrammarError(f"unknown non-terminal {owner}")
        combined = dict(self.rules)
        combined.update(self.rc)
        query = "__query"
        combined[query] = [
            _symbol_sequence(a) + [("n", _rc(owner))] for a in alternatives(alt)
        ]
        hits = []
        for name, _ in self.partition.blocks:
            dfa = self.dfas[name]
            if _cfl_dfa_nonempty(combined, query, dfa):
                hits.append(name)
        return tuple(hits)


def block(g: Grammar, alt: Expr, owner: str, partition: RegularPartition) -> tuple[str, ...]:
    """The partition blocks that the remaining input can lie in when
    ``alt`` matches for ``owner`` inside a complete marker-terminated
    match: exactly the blocks meeting (language of ``alt``) . (right
    contexts of ``owner``).  Empty-language alternatives hit no block."""
    partition.require_valid(g.terminals | partition.payload_alphabet())
    return _BlockAnalyzer(g, partition).block_set(alt, owner)


def is_ll_regular(g: Grammar, partition: RegularPartition) -> ClassReport:
    """LL-regular w.r.t. the given partition: per choice, the block sets
    of the two branches are disjoint."""
    g = remove_useless(normalize_bnf(desugar(g)))
    partition.require_valid(g.terminals)
    analyzer = _BlockAnalyzer(g, partition)
    violations: list[ClassViolation] = []
    for name in g.nonterminals:
        for node in walk(g.productions[name]):
            if not isinstance(node, Choice):
                continue
            left = set(analyzer.block_set(node.left, name))
            right = set(analyzer.block_set(node.right, name))
            clash = left & right
            if clash:
                violations.append(
                    ClassViolation(name, render_expr(node), tuple(sorted(clash)))
                )
    return ClassReport("LL-regular", not violations, tuple(violations))
