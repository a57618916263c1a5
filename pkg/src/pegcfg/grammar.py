"""Grammar representation and structural operations.

A grammar is a tuple of non-terminals, a total production map from
non-terminal to parsing expression, and a start expression.  The terminal
set is implicit: every character that appears in a ``Terminal`` node,
except the reserved end-of-input marker ``$``, which is never considered
a member of the terminal alphabet even when a transformed grammar
mentions it.

The same ``Grammar`` value can be run under the non-deterministic matcher
(``cfg.cfg_match``) or the ordered/backtracking matcher (``peg.peg_match``);
nothing in the representation commits to either reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .exprs import (
    EMPTY,
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
    choice_of_exprs,
    has_node,
    referenced_nonterminals,
    referenced_terminals,
    walk,
)


class GrammarError(ValueError):
    """Malformed grammar, unmet precondition, or unusable input."""


@dataclass(frozen=True)
class Grammar:
    nonterminals: tuple[str, ...]
    productions: Mapping[str, Expr]
    start: Expr

    def __post_init__(self) -> None:
        declared = set(self.nonterminals)
        if len(declared) != len(self.nonterminals):
            raise GrammarError("duplicate non-terminal declaration")
        if set(self.productions) != declared:
            raise GrammarError("productions must cover exactly the declared non-terminals")
        for name, expr in self.productions.items():
            for ref in referenced_nonterminals(expr):
                if ref not in declared:
                    raise GrammarError(f"undeclared non-terminal {ref} in production of {name}")
        for ref in referenced_nonterminals(self.start):
            if ref not in declared:
                raise GrammarError(f"undeclared non-terminal {ref} in start expression")

    @property
    def terminals(self) -> frozenset[str]:
        """Implicit terminal alphabet; the end marker is never a member."""
        seen: set[str] = set(referenced_terminals(self.start))
        for expr in self.productions.values():
            seen |= referenced_terminals(expr)
        return frozenset(seen - {END_MARKER})

    @property
    def uses_marker(self) -> bool:
        exprs = [self.start, *self.productions.values()]
        return any(END_MARKER in referenced_terminals(e) for e in exprs)

    @property
    def matching_alphabet(self) -> tuple[str, ...]:
        """Characters enumeration should range over, marker included if used."""
        alpha = set(self.terminals)
        if self.uses_marker:
            alpha.add(END_MARKER)
        return tuple(sorted(alpha))

    def expressions(self) -> Iterator[Expr]:
        yield self.start
        for name in self.nonterminals:
            yield self.productions[name]

    def with_production(self, name: str, expr: Expr) -> "Grammar":
        prods = dict(self.productions)
        prods[name] = expr
        return Grammar(self.nonterminals, prods, self.start)


@dataclass(frozen=True)
class ProductionList:
    """Traditional view: ordered (non-terminal, choice-free right side) pairs."""

    entries: tuple[tuple[str, Expr], ...]
    start: str

    def __post_init__(self) -> None:
        for name, expr in self.entries:
            if has_node(expr, Choice) or has_node(expr, Not) or has_node(expr, Star):
                raise GrammarError(f"production {name} right side must be choice-free symbols")

    def nonterminals(self) -> tuple[str, ...]:
        seen: list[str] = []
        for name, _ in self.entries:
            if name not in seen:
                seen.append(name)
        return tuple(seen)


def cfg_to_pecfg(pl: ProductionList) -> Grammar:
    """Fold a production list into the function form.

    Productions of one non-terminal combine right-associatively into a
    choice, in listed order; the start expression is the start non-terminal.
    """
    if not pl.entries:
        raise GrammarError("empty production list")
    order = pl.nonterminals()
    if pl.start not in order:
        raise GrammarError(f"start non-terminal {pl.start} has no production")
    grouped: dict[str, list[Expr]] = {name: [] for name in order}
    for name, expr in pl.entries:
        grouped[name].append(expr)
    prods = {name: choice_of_exprs(parts) for name, parts in grouped.items()}
    return Grammar(order, prods, NonTerminal(pl.start))


def _distribute(expr: Expr) -> Expr:
    """Push concatenation below choice on both sides (valid under the
    non-deterministic reading only)."""
    if isinstance(expr, Choice):
        return Choice(_distribute(expr.left), _distribute(expr.right))
    if isinstance(expr, Concat):
        left = _distribute(expr.left)
        right = _distribute(expr.right)
        if isinstance(left, Choice):
            return choice_of_exprs([_distribute(Concat(alt, right)) for alt in alternatives(left)])
        if isinstance(right, Choice):
            return choice_of_exprs([_distribute(Concat(left, alt)) for alt in alternatives(right)])
        return Concat(left, right)
    return expr


def pecfg_to_cfg(g: Grammar) -> ProductionList:
    """Unfold choices back into a production list.

    Concatenation distributes over choice on both sides, alternatives are
    split, and duplicate alternatives of one non-terminal collapse
    (idempotence of unordered choice).
    """
    for expr in g.expressions():
        if has_node(expr, Not):
            raise GrammarError("predicates are not expressible as a traditional CFG")
        if has_node(expr, Star):
            raise GrammarError("desugar repetition before converting to a production list")
    if not isinstance(g.start, NonTerminal):
        raise GrammarError("start expression must be a single non-terminal")
    entries: list[tuple[str, Expr]] = []
    for name in g.nonterminals:
        seen: list[Expr] = []
        for alt in alternatives(_distribute(g.productions[name])):
            if alt not in seen:
                seen.append(alt)
                entries.append((name, alt))
    return ProductionList(tuple(entries), g.start.name)


# --- repetition sugar ------------------------------------------------------


def fresh_names(taken: Iterable[str]) -> Iterator[str]:
    """Deterministic fresh non-terminal names: _R1, _R2, ... skipping clashes."""
    used = set(taken)
    i = 0
    while True:
        i += 1
        name = f"_R{i}"
        if name not in used:
            used.add(name)
            yield name


def desugar(g: Grammar) -> Grammar:
    """Replace every repetition ``p*`` with a fresh non-terminal R where
    R -> p R | eps.  Structurally equal repetition bodies share one fresh
    non-terminal.  Grammars without repetition come back unchanged."""
    if not any(has_node(e, Star) for e in g.expressions()):
        return g
    names = fresh_names(g.nonterminals)
    by_body: dict[Expr, str] = {}
    added: list[tuple[str, Expr]] = []

    def rewrite(expr: Expr) -> Expr:
        if isinstance(expr, Star):
            body = rewrite(expr.inner)
            name = by_body.get(body)
            if name is None:
                name = next(names)
                by_body[body] = name
                added.append((name, Choice(Concat(body, NonTerminal(name)), EMPTY)))
            return NonTerminal(name)
        if isinstance(expr, Concat):
            return Concat(rewrite(expr.left), rewrite(expr.right))
        if isinstance(expr, Choice):
            return Choice(rewrite(expr.left), rewrite(expr.right))
        if isinstance(expr, Not):
            return Not(rewrite(expr.inner))
        return expr

    prods = {name: rewrite(g.productions[name]) for name in g.nonterminals}
    start = rewrite(g.start)
    for name, expr in added:
        prods[name] = expr
    return Grammar(g.nonterminals + tuple(name for name, _ in added), prods, start)


# --- nullability -----------------------------------------------------------


def nullable_nonterminals(g: Grammar) -> frozenset[str]:
    """Least fixed point of "can match the empty string" (predicate-free)."""
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for name in g.nonterminals:
            if name not in nullable and expr_nullable(g.productions[name], nullable):
                nullable.add(name)
                changed = True
    return frozenset(nullable)


def expr_nullable(expr: Expr, nullable: Iterable[str]) -> bool:
    nullset = set(nullable)
    if isinstance(expr, Empty):
        return True
    if isinstance(expr, Terminal):
        return False
    if isinstance(expr, NonTerminal):
        return expr.name in nullset
    if isinstance(expr, Concat):
        return expr_nullable(expr.left, nullset) and expr_nullable(expr.right, nullset)
    if isinstance(expr, Choice):
        return expr_nullable(expr.left, nullset) or expr_nullable(expr.right, nullset)
    if isinstance(expr, Star):
        return True
    raise GrammarError("nullability is defined for predicate-free expressions only")


# --- left recursion --------------------------------------------------------


def left_recursive_nonterminals(g: Grammar) -> frozenset[str]:
    """Non-terminals from which a leftmost-position cycle is reachable.

    Edges follow every subexpression that can be entered before any input
    is consumed: a concatenation exposes its right factor only when its
    left factor can succeed without consuming, and a predicate inspects
    the input at the current position, so its body counts.  An empty
    result means the backtracking matcher terminates on every input.
    """
    g = desugar(g)

    # "can succeed consuming nothing": predicates count as consuming nothing
    zero: set[str] = set()

    def zero_expr(expr: Expr) -> bool:
        if isinstance(expr, (Empty, Not)):
            return True
        if isinstance(expr, Terminal):
            return False
        if isinstance(expr, NonTerminal):
            return expr.name in zero
        if isinstance(expr, Concat):
            return zero_expr(expr.left) and zero_expr(expr.right)
        return zero_expr(expr.left) or zero_expr(expr.right)  # Choice

    changed = True
    while changed:
        changed = False
        for name in g.nonterminals:
            if name not in zero and zero_expr(g.productions[name]):
                zero.add(name)
                changed = True

    def begins(expr: Expr) -> set[str]:
        if isinstance(expr, NonTerminal):
            return {expr.name}
        if isinstance(expr, Concat):
            out = begins(expr.left)
            if zero_expr(expr.left):
                out |= begins(expr.right)
            return out
        if isinstance(expr, Choice):
            return begins(expr.left) | begins(expr.right)
        if isinstance(expr, Not):
            return begins(expr.inner)
        return set()

    edges = {name: begins(g.productions[name]) for name in g.nonterminals}

    def reach_plus(name: str) -> set[str]:
        seen: set[str] = set()
        stack = list(edges[name])
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            stack.extend(edges[cur])
        return seen

    reachable = {name: reach_plus(name) for name in g.nonterminals}
    on_cycle = {name for name in g.nonterminals if name in reachable[name]}
    return frozenset(name for name in g.nonterminals if reachable[name] & on_cycle or name in on_cycle)


# --- useless symbols -------------------------------------------------------


def remove_useless(g: Grammar) -> Grammar:
    """Drop non-productive and unreachable non-terminals (two classical
    passes, in that order) and prune dead choice branches.

    Predicate bodies are kept intact: a predicate consumes nothing, its
    interior only needs to be reachable.  Raises if the start expression
    itself cannot match anything.
    """
    productive: set[str] = set()

    def prod_expr(expr: Expr) -> bool:
        if isinstance(expr, (Empty, Terminal, Not)):
            return True
        if isinstance(expr, Star):
            return True
        if isinstance(expr, NonTerminal):
            return expr.name in productive
        if isinstance(expr, Concat):
            return prod_expr(expr.left) and prod_expr(expr.right)
        return prod_expr(expr.left) or prod_expr(expr.right)  # Choice

    changed = True
    while changed:
        changed = False
        for name in g.nonterminals:
            if name not in productive and prod_expr(g.productions[name]):
                productive.add(name)
                changed = True

    DEAD = object()

    def prune(expr: Expr):
        if isinstance(expr, NonTerminal):
            return expr if expr.name in productive else DEAD
        if isinstance(expr, Concat):
            left, right = prune(expr.left), prune(expr.right)
            if left is DEAD or right is DEAD:
                return DEAD
            return Concat(left, right)
        if isinstance(expr, Choice):
            left, right = prune(expr.left), prune(expr.right)
            if left is DEAD:
                return right
            if right is DEAD:
                return left
            return Choice(left, right)
        if isinstance(expr, Star):
            inner = prune(expr.inner)
            return EMPTY if inner is DEAD else Star(inner)
        return expr  # atoms and whole predicates

    start = prune(g.start)
    if start is DEAD:
        raise GrammarError("empty language: start expression is non-productive")
    pruned = {}
    for name in g.nonterminals:
        if name in productive:
            expr = prune(g.productions[name])
            assert expr is not DEAD
            pruned[name] = expr

    reached: set[str] = set()
    stack = list(referenced_nonterminals(start))
    while stack:
        name = stack.pop()
        if name in reached:
            continue
        reached.add(name)
        if name not in pruned:
            raise GrammarError(f"non-productive non-terminal {name} survives inside a predicate")
        stack.extend(referenced_nonterminals(pruned[name]))

    order = tuple(name for name in g.nonterminals if name in reached)
    return Grammar(order, {name: pruned[name] for name in order}, start)


# --- BNF structure ---------------------------------------------------------


@dataclass(frozen=True)
class BnfReport:
    """Outcome of the three structural checks; empty report means the
    grammar is in the shape the class checkers and transforms expect."""

    choice_in_concat: tuple[str, ...]
    start_is_single_nonterminal: bool
    nullable_order_violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return (
            not self.choice_in_concat
            and self.start_is_single_nonterminal
            and not self.nullable_order_violations
        )


def check_bnf(g: Grammar, nullable: Iterable[str] | None = None) -> BnfReport:
    """Report violations of the three structural properties: choices only
    at production top level, single non-terminal start, and within each
    choice no nullable branch before a non-nullable one.

    ``nullable`` may inject a precomputed nullable set; by default it is
    computed here, which requires a predicate-free grammar.
    """
    from .textfmt import render_expr

    nullset = frozenset(nullable) if nullable is not None else nullable_nonterminals(g)

    prop1: list[str] = []
    prop3: list[str] = []
    for name in g.nonterminals:
        for node in walk(g.productions[name]):
            if isinstance(node, Concat):
                for side in (node.left, node.right):
                    if has_node(side, Choice):
                        prop1.append(f"{name}: {render_expr(node)}")
                        break
            if isinstance(node, Choice):
                if expr_nullable(node.left, nullset) and not expr_nullable(node.right, nullset):
                    prop3.append(f"{name}: {render_expr(node)}")
    return BnfReport(
        choice_in_concat=tuple(prop1),
        start_is_single_nonterminal=isinstance(g.start, NonTerminal),
        nullable_order_violations=tuple(prop3),
    )


def require_bnf(g: Grammar, *, ordered: bool = True) -> None:
    """Raise with a pointed message when ``g`` lacks the required shape."""
    report = check_bnf(g)
    if report.choice_in_concat:
        raise GrammarError(
            "grammar lacks BNF structure: choice inside a concatenation at "
            + "; ".join(report.choice_in_concat)
        )
    if not report.start_is_single_nonterminal:
        raise GrammarError("grammar lacks BNF structure: start is not a single non-terminal")
    if ordered and report.nullable_order_violations:
        raise GrammarError(
            "grammar lacks BNF structure: nullable alternative before a non-nullable one at "
            + "; ".join(report.nullable_order_violations)
            + " (apply the nullable-last reordering first)"
        )


def normalize_bnf(g: Grammar) -> Grammar:
    """Establish the first two structural properties without changing the
    language under the non-deterministic reading: distribute concatenation
    over choice and, if needed, add a fresh start non-terminal.  Nullable
    ordering is a separate, order-changing step (``transforms.reorder_ll1``).
    """
    g = desugar(g)
    for expr in g.expressions():
        if has_node(expr, Not):
            raise GrammarError("normalization is defined for predicate-free grammars")
    order = g.nonterminals
    prods = {name: choice_of_exprs(alternatives(_distribute(g.productions[name]))) for name in order}
    start = g.start
    if not isinstance(start, NonTerminal):
        name = next(fresh_names(order))
        prods[name] = choice_of_exprs(alternatives(_distribute(start)))
        order = order + (name,)
        start = NonTerminal(name)
    return Grammar(order, prods, start)
