"""Language-preserving rewrites from the non-deterministic reading to the
ordered one.

The single semantic gap between the two readings is the choice operator,
so every rewrite here has one job: make sure the ordered matcher commits
to the branch the non-deterministic matcher would have needed.

* ``reorder_ll1``: for LL(1) grammars a stable nullable-last reordering
  of alternatives is already enough.
* ``phi_before``: strong-LL(k); guard each alternative in front with an
  and-predicate over its ``first_k . follow_k`` lookahead strings.
* ``phi_after``: strong-LL(k); guard each alternative behind with an
  and-predicate over the owner's ``follow_k`` strings, letting local
  backtracking undo a wrong commitment.
* ``pi_prefix``: right-linear grammars; plant the end marker at every
  alternative's end so the language gains the prefix property, after
  which the two readings agree outright.
* ``rho_ll_regular``: LL-regular; guard each alternative with a choice of
  the right-linear block grammars its remaining input can fall into.

``erase_predicates`` is the inverse direction: stripping the guards off a
transformed grammar recovers the source.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import (
    ClassReport,
    RegularPartition,
    _BlockAnalyzer,
    cat_k,
    compute_tables,
    is_ll_regular,
    is_right_linear,
    is_strong_llk,
)
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
    and_pred,
    choice_of_exprs,
)
from .grammar import (
    Grammar,
    GrammarError,
    desugar,
    normalize_bnf,
    nullable_nonterminals,
    remove_useless,
    require_bnf,
    expr_nullable,
)


class ClassCheckFailed(GrammarError):
    """A transform refused its input; the report says why."""

    def __init__(self, report: ClassReport):
        super().__init__("transformation refused: " + report.describe())
        self.report = report


@dataclass(frozen=True)
class TransformedGrammar:
    """A transform's output plus what the harness must know to run it:
    how many end markers to append to every input."""

    grammar: Grammar
    provenance: str
    marker_arity: int


def string_to_expr(x: str) -> Expr:
    """A string as a concatenation of terminals; empty string is ε."""
    expr: Expr = EMPTY
    for ch in reversed(x):
        term = Terminal(ch)
        expr = term if isinstance(expr, Empty) else Concat(term, expr)
    return expr


def choice_of(strings) -> Expr:
    """A string set as a choice expression, one alternative per string,
    ordered by length then lexicographically; the empty set is ε."""
    ordered = sorted(set(strings), key=lambda s: (len(s), s))
    return choice_of_exprs([string_to_expr(s) for s in ordered])


def reorder_ll1(g: Grammar) -> Grammar:
    """Stable-partition each production's alternatives so the ones that
    can match the empty string come last; relative order is otherwise
    kept, and the non-deterministic language is unchanged."""
    g = desugar(g)
    require_bnf(g, ordered=False)
    nullable = nullable_nonterminals(g)
    prods = {}
    for name in g.nonterminals:
        alts = alternatives(g.productions[name])
        solid = [a for a in alts if not expr_nullable(a, nullable)]
        soft = [a for a in alts if expr_nullable(a, nullable)]
        prods[name] = choice_of_exprs(solid + soft)
    return Grammar(g.nonterminals, prods, g.start)


def _guarded(
    alts: list[Expr],
    guard_for,
    *,
    after: bool,
    exempt_last: bool,
) -> Expr:
    out = []
    for i, alt in enumerate(alts):
        if exempt_last and i == len(alts) - 1:
            out.append(alt)
            continue
        guard = guard_for(alt)
        out.append(Concat(alt, guard) if after else Concat(guard, alt))
    return choice_of_exprs(out)


def phi_before(g: Grammar, k: int, exempt_last: bool = True) -> TransformedGrammar:
    """Prepend to each alternative an and-predicate over the k-wide
    strings that select it; with ``exempt_last`` (the default) the final
    alternative of each production keeps no guard, since it is the branch
    of last resort anyway."""
    g = remove_useless(desugar(g))
    report = is_strong_llk(g, k)
    if not report.holds:
        raise ClassCheckFailed(report)
    tables = compute_tables(g, k)
    g = tables.grammar
    prods = {}
    for name in g.nonterminals:
        follow = tables.follow[name]

        def guard(alt: Expr) -> Expr:
            return and_pred(choice_of(cat_k(tables.first_of(alt), follow, k)))

        prods[name] = _guarded(
            alternatives(g.productions[name]), guard, after=False, exempt_last=exempt_last
        )
    out = Grammar(g.nonterminals, prods, g.start)
    return TransformedGrammar(out, f"phi_before k={k}", k)


def phi_after(g: Grammar, k: int, exempt_last: bool = False) -> TransformedGrammar:
    """Append to each alternative an and-predicate over the owner's
    follow strings; defaults to guarding every alternative, sole ones
    included."""
    g = remove_useless(desugar(g))
    report = is_strong_llk(g, k)
    if not report.holds:
        raise ClassCheckFailed(report)
    tables = compute_tables(g, k)
    g = tables.grammar
    prods = {}
    for name in g.nonterminals:
        guard_expr = and_pred(choice_of(tables.follow[name]))
        prods[name] = _guarded(
            alternatives(g.productions[name]),
            lambda alt: guard_expr,
            after=True,
            exempt_last=exempt_last,
        )
    out = Grammar(g.nonterminals, prods, g.start)
    return TransformedGrammar(out, f"phi_after k={k}", k)


def pi_prefix(g: Grammar) -> TransformedGrammar:
    """Plant the end marker at the end of every alternative of a
    right-linear grammar: ε becomes the marker, a final terminal gets the
    marker after it, and a tail non-terminal is left to plant its own."""
    if not is_right_linear(g):
        raise GrammarError("the prefix-marker transform needs a right-linear grammar")

    def plant(expr: Expr) -> Expr:
        if isinstance(expr, Empty):
            return Terminal(END_MARKER)
        if isinstance(expr, Terminal):
            return Concat(expr, Terminal(END_MARKER))
        if isinstance(expr, NonTerminal):
            return expr
        if isinstance(expr, Concat):
            return Concat(expr.left, plant(expr.right))
        return Choice(plant(expr.left), plant(expr.right))  # Choice

    prods = {name: plant(g.productions[name]) for name in g.nonterminals}
    out = Grammar(g.nonterminals, prods, plant(g.start))
    return TransformedGrammar(out, "pi", 1)


def _apart(name: str, block_name: str, taken: set[str]) -> str:
    candidate = f"_{block_name}_{name}"
    while candidate in taken:
        candidate = "_" + candidate
    taken.add(candidate)
    return candidate


def rho_ll_regular(
    g: Grammar, partition: RegularPartition, exempt_last: bool = True
) -> TransformedGrammar:
    """Guard each alternative with an and-predicate choosing among the
    start symbols of the partition blocks its input can fall into, then
    append every block grammar with its non-terminals renamed apart."""
    g = remove_useless(normalize_bnf(desugar(g)))
    report = is_ll_regular(g, partition)
    if not report.holds:
        raise ClassCheckFailed(report)
    analyzer = _BlockAnalyzer(g, partition)

    taken = set(g.nonterminals)
    rename: dict[tuple[str, str], str] = {}
    appended_order: list[str] = []
    appended: dict[str, Expr] = {}
    block_start: dict[str, str] = {}

    def rename_expr(block_name: str, expr: Expr) -> Expr:
        if isinstance(expr, NonTerminal):
            return NonTerminal(rename[(block_name, expr.name)])
        if isinstance(expr, Concat):
            return Concat(rename_expr(block_name, expr.left), rename_expr(block_name, expr.right))
        if isinstance(expr, Choice):
            return Choice(rename_expr(block_name, expr.left), rename_expr(block_name, expr.right))
        return expr

    for block_name, bg in partition.blocks:
        for nt in bg.nonterminals:
            rename[(block_name, nt)] = _apart(nt, block_name, taken)
        if isinstance(bg.start, NonTerminal):
            block_start[block_name] = rename[(block_name, bg.start.name)]
        else:
            start_name = _apart("start", block_name, taken)
            rename[(block_name, "__start")] = start_name
            appended_order.append(start_name)
            appended[start_name] = rename_expr(block_name, bg.start)
            block_start[block_name] = start_name
        for nt in bg.nonterminals:
            appended_order.append(rename[(block_name, nt)])
            appended[rename[(block_name, nt)]] = rename_expr(block_name, bg.productions[nt])

    prods = {}
    for name in g.nonterminals:

        def guard(alt: Expr) -> Expr:
            hits = analyzer.block_set(alt, name)
            return and_pred(choice_of_exprs([NonTerminal(block_start[b]) for b in hits]))

        prods[name] = _guarded(
            alternatives(g.productions[name]), guard, after=False, exempt_last=exempt_last
        )
    for name in appended_order:
        prods[name] = appended[name]
    out = Grammar(g.nonterminals + tuple(appended_order), prods, g.start)
    names = ",".join(partition.names())
    return TransformedGrammar(out, f"rho blocks={names}", 1)


def erase_predicates(g: Grammar) -> Grammar:
    """Strip the guards: a predicate concatenated before or after an
    expression vanishes, a predicate standing alone becomes ε, everything
    else erases recursively.  Erasing a transformed grammar recovers its
    source productions exactly."""

    def erase(expr: Expr) -> Expr:
        if isinstance(expr, Concat):
            if isinstance(expr.left, Not):
                return erase(expr.right)
            if isinstance(expr.right, Not):
                return erase(expr.left)
            return Concat(erase(expr.left), erase(expr.right))
        if isinstance(expr, Not):
            return EMPTY
        if isinstance(expr, Choice):
            return Choice(erase(expr.left), erase(expr.right))
        if isinstance(expr, Star):
            return Star(erase(expr.inner))
        return expr

    prods = {name: erase(g.productions[name]) for name in g.nonterminals}
    return Grammar(g.nonterminals, prods, erase(g.start))
