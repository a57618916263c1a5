"""Differential harness: independent oracle, language diffing, and random
grammar generation.

The oracle answers membership by breadth-first rewriting of sentential
forms under the traditional generative reading, on purpose sharing no
code with the fixed-point matcher it is used to cross-check.  Search
stays finite by pruning forms whose terminal prefix disagrees with the
candidate, whose minimal yield is already too long, or whose length
exceeds a generous structural bound.

``compare_languages`` enumerates every payload string up to a length
bound, appends the requested number of end markers, and diffs exact
membership under the two readings.  For predicate-free grammars the
ordered reading can only lose strings, so a non-empty "only the ordered
side" bucket is flagged as incomparable: it contradicts the subset law
and means a bug, not a finding.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .cfg import cfg_match
from .exprs import (
    EMPTY,
    END_MARKER,
    Concat,
    Empty,
    Expr,
    NonTerminal,
    Terminal,
)
from .grammar import (
    Grammar,
    GrammarError,
    ProductionList,
    cfg_to_pecfg,
    desugar,
    left_recursive_nonterminals,
    pecfg_to_cfg,
    remove_useless,
)
from .peg import peg_match, require_complete
from .transforms import TransformedGrammar, reorder_ll1
from .analysis import is_ll1, is_right_linear, is_strong_llk


class OracleLimit(GrammarError):
    """The oracle's search budget ran out; the answer is unknown, which is
    reported loudly instead of guessed."""


def _min_yields(pl: ProductionList) -> dict[str, float]:
    rules: dict[str, list[list]] = {}
    for name, expr in pl.entries:
        parts = []
        stack = [expr]
        while stack:
            node = stack.pop()
            if isinstance(node, Concat):
                stack.extend((node.right, node.left))
            elif not isinstance(node, Empty):
                parts.append(node)
        rules.setdefault(name, []).append(parts)
    best: dict[str, float] = {name: float("inf") for name in rules}

    def cost(parts) -> float:
        total = 0.0
        for part in parts:
            total += 1 if isinstance(part, Terminal) else best[part.name]
        return total

    changed = True
    while changed:
        changed = False
        for name, alts in rules.items():
            value = min(cost(alt) for alt in alts)
            if value < best[name]:
                best[name] = value
                changed = True
    return best


def oracle_membership(g: Grammar, x: str, node_budget: int = 500_000) -> bool:
    """Exact membership of ``x`` by generative rewriting.

    States are (matched prefix length, remaining symbol stack); expanding
    the head non-terminal branches over its alternatives, a head terminal
    must equal the next candidate character.  Deliberately independent of
    the fixed-point matcher.
    """
    g = desugar(g)
    pl = pecfg_to_cfg(g)
    rules: dict[str, list[tuple]] = {}
    for name, expr in pl.entries:
        parts = []
        stack = [expr]
        while stack:
            node = stack.pop()
            if isinstance(node, Concat):
                stack.extend((node.right, node.left))
            elif not isinstance(node, Empty):
                parts.append(node)
        rules.setdefault(name, []).append(tuple(parts))
    min_yield = _min_yields(pl)

    max_form = (len(x) + 2) * (len(g.nonterminals) + 2) + 8
    start_sym = NonTerminal(pl.start)
    seen: set[tuple[int, tuple]] = set()
    frontier: list[tuple[int, tuple]] = [(0, (start_sym,))]
    visited = 0
    while frontier:
        nxt: list[tuple[int, tuple]] = []
        for at, form in frontier:
            visited += 1
            if visited > node_budget:
                raise OracleLimit("oracle search budget exhausted")
            if not form:
                if at == len(x):
                    return True
                continue
            head, rest = form[0], form[1:]
            if isinstance(head, Terminal):
                if at < len(x) and x[at] == head.symbol:
                    state = (at + 1, rest)
                    if state not in seen:
                        seen.add(state)
                        nxt.append(state)
                continue
            for alt in rules.get(head.name, ()):
                new_form = alt + rest
                if len(new_form) > max_form:
                    continue
                need = sum(
                    1 if isinstance(p, Terminal) else min_yield[p.name] for p in new_form
                )
                if at + need > len(x):
                    continue
                state = (at, new_form)
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    return False


# --- language diffing ------------------------------------------------------


@dataclass(frozen=True)
class DiffReport:
    max_len: int
    markers: int
    only_cfg: tuple[str, ...]
    only_peg: tuple[str, ...]
    common: int

    @property
    def verdict(self) -> str:
        if self.only_peg:
            return "incomparable"
        if self.only_cfg:
            return "cfg_superset"
        return "equal"


def _as_grammar(g: Grammar | TransformedGrammar) -> Grammar:
    return g.grammar if isinstance(g, TransformedGrammar) else g


def compare_languages(
    g: Grammar | TransformedGrammar,
    max_len: int,
    markers: int = 0,
    against: Grammar | TransformedGrammar | None = None,
) -> DiffReport:
    """Diff exact membership: ``g`` under the ordered reading versus
    ``against`` (default: ``g`` itself) under the non-deterministic one.

    Every payload string over the joint marker-free alphabet is tried
    with ``markers`` end markers appended; a side accepts when it
    consumes either the bare payload or payload plus markers.
    """
    peg_side = desugar(_as_grammar(g))
    cfg_side = desugar(_as_grammar(against)) if against is not None else peg_side
    require_complete(peg_side)
    alphabet = sorted((peg_side.terminals | cfg_side.terminals) - {END_MARKER})
    only_cfg: list[str] = []
    only_peg: list[str] = []
    common = 0
    for n in range(max_len + 1):
        for tup in itertools.product(alphabet, repeat=n):
            x = "".join(tup)
            text = x + END_MARKER * markers
            accepted = {len(x), len(text)}
            in_cfg = bool(accepted & cfg_match(cfg_side, text).lengths)
            in_peg = peg_match(peg_side, text, memo=True).consumed in accepted
            if in_cfg and in_peg:
                common += 1
            elif in_cfg:
                only_cfg.append(x)
            elif in_peg:
                only_peg.append(x)
    key = lambda s: (len(s), s)
    return DiffReport(
        max_len, markers, tuple(sorted(only_cfg, key=key)), tuple(sorted(only_peg, key=key)), common
    )


# --- random grammars -------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the seeded generator; same seed, same grammar.

    ``constraint`` is rejection-sampled: candidates are drawn, cleaned of
    useless symbols, and kept only when the matching checker agrees.
    ``complete`` additionally rejects left-recursive candidates (the
    LL-class constraints imply it on their own).
    """

    seed: int
    max_nonterminals: int = 3
    max_alternatives: int = 3
    max_alt_length: int = 3
    alphabet: str = "ab"
    constraint: str = "any"  # any | complete | ll1 | strong_llk | right_linear
    k: int = 2
    max_attempts: int = 600


_NT_NAMES = "ABCDEFGH"


def random_grammar(config: GeneratorConfig) -> Grammar:
    rng = random.Random(config.seed)
    for _ in range(config.max_attempts):
        candidate = _draw(rng, config)
        if candidate is None:
            continue
        try:
            candidate = remove_useless(candidate)
        except GrammarError:
            continue
        accepted = _satisfies(candidate, config)
        if accepted is not None:
            return accepted
    raise GrammarError(
        f"no grammar satisfying {config.constraint!r} within {config.max_attempts} attempts"
    )


def _draw(rng: random.Random, config: GeneratorConfig) -> Grammar | None:
    n = rng.randint(1, config.max_nonterminals)
    names = list(_NT_NAMES[:n])
    entries: list[tuple[str, Expr]] = []
    lookahead_style = config.constraint in ("ll1", "strong_llk")
    for i, name in enumerate(names):
        # references mostly stay at this non-terminal or below, so deep
        # candidates survive the reachability cleanup
        scope = names[i:] if len(names) > 1 and rng.random() < 0.7 else names
        link = NonTerminal(names[i + 1]) if i + 1 < len(names) else None
        if lookahead_style:
            # Bias toward acceptance: distinct leading terminals decide the
            # alternative, optionally followed by a nullable last branch.
            leads = list(config.alphabet)
            rng.shuffle(leads)
            n_alts = rng.randint(1, min(config.max_alternatives, len(leads)))
            for j, lead in enumerate(leads[:n_alts]):
                rest = _draw_alt(rng, config, scope, allow_empty=False)
                if j == 0 and link is not None:
                    rest = link if isinstance(rest, Empty) else Concat(link, rest)
                combined: Expr = Terminal(lead) if isinstance(rest, Empty) else Concat(Terminal(lead), rest)
                entries.append((name, combined))
            if rng.random() < 0.3:
                entries.append((name, EMPTY))
        else:
            if link is not None:
                entries.append((name, Concat(Terminal(rng.choice(config.alphabet)), link)))
            for _ in range(rng.randint(1, config.max_alternatives)):
                entries.append((name, _draw_alt(rng, config, scope)))
    try:
        return cfg_to_pecfg(ProductionList(tuple(entries), names[0]))
    except GrammarError:
        return None


def _draw_alt(
    rng: random.Random, config: GeneratorConfig, names: list[str], allow_empty: bool = True
) -> Expr:
    if config.constraint == "right_linear":
        length = rng.randint(1, max(1, config.max_alt_length))
        symbols: list[Expr] = [Terminal(rng.choice(config.alphabet)) for _ in range(length - 1)]
        if rng.random() < 0.4:
            symbols.append(NonTerminal(rng.choice(names)))
        else:
            symbols.append(Terminal(rng.choice(config.alphabet)))
        expr: Expr = symbols[-1]
        for part in reversed(symbols[:-1]):
            expr = Concat(part, expr)
        return expr
    if allow_empty and rng.random() < 0.15:
        return EMPTY
    low = 0 if not allow_empty else 1
    length = rng.randint(low, config.max_alt_length)
    if length == 0:
        return EMPTY
    parts: list[Expr] = []
    for _ in range(length):
        if rng.random() < 0.5 and names:
            parts.append(NonTerminal(rng.choice(names)))
        else:
            parts.append(Terminal(rng.choice(config.alphabet)))
    expr = parts[-1]
    for part in reversed(parts[:-1]):
        expr = Concat(part, expr)
    return expr


def _satisfies(candidate: Grammar, config: GeneratorConfig) -> Grammar | None:
    kind = config.constraint
    if kind == "any":
        return candidate
    if kind == "complete":
        return candidate if not left_recursive_nonterminals(candidate) else None
    if kind == "right_linear":
        # complete as well: the downstream pipeline runs both matchers
        if left_recursive_nonterminals(candidate):
            return None
        return candidate if is_right_linear(candidate) else None
    if kind in ("ll1", "strong_llk"):
        if left_recursive_nonterminals(candidate):
            return None
        try:
            ordered = reorder_ll1(candidate)
            report = is_ll1(ordered) if kind == "ll1" else is_strong_llk(ordered, config.k)
        except GrammarError:
            return None
        return ordered if report.holds else None
    raise ValueError(f"unknown constraint {kind!r}")
