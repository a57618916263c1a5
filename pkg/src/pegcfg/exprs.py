"""Parsing-expression trees.

Both grammar flavours handled by this package share one expression syntax:
empty, single-character terminal, non-terminal reference, concatenation,
choice, and the not-predicate, plus a repetition node that exists only as
sugar and is compiled away by ``grammar.desugar``.  Whether choice means
"either branch" or "second branch only if the first fails" is decided by
the matcher, not by the tree.

Nodes are immutable and compare structurally, so expression trees can be
used as dictionary keys and grammars can be compared for exact shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

Expr = Union["Empty", "Terminal", "NonTerminal", "Concat", "Choice", "Not", "Star"]


@dataclass(frozen=True)
class Empty:
    """Matches the empty string, consuming nothing."""


@dataclass(frozen=True)
class Terminal:
    """A single input character."""

    symbol: str

    def __post_init__(self) -> None:
        if len(self.symbol) != 1:
            raise ValueError(f"terminal must be a single character, got {self.symbol!r}")


@dataclass(frozen=True)
class NonTerminal:
    name: str


@dataclass(frozen=True)
class Concat:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Choice:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Not:
    """Predicate: succeeds consuming nothing iff ``inner`` fails.

    The and-predicate is not a node of its own; ``&p`` is stored as
    ``Not(Not(p))``.
    """

    inner: Expr


@dataclass(frozen=True)
class Star:
    """Repetition sugar; no matcher accepts it, desugar first."""

    inner: Expr


EMPTY = Empty()

END_MARKER = "$"


def walk(expr: Expr) -> Iterator[Expr]:
    """Pre-order traversal of every node in the tree."""
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Concat, Choice)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Not, Star)):
            stack.append(node.inner)


def alternatives(expr: Expr) -> list[Expr]:
    """Flatten a choice tree into its ordered list of alternatives."""
    if isinstance(expr, Choice):
        return alternatives(expr.left) + alternatives(expr.right)
    return [expr]


def choice_of_exprs(parts: list[Expr]) -> Expr:
    """Right-associated choice over ``parts``; empty list means ε."""
    if not parts:
        return EMPTY
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = Choice(part, out)
    return out


def concat_parts(expr: Expr) -> list[Expr]:
    """Flatten a concatenation tree into its ordered factors."""
    if isinstance(expr, Concat):
        return concat_parts(expr.left) + concat_parts(expr.right)
    return [expr]


def concat_of_exprs(parts: list[Expr]) -> Expr:
    """Right-associated concatenation over ``parts``; empty list means ε."""
    if not parts:
        return EMPTY
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = Concat(part, out)
    return out


def and_pred(expr: Expr) -> Expr:
    """The and-predicate ``&p``, stored as a doubled not."""
    return Not(Not(expr))


def referenced_nonterminals(expr: Expr) -> set[str]:
    return {node.name for node in walk(expr) if isinstance(node, NonTerminal)}


def referenced_terminals(expr: Expr) -> set[str]:
    return {node.symbol for node in walk(expr) if isinstance(node, Terminal)}


def has_node(expr: Expr, kind: type) -> bool:
    return any(isinstance(node, kind) for node in walk(expr))
