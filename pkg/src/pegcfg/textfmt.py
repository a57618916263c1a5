"""Concrete grammar syntax.

One production per line, ``Name -> expr``; the first meaningful line is
``start: expr``.  Terminals are single-quoted single characters, ``eps``
is the empty expression, juxtaposition concatenates, ``|`` is choice
(right-associative, lowest precedence), ``!`` is the not-predicate, ``&``
abbreviates a doubled ``!``, postfix ``*`` is repetition sugar, and
parentheses group.  ``#`` starts a comment.  The end marker ``'$'`` is
rejected unless the caller opts in (transformed grammars and lookahead
machinery legitimately mention it).

Partition files hold several ``block <name>:`` sections, each a complete
grammar in the same syntax.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

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
)
from .grammar import Grammar, GrammarError

PROVENANCE_PREFIX = "# transform:"

_START_RE = re.compile(r"^(\s*)start\s*:(.*)$")
_PROD_RE = re.compile(r"^(\s*)([A-Za-z_][A-Za-z0-9_]*)\s*->(.*)$")
_BLOCK_RE = re.compile(r"^\s*block\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(#.*)?$")


class GrammarSyntaxError(GrammarError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class _Token:
    kind: str  # ident / quoted / punct
    text: str
    line: int
    column: int


_PUNCT = {"|", "!", "&", "*", "(", ")"}


def _tokenize(text: str, lineno: int, offset: int = 0) -> list[_Token]:
    """Tokenize an expression; ``offset`` shifts reported columns so they
    point into the original source line."""
    tokens: list[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = offset + i + 1
        if ch == "'":
            if i + 2 >= len(text) or text[i + 2] != "'":
                raise GrammarSyntaxError("terminal must be a single quoted character", lineno, col)
            inner = text[i + 1]
            if inner == "'":
                raise GrammarSyntaxError("quote is not a valid terminal character", lineno, col)
            tokens.append(_Token("quoted", inner, lineno, col))
            i += 3
            continue
        if ch in _PUNCT:
            tokens.append(_Token("punct", ch, lineno, col))
            i += 1
            continue
        if ch.isalnum() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], lineno, col))
            i = j
            continue
        raise GrammarSyntaxError(f"unexpected character {ch!r}", lineno, col)
    return tokens


class _ExprParser:
    def __init__(self, tokens: list[_Token], lineno: int, allow_marker: bool):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno
        self.allow_marker = allow_marker

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str) -> GrammarSyntaxError:
        tok = self.peek()
        col = tok.column if tok else (self.tokens[-1].column + 1 if self.tokens else 1)
        return GrammarSyntaxError(message, self.lineno, col)

    def parse(self) -> Expr:
        expr = self.choice()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek().text!r}")
        return expr

    def choice(self) -> Expr:
        left = self.sequence()
        tok = self.peek()
        if tok and tok.text == "|":
            self.pos += 1
            return Choice(left, self.choice())
        return left

    def sequence(self) -> Expr:
        parts = [self.prefixed()]
        while True:
            tok = self.peek()
            if tok is None or tok.text in {"|", ")"}:
                break
            parts.append(self.prefixed())
        out = parts[-1]
        for part in reversed(parts[:-1]):
            out = Concat(part, out)
        return out

    def prefixed(self) -> Expr:
        tok = self.peek()
        if tok and tok.text == "!":
            self.pos += 1
            return Not(self.prefixed())
        if tok and tok.text == "&":
            self.pos += 1
            return Not(Not(self.prefixed()))
        return self.postfixed()

    def postfixed(self) -> Expr:
        expr = self.atom()
        while True:
            tok = self.peek()
            if tok and tok.text == "*":
                self.pos += 1
                expr = Star(expr)
            else:
                return expr

    def atom(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.error("expected an expression")
        if tok.kind == "quoted":
            self.pos += 1
            if tok.text == END_MARKER and not self.allow_marker:
                raise GrammarSyntaxError(
                    "the end marker '$' is reserved; it may not appear in user grammars",
                    tok.line,
                    tok.column,
                )
            return Terminal(tok.text)
        if tok.kind == "ident":
            self.pos += 1
            if tok.text == "eps":
                return EMPTY
            return NonTerminal(tok.text)
        if tok.text == "(":
            self.pos += 1
            expr = self.choice()
            closing = self.peek()
            if closing is None or closing.text != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return expr
        raise self.error(f"unexpected {tok.text!r}")


def parse_expr(text: str, lineno: int = 1, allow_marker: bool = False, offset: int = 0) -> Expr:
    return _ExprParser(_tokenize(text, lineno, offset), lineno, allow_marker).parse()


def _blank(line: str) -> bool:
    for ch in line:
        if ch in " \t":
            continue
        return ch == "#"
    return True


def parse_grammar(text: str, allow_marker: bool = False) -> Grammar:
    """Parse grammar source into a ``Grammar``.

    Raises ``GrammarSyntaxError`` with line and column on bad syntax, and
    ``GrammarError`` for references to undeclared non-terminals (detected
    by ``Grammar`` construction).
    """
    start: Expr | None = None
    order: list[str] = []
    prods: dict[str, Expr] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if _blank(raw):
            continue
        if start is None:
            m = _START_RE.match(raw)
            if not m:
                raise GrammarSyntaxError("expected 'start: <expr>' first", lineno, 1)
            start = parse_expr(m.group(2), lineno, allow_marker, offset=m.start(2))
            continue
        m = _PROD_RE.match(raw)
        if not m:
            raise GrammarSyntaxError("expected 'Name -> <expr>'", lineno, 1)
        name = m.group(2)
        if name in ("eps", "start"):
            raise GrammarSyntaxError(f"{name!r} is a reserved word", lineno, len(m.group(1)) + 1)
        if name in prods:
            raise GrammarSyntaxError(f"duplicate production for {name}", lineno, len(m.group(1)) + 1)
        expr = parse_expr(m.group(3), lineno, allow_marker, offset=m.start(3))
        order.append(name)
        prods[name] = expr
    if start is None:
        raise GrammarSyntaxError("grammar has no 'start:' line", 1, 1)
    if not order:
        raise GrammarSyntaxError("grammar has no productions", 1, 1)
    return Grammar(tuple(order), prods, start)


# --- rendering -------------------------------------------------------------

_CHOICE, _CONCAT, _ATOM = 0, 1, 2


def render_expr(expr: Expr, _level: int = _CHOICE) -> str:
    if isinstance(expr, Empty):
        return "eps"
    if isinstance(expr, Terminal):
        return f"'{expr.symbol}'"
    if isinstance(expr, NonTerminal):
        return expr.name
    if isinstance(expr, Star):
        inner = render_expr(expr.inner, _ATOM)
        if not isinstance(expr.inner, (Empty, Terminal, NonTerminal)):
            inner = f"({inner})"
        return inner + "*"
    if isinstance(expr, Not):
        if isinstance(expr.inner, Not):
            return f"&({render_expr(expr.inner.inner)})"
        return f"!({render_expr(expr.inner)})"
    if isinstance(expr, Concat):
        text = f"{render_expr(expr.left, _CONCAT)} {render_expr(expr.right, _CONCAT)}"
        return f"({text})" if _level > _CONCAT else text
    if isinstance(expr, Choice):
        text = f"{render_expr(expr.left, _CHOICE + 1)} | {render_expr(expr.right, _CHOICE)}"
        return f"({text})" if _level > _CHOICE else text
    raise TypeError(f"not an expression: {expr!r}")


def render_grammar(g: Grammar, provenance: str | None = None) -> str:
    """Render a grammar so that parsing the result reproduces it exactly.

    ``provenance`` adds the transform header comment that also licenses
    the end marker on re-parse.
    """
    lines = []
    if provenance:
        lines.append(f"{PROVENANCE_PREFIX} {provenance}")
    lines.append(f"start: {render_expr(g.start)}")
    for name in g.nonterminals:
        lines.append(f"{name} -> {render_expr(g.productions[name])}")
    return "\n".join(lines) + "\n"


def grammar_file_allows_marker(text: str) -> bool:
    """Marker permission is sniffed from the transform provenance header."""
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped:
            continue
        return stripped.startswith(PROVENANCE_PREFIX)
    return False


def load_grammar_text(text: str) -> Grammar:
    return parse_grammar(text, allow_marker=grammar_file_allows_marker(text))


def parse_partition_blocks(text: str) -> list[tuple[str, Grammar]]:
    """Split a partition file into named block grammars.

    Block grammars may freely mention the end marker.  Right-linearity and
    the partition laws are checked by ``analysis.RegularPartition``.
    """
    sections: list[tuple[str, int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        m = _BLOCK_RE.match(raw)
        if m:
            sections.append((m.group(1), lineno, []))
            continue
        if not sections:
            if not _blank(raw):
                raise GrammarSyntaxError("expected 'block <name>:' first", lineno, 1)
            continue
        sections[-1][2].append(raw)
    if not sections:
        raise GrammarSyntaxError("partition file has no blocks", 1, 1)
    blocks = []
    names = set()
    for name, lineno, lines in sections:
        if name in names:
            raise GrammarSyntaxError(f"duplicate block name {name}", lineno, 1)
        names.add(name)
        blocks.append((name, parse_grammar("\n".join(lines), allow_marker=True)))
    return blocks
