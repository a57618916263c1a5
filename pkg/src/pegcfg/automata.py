"""Finite automata for the regular-language side of the analyses.

Right-linear grammars encode NFAs in the standard way (one state per
non-terminal plus an accept state); subset construction yields total
DFAs over an explicit alphabet.  Products, complement, and emptiness are
all that partition validation and lookahead-block computation need, and
a shortest-witness search makes violation reports concrete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable


@dataclass(frozen=True)
class Dfa:
    alphabet: frozenset[str]
    n_states: int
    start: int
    accepting: frozenset[int]
    delta: dict[tuple[int, str], int]  # total over states x alphabet

    def step(self, state: int, symbol: str) -> int:
        return self.delta[(state, symbol)]

    def accepts(self, text: str) -> bool:
        state = self.start
        for ch in text:
            if ch not in self.alphabet:
                return False
            state = self.step(state, ch)
        return state in self.accepting

    def extended(self, alphabet: Iterable[str]) -> "Dfa":
        """Same language over a larger alphabet; new symbols go to a sink."""
        alpha = self.alphabet | frozenset(alphabet)
        if alpha == self.alphabet:
            return self
        sink = self.n_states
        delta = dict(self.delta)
        for state in range(self.n_states + 1):
            for ch in alpha:
                delta.setdefault((state, ch), sink)
        return Dfa(alpha, self.n_states + 1, self.start, self.accepting, delta)

    def complement(self) -> "Dfa":
        acc = frozenset(range(self.n_states)) - self.accepting
        return Dfa(self.alphabet, self.n_states, self.start, acc, self.delta)

    def is_empty(self) -> bool:
        return self.shortest_accepted() is None

    def shortest_accepted(self) -> str | None:
        """BFS for a shortest accepted string; None when the language is empty."""
        order = sorted(self.alphabet)
        seen = {self.start}
        frontier: list[tuple[int, str]] = [(self.start, "")]
        while frontier:
            nxt: list[tuple[int, str]] = []
            for state, path in frontier:
                if state in self.accepting:
                    return path
                for ch in order:
                    tgt = self.step(state, ch)
                    if tgt not in seen:
                        seen.add(tgt)
                        nxt.append((tgt, path + ch))
            frontier = nxt
        return None


def product(a: Dfa, b: Dfa, keep: Callable[[bool, bool], bool]) -> Dfa:
    """Reachable product automaton; ``keep`` decides acceptance from the
    component verdicts (and/or/minus as needed)."""
    alpha = a.alphabet | b.alphabet
    a = a.extended(alpha)
    b = b.extended(alpha)
    order = sorted(alpha)
    index: dict[tuple[int, int], int] = {(a.start, b.start): 0}
    todo = [(a.start, b.start)]
    delta: dict[tuple[int, str], int] = {}
    accepting = set()
    while todo:
        pair = todo.pop()
        state = index[pair]
        if keep(pair[0] in a.accepting, pair[1] in b.accepting):
            accepting.add(state)
        for ch in order:
            target = (a.step(pair[0], ch), b.step(pair[1], ch))
            if target not in index:
                index[target] = len(index)
                todo.append(target)
            delta[(state, ch)] = index[target]
    return Dfa(frozenset(alpha), len(index), 0, frozenset(accepting), delta)


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x and y)


def union(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x or y)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x and not y)


def marker_universe(terminals: Iterable[str], marker: str) -> Dfa:
    """All strings of terminals followed by exactly one end marker."""
    alpha = frozenset(terminals) | {marker}
    # 0: reading payload, 1: saw the marker, 2: sink
    delta: dict[tuple[int, str], int] = {}
    for ch in alpha:
        delta[(0, ch)] = 1 if ch == marker else 0
        delta[(1, ch)] = 2
        delta[(2, ch)] = 2
    return Dfa(alpha, 3, 0, frozenset({1}), delta)


def nfa_to_dfa(
    n_states: int,
    start: int,
    accepting: set[int],
    moves: dict[tuple[int, str], set[int]],
    eps: dict[int, set[int]],
    alphabet: Iterable[str],
) -> Dfa:
    alpha = frozenset(alphabet)
    order = sorted(alpha)

    def closure(states: frozenset[int]) -> frozenset[int]:
        out = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in eps.get(s, ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    start_set = closure(frozenset({start}))
    index: dict[frozenset[int], int] = {start_set: 0}
    todo = [start_set]
    delta: dict[tuple[int, str], int] = {}
    finals = set()
    while todo:
        cur = todo.pop()
        state = index[cur]
        if cur & accepting:
            finals.add(state)
        for ch in order:
            nxt = closure(frozenset(t for s in cur for t in moves.get((s, ch), ())))
            if nxt not in index:
                index[nxt] = len(index)
                todo.append(nxt)
            delta[(state, ch)] = index[nxt]
    return Dfa(alpha, len(index), 0, frozenset(finals), delta)
