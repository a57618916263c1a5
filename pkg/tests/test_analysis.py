"""Lookahead tables, class checkers, automata, partitions, and block sets.

The block-set oracle here enumerates complete derivations directly (plain
DFS over sentential forms, recording which alternative each non-terminal
took and what input remained), so the grammar-times-automaton emptiness
construction is checked against the semantic definition itself.
"""

import itertools

import pytest

from pegcfg import (
    GrammarError,
    NonTerminal,
    RegularPartition,
    alternatives,
    block,
    cat_k,
    cfg_language,
    cfg_match,
    compute_tables,
    is_ll1,
    is_ll_regular,
    is_right_linear,
    is_strong_llk,
    oracle_membership,
    parse_grammar,
    prefix_partition,
    prefix_property,
    rl_to_dfa,
    take_k,
)
from pegcfg.cfg import strings_over
from pegcfg.equivalence import GeneratorConfig, random_grammar
from pegcfg.exprs import Concat, Empty, Terminal
from pegcfg import fixtures


# --- take_k and cat_k ---------------------------------------------------------


def test_take_k_cases():
    assert take_k("abc", 2) == "ab"
    assert take_k("a", 2) == "a"
    assert take_k("", 3) == ""


def test_cat_k_examples():
    assert cat_k({"ab"}, {"$$"}, 2) == {"ab"}
    assert cat_k({"c"}, {"$$"}, 2) == {"c$"}
    assert cat_k({""}, {"cd"}, 2) == {"cd"}


def test_take_k_composition_law():
    strings = ["".join(t) for n in range(4) for t in itertools.product("ab$", repeat=n)]
    for k in (1, 2, 3):
        for x in strings:
            for y in strings:
                assert take_k(x + y, k) == take_k(take_k(x, k) + take_k(y, k), k)


def test_prefix_concat_membership():
    import random

    rng = random.Random(7)
    pool = ["", "a", "ab", "ba", "abb", "bab"]
    for _ in range(200):
        k = rng.randint(1, 3)
        xs = frozenset(rng.sample(pool, 3))
        ys = frozenset(rng.sample(pool, 3))
        x = rng.choice([s for s in pool if take_k(s, k) in {take_k(v, k) for v in xs}])
        y = rng.choice([s for s in pool if take_k(s, k) in {take_k(v, k) for v in ys}])
        product = cat_k({take_k(v, k) for v in xs}, {take_k(v, k) for v in ys}, k)
        assert take_k(x + y, k) in product


# --- tables ---------------------------------------------------------------------


def test_follow2_of_c_in_g2():
    tables = compute_tables(fixtures.g2(), 2)
    assert tables.follow["C"] == {"d$", "$$"}


def test_first2_of_g2_branches():
    g = fixtures.g2()
    tables = compute_tables(g, 2)
    first_ab, first_c = [tables.first_of(alt) for alt in alternatives(g.productions["A"])]
    assert first_ab == {"ab"} and first_c == {"c"}


def test_first1_of_g3_start():
    g = fixtures.g3()
    tables = compute_tables(g, 1)
    assert tables.first_of(g.productions["S"]) == {"a", ""}


def test_follow1_matches_classical_tables():
    tables = compute_tables(fixtures.g2(), 1)
    assert tables.follow == {"S": {"$"}, "A": {"$"}, "B": {"$"}, "C": {"d", "$"}}


def test_follow_strings_have_width_k():
    for k in (1, 2, 3):
        tables = compute_tables(fixtures.g2(), k)
        for strings in tables.follow.values():
            assert strings and all(len(s) == k for s in strings)


def test_nullable_flags():
    tables = compute_tables(fixtures.g3(), 1)
    assert tables.nullable == {"S": True}


def test_k_bounds_enforced():
    with pytest.raises(ValueError):
        compute_tables(fixtures.g2(), 0)
    with pytest.raises(ValueError):
        compute_tables(fixtures.g2(), 9)


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("k", (1, 2))
def test_first_k_agrees_with_matcher(seed, k):
    """Table first sets equal the k-prefixes of what the matcher accepts."""
    g = random_grammar(
        GeneratorConfig(seed=1200 + seed, constraint="complete", max_nonterminals=2, max_alt_length=2)
    )
    tables = compute_tables(g, k)
    g = tables.grammar
    alpha = g.matching_alphabet or ("a",)
    for name in g.nonterminals:
        semantic = set()
        for text in strings_over(alpha, k + 2):
            for consumed in cfg_match(g, text, NonTerminal(name)).lengths:
                semantic.add(take_k(text[:consumed], k))
        assert semantic == tables.first[name]


# --- LL(1) and strong-LL(k) ------------------------------------------------------


def test_ll1_fixture_verdicts():
    assert is_ll1(fixtures.g3()).holds
    report = is_ll1(fixtures.g1())
    assert not report.holds
    assert report.violations[0].nonterminal == "A"
    assert report.violations[0].witnesses == ("a",)


def test_ll1_g2_witnesses():
    report = is_ll1(fixtures.g2())
    assert not report.holds
    assert report.violations[0].nonterminal == "S"
    assert report.violations[0].witnesses == ("a", "c")


def test_ll1_follow_restriction():
    g = parse_grammar("start: S\nS -> A 'a'\nA -> 'a' | eps\n")
    report = is_ll1(g)
    assert not report.holds and report.violations[0].nonterminal == "A"


def test_ll1_requires_nullable_last():
    with pytest.raises(GrammarError, match="reordering"):
        is_ll1(fixtures.g3_unordered())


def test_strong_llk_fixture_verdicts():
    assert is_strong_llk(fixtures.g2(), 2).holds
    assert not is_strong_llk(fixtures.g2(), 1).holds
    assert not is_strong_llk(fixtures.g5(), 2).holds
    assert not is_strong_llk(fixtures.g5(), 3).holds


def test_strong_llk_witnesses_have_width_at_most_k():
    report = is_strong_llk(fixtures.g2(), 1)
    assert all(len(w) <= 1 for v in report.violations for w in v.witnesses)


# --- right-linear machinery -------------------------------------------------------


def test_right_linear_fixtures():
    assert is_right_linear(fixtures.g4())
    assert not is_right_linear(fixtures.g1())
    for _, g in fixtures.g5_partition().blocks:
        assert is_right_linear(g)


def test_rl_to_dfa_singleton():
    g = parse_grammar("start: S\nS -> 'a'\n")
    dfa = rl_to_dfa(g)
    assert dfa.accepts("a") and not dfa.accepts("") and not dfa.accepts("aa")


def test_rl_to_dfa_empty_string_language():
    g = parse_grammar("start: S\nS -> eps\n")
    dfa = rl_to_dfa(g)
    assert dfa.accepts("") and not dfa.accepts("a")


def test_rl_to_dfa_rejects_non_right_linear():
    with pytest.raises(GrammarError, match="right-linear"):
        rl_to_dfa(fixtures.g1())


@pytest.mark.parametrize("block_name", ["B1", "B2", "B3", "B4", "B5"])
def test_rl_to_dfa_matches_enumeration(block_name):
    g = fixtures.g5_partition().grammar(block_name)
    dfa = rl_to_dfa(g, alphabet={"a", "c", "d"})
    language = cfg_language(g, 6)
    for text in strings_over(sorted({"a", "c", "d", "$"}), 6):
        assert dfa.accepts(text) == (text in language)


@pytest.mark.parametrize("seed", range(10))
def test_rl_to_dfa_matches_enumeration_random(seed):
    g = random_grammar(GeneratorConfig(seed=1500 + seed, constraint="right_linear"))
    dfa = rl_to_dfa(g)
    language = cfg_language(g, 6)
    for text in strings_over(g.matching_alphabet or ("a",), 6):
        assert dfa.accepts(text) == (text in language)


def test_prefix_property_fixtures():
    assert not prefix_property(fixtures.g4())
    assert prefix_property(parse_grammar("start: S\nS -> 'a'\n"))
    from pegcfg import pi_prefix

    assert prefix_property(pi_prefix(fixtures.g4()).grammar)


# --- partitions ----------------------------------------------------------------


def test_partition_validity_fixture():
    assert fixtures.g5_partition().validate({"a", "c", "d"}).ok
    assert fixtures.g5_partition_coarse().validate({"a", "c", "d"}).ok
    assert fixtures.g5_partition_trivial().validate({"a", "c", "d"}).ok


def test_partition_overlap_rejected():
    report = fixtures.g5_partition_overlap().validate({"a", "c", "d"})
    assert not report.ok
    assert any("overlap" in problem for problem in report.problems)


def test_partition_coverage_rejected():
    # drop the complement block: the all-a strings are no longer covered
    partial = RegularPartition(fixtures.g5_partition().blocks[:4])
    report = partial.validate({"a", "c", "d"})
    assert not report.ok
    assert any("cover" in problem for problem in report.problems)


def test_prefix_partition_is_valid():
    part = prefix_partition("ab", 2)
    assert len(part.blocks) == 1 + 2 + 4
    assert part.validate({"a", "b"}).ok


# --- block sets -----------------------------------------------------------------


def _derivation_records(g, text):
    """All (owner, alternative index, rest-of-input) triples appearing in
    complete derivations of ``text``; independent of every analysis."""
    rules = {
        name: [_symbols(alt) for alt in alternatives(g.productions[name])]
        for name in g.nonterminals
    }
    assert isinstance(g.start, NonTerminal)
    out = set()

    def go(pos, stack, trail):
        if not stack:
            if pos == len(text):
                out.update(trail)
            return
        head, rest = stack[0], stack[1:]
        if isinstance(head, str):
            if pos < len(text) and text[pos] == head:
                go(pos + 1, rest, trail)
            return
        name = head.name
        for index, symbols in enumerate(rules[name]):
            go(pos, tuple(symbols) + rest, trail | {(name, index, text[pos:])})

    go(0, (g.start,), frozenset())
    return out


def _symbols(alt):
    out = []
    stack = [alt]
    while stack:
        node = stack.pop()
        if isinstance(node, Concat):
            stack.extend((node.right, node.left))
        elif isinstance(node, Terminal):
            out.append(node.symbol)
        elif isinstance(node, Empty):
            continue
        else:
            out.append(node)
    return out


def _block_oracle(g, partition, max_len):
    """Semantic block sets per (owner, alternative index) by exhaustive
    derivation enumeration up to ``max_len`` payload characters."""
    hits = {}
    alpha = sorted(g.terminals)
    for text in strings_over(alpha, max_len):
        for owner, index, rest in _derivation_records(g, text):
            for name, bg in partition.blocks:
                if oracle_membership(bg, rest + "$"):
                    hits.setdefault((owner, index), set()).add(name)
    return hits


@pytest.mark.parametrize("partition_name", ["g5_partition", "g5_partition_coarse"])
def test_block_agrees_with_derivation_oracle(partition_name):
    g = fixtures.g5()
    partition = getattr(fixtures, partition_name)()
    semantic = _block_oracle(g, partition, 8)
    for name in g.nonterminals:
        for index, alt in enumerate(alternatives(g.productions[name])):
            assert set(block(g, alt, name, partition)) == semantic.get((name, index), set())


def test_block_fixture_values():
    g = fixtures.g5()
    part = fixtures.g5_partition()
    s_alts = alternatives(g.productions["S"])
    assert block(g, s_alts[0], "S", part) == ("B1", "B2")
    assert block(g, s_alts[1], "S", part) == ("B3", "B4")
    coarse = fixtures.g5_partition_coarse()
    assert block(g, s_alts[0], "S", coarse) == ("B1",)
    assert block(g, s_alts[1], "S", coarse) == ("B2",)


def test_block_of_empty_language_alternative():
    g = parse_grammar("start: S\nS -> 'a' | 'c'\n")
    part = fixtures.g5_partition()
    # an expression that cannot match anything hits no block
    dead = Concat(Terminal("a"), Concat(Terminal("a"), Terminal("b")))
    assert block(g, dead, "S", part) == ()


def test_ll_regular_fixture_verdicts():
    g = fixtures.g5()
    assert is_ll_regular(g, fixtures.g5_partition()).holds
    assert not is_ll_regular(g, fixtures.g5_partition_trivial()).holds


def test_ll_regular_coarse_partition_fails_inside_recursion():
    # the coarse split leaves both branches of A (and of B) in one block
    report = is_ll_regular(fixtures.g5(), fixtures.g5_partition_coarse())
    assert not report.holds
    owners = {v.nonterminal for v in report.violations}
    assert owners == {"A", "B"}


def test_ll_regular_for_strong_llk_grammar_with_prefix_partition():
    part = prefix_partition("abcd", 2)
    assert is_ll_regular(fixtures.g2(), part).holds


def test_ll_regular_rejects_invalid_partition():
    with pytest.raises(GrammarError, match="invalid partition"):
        is_ll_regular(fixtures.g5(), fixtures.g5_partition_overlap())
