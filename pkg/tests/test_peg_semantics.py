"""The ordered matcher: reference examples, determinism, the subset law
against the non-deterministic reading, and the completeness guard."""

import pytest

from pegcfg import (
    GrammarError,
    Not,
    Terminal,
    cfg_match,
    parse_grammar,
    peg_language,
    peg_match,
)
from pegcfg.cfg import strings_over
from pegcfg.equivalence import GeneratorConfig, random_grammar
from pegcfg import fixtures


def test_g1_fails_on_abac():
    assert peg_match(fixtures.g1(), "abac").failed


def test_g4_commits_to_first_branch():
    assert peg_match(fixtures.g4(), "aa").consumed == 1


def test_not_predicate_succeeds_on_failure():
    g = fixtures.g1()
    assert peg_match(g, "b", Not(Terminal("a"))).consumed == 0
    assert peg_match(g, "a", Not(Terminal("a"))).failed


def test_terminal_fails_at_end_of_input():
    g = fixtures.g1()
    assert peg_match(g, "", Terminal("a")).failed


def test_language_g2():
    assert peg_language(fixtures.g2(), 2) == {"a", "ab", "c"}


def test_language_g2_swapped():
    assert peg_language(fixtures.g2_swapped(), 2) == {"a", "c", "cd"}


def test_language_g3():
    assert peg_language(fixtures.g3(), 1) == {"", "a"}


def test_choice_order_matters():
    assert peg_language(fixtures.g2(), 2) != peg_language(fixtures.g2_swapped(), 2)


def test_left_recursion_rejected_before_matching():
    g = parse_grammar("start: A\nA -> A 'a' | 'a'\n")
    with pytest.raises(GrammarError, match="left-recursive: {A}"):
        peg_match(g, "aa")


def test_prefix_mode_is_extension_sensitive():
    # the G1 grammar matches ab outright yet fails on the extension abac
    g = fixtures.g1()
    assert peg_match(g, "ab").consumed == 2
    assert peg_match(g, "abac").failed
    assert "ab" in peg_language(g, 2, "prefix")


@pytest.mark.parametrize("seed", range(40))
def test_memo_and_naive_agree(seed):
    g = random_grammar(GeneratorConfig(seed=900 + seed, constraint="complete"))
    for text in strings_over(g.matching_alphabet or ("a",), 6):
        assert peg_match(g, text, memo=True) == peg_match(g, text, memo=False)


@pytest.mark.parametrize("seed", range(40))
def test_ordered_match_is_also_nondeterministic_match(seed):
    g = random_grammar(GeneratorConfig(seed=950 + seed, constraint="complete"))
    for text in strings_over(g.matching_alphabet or ("a",), 6):
        outcome = peg_match(g, text)
        if outcome.consumed is not None:
            assert outcome.consumed in cfg_match(g, text).lengths


@pytest.mark.parametrize("seed", range(20))
def test_total_on_complete_grammars(seed):
    g = random_grammar(GeneratorConfig(seed=990 + seed, constraint="complete"))
    for text in strings_over(g.matching_alphabet or ("a",), 5):
        outcome = peg_match(g, text)
        assert outcome.failed or 0 <= outcome.consumed <= len(text)


def test_result_renders_like_the_cli():
    assert str(peg_match(fixtures.g1(), "abac")) == "fail"
    assert str(peg_match(fixtures.g1(), "ab")) == "consumed 2"
