"""The guard-insertion rewrites, their golden renderings, the erasure
inverse, and the language-preservation laws behind each of them."""

import pytest

from pegcfg import (
    EMPTY,
    ClassCheckFailed,
    Concat,
    GrammarError,
    Terminal,
    alternatives,
    cfg_language,
    cfg_match,
    choice_of,
    compare_languages,
    erase_predicates,
    parse_grammar,
    peg_language,
    peg_match,
    phi_after,
    phi_before,
    pi_prefix,
    prefix_property,
    remove_useless,
    render_expr,
    render_grammar,
    reorder_ll1,
    rho_ll_regular,
    string_to_expr,
)
from pegcfg.cfg import strings_over
from pegcfg.equivalence import GeneratorConfig, random_grammar
from pegcfg import fixtures

PHI_BEFORE_G2 = """\
start: S
S -> &('a' 'b' | 'c' '$') A | B
A -> &('a' 'b') 'a' 'b' | C
B -> &('a' '$') 'a' | C 'd'
C -> 'c'
"""

PHI_AFTER_G2 = """\
start: S
S -> A &('$' '$') | B &('$' '$')
A -> 'a' 'b' &('$' '$') | C &('$' '$')
B -> 'a' &('$' '$') | C 'd' &('$' '$')
C -> 'c' &('$' '$' | 'd' '$')
"""


def _marked_language(g, max_len, markers):
    out = set()
    for x in strings_over(sorted(set(g.matching_alphabet) - {"$"}), max_len):
        if peg_match(g, x + "$" * markers, memo=True).consumed == len(x):
            out.add(x)
    return out


# --- reordering ----------------------------------------------------------------


def test_reorder_moves_nullable_last():
    g = fixtures.g3_unordered()
    assert reorder_ll1(g) == fixtures.g3()


def test_reorder_identity_when_ordered():
    assert reorder_ll1(fixtures.g3()) == fixtures.g3()


def test_reorder_changes_the_ordered_language():
    before = fixtures.g3_unordered()
    assert peg_language(before, 1) == {""}
    assert peg_language(reorder_ll1(before), 1) == {"", "a"}


def test_reorder_is_stable():
    g = parse_grammar("start: S\nS -> 'a' | eps | 'b' | eps\n")
    out = reorder_ll1(g)
    assert alternatives(out.productions["S"]) == [Terminal("a"), Terminal("b"), EMPTY, EMPTY]


# --- lookahead expression builders ----------------------------------------------


def test_choice_of_orders_and_associates():
    expr = choice_of({"ab", "c$"})
    assert render_expr(expr) == "'a' 'b' | 'c' '$'"


def test_choice_of_empty_set_is_epsilon():
    assert choice_of(set()) == EMPTY


def test_choice_of_singleton():
    assert render_expr(choice_of({"$$"})) == "'$' '$'"


def test_string_to_expr_empty():
    assert string_to_expr("") == EMPTY
    assert string_to_expr("ab") == Concat(Terminal("a"), Terminal("b"))


# --- the two strong-LL(k) rewrites ------------------------------------------------


def test_phi_before_matches_the_reference_rendering():
    result = phi_before(fixtures.g2(), 2)
    assert result.marker_arity == 2
    assert render_grammar(result.grammar) == PHI_BEFORE_G2


def test_phi_before_without_exemption_guards_everything():
    result = phi_before(fixtures.g2(), 2, exempt_last=False)
    text = render_grammar(result.grammar)
    assert "S -> &('a' 'b' | 'c' '$') A | &('a' '$' | 'c' 'd') B" in text
    assert "C -> &('c' '$' | 'c' 'd') 'c'" in text


def test_phi_after_matches_the_reference_rendering():
    result = phi_after(fixtures.g2(), 2)
    assert result.marker_arity == 2
    assert render_grammar(result.grammar) == PHI_AFTER_G2


def test_phi_language_with_markers():
    expected = {"a", "ab", "c", "cd"}
    assert _marked_language(phi_before(fixtures.g2(), 2).grammar, 2, 2) == expected
    assert _marked_language(phi_after(fixtures.g2(), 2).grammar, 2, 2) == expected


def test_phi_refuses_non_strong_llk():
    with pytest.raises(ClassCheckFailed):
        phi_before(fixtures.g5(), 2)
    with pytest.raises(ClassCheckFailed):
        phi_after(fixtures.g2(), 1)


def test_erase_inverts_phi_before():
    assert erase_predicates(phi_before(fixtures.g2(), 2).grammar) == fixtures.g2()


def test_erase_inverts_phi_after():
    assert erase_predicates(phi_after(fixtures.g2(), 2).grammar) == fixtures.g2()


@pytest.mark.parametrize("seed", range(20))
def test_phi_equivalence_on_random_strong_ll2(seed):
    g = random_grammar(GeneratorConfig(seed=3000 + seed, constraint="strong_llk", k=2))
    for transform in (phi_before, phi_after):
        result = transform(g, 2)
        assert compare_languages(result, 5, markers=2, against=g).verdict == "equal"
        assert erase_predicates(result.grammar) == remove_useless(g)


@pytest.mark.parametrize("seed", range(12))
def test_guard_transparency(seed):
    """Whatever the guarded grammar consumes, its erasure can consume."""
    g = random_grammar(GeneratorConfig(seed=3100 + seed, constraint="strong_llk", k=2))
    result = phi_before(g, 2)
    source = remove_useless(erase_predicates(result.grammar))
    for text in strings_over(sorted(set(g.matching_alphabet) | {"$"}), 4):
        outcome = peg_match(result.grammar, text)
        if outcome.consumed is not None:
            assert outcome.consumed in cfg_match(source, text).lengths


def test_structure_preserved():
    g = fixtures.g2()
    for result in (phi_before(g, 2), phi_after(g, 2)):
        assert result.grammar.nonterminals == g.nonterminals
        for name in g.nonterminals:
            assert len(alternatives(result.grammar.productions[name])) == len(
                alternatives(g.productions[name])
            )


# --- the prefix-marker rewrite ---------------------------------------------------


def test_pi_on_g4():
    result = pi_prefix(fixtures.g4())
    assert result.marker_arity == 1
    assert render_grammar(result.grammar) == "start: S\nS -> 'a' '$' | 'a' 'a' '$'\n"


def test_pi_gives_prefix_property_and_agreement():
    result = pi_prefix(fixtures.g4())
    assert prefix_property(result.grammar)
    assert cfg_language(result.grammar, 3) == {"a$", "aa$"}
    assert peg_language(result.grammar, 3) == {"a$", "aa$"}


def test_pi_epsilon_alternative_becomes_marker():
    g = parse_grammar("start: S\nS -> 'a' S | eps\n")
    result = pi_prefix(g)
    assert render_grammar(result.grammar) == "start: S\nS -> 'a' S | '$'\n"
    assert prefix_property(result.grammar)


def test_pi_rejects_non_right_linear():
    with pytest.raises(GrammarError, match="right-linear"):
        pi_prefix(fixtures.g1())


@pytest.mark.parametrize("seed", range(12))
def test_pi_equalizes_random_right_linear(seed):
    g = random_grammar(GeneratorConfig(seed=3200 + seed, constraint="right_linear"))
    result = pi_prefix(g)
    assert prefix_property(result.grammar)
    assert cfg_language(result.grammar, 5) == peg_language(result.grammar, 5)


# --- the LL-regular rewrite -------------------------------------------------------


def test_rho_shape_on_g5():
    result = rho_ll_regular(fixtures.g5(), fixtures.g5_partition())
    assert result.marker_arity == 1
    text = render_grammar(result.grammar)
    assert "S -> &(_B1_N | _B2_N) A | B" in text
    assert "A -> &(_B1_N) 'a' A | 'c'" in text
    assert "_B5_K" in text  # every block grammar is appended, renamed apart


def test_rho_language_matches_source():
    g = fixtures.g5()
    result = rho_ll_regular(g, fixtures.g5_partition())
    expected = {"a" * n + c for n in range(6) for c in "cd"}
    assert _marked_language(result.grammar, 6, 1) == expected
    assert compare_languages(result, 6, markers=1, against=g).verdict == "equal"


def test_rho_erase_and_trim_recovers_source():
    result = rho_ll_regular(fixtures.g5(), fixtures.g5_partition())
    assert remove_useless(erase_predicates(result.grammar)) == fixtures.g5()


def test_rho_refuses_unfit_partition():
    with pytest.raises(ClassCheckFailed):
        rho_ll_regular(fixtures.g5(), fixtures.g5_partition_trivial())
    with pytest.raises(ClassCheckFailed):
        rho_ll_regular(fixtures.g5(), fixtures.g5_partition_coarse())


# --- erasure --------------------------------------------------------------------


def test_erase_cases():
    bc = Concat(Terminal("b"), Terminal("c"))
    assert erase_predicates(
        parse_grammar("start: S\nS -> !('a') 'b' 'c'\n")
    ).productions["S"] == bc
    assert erase_predicates(parse_grammar("start: S\nS -> !('a')\n")).productions["S"] == EMPTY


def test_erase_trailing_guard():
    g = parse_grammar("start: S\nS -> 'b' 'c' &('a')\n")
    assert erase_predicates(g).productions["S"] == Concat(Terminal("b"), Terminal("c"))


def test_erase_keeps_plain_structure():
    g = fixtures.g2()
    assert erase_predicates(g) == g
