"""File-format corners: partition sections, provenance headers, markers."""

import pytest

from pegcfg import (
    GrammarSyntaxError,
    load_grammar_text,
    parse_grammar,
    parse_partition_blocks,
    phi_before,
    render_grammar,
)
from pegcfg.textfmt import grammar_file_allows_marker
from pegcfg import fixtures


def test_partition_block_names_and_order():
    blocks = parse_partition_blocks(fixtures.G5_PARTITION_TEXT)
    assert [name for name, _ in blocks] == ["B1", "B2", "B3", "B4", "B5"]


def test_partition_duplicate_block_rejected():
    text = "block A:\nstart: N\nN -> '$'\n\nblock A:\nstart: N\nN -> '$'\n"
    with pytest.raises(GrammarSyntaxError, match="duplicate block"):
        parse_partition_blocks(text)


def test_partition_requires_block_header_first():
    with pytest.raises(GrammarSyntaxError, match="block"):
        parse_partition_blocks("start: N\nN -> '$'\n")


def test_partition_blocks_may_use_marker():
    blocks = parse_partition_blocks("block B:\nstart: N\nN -> '$'\n")
    assert blocks[0][1].uses_marker


def test_provenance_header_licenses_marker():
    result = phi_before(fixtures.g2(), 2)
    rendered = render_grammar(result.grammar, result.provenance)
    assert grammar_file_allows_marker(rendered)
    assert load_grammar_text(rendered) == result.grammar


def test_plain_file_does_not_license_marker():
    text = "start: S\nS -> '$'\n"
    assert not grammar_file_allows_marker(text)
    with pytest.raises(GrammarSyntaxError, match="reserved"):
        load_grammar_text(text)


def test_transformed_render_reparses_identically():
    result = phi_before(fixtures.g2(), 2)
    again = parse_grammar(render_grammar(result.grammar), allow_marker=True)
    assert again == result.grammar


def test_duplicate_production_rejected():
    with pytest.raises(GrammarSyntaxError, match="duplicate production"):
        parse_grammar("start: S\nS -> 'a'\nS -> 'b'\n")


def test_reserved_words_rejected_as_names():
    with pytest.raises(GrammarSyntaxError, match="reserved word"):
        parse_grammar("start: S\nS -> 'a'\neps -> 'b'\n")


def test_star_sugar_parses():
    g = parse_grammar("start: S\nS -> ('a' | 'b')* 'c'\n")
    assert parse_grammar(render_grammar(g)) == g
