"""Nested words: tags, well-nestedness and positional utilities."""

from src.nested_words.words import (
    EMPTY_WORD,
    FlatWord,
    NestedWord,
    Tag,
    check_word,
    close_tag,
    depth,
    encode_flat,
    format_word,
    intern_tag,
    is_rooted,
    is_well_nested,
    last_rooted_start,
    last_rooted_suffix,
    open_tag,
    parse_tags,
    parse_word,
    partner_positions,
    random_well_nested,
    shortlex_key,
    unmatched_positions,
    well_nested_words,
)
