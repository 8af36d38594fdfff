#!/usr/bin/env python3
"""
Tests for tags, nested words and the structural helpers.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from itertools import product

import numpy as np
import pytest

from src.nested_words.words import (
    EMPTY_WORD, NestedWord, Tag, close_tag, depth, encode_flat, format_word, is_rooted,
    is_well_nested, last_rooted_start, last_rooted_suffix, open_tag, parse_tags, parse_word,
    partner_positions, random_well_nested, shortlex_key, unmatched_positions, well_nested_words,
)
from src.utils.errors import MalformedWordError


def w(text):
    return parse_word(text)


@pytest.mark.parametrize("text,expected", [
    ("", True),
    ("<a><b></b></a>", True),
    ("<a></b>", False),
    ("</a><a>", False),
    ("<a><a></a>", False),
])
def test_is_well_nested(text, expected):
    assert is_well_nested(parse_tags(text)) == expected


@pytest.mark.parametrize("text,expected", [
    ("<a><b></b></a>", True),
    ("<a></a><b></b>", False),
    ("", False),
])
def test_is_rooted(text, expected):
    assert is_rooted(w(text)) == expected


@pytest.mark.parametrize("text,expected", [
    ("", 0),
    ("<a><a></a></a>", 2),
    ("<a></a><b><b></b></b>", 2),
])
def test_depth(text, expected):
    assert depth(w(text)) == expected


def test_last_rooted_suffix():
    assert last_rooted_suffix(parse_tags("<a><b></b>")) == w("<b></b>")
    assert last_rooted_suffix(parse_tags("<a><b></b></a>")) == w("<a><b></b></a>")
    assert last_rooted_start(parse_tags("<c></c><a><b></b></a>")) == 2
    with pytest.raises(MalformedWordError):
        last_rooted_suffix(parse_tags("</a>"))
    with pytest.raises(MalformedWordError):
        last_rooted_start(parse_tags("<a><b>"))


@pytest.mark.parametrize("flat,expected", [
    ("", ""),
    ("ab", "<a></a><b></b>"),
    ("aa", "<a></a><a></a>"),
])
def test_encode_flat(flat, expected):
    assert encode_flat(flat) == parse_tags(expected)


def test_parse_and_format():
    word = parse_word(" <a> <b></b>\n</a> ")
    assert word == NestedWord([open_tag("a"), open_tag("b"), close_tag("b"), close_tag("a")])
    assert format_word(word) == "<a><b></b></a>"
    assert str(word) == "<a><b></b></a>"
    assert word.labels == ("a", "b", "b", "a")
    assert isinstance(word[1:3], NestedWord)
    assert parse_word("") == EMPTY_WORD


@pytest.mark.parametrize("text", ["<a></b>", "<a>", "a", "<a></a>x", "<a-b></a-b>"])
def test_parse_rejects_malformed(text):
    with pytest.raises(MalformedWordError):
        parse_word(text)


def test_parse_rejects_foreign_labels():
    with pytest.raises(MalformedWordError, match="outside the alphabet"):
        parse_word("<a><c></c></a>", alphabet=["a", "b"])


def test_tag_partner():
    tag = Tag(True, "a")
    assert tag.partner() == close_tag("a")
    assert tag.partner().closing
    assert str(tag.partner()) == "</a>"


def test_tags_are_interned():
    first, second = parse_tags("<ab></ab>"), parse_tags("<ab></ab>")
    assert first[0] is second[0] is open_tag("ab")
    assert first[1] is close_tag("ab") is open_tag("ab").partner()
    assert first[0].label is sys.intern("ab")
    assert Tag(True, "ab") == open_tag("ab")


def test_partner_positions():
    assert partner_positions(w("<a><b></b></a><c></c>")) == {0: 3, 3: 0, 1: 2, 2: 1, 4: 5, 5: 4}


def test_unmatched_positions():
    assert unmatched_positions(parse_tags("</a><b>")) == ([1], [0])
    assert unmatched_positions(parse_tags("<b></b><a>")) == ([2], [])
    assert unmatched_positions(parse_tags("</a><b></b>")) == ([], [0])
    # A mismatched closing tag cuts off the opening tags before it
    assert unmatched_positions(parse_tags("<a><b></a>")) == ([0, 1], [2])


def test_well_nested_words_counts_and_order():
    words = list(well_nested_words(["a", "b"], 4))
    assert len(words) == 1 + 2 + 8
    assert words == sorted(words, key=shortlex_key)
    assert len(set(words)) == len(words)
    assert all(is_well_nested(x) for x in words)


def test_well_nested_words_matches_brute_force():
    tags = [open_tag("a"), close_tag("a"), open_tag("b"), close_tag("b")]
    brute = {NestedWord(seq) for n in range(0, 7) for seq in product(tags, repeat=n) if is_well_nested(seq)}
    assert set(well_nested_words(["a", "b"], 6)) == brute


def test_random_well_nested():
    rng = np.random.default_rng(5)
    for length in (0, 2, 6, 12):
        word = random_well_nested(rng, ["a", "b", "c"], length)
        assert len(word) == length
        assert is_well_nested(word)
    with pytest.raises(ValueError):
        random_well_nested(rng, ["a"], 3)
