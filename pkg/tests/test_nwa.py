#!/usr/bin/env python3
"""
Tests for nested word automata: membership, determinization, boolean
operations, emptiness, inclusion, enumeration and the text format.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from itertools import product

import numpy as np
import pytest

from src.nested_words.words import (
    NestedWord, close_tag, is_well_nested, open_tag, parse_word, random_well_nested, well_nested_words,
)
from src.nwa.automaton import ClosingRule, Dnwa, EpsNwa, EpsRule, OpeningRule, as_eps_nwa
from src.nwa.builders import (
    empty_nwa, label_subset_dnwa, length_exceeds_dnwa, single_label_dnwa, singleton_nwa, universal_nwa,
)
from src.nwa.operations import (
    accepts, complement, complete, determinize, enumerate_language, included_in, intersect, is_empty,
    trim, union, validate,
)
from src.nwa.summaries import SummaryIndex
from src.nwa.text_format import format_nwa, parse_nwa
from src.nwt.random_instances import random_nwa
from src.utils.errors import BudgetExceededError, FormatError, MalformedWordError, NonDeterministicError


def w(text):
    return parse_word(text)


def tag_sequences(labels, max_len):
    tags = [t for a in labels for t in (open_tag(a), close_tag(a))]
    for n in range(max_len + 1):
        yield from product(tags, repeat=n)


def a_power(n):
    return NestedWord([open_tag("a")] * n + [close_tag("a")] * n)


@pytest.fixture
def eps_universal_a():
    """Epsilon-NWA for every well-nested word over {a}, reached through an epsilon rule."""
    return EpsNwa(["a"], {"s0", "s1"}, {"p"}, "s0", {"s1"},
                  [OpeningRule("s1", "a", "s1", "p")], [ClosingRule("s1", "p", "a", "s1")],
                  [EpsRule("s0", "s1")])


# ---------------------------------------------------------------------------
# Example automata
# ---------------------------------------------------------------------------

def test_a1_accepts_exactly_the_well_nested_words(a1):
    accepted = {NestedWord(seq) for seq in tag_sequences(["a", "b"], 8)
                if is_well_nested(seq) and accepts(a1, seq)}
    assert accepted == set(well_nested_words(["a", "b"], 8))
    assert enumerate_language(a1, 8) == frozenset(accepted)


def test_a2_accepts_exactly_a_powers(a2):
    accepted = {NestedWord(seq) for seq in tag_sequences(["a"], 8)
                if is_well_nested(seq) and accepts(a2, seq)}
    assert accepted == {a_power(n) for n in range(1, 5)}
    assert enumerate_language(a2, 8) == frozenset(accepted)


@pytest.mark.parametrize("text,expected", [
    ("<a><a></a></a>", True),
    ("<a></a><a></a>", False),
    ("", False),
])
def test_a2_membership(a2, text, expected):
    assert accepts(a2, w(text)) == expected


def test_accepts_rejects_malformed_input(a1):
    with pytest.raises(MalformedWordError):
        accepts(a1, [open_tag("a"), close_tag("b")])
    with pytest.raises(MalformedWordError):
        accepts(a1, w("<c></c>"))


def test_empty_word_uses_epsilon_closure(eps_universal_a):
    assert accepts(eps_universal_a, w(""))
    assert accepts(eps_universal_a, w("<a><a></a></a><a></a>"))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def test_validate_examples(a1, a2):
    assert validate(a1).is_valid
    assert validate(a2).is_valid


def test_validate_reports_undeclared_state():
    automaton = EpsNwa(["a"], {"q"}, {"p"}, "q", {"q"}, [OpeningRule("q", "a", "r", "p")])
    report = validate(automaton)
    assert not report.is_valid
    assert any("undeclared state r" in issue for issue in report.issues)


def test_validate_reports_nondeterminism():
    automaton = Dnwa(["a"], {"q", "r"}, {"p"}, "q", {"q"},
                     [OpeningRule("q", "a", "q", "p"), OpeningRule("q", "a", "r", "p")])
    issues = validate(automaton).issues
    assert any("nondeterministic opening" in issue for issue in issues)


# ---------------------------------------------------------------------------
# Determinization and boolean operations
# ---------------------------------------------------------------------------

def test_determinize_preserves_language(a1, a2, eps_universal_a):
    for automaton in (a1, a2, eps_universal_a):
        d = determinize(automaton)
        assert isinstance(d, Dnwa)
        assert d.is_deterministic()
        assert validate(d).is_valid
        assert enumerate_language(d, 8) == enumerate_language(automaton, 8)


def test_determinize_names_are_reproducible(a2):
    assert determinize(a2) == determinize(a2)


def test_determinize_state_budget(a2):
    with pytest.raises(BudgetExceededError):
        determinize(a2, state_budget=1)


def test_complement_flips_membership(a2):
    d = determinize(a2)
    c = complement(d, ["a", "b"])
    assert c.is_deterministic()
    rng = np.random.default_rng(11)
    for _ in range(300):
        word = random_well_nested(rng, ["a", "b"], 2 * int(rng.integers(0, 6)))
        in_d = all(label in d.alphabet for label in word.labels) and accepts(d, word)
        assert in_d != accepts(c, word)


def test_complement_requires_determinism(eps_universal_a):
    with pytest.raises(NonDeterministicError):
        complement(eps_universal_a)


def test_complete_is_total_and_keeps_language(a2):
    total = complete(a2, ["a", "b"])
    assert total.is_total()
    assert total.is_deterministic()
    assert enumerate_language(total, 6) == enumerate_language(a2, 6)


def test_trim_drops_unreachable_states(a2):
    padded = EpsNwa(a2.alphabet, a2.linear_states | {"dead"}, a2.hier_states | {"dp"}, a2.initial, a2.final,
                    a2.opening | {OpeningRule("dead", "a", "dead", "dp")}, a2.closing)
    trimmed = trim(padded)
    assert "dead" not in trimmed.linear_states
    assert "dp" not in trimmed.hier_states
    assert enumerate_language(trimmed, 6) == enumerate_language(a2, 6)


def test_intersect_and_union(a1, a2):
    assert enumerate_language(intersect(a1, a2), 8) == enumerate_language(a2, 8)
    b = singleton_nwa(w("<b></b>"))
    assert enumerate_language(union(a2, b), 4) == {w("<a></a>"), w("<a><a></a></a>"), w("<b></b>")}
    assert is_empty(intersect(a2, b))


# ---------------------------------------------------------------------------
# Emptiness, inclusion and enumeration
# ---------------------------------------------------------------------------

def test_is_empty(a1, a2):
    assert not is_empty(a1)
    assert not is_empty(a2)
    assert is_empty(empty_nwa(["a", "b"]))
    assert is_empty(a2.with_final(()))


def test_included_in(a1, a2):
    assert included_in(a2, determinize(a1))
    assert not included_in(as_eps_nwa(a1), determinize(a2))
    assert included_in(empty_nwa(["a"]), a1)


def test_included_in_requires_deterministic_right_side(a1, eps_universal_a):
    with pytest.raises(NonDeterministicError):
        included_in(a1, eps_universal_a)


def test_enumerate_language_small_cases(a1, a2):
    assert enumerate_language(a2, 4) == {w("<a></a>"), w("<a><a></a></a>")}
    assert enumerate_language(empty_nwa(["a"]), 10) == frozenset()
    assert enumerate_language(a1, 2) == {w(""), w("<a></a>"), w("<b></b>")}
    with pytest.raises(ValueError):
        enumerate_language(a1, -1)


def test_summary_index_lengths(a2):
    index = SummaryIndex(a2)
    assert not index.is_empty()
    assert index.shortest_accepted_length() == 2
    assert index.shortest("q1", "q1") == 0


# ---------------------------------------------------------------------------
# Random automata
# ---------------------------------------------------------------------------

LETTERS = ["a", "b"]
WORDS_UP_TO_6 = list(well_nested_words(LETTERS, 6))


def random_automata(seed, count, eps_rules=False):
    rng = np.random.default_rng(seed)
    return [random_nwa(rng, LETTERS, 3, density=0.4, eps_rules=eps_rules) for _ in range(count)]


@pytest.mark.parametrize("eps_rules", [False, True], ids=["plain", "eps"])
def test_random_enumeration_matches_membership(eps_rules):
    for automaton in random_automata(41, 40, eps_rules):
        assert enumerate_language(automaton, 6) == {x for x in WORDS_UP_TO_6 if accepts(automaton, x)}


def test_random_is_empty_matches_enumeration():
    for automaton in random_automata(43, 60, eps_rules=True):
        shortest = SummaryIndex(automaton).shortest_accepted_length()
        if is_empty(automaton):
            assert enumerate_language(automaton, 8) == frozenset()
        else:
            found = enumerate_language(automaton, int(shortest))
            assert found
            assert min(len(x) for x in found) == shortest


def test_random_determinize_and_complement():
    for automaton in random_automata(47, 40, eps_rules=True):
        d = determinize(automaton)
        assert d.is_deterministic()
        c = complement(d, LETTERS)
        for x in WORDS_UP_TO_6:
            member = accepts(automaton, x)
            assert accepts(d, x) == member
            assert accepts(c, x) != member


def test_random_de_morgan():
    automata = random_automata(53, 40)
    for left, right in zip(automata[::2], automata[1::2]):
        d_left, d_right = determinize(left), determinize(right)
        neither = complement(union(d_left, d_right), LETTERS)
        both_out = intersect(complement(d_left, LETTERS), complement(d_right, LETTERS))
        for x in WORDS_UP_TO_6:
            expected = not accepts(left, x) and not accepts(right, x)
            assert accepts(neither, x) == expected
            assert accepts(both_out, x) == expected


def test_random_included_in():
    automata = random_automata(59, 40, eps_rules=True)
    for left, right in zip(automata[::2], automata[1::2]):
        d_left, d_right = determinize(left), determinize(right)
        assert included_in(left, d_left)
        assert included_in(intersect(left, right), d_left)
        if included_in(left, d_right):
            assert enumerate_language(left, 6) <= enumerate_language(right, 6)
        if not enumerate_language(left, 6) <= enumerate_language(right, 6):
            assert not included_in(left, d_right)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def test_builders():
    word = w("<a><b></b></a>")
    assert enumerate_language(singleton_nwa(word), 6) == {word}
    assert enumerate_language(universal_nwa(["a"]), 4) == {w(""), w("<a></a>"), w("<a><a></a></a>"),
                                                           w("<a></a><a></a>")}
    subset = label_subset_dnwa(["a", "b"], ["b"])
    assert accepts(subset, w("<b><b></b></b>"))
    assert not accepts(subset, w("<b><a></a></b>"))
    single = single_label_dnwa(["a", "b"])
    assert accepts(single, w(""))
    assert accepts(single, w("<a></a><a></a>"))
    assert not accepts(single, w("<a></a><b></b>"))
    longer = length_exceeds_dnwa(["a"], 2)
    assert accepts(longer, w("<a><a></a></a>"))
    assert not accepts(longer, w("<a></a>"))


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def test_format_round_trip(a1, a2, eps_universal_a):
    for automaton in (a1, a2, eps_universal_a, determinize(a2), label_subset_dnwa(["a", "b"], ["a"])):
        assert parse_nwa(format_nwa(automaton)) == automaton


def test_format_headers(eps_universal_a, a2):
    assert format_nwa(eps_universal_a).startswith("eps-nwa\n")
    assert format_nwa(a2).startswith("nwa\n")
    assert isinstance(parse_nwa(format_nwa(determinize(a2))), Dnwa)


@pytest.mark.parametrize("text,line", [
    ("nwa\nalphabet: a\nopen q a q p\n", 3),
    ("nwa\nalphabet: a\ninitial: q\neps q -> q\n", 4),
    ("nwa\n# comment\nstates: q\n", 3),
    ("automaton\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as excinfo:
        parse_nwa(text)
    assert excinfo.value.line == line


def test_parse_requires_one_initial_state():
    with pytest.raises(FormatError, match="initial"):
        parse_nwa("nwa\nalphabet: a\nlinear: q r\ninitial: q r\n")
