#!/usr/bin/env python3
"""
Tests for nested word transducers: validation, classification, normal
form, composition, range and image automata and the decision procedures
built on them. Randomized families are checked against brute-force run
enumeration.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from dataclasses import replace

import numpy as np
import pytest

from src.nested_words.words import (
    NestedWord, Tag, is_well_nested, parse_word, well_nested_words,
)
from src.nwa.automaton import ClosingRule, EpsNwa, EpsRule, OpeningRule
from src.nwa.builders import label_subset_dnwa, single_label_dnwa, universal_nwa
from src.nwa.operations import accepts, determinize, enumerate_language
from src.nwt.composition import compose, restrict_domain
from src.nwt.images import (
    enumerate_image, image_automaton, image_language_automaton, is_nonempty, range_automaton,
    transduct_member, typecheck,
)
from src.nwt.normal_form import normalize
from src.nwt.properties import (
    classify, is_normal_form, sample_depth_bound, sample_functionality, validate_nwt,
)
from src.nwt.random_instances import random_deterministic_relabelling, random_nwt
from src.nwt.runs import enumerate_runs
from src.nwt.text_format import format_nwt, parse_nwt
from src.nwt.transducer import (
    EPS, InternalTransition, Nwt, OpeningTransition, identity_transducer, relabelling_transducer,
)
from src.utils.errors import DeletingTransducerError, FormatError, FunctionalityError

SMALL_INPUTS = list(well_nested_words(["a", "b"], 4))


def w(text):
    return parse_word(text)


def relabel(word, label):
    return NestedWord(Tag(tag.opening, label) for tag in word)


def power(label, n):
    return NestedWord([Tag(True, label)] * n + [Tag(False, label)] * n)


# ---------------------------------------------------------------------------
# Validation and classification
# ---------------------------------------------------------------------------

def test_t_ab_is_valid(t_ab):
    report = validate_nwt(t_ab)
    assert report.is_valid, report.issues


def test_validate_reports_eps_consistency(t_ab):
    rule = OpeningTransition("i", EPS, "i", "ap_a", NestedWord((Tag(True, "a"),)))
    broken = replace(t_ab, opening=t_ab.opening | {rule})
    issues = validate_nwt(broken).issues
    assert any("epsilon-consistency" in issue for issue in issues)


def test_validate_reports_synchronisation():
    t = Nwt(["a"], {"q"}, {"p"}, (), "q", {"q"},
            [OpeningTransition("q", "a", "q", "p", w("<a></a>"))])
    issues = validate_nwt(t).issues
    assert any("synchronisation" in issue for issue in issues)


def test_validate_reports_well_formedness():
    t = parse_nwt(
        'nwt\nalphabet: a b\nlinear: q\nhier: p\ninitial: q\nfinal: q\n'
        'open q a -> q p out "<a>"\nclose q p a -> q out "</b>"\n'
    )
    assert any("well-formedness" in issue for issue in validate_nwt(t).issues)


def test_classify_t_ab(t_ab):
    flags = classify(t_ab)
    assert not flags.eps_free
    assert flags.non_deleting
    assert not flags.relabelling
    assert not flags.functional_claimed


def test_classify_relabellings():
    identity = relabelling_transducer(["a", "b"], {})
    flags = classify(identity)
    assert flags.relabelling and flags.deterministic and flags.functional_claimed
    choice = relabelling_transducer(["a", "b"], {"a": ["a", "b"]})
    assert classify(choice).relabelling
    assert not classify(choice).deterministic


def test_classify_deleting():
    t = Nwt(["a"], {"q"}, {"p"}, (), "q", {"q"}, [OpeningTransition("q", "a", "q", "p", ())])
    assert not classify(t).non_deleting


def test_sample_functionality(t_ab):
    found = sample_functionality(t_ab, [w("")], 4)
    assert found is not None
    word, outputs = found
    assert word == w("")
    assert len(set(outputs)) == 2
    assert sample_functionality(relabelling_transducer(["a", "b"], {"a": "b"}), SMALL_INPUTS, 4) is None
    with pytest.raises(FunctionalityError):
        sample_functionality(replace(t_ab, functional_claimed=True), [w("")], 4, strict=True)


def test_sample_depth_bound(t_ab):
    assert sample_depth_bound(t_ab, [w("")], 1, 4) is not None
    identity = relabelling_transducer(["a"], {})
    assert sample_depth_bound(identity, [w("<a></a>")], 1, 2) is None


# ---------------------------------------------------------------------------
# Images of T_ab
# ---------------------------------------------------------------------------

def test_t_ab_image_of_empty_word(t_ab):
    assert enumerate_image(t_ab, w(""), 4) == {
        w(""), w("<a></a>"), w("<b></b>"), w("<a><a></a></a>"), w("<b><b></b></b>"),
    }


@pytest.mark.parametrize("word", SMALL_INPUTS, ids=str)
def test_t_ab_images_match_analytic_set(t_ab, word):
    max_len = len(word) + 6
    expected = {relabel(word, x) + power(x, n) for x in ("a", "b") for n in range(4)}
    assert enumerate_image(t_ab, word, max_len) == expected


def test_t_ab_image_automaton(t_ab):
    image = image_automaton(t_ab, w("<b></b>"))
    assert accepts(image, w("<a></a>"))
    assert accepts(image, w("<b></b><b></b>"))
    assert not accepts(image, w("<a></a><b></b>"))


def test_transduct_member(t_ab):
    assert transduct_member(t_ab, w("<b></b>"), w("<a></a>"))
    assert not transduct_member(t_ab, w("<b></b>"), w("<a></a><b></b>"))
    assert not transduct_member(t_ab, w("<b></b>"), w("<c></c>"))
    identity = identity_transducer(universal_nwa(["a", "b"]))
    assert transduct_member(identity, w("<a><b></b></a>"), w("<a><b></b></a>"))


def test_is_nonempty(t_ab):
    assert is_nonempty(t_ab)
    assert not is_nonempty(replace(t_ab, final=frozenset()))
    no_rules = Nwt(["a"], {"q", "f"}, (), (), "q", {"f"})
    assert not is_nonempty(no_rules)


def test_range_automaton_contains_t_ab_outputs(t_ab):
    rng = range_automaton(t_ab)
    assert accepts(rng, w("<a></a><a></a><a><a></a></a>"))
    assert not accepts(rng, w("<a></a><b></b>"))


def test_range_rejects_deleting_transducer():
    t = Nwt(["a"], {"q"}, {"p"}, (), "q", {"q"}, [OpeningTransition("q", "a", "q", "p", ())])
    with pytest.raises(DeletingTransducerError):
        range_automaton(t)


def test_image_language_automaton_is_pointwise_union(t_ab, a2):
    image = image_language_automaton(t_ab, a2)
    expected = set()
    for word in enumerate_language(a2, 6):
        expected |= enumerate_image(t_ab, word, 6)
    assert enumerate_language(image, 6) == expected


def test_identity_images(a2):
    identity = identity_transducer(a2)
    for word in enumerate_language(a2, 6):
        assert enumerate_image(identity, word, len(word)) == {word}
    assert enumerate_image(identity, w("<a></a><a></a>"), 4) == frozenset()


# ---------------------------------------------------------------------------
# Type checking
# ---------------------------------------------------------------------------

def test_typecheck_with_dnwa_target_does_not_determinize(t_ab, monkeypatch):
    def fail(*args, **kwargs):
        raise AssertionError("deterministic targets must not be determinized")

    monkeypatch.setattr("src.nwt.images.determinize", fail)
    domain = universal_nwa(["a", "b"])
    assert typecheck(t_ab, domain, single_label_dnwa(["a", "b"]))
    assert not typecheck(t_ab, domain, label_subset_dnwa(["a", "b"], ["a"]))


def test_typecheck_identity_against_determinized_source(a2):
    assert typecheck(identity_transducer(a2), a2, determinize(a2))


def test_typecheck_determinizes_nondeterministic_target(t_ab, monkeypatch):
    calls = []

    def counting(automaton, state_budget=None):
        calls.append(automaton.size)
        return determinize(automaton, state_budget)

    monkeypatch.setattr("src.nwt.images.determinize", counting)
    target = EpsNwa(["a", "b"], {"s0", "s1"}, {"pa", "pb"}, "s0", {"s1"},
                    [OpeningRule("s1", "a", "s1", "pa"), OpeningRule("s1", "b", "s1", "pb")],
                    [ClosingRule("s1", "pa", "a", "s1"), ClosingRule("s1", "pb", "b", "s1")],
                    [EpsRule("s0", "s1")])
    assert typecheck(t_ab, universal_nwa(["a", "b"]), target)
    assert len(calls) == 1


# ---------------------------------------------------------------------------
# Normal form and composition
# ---------------------------------------------------------------------------

def test_normalize_keeps_normal_transducers(t_ab):
    assert is_normal_form(t_ab)
    assert normalize(t_ab) is t_ab


def test_normalize_random_family():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        t = random_nwt(rng, ["a", "b"], 2, density=0.4, eps_rules=True, internal_rules=True)
        normal = normalize(t)
        assert is_normal_form(normal)
        assert validate_nwt(normal).is_valid
        for word in SMALL_INPUTS:
            assert enumerate_runs(normal, word, 6) == enumerate_runs(t, word, 6)


def test_compose_relabellings():
    first = relabelling_transducer(["a", "b"], {"a": "b"})
    second = relabelling_transducer(["b", "c"], {"b": "c"})
    composed = compose(first, second)
    assert enumerate_image(composed, w("<a></a>"), 2) == {w("<c></c>")}
    assert classify(composed).functional_claimed


@pytest.mark.parametrize("pairs,epsilons", [(200, False), (150, True)], ids=["eps-free", "eps-and-internal"])
def test_compose_matches_two_step_runs(pairs, epsilons):
    rng = np.random.default_rng(77)
    for _ in range(pairs):
        first = random_nwt(rng, ["a", "b"], 3, density=0.5, eps_rules=epsilons, internal_rules=epsilons)
        second = random_nwt(rng, ["a", "b"], 3, density=0.5, eps_rules=epsilons, internal_rules=epsilons)
        composed = compose(first, second)
        assert validate_nwt(composed).is_valid
        for word in SMALL_INPUTS:
            expected = set()
            for middle in enumerate_runs(first, word, 6):
                expected |= enumerate_runs(second, middle, 6)
            assert enumerate_runs(composed, word, 6) == expected


def test_compose_rejects_deleting():
    deleting = Nwt(["a"], {"q"}, {"p"}, (), "q", {"q"}, [OpeningTransition("q", "a", "q", "p", ())])
    with pytest.raises(DeletingTransducerError):
        compose(deleting, relabelling_transducer(["a"], {}))


def test_restrict_domain(t_ab, a2):
    restricted = restrict_domain(t_ab, a2)
    assert enumerate_image(restricted, w("<b></b>"), 6) == frozenset()
    assert enumerate_image(restricted, w("<a></a>"), 6) == enumerate_image(t_ab, w("<a></a>"), 6)


def test_image_automaton_matches_runs():
    rng = np.random.default_rng(31)
    for _ in range(40):
        t = random_nwt(rng, ["a", "b"], 2, density=0.4, eps_rules=True, internal_rules=True)
        for word in SMALL_INPUTS:
            images = enumerate_image(t, word, 10)
            assert images == enumerate_runs(t, word, 10)
            assert all(is_well_nested(u) for u in images)


def test_deleting_transducer_images():
    t = parse_nwt(
        'nwt\nalphabet: a b\nlinear: q\nhier: pa pb\ninitial: q\nfinal: q\n'
        'open q a -> q pa out ""\nclose q pa a -> q out ""\n'
        'open q b -> q pb out "<b>"\nclose q pb b -> q out "</b>"\n'
    )
    assert validate_nwt(t).is_valid
    assert not classify(t).non_deleting
    assert enumerate_image(t, w("<a><b></b></a><a></a>"), 4) == {w("<b></b>")}


def test_relabelling_images_preserve_shape():
    rng = np.random.default_rng(9)
    for _ in range(20):
        t = random_deterministic_relabelling(rng, ["a", "b"], 3)
        for word in SMALL_INPUTS:
            images = enumerate_image(t, word, len(word))
            assert len(images) <= 1
            for u in images:
                assert [tag.opening for tag in u] == [tag.opening for tag in word]


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def test_format_round_trip(t_ab):
    rng = np.random.default_rng(3)
    samples = [
        t_ab,
        replace(t_ab, depth_bound=3),
        normalize(random_nwt(rng, ["a", "b"], 2, eps_rules=True, internal_rules=True)),
        compose(relabelling_transducer(["a", "b"], {"a": "b"}), relabelling_transducer(["a", "b"], {})),
    ]
    for t in samples:
        assert parse_nwt(format_nwt(t)) == t


def test_internal_rule_output_round_trip():
    t = Nwt(["a"], {"q", "r"}, (), (), "q", {"r"}, (), [InternalTransition("q", "r", w("<a></a>"))])
    text = format_nwt(t)
    assert 'internal q -> r out "<a></a>"' in text
    assert parse_nwt(text) == t


@pytest.mark.parametrize("text", [
    'nwt\nalphabet: a\nlinear: q\ninitial: q\nopen q a -> q p out "<a"\n',
    'nwt\nalphabet: a\nlinear: q\ninitial: q\nfunctional: maybe\n',
    'nwt\nalphabet: a\nlinear: q\ninitial: q\ndepth-bound: two\n',
    'nwt\nalphabet: a\nlinear: q\ninitial: q\nopen q a -> q p\n',
    'nwa\nalphabet: a\n',
])
def test_parse_errors(text):
    with pytest.raises(FormatError):
        parse_nwt(text)
