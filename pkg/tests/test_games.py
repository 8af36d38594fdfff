#!/usr/bin/env python3
"""
Tests for context-free games: play semantics, the graph solver, the
specialised solvers, strategies, the doubling fixture and the random
cross-checks between solvers.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from pathlib import Path

import pytest

from src.nested_words.words import NestedWord, Tag, parse_word, well_nested_words
from src.nwa.builders import empty_nwa, label_subset_dnwa
from src.nwa.operations import accepts
from src.nwt.images import enumerate_image
from src.nwt.properties import classify
from src.nwt.transducer import (
    EPS, ClosingTransition, Nwt, OpeningTransition, relabelling_transducer,
)
from src.games import (
    BUDGET_EXHAUSTED, CALL, JULIET_WINS, READ, REPLY, ROMEO, ROMEO_WINS, Constraints, Game, Move,
    PlayEngine, build_juliet_transducer, check_win_replay_free, exp_tower, format_game, format_strategy,
    format_trace, gen_doubling_game, load_game, make_non_deleting, parse_game, parse_strategy,
    replay_strategy, run_doubling_script, save_game, search_without_memo, solve, solve_single_call,
    solve_write_once, successors, trace_play, validate_game,
)
from src.games.cross_validation import CrossValidator
from src.games.random_games import EPS_FREE, FUNCTIONAL_RELABELLING, random_instances
from src.utils.errors import FormatError, FunctionalityError, SizeLimitError, ValidationError

EXAMPLES_DIR = Path(__file__).resolve().parent.parent / "data" / "examples"

REPLAY_FREE = Constraints(max_call_depth=1)
SINGLE_CALL = Constraints(1, 1, True)


def w(text):
    return parse_word(text)


def open_(label):
    return NestedWord((Tag(True, label),))


def close(label):
    return NestedWord((Tag(False, label),))


@pytest.fixture
def padding_game():
    """
    Romeo relabels a called <a></a> to <b></b> and may then append any
    number of <c></c> through epsilon rules. Only b and c are wanted.
    """
    replacement = Nwt(
        ["a", "b", "c"], {"i", "m"}, {"pa", "e"}, {"e"}, "i", {"m"},
        [OpeningTransition("i", "a", "i", "pa", open_("b")),
         OpeningTransition("m", EPS, "m", "e", open_("c"))],
        (),
        [ClosingTransition("i", "pa", "a", "m", close("b")),
         ClosingTransition("m", "e", EPS, "m", close("c"))],
    )
    target = label_subset_dnwa(["a", "b", "c"], ["b", "c"])
    return Game(["a", "b", "c"], ["a"], replacement, target, name="padding")


@pytest.fixture
def bounded_reply_game():
    """
    Calling <a></a> relabels it to <b></b>. The declared epsilon
    hierarchical state sends replies through the length-bounded enumeration.
    """
    replacement = Nwt(
        ["a", "b"], {"q"}, {"p", "e"}, {"e"}, "q", {"q"},
        [OpeningTransition("q", "a", "q", "p", open_("b"))],
        (),
        [ClosingTransition("q", "p", "a", "q", close("b"))],
    )
    return Game(["a", "b"], ["a"], replacement, label_subset_dnwa(["a", "b"], ["b"]), name="bounded")


@pytest.fixture
def deleting_game():
    """Calling <a></a> erases it; only b may remain."""
    replacement = Nwt(
        ["a", "b"], {"q", "f"}, {"p"}, (), "q", {"f"},
        [OpeningTransition("q", "a", "q", "p", NestedWord())],
        (),
        [ClosingTransition("q", "p", "a", "f", NestedWord())],
    )
    return Game(["a", "b"], ["a"], replacement, label_subset_dnwa(["a", "b"], ["b"]), name="erase")


@pytest.fixture
def bc_game():
    replacement = relabelling_transducer(["b", "c"], {"b": "c"})
    return Game(["b", "c"], ["b"], replacement, label_subset_dnwa(["b", "c"], ["c"]), name="bc")


# ---------------------------------------------------------------------------
# Constraints and validation
# ---------------------------------------------------------------------------

def test_constraints_reject_negative_bounds():
    with pytest.raises(ValueError):
        Constraints(max_call_depth=-1)
    with pytest.raises(ValueError):
        Constraints(romeo_output_budget=-2)


def test_effective_depth():
    assert Constraints().effective_depth is None
    assert Constraints(max_call_depth=3).effective_depth == 3
    assert Constraints(write_once=True).effective_depth == 1
    assert Constraints(max_call_depth=0, write_once=True).effective_depth == 0


def test_validate_game(ab_game, swap_game):
    assert validate_game(ab_game).is_valid
    assert validate_game(swap_game).is_valid
    foreign = Game(["a", "b"], ["z"], ab_game.replacement, ab_game.target)
    assert any("callable label z" in issue for issue in validate_game(foreign).issues)
    hopeless = Game(["a", "b"], ["a"], ab_game.replacement, empty_nwa(["a", "b"]))
    assert any("target language is empty" in issue for issue in validate_game(hopeless).issues)


# ---------------------------------------------------------------------------
# Play semantics
# ---------------------------------------------------------------------------

def test_opening_tag_only_allows_read(ab_game):
    engine = PlayEngine(ab_game)
    moves = engine.successors(engine.initial(w("<a></a>")))
    assert [move for move, _ in moves] == [Move(READ)]


def test_callable_closing_tag_allows_call(ab_game):
    engine = PlayEngine(ab_game)
    config = engine.read(engine.initial(w("<a></a>")))
    assert [move.kind for move, _ in engine.successors(config)] == [READ, CALL]
    assert engine.rooted_word(config) == w("<a></a>")


def test_depth_zero_only_allows_read(ab_game):
    engine = PlayEngine(ab_game, Constraints(max_call_depth=0))
    config = engine.read(engine.initial(w("<a></a>")))
    assert [move.kind for move, _ in engine.successors(config)] == [READ]


def test_romeo_reply_goes_back_to_juliet(bc_game):
    engine = PlayEngine(bc_game)
    config = engine.call(engine.read(engine.initial(w("<b></b>"))))
    assert config.player == ROMEO
    moves = successors(bc_game, config)
    assert len(moves) == 1
    move, after = moves[0]
    assert move == Move(REPLY, w("<c></c>"))
    assert after.remaining == w("<c></c>")
    assert after.processed == NestedWord()


def test_equal_positions_share_a_digest(ab_game):
    engine = PlayEngine(ab_game)
    assert engine.initial(w("<a></a>")).digest == engine.initial(w("<a></a>")).digest
    assert engine.initial(w("<a></a>")).digest != engine.initial(w("<b></b>")).digest


# ---------------------------------------------------------------------------
# Graph solver
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("constraints", [
    Constraints(), REPLAY_FREE, SINGLE_CALL, Constraints(write_once=True),
    Constraints(max_call_depth=2, max_call_width=1),
], ids=str)
def test_ab_game_juliet_wins_by_calling(ab_game, constraints):
    assert solve(ab_game, w("<a></a>"), constraints).verdict == JULIET_WINS


def test_ab_game_verdicts(ab_game):
    assert solve(ab_game, w("<b></b>")).verdict == JULIET_WINS
    assert solve(ab_game, w("<a><a></a></a>")).verdict == ROMEO_WINS
    assert solve(ab_game, w("<a></a>"), Constraints(max_call_depth=0)).verdict == ROMEO_WINS


def test_endless_plays_are_won_by_romeo(swap_game):
    result = solve(swap_game, w("<a></a>"))
    assert result.verdict == ROMEO_WINS
    assert result.decided


def test_truncated_replies_exhaust_the_budget(padding_game):
    result = solve(padding_game, w("<a></a>"), Constraints(romeo_output_budget=4))
    assert result.verdict == BUDGET_EXHAUSTED
    assert not result.decided
    assert result.stats['truncated'] > 0


@pytest.mark.parametrize("budget,verdict", [(0, BUDGET_EXHAUSTED), (4, JULIET_WINS)])
def test_empty_truncated_replies_are_no_romeo_win(bounded_reply_game, budget, verdict):
    word = w("<a></a>")
    rules = Constraints(max_call_depth=1, romeo_output_budget=budget)
    assert check_win_replay_free(bounded_reply_game, word, output_budget=budget).verdict == verdict
    assert solve(bounded_reply_game, word, rules).verdict == verdict
    assert search_without_memo(bounded_reply_game, word, rules).verdict == verdict


def test_truncated_replies_that_all_lose_are_a_romeo_win(padding_game):
    game = Game(padding_game.alphabet, padding_game.gamma, padding_game.replacement,
                label_subset_dnwa(["a", "b", "c"], ["c"]))
    rules = Constraints(max_call_depth=1, romeo_output_budget=4)
    assert check_win_replay_free(game, w("<a></a>"), output_budget=4).verdict == ROMEO_WINS
    assert solve(game, w("<a></a>"), rules).verdict == ROMEO_WINS
    assert search_without_memo(game, w("<a></a>"), rules).verdict == ROMEO_WINS


def test_memoless_search_agrees(ab_game, swap_game, padding_game):
    assert search_without_memo(ab_game, w("<a></a>")).verdict == JULIET_WINS
    assert search_without_memo(ab_game, w("<a><a></a></a>")).verdict == ROMEO_WINS
    assert search_without_memo(swap_game, w("<a></a>")).verdict == ROMEO_WINS
    padded = Constraints(romeo_output_budget=4)
    assert search_without_memo(padding_game, w("<a></a>"), padded).verdict == BUDGET_EXHAUSTED


def test_solve_result_to_dict(ab_game):
    data = solve(ab_game, w("<a></a>")).to_dict()
    assert data['verdict'] == JULIET_WINS
    assert data['solver'] == "graph"
    assert "call" in data['witness'].values()


# ---------------------------------------------------------------------------
# Replay-free, single-call and write-once solvers
# ---------------------------------------------------------------------------

def test_replay_free(ab_game):
    assert check_win_replay_free(ab_game, w("<a></a>")).verdict == JULIET_WINS
    assert check_win_replay_free(ab_game, w("<a><a></a></a>")).verdict == ROMEO_WINS


def test_replay_free_without_callable_labels_is_membership(ab_game):
    game = Game(ab_game.alphabet, [], ab_game.replacement, ab_game.target)
    for word in well_nested_words(["a", "b"], 4):
        expected = JULIET_WINS if accepts(ab_game.target, word) else ROMEO_WINS
        assert check_win_replay_free(game, word).verdict == expected


def test_replay_free_with_truncated_replies(padding_game):
    result = check_win_replay_free(padding_game, w("<a></a>"), output_budget=4)
    assert result.verdict == BUDGET_EXHAUSTED


def test_single_call(ab_game):
    assert solve_single_call(ab_game, w("<a></a>")).verdict == JULIET_WINS
    assert solve_single_call(ab_game, w("<b></b>")).witness == {}
    assert solve_single_call(ab_game, w("<a><a></a></a>")).verdict == ROMEO_WINS


def test_juliet_transducer_reaches_every_write_once_outcome(ab_game):
    juliet = build_juliet_transducer(ab_game)
    assert enumerate_image(juliet, w("<a></a>"), 2) == {w("<a></a>"), w("<b></b>")}


def test_solve_write_once(ab_game):
    result = solve_write_once(ab_game, w("<a></a>"))
    assert result.verdict == JULIET_WINS
    assert result.final_word == w("<b></b>")
    assert solve_write_once(ab_game, w("<a></a><b></b>")).verdict == ROMEO_WINS


def test_write_once_needs_a_functional_relabelling(ab_game, padding_game):
    with pytest.raises(ValidationError):
        build_juliet_transducer(padding_game)
    choice = relabelling_transducer(["a", "b"], {"a": ["a", "b"]})
    with pytest.raises(FunctionalityError):
        build_juliet_transducer(Game(["a", "b"], ["a"], choice, ab_game.target))


# ---------------------------------------------------------------------------
# Non-deleting transformation
# ---------------------------------------------------------------------------

def test_non_deleting_game_is_returned_unchanged(ab_game):
    assert make_non_deleting(ab_game) is ab_game


def test_make_non_deleting_keeps_verdicts(deleting_game):
    assert not classify(deleting_game.replacement).non_deleting
    padded = make_non_deleting(deleting_game)
    assert classify(padded.replacement).non_deleting
    assert len(padded.alphabet - deleting_game.alphabet) == 1
    assert padded.gamma == deleting_game.gamma
    for word in well_nested_words(["a", "b"], 4):
        before = check_win_replay_free(deleting_game, word).verdict
        after = check_win_replay_free(padded, word).verdict
        assert before == after, word
    assert check_win_replay_free(padded, w("<a></a>")).verdict == JULIET_WINS


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("solver,constraints", [
    (lambda game, word: solve(game, word), Constraints()),
    (lambda game, word: check_win_replay_free(game, word), REPLAY_FREE),
    (lambda game, word: solve_single_call(game, word), SINGLE_CALL),
], ids=["graph", "replay-free", "single-call"])
def test_witnesses_replay_as_wins(ab_game, solver, constraints):
    word = w("<a></a>")
    result = solver(ab_game, word)
    assert result.verdict == JULIET_WINS
    report = replay_strategy(PlayEngine(ab_game, constraints), word, result.witness)
    assert report.juliet_always_wins
    assert report.finals == [(w("<b></b>"), True)]


def test_reading_everything_loses_on_ab(ab_game):
    report = replay_strategy(PlayEngine(ab_game), w("<a></a>"), {})
    assert not report.juliet_always_wins


def test_strategy_text_round_trip():
    strategy = {"0b1c2d3e4f5a": Move(REPLY, w("<b></b>")), "77a0e1c2d3f4": Move(CALL),
                "3f2a9c01b7de": Move(READ)}
    text = format_strategy(strategy)
    assert 'reply "<b></b>"' in text
    assert parse_strategy(text) == strategy


@pytest.mark.parametrize("text", ["abc jump\n", 'abc reply "<a>"\n', "abc\n"])
def test_parse_strategy_errors(text):
    with pytest.raises(FormatError):
        parse_strategy(text)


def test_trace_play(ab_game):
    word = w("<a></a>")
    engine = PlayEngine(ab_game)
    trace = trace_play(engine, word, solve(ab_game, word).witness)
    moves = [move.kind for _, move in trace if move is not None]
    assert moves == [READ, CALL, REPLY, READ, READ]
    assert trace[-1][1] is None
    assert format_trace(engine, trace).endswith("final word <b></b>: Juliet wins\n")


def test_trace_rejects_illegal_call(ab_game):
    engine = PlayEngine(ab_game)
    word = w("<a></a>")
    with pytest.raises(ValueError):
        trace_play(engine, word, {engine.initial(word).digest: Move(CALL)})


# ---------------------------------------------------------------------------
# Doubling fixture
# ---------------------------------------------------------------------------

def test_exp_tower():
    assert exp_tower(0, 5) == 5
    assert exp_tower(1, 3) == 8
    assert exp_tower(2, 2) == 16
    assert exp_tower(3, 2) == 65536
    with pytest.raises(SizeLimitError):
        exp_tower(4, 2, limit=10 ** 6)


@pytest.mark.parametrize("k,n,final_length", [(1, 1, 4), (1, 3, 16), (2, 2, 32)])
def test_doubling_script_final_length(k, n, final_length):
    game, word = gen_doubling_game(k, n)
    assert len(word) == 2 * (n + 2 * k - 1)
    final = run_doubling_script(game, word)
    assert len(final) == final_length
    assert set(final.labels) == {f"c{k}"}
    assert accepts(game.target, final)


def test_doubling_generator_limits():
    with pytest.raises(ValueError):
        gen_doubling_game(0, 1)
    with pytest.raises(SizeLimitError):
        gen_doubling_game(3, 3, size_limit=1000)


@pytest.mark.parametrize("n", [1, 3])
def test_doubling_game_is_won_at_depth_two(n):
    game, word = gen_doubling_game(1, n)
    assert validate_game(game).is_valid
    assert classify(game.replacement).eps_free
    assert solve(game, word, Constraints(max_call_depth=2)).verdict == JULIET_WINS


# ---------------------------------------------------------------------------
# Game files
# ---------------------------------------------------------------------------

def test_parse_game_loads_components(ab_game):
    assert ab_game.name == "ab"
    assert ab_game.gamma == {"a"}
    assert ab_game.replacement.functional_claimed
    assert ab_game.target.is_deterministic()


def test_save_game_round_trip(ab_game, tmp_path):
    path = save_game(ab_game, tmp_path / "copy.game")
    assert (tmp_path / "copy.nwt").exists()
    assert load_game(path) == ab_game
    assert format_game(ab_game, "x.nwt", "y.dnwa").endswith("class: functional\n")


@pytest.mark.parametrize("text", [
    "nwa\n",
    "game\nalphabet: a\ntransducer: t_ab.nwt\n",
    "game\nalphabet: a b\ntransducer: t_ab.nwt\ntarget: a1.nwa\nclass: regular\n",
    "game\nalphabet: a b\ntransducer: missing.nwt\ntarget: a1.nwa\n",
])
def test_parse_game_errors(text):
    with pytest.raises(FormatError):
        parse_game(text, EXAMPLES_DIR)


# ---------------------------------------------------------------------------
# Random cross-checks
# ---------------------------------------------------------------------------

def test_random_instances_are_reproducible():
    first = [(i.game.gamma, i.word) for i in random_instances(EPS_FREE, 5, seed=3, max_word_length=4)]
    second = [(i.game.gamma, i.word) for i in random_instances(EPS_FREE, 5, seed=3, max_word_length=4)]
    assert first == second
    assert all(0 < len(word) <= 4 for _, word in first)


@pytest.mark.parametrize("family,decide", [
    (EPS_FREE, check_win_replay_free),
    (FUNCTIONAL_RELABELLING, solve_write_once),
], ids=[EPS_FREE, FUNCTIONAL_RELABELLING])
def test_calls_decide_a_share_of_random_games(family, decide):
    instances = list(random_instances(family, 200, seed=123, max_word_length=6))
    repaired = [i for i in instances
                if not accepts(i.game.target, i.word) and decide(i.game, i.word).verdict == JULIET_WINS]
    assert all(i.word for i in instances)
    assert len(repaired) >= 20


def test_cross_validation_finds_no_mismatches():
    validator = CrossValidator(seed=5, instances=10, max_word_length=4, max_configurations=20000)
    results = validator.run_all()
    assert not results.empty
    summary = CrossValidator.summarize(results)
    assert int(summary['mismatches'].sum()) == 0
    assert int(summary['decided'].sum()) > 0


def test_cross_validation_at_configured_scale():
    validator = CrossValidator()
    summary = CrossValidator.summarize(validator.run_all())
    assert summary.loc["replay-free vs depth 1", 'instances'] >= 500
    assert summary.loc["single-call vs one Call", 'instances'] >= 500
    assert summary.loc["write-once vs write-once play", 'instances'] >= 500
    assert summary.loc["monotone in depth and width", 'instances'] >= 300
    assert summary.loc["deleting vs struck-out", 'instances'] >= 200
    assert int(summary['mismatches'].sum()) == 0
