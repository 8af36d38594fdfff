"""
Games in which Juliet may Call at most once in total.

Each candidate Call position is one type-checking test: the input word
with the called rooted word replaced by any of its transducts must always
land in the target language.
"""

import logging
from typing import Optional, Sequence

from src.nested_words.words import NestedWord, Tag, check_word, last_rooted_start, partner_positions
from src.nwa.automaton import EpsNwa, EpsRule, ClosingRule, OpeningRule
from src.nwa.operations import accepts, determinize, included_in, is_empty
from src.nwt.images import image_automaton
from src.games.game import (
    CALL, JULIET, JULIET_WINS, ROMEO_WINS, Configuration, Game, Move, Slot, SolveResult,
)

logger = logging.getLogger(__name__)

_IMAGE = "img:"


def substitution_automaton(w: NestedWord, start: int, end: int, image: EpsNwa) -> EpsNwa:
    """
    Epsilon-NWA for w[:start] · L(image) · w[end:].

    The prefix and suffix are chains of states c0..c|w|; the image
    automaton is spliced in with epsilon rules from c{start} and back into
    c{end}. Its states and hierarchical states are prefixed so they cannot
    clash with the chain.
    """
    partners = partner_positions(w)
    states = {f"c{j}" for j in range(start + 1)} | {f"c{j}" for j in range(end, len(w) + 1)}
    opening, closing, hiers = [], [], set()
    for j in list(range(start)) + list(range(end, len(w))):
        tag = w[j]
        if tag.opening:
            hiers.add(f"o{j}")
            opening.append(OpeningRule(f"c{j}", tag.label, f"c{j + 1}", f"o{j}"))
        else:
            closing.append(ClosingRule(f"c{j}", f"o{partners[j]}", tag.label, f"c{j + 1}"))

    states |= {_IMAGE + q for q in image.linear_states}
    hiers |= {_IMAGE + p for p in image.hier_states}
    opening += [OpeningRule(_IMAGE + r.source, r.label, _IMAGE + r.target, _IMAGE + r.hier)
                for r in image.opening]
    closing += [ClosingRule(_IMAGE + r.source, _IMAGE + r.hier, r.label, _IMAGE + r.target)
                for r in image.closing]
    eps = [EpsRule(_IMAGE + r.source, _IMAGE + r.target) for r in image.eps]
    eps.append(EpsRule(f"c{start}", _IMAGE + image.initial))
    eps += [EpsRule(_IMAGE + f, f"c{end}") for f in image.final]
    alphabet = set(image.alphabet) | set(w.labels)
    return EpsNwa(alphabet, states, hiers, "c0", {f"c{len(w)}"}, opening, closing, eps)


def solve_single_call(game: Game, w: Sequence[Tag], state_budget: Optional[int] = None) -> SolveResult:
    """
    Decide whether Juliet wins with at most one Call on the input word.

    Raises:
        DeletingTransducerError: the replacement transducer deletes tags
        MalformedWordError: w is not well-nested over the game alphabet
    """
    word = NestedWord(w)
    check_word(word, game.alphabet)
    target = game.target
    stats = {'typechecks': 0}
    if all(label in target.alphabet for label in word.labels) and accepts(target, word):
        return SolveResult(JULIET_WINS, "single-call", {}, stats=stats)
    if not target.is_deterministic():
        logger.info(f"single-call: determinizing a nondeterministic target of size {target.size}")
        target = determinize(target, state_budget)

    for i, tag in enumerate(word):
        if tag.opening or tag.label not in game.gamma:
            continue
        start = last_rooted_start(word[:i + 1])
        image = image_automaton(game.replacement, word[start:i + 1])
        if is_empty(image):
            continue
        stats['typechecks'] += 1
        if included_in(substitution_automaton(word, start, i + 1, image), target):
            position = Configuration(JULIET, tuple(Slot(t) for t in word[:i]),
                                     tuple(Slot(t) for t in word[i:]))
            logger.info(f"single-call: Juliet wins by calling at position {i}")
            return SolveResult(JULIET_WINS, "single-call", {position.digest: Move(CALL)}, stats=stats)
    return SolveResult(ROMEO_WINS, "single-call", stats=stats)
