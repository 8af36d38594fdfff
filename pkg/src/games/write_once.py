"""
Write-once games with functional relabelling replacements.

With a functional replacement Romeo has no choice, so a write-once play
is determined by the set of subtrees Juliet calls. Those subtrees never
overlap, and `build_juliet_transducer` produces a relabelling transducer
whose transducts of w are exactly the final words Juliet can reach.
"""

import logging
from typing import Sequence

from src.nested_words.words import NestedWord, Tag, check_word, close_tag, open_tag, shortlex_key
from src.nwa.operations import enumerate_language, intersect, is_empty
from src.nwt.images import image_automaton
from src.nwt.transducer import ClosingTransition, Nwt, OpeningTransition
from src.games.game import JULIET_WINS, ROMEO_WINS, Game, SolveResult
from src.utils.errors import FunctionalityError, ValidationError

logger = logging.getLogger(__name__)

COPY = "copy"
COPY_HIER = "cp"


def _sim(name: str) -> str:
    return f"sim:{name}"


def _root(name: str) -> str:
    return f"root:{name}"


def build_juliet_transducer(game: Game) -> Nwt:
    """
    Transducer that copies its input and may, at any opening tag with a
    callable label, run the replacement transducer over the subtree rooted
    there instead, returning to copying when that subtree closes.

    Raises:
        ValidationError: the replacement transducer is not a relabelling
        FunctionalityError: the replacement transducer is not declared functional
    """
    r = game.replacement
    nwt_class = game.nwt_class
    if not nwt_class.relabelling:
        raise ValidationError("write-once game", ["replacement transducer is not a relabelling"])
    if not nwt_class.functional_claimed:
        raise FunctionalityError("write-once solving needs a replacement declared functional")

    alphabet = set(game.alphabet) | set(r.alphabet) | set(r.output_alphabet)
    opening = [OpeningTransition(COPY, a, COPY, COPY_HIER, NestedWord((open_tag(a),))) for a in sorted(alphabet)]
    closing = [ClosingTransition(COPY, COPY_HIER, a, COPY, NestedWord((close_tag(a),))) for a in sorted(alphabet)]

    roots = set()
    for rule in r.opening:
        if rule.source == r.initial and rule.label in game.gamma:
            roots.add((rule.hier, rule.label))
            opening.append(OpeningTransition(COPY, rule.label, _sim(rule.target), _root(rule.hier), rule.output))
    opening += [OpeningTransition(_sim(rule.source), rule.label, _sim(rule.target), _sim(rule.hier), rule.output)
                for rule in r.opening]
    closing += [ClosingTransition(_sim(rule.source), _sim(rule.hier), rule.label, _sim(rule.target), rule.output)
                for rule in r.closing]
    closing += [ClosingTransition(_sim(rule.source), _root(rule.hier), rule.label, COPY, rule.output)
                for rule in r.closing if (rule.hier, rule.label) in roots and rule.target in r.final]

    states = {COPY} | {_sim(q) for q in r.linear_states}
    hiers = {COPY_HIER} | {_sim(p) for p in r.hier_states} | {_root(p) for p, _ in roots}
    juliet = Nwt(alphabet, states, hiers, (), COPY, {COPY}, opening, (), closing)
    logger.debug(f"build_juliet_transducer: {len(juliet.opening) + len(juliet.closing)} rules "
                 f"from {len(roots)} callable root rules")
    return juliet


def solve_write_once(game: Game, w: Sequence[Tag]) -> SolveResult:
    """
    Decide a write-once game by intersecting the reachable final words with
    the target. The witness is the shortlex-least reachable winning word.

    Raises:
        ValidationError, FunctionalityError: see build_juliet_transducer
        MalformedWordError: w is not well-nested over the game alphabet
    """
    word = NestedWord(w)
    check_word(word, game.alphabet)
    reachable = image_automaton(build_juliet_transducer(game), word)
    winning = intersect(reachable, game.target)
    stats = {'reachable_size': reachable.size, 'product_size': winning.size}
    if is_empty(winning):
        return SolveResult(ROMEO_WINS, "write-once", stats=stats)
    final_word = min(enumerate_language(winning, len(word)), key=shortlex_key)
    logger.info(f"write-once: Juliet reaches {final_word}")
    return SolveResult(JULIET_WINS, "write-once", final_word=final_word, stats=stats)
