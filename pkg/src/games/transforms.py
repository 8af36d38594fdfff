"""Turning a game with a deleting replacement into an equivalent non-deleting one."""

import logging
from dataclasses import replace
from typing import Dict

from src.nested_words.words import NestedWord, close_tag, open_tag
from src.nwa.automaton import ClosingRule, OpeningRule, fresh_name
from src.nwt.transducer import EPS, ClosingTransition, Nwt, OpeningTransition
from src.games.game import Game

logger = logging.getLogger(__name__)


def struck_labels(game: Game) -> Dict[str, str]:
    """Struck-out twin for every label (EPS included) that some rule deletes."""
    r = game.replacement
    deleted = sorted({rule.label for rule in list(r.opening) + list(r.closing) if not rule.output})
    taken = set(game.alphabet) | set(r.alphabet) | set(game.target.alphabet)
    twins: Dict[str, str] = {}
    for label in deleted:
        twin = fresh_name(f"{label or 'eps'}_struck", taken)
        taken.add(twin)
        twins[label] = twin
    return twins


def make_non_deleting(game: Game) -> Game:
    """
    Equivalent game whose replacement never deletes.

    A rule that deletes a tag emits a struck-out twin of it instead. The
    new replacement copies struck-out tags wherever they occur, and the new
    target reads through them as if they were absent. Callable labels are
    unchanged, so struck-out tags are never called. A game whose
    replacement is already non-deleting is returned as is.
    """
    twins = struck_labels(game)
    if not twins:
        return game
    r = game.replacement
    struck = sorted(twins.values())

    opening = [rule if rule.output else rule._replace(output=NestedWord((open_tag(twins[rule.label]),)))
               for rule in r.opening]
    closing = [rule if rule.output else rule._replace(output=NestedWord((close_tag(twins[rule.label]),)))
               for rule in r.closing]
    copy_hiers = {s: fresh_name(f"{s}_copy", r.hier_states) for s in struck}
    for q in sorted(r.linear_states):
        for s in struck:
            opening.append(OpeningTransition(q, s, q, copy_hiers[s], NestedWord((open_tag(s),))))
            closing.append(ClosingTransition(q, copy_hiers[s], s, q, NestedWord((close_tag(s),))))
    replacement = Nwt(
        r.alphabet | set(struck), r.linear_states, r.hier_states | set(copy_hiers.values()),
        r.eps_hier_states, r.initial, r.final, opening, r.internal, closing,
        functional_claimed=r.functional_claimed, depth_bound=r.depth_bound,
    )

    t = game.target
    skip = fresh_name("skip", t.hier_states)
    target = replace(
        t,
        alphabet=t.alphabet | set(struck),
        hier_states=t.hier_states | {skip},
        opening=t.opening | {OpeningRule(q, s, q, skip) for q in t.linear_states for s in struck},
        closing=t.closing | {ClosingRule(q, skip, s, q) for q in t.linear_states for s in struck},
    )
    logger.debug(f"make_non_deleting: struck labels {', '.join(struck)}")
    return Game(game.alphabet | set(struck), game.gamma, replacement, target, f"{game.name}-non-deleting")
