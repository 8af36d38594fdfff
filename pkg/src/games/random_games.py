"""
Seeded random game families for solver cross-checking.

Half of the games are repairable: the target allows a proper subset of
the labels, every other label is callable and the replacement is total
with outputs over the allowed labels only, so Calls decide the verdict
whenever the input word is not already in the target. The other half
draw target, callable labels and replacement independently.
"""

from typing import Iterator, List, NamedTuple, Optional, Sequence

import numpy as np

from src.nested_words.words import NestedWord, random_well_nested
from src.nwa.automaton import EpsNwa
from src.nwa.builders import label_subset_dnwa, single_label_dnwa
from src.nwt.random_instances import random_deterministic_relabelling, random_dnwa, random_nwt
from src.nwt.transducer import Nwt
from src.games.game import Game
from src.utils.config import get_config_value

LETTERS = ("a", "b", "c")
REPAIRABLE_SHARE = 0.5

EPS_FREE = "eps_free"
SINGLE_CALL = "single_call"
FUNCTIONAL_RELABELLING = "functional_relabelling"
DELETING_RELABELLING = "deleting_relabelling"
FAMILIES = (EPS_FREE, SINGLE_CALL, FUNCTIONAL_RELABELLING, DELETING_RELABELLING)


class GameInstance(NamedTuple):
    family: str
    game: Game
    word: NestedWord


def _subset(rng: np.random.Generator, letters: List[str], non_empty: bool) -> List[str]:
    chosen = [a for a in letters if rng.random() < 0.5]
    if non_empty and not chosen:
        chosen = [letters[int(rng.integers(0, len(letters)))]]
    return chosen


def _proper_subset(rng: np.random.Generator, letters: List[str]) -> List[str]:
    size = int(rng.integers(1, len(letters)))
    return sorted(str(a) for a in rng.choice(letters, size=size, replace=False))


def random_target(rng: np.random.Generator, letters: List[str], max_states: int = 3) -> EpsNwa:
    """A random total DNWA, a label-subset language or the single-label language."""
    kind = rng.random()
    if kind < 0.5:
        return random_dnwa(rng, letters, max_states)
    if kind < 0.8:
        return label_subset_dnwa(letters, _subset(rng, letters, non_empty=True))
    return single_label_dnwa(letters)


def random_replacement(rng: np.random.Generator, family: str, letters: List[str], emitted: Sequence[str],
                       max_states: int, total: bool) -> Nwt:
    """
    Raises:
        ValueError: unknown family
    """
    if family == EPS_FREE:
        return random_nwt(rng, letters, max_states, density=0.4, output_alphabet=emitted, total=total)
    if family == SINGLE_CALL:
        return random_nwt(rng, letters, max_states, density=0.5, output_alphabet=emitted, total=total)
    if family == FUNCTIONAL_RELABELLING:
        return random_deterministic_relabelling(rng, letters, max_states, output_alphabet=emitted, total=total)
    if family == DELETING_RELABELLING:
        return random_nwt(rng, letters, max_states, density=0.5, relabelling=True, deleting=True,
                          output_alphabet=emitted, total=total)
    raise ValueError(f"unknown game family {family!r}")


def random_game(rng: np.random.Generator, family: str, max_states: int = 3) -> Game:
    """
    Random game of the given family over two or three labels.

    Raises:
        ValueError: unknown family
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown game family {family!r}")
    letters = list(LETTERS[:int(rng.integers(2, len(LETTERS) + 1))])
    if rng.random() < REPAIRABLE_SHARE:
        allowed = _proper_subset(rng, letters)
        target = label_subset_dnwa(letters, allowed)
        gamma = sorted(set(_subset(rng, letters, non_empty=False)) | (set(letters) - set(allowed)))
        replacement = random_replacement(rng, family, letters, allowed, max_states, total=True)
    else:
        target = random_target(rng, letters, max_states)
        gamma = _subset(rng, letters, non_empty=True)
        replacement = random_replacement(rng, family, letters, letters, max_states, total=rng.random() < 0.5)
    return Game(letters, gamma, replacement, target, name=family)


def random_instances(family: str, count: int, seed: Optional[int] = None,
                     max_word_length: Optional[int] = None,
                     max_states: Optional[int] = None) -> Iterator[GameInstance]:
    """
    `count` reproducible (game, word) pairs. Words are non-empty with at
    most max_word_length tags, unless max_word_length is below 2.
    """
    if seed is None:
        seed = int(get_config_value('cross_validation.seed', 7))
    if max_word_length is None:
        max_word_length = int(get_config_value('cross_validation.max_word_length', 6))
    if max_states is None:
        max_states = int(get_config_value('cross_validation.max_states', 3))
    rng = np.random.default_rng([seed, FAMILIES.index(family)])
    most = max_word_length // 2
    for _ in range(count):
        game = random_game(rng, family, max_states)
        length = 2 * int(rng.integers(min(1, most), most + 1))
        yield GameInstance(family, game, random_well_nested(rng, sorted(game.alphabet), length))
