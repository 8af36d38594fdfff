"""
Game semantics: Read and Call for Juliet, replacements for Romeo.

The engine annotates every tag of the current word with the Call level it
was produced at, the replacement string it belongs to and, for write-once
games, whether a Call already happened below it. Annotations that cannot
influence future moves are erased, so equal positions get equal digests.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.nested_words.words import NestedWord, Tag, format_word, last_rooted_start, shortlex_key
from src.nwa.builders import length_exceeds_dnwa
from src.nwa.operations import accepts, enumerate_language, intersect, is_empty
from src.nwt.images import image_automaton
from src.nwt.properties import classify
from src.nwt.runs import enumerate_runs
from src.nwt.transducer import Nwt
from src.games.game import (
    CALL, JULIET, READ, REPLY, ROMEO, Configuration, Constraints, Game, Move, Slot,
)
from src.utils.config import get_config_value
from src.utils.errors import FunctionalityError

logger = logging.getLogger(__name__)

Replies = Tuple[Tuple[NestedWord, ...], bool]


class ReplacementOracle:
    """
    Cached transduct sets of rooted words.

    For epsilon-free transducers outputs are at most (longest rule output) x
    (input length) long, so the enumeration is complete. Otherwise transducts
    are enumerated up to the output budget and the result is flagged as
    truncated when longer transducts exist.
    """

    def __init__(self, transducer: Nwt, output_budget: Optional[int] = None):
        self.transducer = transducer
        if output_budget is None:
            output_budget = int(get_config_value('games.romeo_output_budget', 10))
        self.output_budget = output_budget
        nwt_class = classify(transducer)
        self.eps_free = nwt_class.eps_free
        self.non_deleting = nwt_class.non_deleting
        self.functional = nwt_class.functional_claimed
        self._cache: Dict[NestedWord, Replies] = {}
        self.lookups = 0

    def replies(self, rooted: Sequence[Tag]) -> Replies:
        """
        Transducts of a rooted word in shortlex order, and a truncation flag.

        Raises:
            FunctionalityError: two transducts under a functional claim
        """
        word = NestedWord(rooted)
        self.lookups += 1
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        t = self.transducer
        truncated = False
        if any(label not in t.alphabet for label in word.labels):
            found = frozenset()
        elif self.eps_free:
            found = enumerate_runs(t, word, t.max_output_length * len(word))
        elif self.non_deleting:
            image = image_automaton(t, word)
            found = enumerate_language(image, self.output_budget)
            longer = intersect(image, length_exceeds_dnwa(image.alphabet, self.output_budget))
            truncated = not is_empty(longer)
        else:
            found = enumerate_runs(t, word, self.output_budget)
            truncated = True
        ordered = tuple(sorted(found, key=shortlex_key))
        if self.functional and len(ordered) > 1:
            raise FunctionalityError(
                f"transducer declared functional maps {format_word(word)} to "
                f"{format_word(ordered[0])} and {format_word(ordered[1])}"
            )
        if truncated:
            logger.debug(f"replies of {format_word(word)} truncated at {self.output_budget} tags")
        self._cache[word] = (ordered, truncated)
        return self._cache[word]


class PlayEngine:
    """Successor relation of a game under Call constraints."""

    def __init__(self, game: Game, constraints: Optional[Constraints] = None,
                 oracle: Optional[ReplacementOracle] = None):
        self.game = game
        self.constraints = constraints or Constraints()
        self.oracle = oracle or ReplacementOracle(game.replacement, self.constraints.romeo_output_budget)
        self.depth = self.constraints.effective_depth
        self.track_levels = self.depth is not None
        self.track_origins = self.constraints.max_call_width is not None
        self._target_cache: Dict[NestedWord, bool] = {}

    # ------------------------------------------------------------------
    # Positions
    # ------------------------------------------------------------------

    def initial(self, w: Sequence[Tag]) -> Configuration:
        slots = tuple(Slot(tag) for tag in w)
        return self.canonical(Configuration(JULIET, (), slots))

    def canonical(self, config: Configuration) -> Configuration:
        """Erase annotations that no future move depends on."""
        write_once = self.constraints.write_once
        u = tuple(Slot(s.tag, s.level if write_once else 0, 0, s.marked and write_once) for s in config.u)
        if not self.track_origins:
            v = tuple(Slot(s.tag, s.level if self.track_levels else 0) for s in config.v)
            return Configuration(config.player, u, v)
        renumber = {0: 0}
        for slot in config.v:
            if slot.origin not in renumber:
                renumber[slot.origin] = len(renumber)
        v = tuple(Slot(s.tag, s.level if self.track_levels else 0, renumber[s.origin]) for s in config.v)
        widths = tuple(sorted((renumber[origin], used) for origin, used in config.widths
                              if origin in renumber and used))
        return Configuration(config.player, u, v, widths)

    def is_final(self, config: Configuration) -> bool:
        return config.player == JULIET and not config.v

    def juliet_wins(self, config: Configuration) -> bool:
        """Final configuration whose word is in the target language."""
        if not self.is_final(config):
            return False
        word = config.processed
        won = self._target_cache.get(word)
        if won is None:
            target = self.game.target
            won = all(label in target.alphabet for label in word.labels) and accepts(target, word)
            self._target_cache[word] = won
        return won

    # ------------------------------------------------------------------
    # Moves
    # ------------------------------------------------------------------

    def _last_start(self, config: Configuration) -> int:
        return last_rooted_start(config.processed + NestedWord((config.v[0].tag,)))

    def can_call(self, config: Configuration) -> bool:
        if config.player != JULIET or not config.v:
            return False
        slot = config.v[0]
        if slot.tag.opening or slot.tag.label not in self.game.gamma:
            return False
        if self.depth is not None and slot.level + 1 > self.depth:
            return False
        width = self.constraints.max_call_width
        if width is not None and (slot.origin != 0 or self.constraints.width_includes_input):
            if config.used_width(slot.origin) >= width:
                return False
        if self.constraints.write_once:
            start = self._last_start(config)
            if any(s.level > 0 or s.marked for s in config.u[start:]):
                return False
        return True

    def rooted_word(self, config: Configuration) -> NestedWord:
        """The rooted word a Call at the current position hands to Romeo."""
        start = self._last_start(config)
        return NestedWord(config.processed[start:] + (config.v[0].tag,))

    def replies(self, config: Configuration) -> Tuple[Tuple[NestedWord, ...], bool]:
        return self.oracle.replies(self.rooted_word(config))

    def read(self, config: Configuration) -> Configuration:
        return self.canonical(Configuration(JULIET, config.u + config.v[:1], config.v[1:], config.widths))

    def call(self, config: Configuration) -> Configuration:
        widths = dict(config.widths)
        origin = config.v[0].origin
        if self.track_origins and (origin != 0 or self.constraints.width_includes_input):
            widths[origin] = widths.get(origin, 0) + 1
        return self.canonical(Configuration(ROMEO, config.u, config.v, tuple(sorted(widths.items()))))

    def apply_reply(self, config: Configuration, word: Sequence[Tag]) -> Configuration:
        """Replace the rooted word ending at the called tag by `word`."""
        start = self._last_start(config)
        prefix = list(config.u[:start])
        if self.constraints.write_once:
            parent = _parent_opening(prefix)
            if parent is not None:
                prefix[parent] = prefix[parent]._replace(marked=True)
        called = config.v[0]
        level = called.level + 1 if self.track_levels else 0
        origin = 0
        if self.track_origins:
            origin = 1 + max([s.origin for s in config.v] + [origin for origin, _ in config.widths])
        inserted = tuple(Slot(tag, level, origin) for tag in word)
        return self.canonical(Configuration(JULIET, tuple(prefix), inserted + config.v[1:], config.widths))

    def successors(self, config: Configuration) -> List[Tuple[Move, Configuration]]:
        """
        Juliet: Read, and Call when allowed. Romeo: one successor per reply;
        none when the called word has no transduct.
        """
        if config.player == JULIET:
            if not config.v:
                return []
            moves = [(Move(READ), self.read(config))]
            if self.can_call(config):
                moves.append((Move(CALL), self.call(config)))
            return moves
        words, _ = self.replies(config)
        return [(Move(REPLY, y), self.apply_reply(config, y)) for y in words]


def _parent_opening(prefix: List[Slot]) -> Optional[int]:
    """Index of the innermost unmatched opening tag of prefix."""
    level = 0
    for i in range(len(prefix) - 1, -1, -1):
        if prefix[i].tag.opening:
            if level == 0:
                return i
            level -= 1
        else:
            level += 1
    return None


def successors(game: Game, config: Configuration,
               constraints: Optional[Constraints] = None) -> List[Tuple[Move, Configuration]]:
    """Successor configurations of config with the moves leading to them."""
    return PlayEngine(game, constraints).successors(config)
