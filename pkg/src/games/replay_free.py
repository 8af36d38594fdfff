"""
Replay-free solving by direct left-to-right simulation.

Juliet decides only on closing tags with a callable label, trying Read
first. A replacement is written into the processed part and never read
again, which is exactly Call depth 1.
"""

import logging
from typing import Dict, Optional, Sequence, Tuple

from src.nested_words.words import NestedWord, Tag, check_word, last_rooted_start
from src.nwa.operations import accepts
from src.games.engine import ReplacementOracle
from src.games.game import (
    BUDGET_EXHAUSTED, CALL, JULIET, JULIET_WINS, ROMEO_WINS, Configuration, Game, Move, SolveResult,
    Slot, Strategy,
)

logger = logging.getLogger(__name__)

Position = Tuple[NestedWord, NestedWord]


class ReplayFreeChecker:
    """
    Memoized recursive check over positions (u, v) of plain tags.

    A Call whose transduct set was truncated is lost for Juliet in the
    pessimistic check. The optimistic check assumes every missing
    transduct is good for her.
    """

    def __init__(self, game: Game, output_budget: Optional[int] = None, optimistic: bool = False,
                 oracle: Optional[ReplacementOracle] = None):
        self.game = game
        self.oracle = oracle or ReplacementOracle(game.replacement, output_budget)
        self.optimistic = optimistic
        self.memo: Dict[Position, bool] = {}
        self.truncated = False

    def in_target(self, word: NestedWord) -> bool:
        target = self.game.target
        return all(label in target.alphabet for label in word.labels) and accepts(target, word)

    def _call_split(self, u: NestedWord, tag: Tag) -> Tuple[NestedWord, NestedWord]:
        prefix = u + (tag,)
        start = last_rooted_start(prefix)
        return prefix[:start], prefix[start:]

    def check(self, u: NestedWord, v: NestedWord) -> bool:
        """Does Juliet have a replay-free winning strategy from (u, v)?"""
        key = (u, v)
        known = self.memo.get(key)
        if known is not None:
            return known
        if not v:
            result = self.in_target(u)
        else:
            tag, rest = v[0], v[1:]
            if tag.opening or tag.label not in self.game.gamma:
                result = self.check(u + (tag,), rest)
            elif self.check(u + (tag,), rest):
                result = True
            else:
                before, rooted = self._call_split(u, tag)
                replies, truncated = self.oracle.replies(rooted)
                self.truncated = self.truncated or truncated
                if truncated and not self.optimistic:
                    result = False
                else:
                    result = (bool(replies) or truncated) and all(self.check(before + y, rest) for y in replies)
        self.memo[key] = result
        return result

    def witness(self, w: NestedWord) -> Strategy:
        """
        Juliet's Call decisions along her winning plays, keyed like the
        graph solver's configurations under Call depth 1.
        """
        strategy: Strategy = {}
        stack = [(NestedWord(), w)]
        while stack:
            u, v = stack.pop()
            while v:
                tag, rest = v[0], v[1:]
                if tag.closing and tag.label in self.game.gamma and not self.memo.get((u + (tag,), rest)):
                    config = Configuration(JULIET, tuple(Slot(t) for t in u), tuple(Slot(t) for t in v))
                    strategy[config.digest] = Move(CALL)
                    before, rooted = self._call_split(u, tag)
                    replies, _ = self.oracle.replies(rooted)
                    stack.extend((before + y, rest) for y in replies)
                    break
                u, v = u + (tag,), rest
        return strategy


def check_win_replay_free(game: Game, w: Sequence[Tag], output_budget: Optional[int] = None) -> SolveResult:
    """
    Decide whether Juliet has a replay-free winning strategy on w.

    Exact for epsilon-free replacement transducers. Otherwise transduct
    sets may be truncated at the output budget: Juliet wins when she wins
    without relying on any truncated set, Romeo wins when he wins even if
    every missing transduct favoured Juliet, and the verdict is
    BudgetExhausted in between.
    """
    word = NestedWord(w)
    check_word(word, game.alphabet)
    checker = ReplayFreeChecker(game, output_budget)
    won = checker.check(NestedWord(), word)
    stats = {'positions': len(checker.memo), 'replacement_lookups': checker.oracle.lookups}
    if won:
        return SolveResult(JULIET_WINS, "replay-free", checker.witness(word), stats=stats)
    if not checker.truncated:
        return SolveResult(ROMEO_WINS, "replay-free", stats=stats)
    hopeful = ReplayFreeChecker(game, optimistic=True, oracle=checker.oracle)
    hoped = hopeful.check(NestedWord(), word)
    stats['positions'] += len(hopeful.memo)
    stats['replacement_lookups'] = checker.oracle.lookups
    if not hoped:
        return SolveResult(ROMEO_WINS, "replay-free", stats=stats)
    logger.warning("replay-free check: verdict depends on truncated transduct sets")
    return SolveResult(BUDGET_EXHAUSTED, "replay-free", stats=stats)
