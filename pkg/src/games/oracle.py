"""Memoless depth-first game search, used to cross-check the graph solver."""

import logging
from typing import Optional, Sequence, Set

from src.nested_words.words import Tag, check_word
from src.games.engine import PlayEngine
from src.games.game import (
    BUDGET_EXHAUSTED, JULIET, JULIET_WINS, ROMEO_WINS, Configuration, Constraints, Game, SolveResult,
)
from src.utils.config import get_config_value
from src.utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)


class _Search:

    def __init__(self, engine: PlayEngine, max_steps: int, optimistic: bool = False):
        self.engine = engine
        self.max_steps = max_steps
        self.optimistic = optimistic
        self.steps = 0
        self.truncated = False
        self.path: Set[str] = set()

    def wins(self, config: Configuration) -> bool:
        """
        Juliet wins from config without revisiting a configuration of the
        current path. A truncated Romeo move is lost for Juliet unless the
        search is optimistic, which lets the missing replies favour her.
        """
        self.steps += 1
        if self.steps > self.max_steps:
            raise BudgetExceededError("configuration", self.max_steps, "memoless search")
        if self.engine.is_final(config):
            return self.engine.juliet_wins(config)
        digest = config.digest
        if digest in self.path:
            return False
        self.path.add(digest)
        try:
            moves = self.engine.successors(config)
            if config.player == JULIET:
                return any(self.wins(successor) for _, successor in moves)
            if self.engine.replies(config)[1]:
                self.truncated = True
                if not self.optimistic:
                    return False
                return all(self.wins(successor) for _, successor in moves)
            return bool(moves) and all(self.wins(successor) for _, successor in moves)
        finally:
            self.path.discard(digest)


def search_without_memo(game: Game, w: Sequence[Tag], constraints: Optional[Constraints] = None,
                        max_steps: Optional[int] = None) -> SolveResult:
    """
    Decide whether Juliet wins on w by plain AND/OR search.

    A configuration that repeats on the current path is a loss for Juliet.
    When a Romeo move was truncated the search runs again optimistically;
    the verdict is BudgetExhausted when the two searches disagree.

    Raises:
        BudgetExceededError: more than max_steps search steps in one search
    """
    check_word(w, game.alphabet)
    if max_steps is None:
        max_steps = int(get_config_value('games.max_configurations', 200000))
    engine = PlayEngine(game, constraints)
    search = _Search(engine, max_steps)
    steps = 0
    if search.wins(engine.initial(w)):
        verdict = JULIET_WINS
    elif not search.truncated:
        verdict = ROMEO_WINS
    else:
        hopeful = _Search(engine, max_steps, optimistic=True)
        verdict = BUDGET_EXHAUSTED if hopeful.wins(engine.initial(w)) else ROMEO_WINS
        steps = hopeful.steps
    if verdict == BUDGET_EXHAUSTED:
        logger.warning("memoless search: verdict depends on truncated Romeo moves")
    return SolveResult(verdict, "memoless", stats={'steps': search.steps + steps})
