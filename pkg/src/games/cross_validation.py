"""Cross-checking the specialised solvers against the graph solver on random games."""

import logging
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.games.game import BUDGET_EXHAUSTED, JULIET_WINS, Constraints, Game, SolveResult
from src.games.oracle import search_without_memo
from src.games.random_games import (
    DELETING_RELABELLING, EPS_FREE, FAMILIES, FUNCTIONAL_RELABELLING, SINGLE_CALL, random_instances,
)
from src.games.replay_free import check_win_replay_free
from src.games.single_call import solve_single_call
from src.games.solver import solve
from src.games.transforms import make_non_deleting
from src.games.write_once import solve_write_once
from src.utils.config import get_config_value
from src.utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

REPLAY_FREE = Constraints(max_call_depth=1)
SINGLE_CALL_RULES = Constraints(max_call_depth=1, max_call_width=1, width_includes_input=True)
WRITE_ONCE = Constraints(write_once=True)

Pair = Callable[[Game, Any], Tuple[SolveResult, SolveResult]]


class CrossValidator:
    """
    Runs every solver pairing on its random family and tabulates agreement.

    A pairing agrees when both verdicts are equal; instances where either
    side is undecided are counted separately and never as mismatches.
    """

    def __init__(self, seed: Optional[int] = None, instances: Optional[int] = None,
                 max_word_length: Optional[int] = None, max_configurations: Optional[int] = None):
        self.seed = int(seed if seed is not None else get_config_value('cross_validation.seed', 7))
        self.instances = int(instances if instances is not None
                             else get_config_value('cross_validation.instances', 500))
        self.max_word_length = max_word_length
        self.max_configurations = max_configurations

    def _solve(self, game: Game, w, constraints: Constraints) -> SolveResult:
        return solve(game, w, constraints, self.max_configurations)

    def _run(self, check: str, family: str, pair: Pair, count: Optional[int] = None) -> List[Dict[str, Any]]:
        rows = []
        for index, instance in enumerate(random_instances(family, count or self.instances, self.seed,
                                                          self.max_word_length)):
            started = time.perf_counter()
            left, right = pair(instance.game, instance.word)
            decided = left.decided and right.decided
            rows.append({
                'check': check,
                'family': family,
                'index': index,
                'word_length': len(instance.word),
                'left': left.verdict,
                'right': right.verdict,
                'decided': decided,
                'agree': left.verdict == right.verdict if decided else None,
                'seconds': time.perf_counter() - started,
            })
            if decided and left.verdict != right.verdict:
                logger.warning(f"{check}: instance {index} disagrees ({left.verdict} vs {right.verdict}) "
                               f"on {instance.word}")
        return rows

    def check_replay_free(self) -> List[Dict[str, Any]]:
        return self._run("replay-free vs depth 1", EPS_FREE,
                         lambda g, w: (check_win_replay_free(g, w), self._solve(g, w, REPLAY_FREE)))

    def check_single_call(self) -> List[Dict[str, Any]]:
        return self._run("single-call vs one Call", SINGLE_CALL,
                         lambda g, w: (solve_single_call(g, w), self._solve(g, w, SINGLE_CALL_RULES)))

    def check_write_once(self) -> List[Dict[str, Any]]:
        return self._run("write-once vs write-once play", FUNCTIONAL_RELABELLING,
                         lambda g, w: (solve_write_once(g, w), self._solve(g, w, WRITE_ONCE)))

    def check_non_deleting(self) -> List[Dict[str, Any]]:
        return self._run("deleting vs struck-out", DELETING_RELABELLING,
                         lambda g, w: (check_win_replay_free(g, w), check_win_replay_free(make_non_deleting(g), w)))

    def check_memoless(self) -> List[Dict[str, Any]]:
        """Graph solver against the memoless search on unrestricted relabelling games."""
        def pair(game: Game, w):
            graph = self._solve(game, w, Constraints())
            try:
                plain = search_without_memo(game, w, Constraints(), self.max_configurations)
            except BudgetExceededError:
                plain = SolveResult(BUDGET_EXHAUSTED, "memoless")
            return graph, plain
        return self._run("graph vs memoless", FUNCTIONAL_RELABELLING, pair, max(1, self.instances // 5))

    def check_monotonicity(self) -> List[Dict[str, Any]]:
        """
        A Juliet win at a random (depth d, width k) with d <= 1 and k <= 2
        survives relaxing either bound by one.
        """
        rng = np.random.default_rng([self.seed, len(FAMILIES)])

        def pair(game: Game, w):
            depth, width = int(rng.integers(0, 2)), int(rng.integers(0, 3))
            tight = self._solve(game, w, Constraints(max_call_depth=depth, max_call_width=width))
            if tight.verdict != JULIET_WINS:
                return tight, tight
            for looser in (Constraints(max_call_depth=depth + 1, max_call_width=width),
                           Constraints(max_call_depth=depth, max_call_width=width + 1)):
                relaxed = self._solve(game, w, looser)
                if relaxed.verdict != JULIET_WINS:
                    return tight, relaxed
            return tight, tight
        return self._run("monotone in depth and width", EPS_FREE, pair)

    def run_all(self) -> pd.DataFrame:
        rows: List[Dict[str, Any]] = []
        for check in (self.check_replay_free, self.check_single_call, self.check_write_once,
                      self.check_non_deleting, self.check_memoless, self.check_monotonicity):
            logger.info(f"cross-validation: running {check.__name__}")
            rows.extend(check())
        return pd.DataFrame(rows)

    @staticmethod
    def summarize(results: pd.DataFrame) -> pd.DataFrame:
        """Per check: instances, decided, agreements, mismatches and runtime."""
        if results.empty:
            return pd.DataFrame(columns=['instances', 'decided', 'agreements', 'mismatches', 'seconds'])
        decided = results[results['decided']]
        summary = pd.DataFrame({
            'instances': results.groupby('check').size(),
            'decided': decided.groupby('check').size(),
            'agreements': decided[decided['agree'] == True].groupby('check').size(),  # noqa: E712
            'seconds': results.groupby('check')['seconds'].sum(),
        }).fillna(0)
        for column in ('instances', 'decided', 'agreements'):
            summary[column] = summary[column].astype(int)
        summary['mismatches'] = summary['decided'] - summary['agreements']
        return summary[['instances', 'decided', 'agreements', 'mismatches', 'seconds']]

    def print_summary(self, results: pd.DataFrame):
        """Print formatted agreement summary."""
        summary = self.summarize(results)
        print("\n" + "=" * 80)
        print("SOLVER CROSS-VALIDATION")
        print("=" * 80)
        print(f"Seed: {self.seed}, instances per family: {self.instances}")
        for check, row in summary.iterrows():
            print(f"\n{check}")
            print(f"  decided: {row['decided']}/{row['instances']}")
            print(f"  agreements: {row['agreements']}, mismatches: {row['mismatches']}")
            print(f"  time: {row['seconds']:.2f}s")
        total = int(summary['mismatches'].sum()) if not summary.empty else 0
        print(f"\nTotal mismatches: {total}")
        print("=" * 80 + "\n")
