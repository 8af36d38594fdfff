"""
Summary relations of an automaton as numpy matrices.

`lengths[i, j]` is the length of the shortest well-nested word that leads
from linear state i to linear state j with an unchanged stack (np.inf when
there is none). The finite entries are exactly the summary pairs; the
lengths additionally drive pruning during enumeration.
"""

import logging
from typing import Dict, Tuple

import numpy as np

from src.nwa.automaton import EpsNwa

logger = logging.getLogger(__name__)


class SummaryIndex:
    """Shortest-summary matrix and completion costs for one automaton."""

    def __init__(self, automaton: EpsNwa):
        self.automaton = automaton
        self.states = sorted(automaton.linear_states)
        self.position = {state: i for i, state in enumerate(self.states)}
        self.lengths = self._saturate()
        self._finals = [self.position[f] for f in automaton.final if f in self.position]
        self._completion_cache: Dict[tuple, float] = {}

    def _saturate(self) -> np.ndarray:
        n = len(self.states)
        lengths = np.full((n, n), np.inf)
        np.fill_diagonal(lengths, 0.0)
        for rule in self.automaton.eps:
            lengths[self.position[rule.source], self.position[rule.target]] = 0.0

        # One row per (opening rule, matching closing rule) pair
        outer, inner_start, inner_end, after = [], [], [], []
        for rule in self.automaton.opening:
            for closing in self.automaton.closing_by_hier.get(rule.hier, ()):
                if closing.label != rule.label:
                    continue
                outer.append(self.position[rule.source])
                inner_start.append(self.position[rule.target])
                inner_end.append(self.position[closing.source])
                after.append(self.position[closing.target])
        outer = np.array(outer, dtype=int)
        inner_start = np.array(inner_start, dtype=int)
        inner_end = np.array(inner_end, dtype=int)
        after = np.array(after, dtype=int)

        rounds = 0
        while True:
            rounds += 1
            previous = lengths.copy()
            for k in range(n):
                np.minimum(lengths, lengths[:, k, None] + lengths[None, k, :], out=lengths)
            if len(outer):
                np.minimum.at(lengths, (outer, after), lengths[inner_start, inner_end] + 2.0)
            if np.array_equal(previous, lengths):
                break
        logger.debug(f"Summary saturation: {n} states, {len(outer)} nesting pairs, {rounds} rounds")
        return lengths

    def shortest(self, source: str, target: str) -> float:
        return float(self.lengths[self.position[source], self.position[target]])

    def is_empty(self) -> bool:
        if not self._finals:
            return True
        start = self.position[self.automaton.initial]
        return bool(np.all(np.isinf(self.lengths[start, self._finals])))

    def shortest_accepted_length(self) -> float:
        if not self._finals:
            return np.inf
        start = self.position[self.automaton.initial]
        return float(np.min(self.lengths[start, self._finals]))

    def completion_cost(self, state: str, stack: Tuple[Tuple[str, str], ...]) -> float:
        """
        Fewest tags that lead from configuration (state, stack) to acceptance.

        Stack entries are (hierarchical state, label of the open tag), top last.
        """
        key = (state, stack)
        cached = self._completion_cache.get(key)
        if cached is not None:
            return cached
        row = self.lengths[self.position[state]]
        if not stack:
            cost = float(np.min(row[self._finals])) if self._finals else np.inf
        else:
            cost = np.inf
            rest = stack[:-1]
            hier, label = stack[-1]
            for rule in self.automaton.closing_by_hier.get(hier, ()):
                if rule.label != label:
                    continue
                reach = row[self.position[rule.source]]
                if np.isinf(reach) or reach + 1 >= cost:
                    continue
                cost = min(cost, reach + 1 + self.completion_cost(rule.target, rest))
        self._completion_cache[key] = cost
        return cost
