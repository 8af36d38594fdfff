"""
Exact game solving on the explored configuration graph.

Configurations are explored breadth-first up to a budget. Juliet's winning
region is the backward attractor of the winning final configurations,
computed twice: pessimistically (unexplored configurations and truncated
Romeo moves count against Juliet) and optimistically (they count for her).
When the initial configuration is in the pessimistic region Juliet wins;
when it is outside the optimistic region Romeo wins; otherwise the budget
did not suffice. Plays that never end are never attracted, so they are
won by Romeo.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from src.nested_words.words import Tag, check_word
from src.games.engine import PlayEngine
from src.games.game import (
    BUDGET_EXHAUSTED, JULIET, JULIET_WINS, ROMEO_WINS, Configuration, Constraints, Game, Move,
    SolveResult, Strategy,
)
from src.utils.config import get_config_value

logger = logging.getLogger(__name__)


@dataclass
class ConfigurationGraph:
    """Explored part of the game graph, keyed by configuration digest."""
    initial: str
    nodes: Dict[str, Configuration] = field(default_factory=dict)
    edges: Dict[str, List[Tuple[Move, str]]] = field(default_factory=dict)
    frontier: Set[str] = field(default_factory=set)
    truncated: Set[str] = field(default_factory=set)
    won: Set[str] = field(default_factory=set)


class GameSolver:
    """Attractor-based solver for one game under fixed constraints."""

    def __init__(self, game: Game, constraints: Optional[Constraints] = None,
                 max_configurations: Optional[int] = None, engine: Optional[PlayEngine] = None):
        self.game = game
        self.constraints = constraints or Constraints()
        if max_configurations is None:
            max_configurations = int(get_config_value('games.max_configurations', 200000))
        self.max_configurations = max_configurations
        self.engine = engine or PlayEngine(game, self.constraints)

    def explore(self, w: Sequence[Tag]) -> ConfigurationGraph:
        """Breadth-first exploration from the initial configuration of w."""
        start = self.engine.initial(w)
        graph = ConfigurationGraph(start.digest)
        graph.nodes[start.digest] = start
        queue = deque([start.digest])
        expanded = 0
        while queue:
            digest = queue.popleft()
            if expanded >= self.max_configurations:
                graph.frontier.add(digest)
                graph.frontier.update(queue)
                break
            expanded += 1
            config = graph.nodes[digest]
            if self.engine.is_final(config):
                if self.engine.juliet_wins(config):
                    graph.won.add(digest)
                graph.edges[digest] = []
                continue
            if config.player != JULIET:
                _, truncated = self.engine.replies(config)
                if truncated:
                    graph.truncated.add(digest)
            out = []
            for move, successor in self.engine.successors(config):
                key = successor.digest
                if key not in graph.nodes:
                    graph.nodes[key] = successor
                    queue.append(key)
                out.append((move, key))
            graph.edges[digest] = out
        logger.debug(f"explored {expanded} configurations, frontier {len(graph.frontier)}, "
                     f"truncated {len(graph.truncated)}")
        return graph

    @staticmethod
    def attractor(graph: ConfigurationGraph, optimistic: bool) -> Tuple[Dict[str, int], Dict[str, Move]]:
        """
        Juliet's attractor with ranks, and her rank-decreasing choices.

        Returns:
            (rank per attracted digest, Juliet's move per attracted Juliet digest)
        """
        rank: Dict[str, int] = {}
        choice: Dict[str, Move] = {}
        pending: Dict[str, int] = {}
        predecessors: Dict[str, List[str]] = {}
        queue: deque = deque()

        def attract(digest: str, value: int):
            rank[digest] = value
            queue.append(digest)

        for digest, config in graph.nodes.items():
            if digest in graph.frontier or digest not in graph.edges:
                if optimistic:
                    attract(digest, 0)
                continue
            targets = {key for _, key in graph.edges[digest]}
            for key in targets:
                predecessors.setdefault(key, []).append(digest)
            if digest in graph.won:
                attract(digest, 0)
            elif config.player != JULIET:
                if digest in graph.truncated and not optimistic:
                    continue
                if targets:
                    pending[digest] = len(targets)
                elif digest in graph.truncated:
                    attract(digest, 0)

        while queue:
            digest = queue.popleft()
            for pred in predecessors.get(digest, ()):
                if pred in rank:
                    continue
                if graph.nodes[pred].player == JULIET:
                    choice[pred] = next(move for move, key in graph.edges[pred] if key == digest)
                    attract(pred, rank[digest] + 1)
                elif pred in pending:
                    pending[pred] -= 1
                    if pending[pred] == 0:
                        attract(pred, rank[digest] + 1)
        return rank, choice

    def solve(self, w: Sequence[Tag]) -> SolveResult:
        """
        Decide whether Juliet wins on w.

        Raises:
            MalformedWordError: w is not well-nested over the game alphabet
        """
        check_word(w, self.game.alphabet)
        graph = self.explore(w)
        safe_rank, safe_choice = self.attractor(graph, optimistic=False)
        hopeful_rank, _ = self.attractor(graph, optimistic=True)
        stats = {
            'configurations': len(graph.nodes),
            'expanded': len(graph.edges),
            'frontier': len(graph.frontier),
            'truncated': len(graph.truncated),
            'juliet_region': len(safe_rank),
            'juliet_region_optimistic': len(hopeful_rank),
            'replacement_lookups': self.engine.oracle.lookups,
        }
        if graph.initial in safe_rank:
            witness = _juliet_witness(graph, safe_choice)
            verdict = JULIET_WINS
        elif graph.initial not in hopeful_rank:
            witness = _romeo_witness(graph, hopeful_rank)
            verdict = ROMEO_WINS
        else:
            witness = None
            verdict = BUDGET_EXHAUSTED
            logger.warning(f"solve: undecided within {self.max_configurations} configurations "
                           f"({len(graph.truncated)} truncated Romeo moves)")
        logger.info(f"solve: {verdict} after {stats['expanded']} configurations")
        return SolveResult(verdict, "graph", witness, stats=stats)


def _juliet_witness(graph: ConfigurationGraph, choice: Dict[str, Move]) -> Strategy:
    """Juliet's choices on configurations reachable when she follows them."""
    strategy: Strategy = {}
    seen = {graph.initial}
    stack = [graph.initial]
    while stack:
        digest = stack.pop()
        if graph.nodes[digest].player == JULIET:
            move = choice.get(digest)
            if move is None:
                continue
            strategy[digest] = move
            nexts = [key for m, key in graph.edges[digest] if m == move][:1]
        else:
            nexts = [key for _, key in graph.edges.get(digest, ())]
        for key in nexts:
            if key not in seen:
                seen.add(key)
                stack.append(key)
    return strategy


def _romeo_witness(graph: ConfigurationGraph, juliet_rank: Dict[str, int]) -> Strategy:
    """Romeo replies that keep every play outside Juliet's optimistic region."""
    strategy: Strategy = {}
    seen = {graph.initial}
    stack = [graph.initial]
    while stack:
        digest = stack.pop()
        edges = graph.edges.get(digest, ())
        if graph.nodes[digest].player == JULIET:
            nexts = [key for _, key in edges]
        else:
            escape = [(move, key) for move, key in edges if key not in juliet_rank]
            if not escape:
                continue
            strategy[digest] = escape[0][0]
            nexts = [escape[0][1]]
        for key in nexts:
            if key not in seen:
                seen.add(key)
                stack.append(key)
    return strategy


def solve(game: Game, w: Sequence[Tag], constraints: Optional[Constraints] = None,
          max_configurations: Optional[int] = None) -> SolveResult:
    """Decide whether Juliet wins on w under constraints, with the graph solver."""
    return GameSolver(game, constraints, max_configurations).solve(w)
