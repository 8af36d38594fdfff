"""
Strategy files and strategy replay.

A strategy file has one decision per line:

    3f2a9c01b7de read
    77a0e1c2d3f4 call
    0b1c2d3e4f5a reply "<b></b>"

The key is the configuration digest. Juliet configurations without a line
play Read; Romeo configurations without a line play their first reply in
shortlex order when a single play is traced.
"""

import logging
import shlex
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Set, Tuple

from src.nested_words.words import NestedWord, Tag, format_word, parse_tags
from src.nwa.text_format import content_lines
from src.games.engine import PlayEngine
from src.games.game import CALL, JULIET, READ, REPLY, Configuration, Move, Strategy
from src.utils.errors import FormatError, MalformedWordError

logger = logging.getLogger(__name__)


def format_strategy(strategy: Strategy) -> str:
    return "".join(f"{digest} {move.text()}\n" for digest, move in sorted(strategy.items()))


def parse_strategy(text: str) -> Strategy:
    """
    Raises:
        FormatError: unknown decision or bad reply literal
    """
    strategy: Strategy = {}
    for number, line in content_lines(text):
        try:
            words = shlex.split(line)
        except ValueError as e:
            raise FormatError(str(e), number) from e
        if len(words) == 2 and words[1] in (READ, CALL):
            strategy[words[0]] = Move(words[1])
        elif len(words) == 3 and words[1] == REPLY:
            try:
                strategy[words[0]] = Move(REPLY, parse_tags(words[2]))
            except MalformedWordError as e:
                raise FormatError(f"bad reply: {e}", number) from e
        else:
            raise FormatError("expected: <digest> read|call|reply \"<word>\"", number)
    return strategy


def load_strategy(path) -> Strategy:
    return parse_strategy(Path(path).read_text())


def juliet_move(engine: PlayEngine, config: Configuration, strategy: Strategy) -> Move:
    """
    Raises:
        ValueError: the strategy calls where Call is not allowed
    """
    move = strategy.get(config.digest, Move(READ))
    if move.kind == CALL and not engine.can_call(config):
        raise ValueError(f"strategy calls at a position where Call is not allowed: {config.describe()}")
    if move.kind not in (READ, CALL):
        raise ValueError(f"strategy gives Juliet a {move.kind} move at {config.describe()}")
    return move


def _step(engine: PlayEngine, config: Configuration, move: Move) -> Configuration:
    if move.kind == READ:
        return engine.read(config)
    if move.kind == CALL:
        return engine.call(config)
    return engine.apply_reply(config, move.word)


@dataclass
class ReplayReport:
    """Outcome of every play consistent with a Juliet strategy."""
    finals: List[Tuple[NestedWord, bool]] = field(default_factory=list)
    cycles: int = 0
    romeo_stuck: int = 0

    @property
    def juliet_always_wins(self) -> bool:
        return not self.cycles and not self.romeo_stuck and all(won for _, won in self.finals)


def replay_strategy(engine: PlayEngine, w: Sequence[Tag], strategy: Strategy) -> ReplayReport:
    """
    Follow Juliet's strategy against every Romeo reply.

    A play that revisits a configuration counts as a cycle; a Call with no
    transduct counts as Romeo winning immediately.
    """
    report = ReplayReport()
    path: Set[str] = set()

    def walk(config: Configuration):
        if engine.is_final(config):
            report.finals.append((config.processed, engine.juliet_wins(config)))
            return
        if config.digest in path:
            report.cycles += 1
            return
        path.add(config.digest)
        if config.player == JULIET:
            walk(_step(engine, config, juliet_move(engine, config, strategy)))
        else:
            words, _ = engine.replies(config)
            if not words:
                report.romeo_stuck += 1
            for y in words:
                walk(engine.apply_reply(config, y))
        path.discard(config.digest)

    walk(engine.initial(w))
    return report


def trace_play(engine: PlayEngine, w: Sequence[Tag], strategy: Strategy,
               max_steps: int = 10000) -> List[Tuple[Configuration, Optional[Move]]]:
    """
    One play under the strategy: every configuration with the move taken
    from it (None at the end of the play).
    """
    trace: List[Tuple[Configuration, Optional[Move]]] = []
    config = engine.initial(w)
    for _ in range(max_steps):
        if engine.is_final(config):
            break
        if config.player == JULIET:
            move = juliet_move(engine, config, strategy)
        else:
            move = strategy.get(config.digest)
            if move is None:
                words, _ = engine.replies(config)
                if not words:
                    break
                move = Move(REPLY, words[0])
        trace.append((config, move))
        config = _step(engine, config, move)
    else:
        logger.warning(f"trace stopped after {max_steps} moves")
    trace.append((config, None))
    return trace


def format_trace(engine: PlayEngine, trace: List[Tuple[Configuration, Optional[Move]]]) -> str:
    lines = []
    for config, move in trace:
        step = move.text() if move is not None else "end"
        lines.append(f"{config.digest}  {config.describe()}  -> {step}")
    last = trace[-1][0]
    if engine.is_final(last):
        outcome = "Juliet wins" if engine.juliet_wins(last) else "Romeo wins"
        lines.append(f"final word {format_word(last.processed)}: {outcome}")
    else:
        lines.append("play did not reach a final configuration: Romeo wins")
    return "\n".join(lines) + "\n"
