"""
Doubling fixture: a deterministic epsilon-free game in which a short input
grows to a tower-of-exponentials length under Call depth 2.

The input is a path <L{k-1}>..<L1> <c0>^n <c1>..<ck> closed in reverse.
Calling a c{i-1} node deletes it and doubles every c{i} node below it.
Calling an L{i} node deletes it and hands its subtree back to Juliet for
another pass. Round r calls every c{r-1} node bottom-up, then the L{r}
node; after k rounds only 2 * exp_tower(k, n) tags labelled ck remain.
"""

import logging
from typing import Optional, Tuple

from src.nested_words.words import NestedWord, close_tag, open_tag
from src.nwa.builders import label_subset_dnwa
from src.nwt.transducer import ClosingTransition, Nwt, OpeningTransition
from src.games.engine import PlayEngine
from src.games.game import JULIET, Constraints, Game
from src.utils.config import get_config_value
from src.utils.errors import SizeLimitError

logger = logging.getLogger(__name__)

DOUBLING_DEPTH = 2


def exp_tower(k: int, n: int, limit: Optional[int] = None) -> int:
    """
    exp_tower(0, n) = n, exp_tower(k, n) = 2 ** exp_tower(k - 1, n).

    Raises:
        SizeLimitError: the value would exceed limit
    """
    value = n
    for _ in range(k):
        if limit is not None and value >= max(limit, 1).bit_length():
            raise SizeLimitError(f"exp_tower({k}, {n}) exceeds {limit}")
        value = 2 ** value
    if limit is not None and value > limit:
        raise SizeLimitError(f"exp_tower({k}, {n}) exceeds {limit}")
    return value


def _tags(label: str, doubled: bool = False) -> Tuple[NestedWord, NestedWord]:
    times = 2 if doubled else 1
    return NestedWord((open_tag(label),) * times), NestedWord((close_tag(label),) * times)


def gen_doubling_game(k: int, n: int, size_limit: Optional[int] = None) -> Tuple[Game, NestedWord]:
    """
    The doubling game and its input word of length 2 * (n + 2k - 1).

    Raises:
        ValueError: k or n below 1
        SizeLimitError: 2 * exp_tower(k, n) exceeds the size limit
    """
    if k < 1 or n < 1:
        raise ValueError("gen_doubling_game needs k >= 1 and n >= 1")
    if size_limit is None:
        size_limit = int(get_config_value('games.doubling_size_limit', 65536))
    final_length = 2 * exp_tower(k, n, size_limit)
    if final_length > size_limit:
        raise SizeLimitError(f"doubling game ({k}, {n}) ends with {final_length} tags, limit {size_limit}")

    counters = [f"c{i}" for i in range(k + 1)]
    levels = [f"L{i}" for i in range(1, k)]
    alphabet = counters + levels

    states = {"start", "copy", "done"}
    hiers = {"cp"}
    opening, closing = [], []
    for label in alphabet:
        open_out, close_out = _tags(label)
        opening.append(OpeningTransition("copy", label, "copy", "cp", open_out))
        closing.append(ClosingTransition("copy", "cp", label, "copy", close_out))
    for i in range(1, k + 1):
        state, root, doubled = f"dbl{i}", f"root_c{i - 1}", f"d{i}"
        states.add(state)
        hiers |= {root, doubled}
        opening.append(OpeningTransition("start", counters[i - 1], state, root, NestedWord()))
        closing.append(ClosingTransition(state, root, counters[i - 1], "done", NestedWord()))
        for label in alphabet:
            open_out, close_out = _tags(label, doubled=label == counters[i])
            hier = doubled if label == counters[i] else "cp"
            opening.append(OpeningTransition(state, label, state, hier, open_out))
            closing.append(ClosingTransition(state, hier, label, state, close_out))
    for label in levels:
        root = f"root_{label}"
        hiers.add(root)
        opening.append(OpeningTransition("start", label, "copy", root, NestedWord()))
        closing.append(ClosingTransition("copy", root, label, "done", NestedWord()))

    replacement = Nwt(alphabet, states, hiers, (), "start", {"done"}, opening, (), closing,
                      functional_claimed=True)
    target = label_subset_dnwa(alphabet, {counters[k]})
    game = Game(alphabet, counters[:k] + levels, replacement, target, name=f"doubling-{k}-{n}")

    path = [open_tag(label) for label in reversed(levels)]
    path += [open_tag("c0")] * n + [open_tag(label) for label in counters[1:]]
    word = NestedWord(path + [tag.partner() for tag in reversed(path)])
    logger.debug(f"gen_doubling_game: k={k} n={n}, input {len(word)} tags, final {final_length} tags")
    return game, word


def run_doubling_script(game: Game, w: NestedWord) -> NestedWord:
    """
    Play the bottom-up doubling strategy through the engine under Call
    depth 2 and return the final word.

    Raises:
        RuntimeError: Romeo does not have exactly one reply to a scripted Call
    """
    engine = PlayEngine(game, Constraints(max_call_depth=DOUBLING_DEPTH))
    config = engine.initial(w)
    round_number = 1
    calls = 0
    while not engine.is_final(config):
        if config.player != JULIET:
            replies, _ = engine.replies(config)
            if len(replies) != 1:
                raise RuntimeError(f"expected one reply at {config.describe()}, got {len(replies)}")
            config = engine.apply_reply(config, replies[0])
            continue
        tag = config.v[0].tag
        scripted = tag.closing and (tag.label == f"c{round_number - 1}" or tag.label.startswith("L"))
        if scripted and engine.can_call(config):
            if tag.label.startswith("L"):
                round_number = int(tag.label[1:]) + 1
            calls += 1
            config = engine.call(config)
        else:
            config = engine.read(config)
    logger.info(f"run_doubling_script: {calls} calls, final word of {len(config.processed)} tags")
    return config.processed
