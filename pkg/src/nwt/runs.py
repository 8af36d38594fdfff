"""Brute-force transduction by enumerating runs over epsilon-extensions of the input."""

import sys
from typing import FrozenSet, Optional, Sequence, Set, Tuple

from src.nested_words.words import NestedWord, Tag, check_word, is_well_nested
from src.nwt.transducer import EPS, Nwt

# (hierarchical state, input label or EPS)
StackEntry = Tuple[str, str]


def enumerate_runs(transducer: Nwt, w: Sequence[Tag], max_len: int,
                   eps_depth: Optional[int] = None) -> FrozenSet[NestedWord]:
    """
    Outputs of accepting runs on w that have at most max_len tags.

    Works on any valid transducer, deleting ones included. At most eps_depth
    epsilon entries may sit on the stack at once (default max_len + |w| + 1);
    a configuration repeated on the current path is not expanded again.

    Raises:
        MalformedWordError: w is not well-nested
    """
    word = NestedWord(w)
    check_word(word)
    if any(label not in transducer.alphabet for label in word.labels):
        return frozenset()
    if eps_depth is None:
        eps_depth = max_len + len(word) + 1
    t = transducer
    n = len(word)
    found: Set[NestedWord] = set()
    on_path: Set[Tuple[int, str, Tuple[StackEntry, ...], int]] = set()
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))

    def step(pos: int, q: str, stack: Tuple[StackEntry, ...], eps_count: int, out: Tuple[Tag, ...]):
        if len(out) > max_len:
            return
        key = (pos, q, stack, len(out))
        if key in on_path:
            return
        on_path.add(key)
        if pos == n and not stack and q in t.final and is_well_nested(out):
            found.add(NestedWord(out))

        if pos < n and word[pos].opening:
            label = word[pos].label
            for rule in t.opening_index.get((q, label), ()):
                step(pos + 1, rule.target, stack + ((rule.hier, label),), eps_count, out + rule.output)
        if eps_count < eps_depth:
            for rule in t.opening_index.get((q, EPS), ()):
                step(pos, rule.target, stack + ((rule.hier, EPS),), eps_count + 1, out + rule.output)
        if stack:
            hier, label = stack[-1]
            if label == EPS:
                for rule in t.closing_index.get((q, hier, EPS), ()):
                    step(pos, rule.target, stack[:-1], eps_count - 1, out + rule.output)
            elif pos < n and not word[pos].opening and word[pos].label == label:
                for rule in t.closing_index.get((q, hier, label), ()):
                    step(pos + 1, rule.target, stack[:-1], eps_count, out + rule.output)
        for rule in t.internal_index.get(q, ()):
            step(pos, rule.target, stack, eps_count, out + rule.output)
        on_path.discard(key)

    try:
        step(0, t.initial, (), 0, ())
    finally:
        sys.setrecursionlimit(limit)
    return frozenset(found)

