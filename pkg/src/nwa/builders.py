"""Ready-made automata used as targets, domains and test fixtures."""

from typing import Iterable, Sequence

from src.nested_words.words import Tag, check_word
from src.nwa.automaton import ClosingRule, Dnwa, EpsNwa, OpeningRule


def universal_nwa(alphabet: Iterable[str]) -> Dnwa:
    """Total DNWA accepting every well-nested word over alphabet."""
    letters = sorted(set(alphabet))
    opening = [OpeningRule("q", a, "q", "p") for a in letters]
    closing = [ClosingRule("q", "p", a, "q") for a in letters]
    return Dnwa(letters, {"q"}, {"p"}, "q", {"q"}, opening, closing)


def empty_nwa(alphabet: Iterable[str]) -> Dnwa:
    """DNWA with no accepting state."""
    return universal_nwa(alphabet).with_final(())


def singleton_nwa(w: Sequence[Tag], alphabet: Iterable[str] = None) -> EpsNwa:
    """
    NWA accepting exactly w.

    Linear states are the positions 0..|w|; the hierarchical state pushed
    at an opening tag is its position.
    """
    check_word(w)
    letters = set(alphabet or ()) | {tag.label for tag in w}
    states = [f"w{i}" for i in range(len(w) + 1)]
    opening, closing, stack = [], [], []
    for i, tag in enumerate(w):
        if tag.opening:
            stack.append(f"o{i}")
            opening.append(OpeningRule(states[i], tag.label, states[i + 1], f"o{i}"))
        else:
            closing.append(ClosingRule(states[i], stack.pop(), tag.label, states[i + 1]))
    hiers = [f"o{i}" for i, tag in enumerate(w) if tag.opening]
    return EpsNwa(letters, states, hiers, states[0], {states[-1]}, opening, closing)


def label_subset_dnwa(alphabet: Iterable[str], allowed: Iterable[str]) -> Dnwa:
    """Total DNWA accepting words whose tags all carry labels in `allowed`."""
    letters = sorted(set(alphabet))
    good = set(allowed)
    opening, closing = [], []
    for a in letters:
        target = "ok" if a in good else "bad"
        opening.append(OpeningRule("ok", a, target, "p"))
        opening.append(OpeningRule("bad", a, "bad", "p"))
        closing.append(ClosingRule("ok", "p", a, target))
        closing.append(ClosingRule("bad", "p", a, "bad"))
    return Dnwa(letters, {"ok", "bad"}, {"p"}, "ok", {"ok"}, opening, closing)


def single_label_dnwa(alphabet: Iterable[str]) -> Dnwa:
    """Total DNWA accepting words in which every tag has the same label."""
    letters = sorted(set(alphabet))
    states = ["none", "bad"] + [f"only_{a}" for a in letters]
    opening, closing = [], []
    for state in states:
        for a in letters:
            if state == "none" or state == f"only_{a}":
                target = f"only_{a}"
            else:
                target = "bad"
            opening.append(OpeningRule(state, a, target, "p"))
            closing.append(ClosingRule(state, "p", a, target))
    return Dnwa(letters, states, {"p"}, "none", set(states) - {"bad"}, opening, closing)


def length_exceeds_dnwa(alphabet: Iterable[str], limit: int) -> Dnwa:
    """Total DNWA accepting the words with more than `limit` tags."""
    letters = sorted(set(alphabet))
    top = limit + 1
    states = [f"n{i}" for i in range(top + 1)]
    opening, closing = [], []
    for i in range(top + 1):
        nxt = states[min(i + 1, top)]
        for a in letters:
            opening.append(OpeningRule(states[i], a, nxt, "p"))
            closing.append(ClosingRule(states[i], "p", a, nxt))
    return Dnwa(letters, states, {"p"}, states[0], {states[top]}, opening, closing)
