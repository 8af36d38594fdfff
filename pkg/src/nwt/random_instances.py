"""
Seeded random automata and transducers for the cross-checking test families.

All generators take a numpy Generator (`np.random.default_rng(seed)`), so a
family is reproducible from its seed. Transducers are valid by construction:
every hierarchical state fixes, per input label, an output label b, and the
opening and closing outputs have the shapes x<b>y and z</b>t with x, y, z, t
well-nested.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.nested_words.words import EMPTY_WORD, NestedWord, close_tag, open_tag, random_well_nested
from src.nwa.automaton import ClosingRule, Dnwa, EpsNwa, EpsRule, OpeningRule
from src.nwt.transducer import EPS, ClosingTransition, InternalTransition, Nwt, OpeningTransition


def _pick(rng: np.random.Generator, items: Sequence[str]) -> str:
    return items[int(rng.integers(0, len(items)))]


def _states(rng: np.random.Generator, prefix: str, max_states: int) -> List[str]:
    return [f"{prefix}{i}" for i in range(int(rng.integers(1, max_states + 1)))]


def _final(rng: np.random.Generator, states: List[str]) -> List[str]:
    final = [q for q in states if rng.random() < 0.5]
    return final or [_pick(rng, states)]


def random_nwa(rng: np.random.Generator, alphabet: Sequence[str], max_states: int = 3,
               density: float = 0.4, eps_rules: bool = False) -> EpsNwa:
    """Random (epsilon-)NWA with at most max_states linear and hierarchical states."""
    letters = sorted(alphabet)
    states = _states(rng, "s", max_states)
    hiers = _states(rng, "h", max_states)
    opening = [OpeningRule(q, a, _pick(rng, states), p)
               for q in states for a in letters for p in hiers if rng.random() < density]
    closing = [ClosingRule(q, p, a, _pick(rng, states))
               for q in states for p in hiers for a in letters if rng.random() < density]
    eps = []
    if eps_rules:
        eps = [EpsRule(q, r) for q in states for r in states if q != r and rng.random() < density / 2]
    return EpsNwa(letters, states, hiers, states[0], _final(rng, states), opening, closing, eps)


def random_dnwa(rng: np.random.Generator, alphabet: Sequence[str], max_states: int = 3) -> Dnwa:
    """Random total DNWA."""
    letters = sorted(alphabet)
    states = _states(rng, "d", max_states)
    hiers = _states(rng, "g", max_states)
    opening = [OpeningRule(q, a, _pick(rng, states), _pick(rng, hiers)) for q in states for a in letters]
    closing = [ClosingRule(q, p, a, _pick(rng, states)) for q in states for p in hiers for a in letters]
    return Dnwa(letters, states, hiers, states[0], _final(rng, states), opening, closing)


def _context(rng: np.random.Generator, letters: Sequence[str], enabled: bool) -> NestedWord:
    if not enabled or rng.random() < 0.6:
        return EMPTY_WORD
    return random_well_nested(rng, letters, 2)


def random_nwt(rng: np.random.Generator, alphabet: Sequence[str], max_states: int = 3,
               density: float = 0.5, eps_rules: bool = False, internal_rules: bool = False,
               deleting: bool = False, relabelling: bool = False,
               output_alphabet: Optional[Sequence[str]] = None, total: bool = False) -> Nwt:
    """
    Random valid transducer.

    Args:
        rng: numpy Generator
        alphabet: input labels
        max_states: bound on linear and hierarchical states
        density: probability of each candidate rule
        eps_rules: add rules reading epsilon tags
        internal_rules: add internal rules with well-nested outputs
        deleting: some (hierarchical state, label) pairs output nothing
        relabelling: single-tag outputs only, no epsilon or internal rules
        output_alphabet: labels to emit (default: alphabet)
        total: every state is final and every (q, a) and (q, p, a) has a
            reading rule, so every well-nested word over alphabet has a transduct
    """
    letters = sorted(alphabet)
    emitted = sorted(output_alphabet or letters)
    if relabelling:
        eps_rules = internal_rules = False
    states = _states(rng, "q", max_states)
    hiers = _states(rng, "p", max_states)
    eps_hiers = [f"e{i}" for i in range(int(rng.integers(1, 3)))] if eps_rules else []

    outputs: Dict[Tuple[str, str], Tuple[NestedWord, NestedWord]] = {}
    for p in hiers:
        for a in letters:
            if deleting and rng.random() < 0.3:
                outputs[(p, a)] = (EMPTY_WORD, EMPTY_WORD)
                continue
            b = _pick(rng, emitted)
            contexts = not relabelling
            outputs[(p, a)] = (
                _context(rng, emitted, contexts) + NestedWord((open_tag(b),)) + _context(rng, emitted, contexts),
                _context(rng, emitted, contexts) + NestedWord((close_tag(b),)) + _context(rng, emitted, contexts),
            )
    for p in eps_hiers:
        b = _pick(rng, emitted)
        outputs[(p, EPS)] = (NestedWord((open_tag(b),)), NestedWord((close_tag(b),)))

    opening = [OpeningTransition(q, a, _pick(rng, states), p, outputs[(p, a)][0])
               for q in states for a in letters for p in hiers if rng.random() < density]
    closing = [ClosingTransition(q, p, a, _pick(rng, states), outputs[(p, a)][1])
               for q in states for p in hiers for a in letters if rng.random() < density]
    if total:
        opened = {(rule.source, rule.label) for rule in opening}
        closed = {(rule.source, rule.hier, rule.label) for rule in closing}
        for q in states:
            for a in letters:
                if (q, a) not in opened:
                    hier = _pick(rng, hiers)
                    opening.append(OpeningTransition(q, a, _pick(rng, states), hier, outputs[(hier, a)][0]))
                for p in hiers:
                    if (q, p, a) not in closed:
                        closing.append(ClosingTransition(q, p, a, _pick(rng, states), outputs[(p, a)][1]))
    for p in eps_hiers:
        opening += [OpeningTransition(q, EPS, _pick(rng, states), p, outputs[(p, EPS)][0])
                    for q in states if rng.random() < density / 2]
        closing += [ClosingTransition(q, p, EPS, _pick(rng, states), outputs[(p, EPS)][1])
                    for q in states if rng.random() < density / 2]
    internal = []
    if internal_rules:
        internal = [InternalTransition(q, _pick(rng, states), _context(rng, emitted, True))
                    for q in states if rng.random() < density / 2]
    final = states if total else _final(rng, states)
    return Nwt(set(letters) | set(emitted), states, set(hiers) | set(eps_hiers), eps_hiers,
               states[0], final, opening, internal, closing)


def random_deterministic_relabelling(rng: np.random.Generator, alphabet: Sequence[str],
                                     max_states: int = 3,
                                     output_alphabet: Optional[Sequence[str]] = None,
                                     total: bool = False) -> Nwt:
    """
    Random deterministic relabelling with exactly one opening rule per
    (q, a) and one closing rule per (q, p, a). With `total` every state is
    final, so every word has exactly one transduct.
    """
    letters = sorted(alphabet)
    emitted = sorted(output_alphabet or letters)
    states = _states(rng, "q", max_states)
    hiers = _states(rng, "p", max_states)
    relabel = {(p, a): _pick(rng, emitted) for p in hiers for a in letters}
    opening = []
    for q in states:
        for a in letters:
            p = _pick(rng, hiers)
            opening.append(OpeningTransition(q, a, _pick(rng, states), p, NestedWord((open_tag(relabel[(p, a)]),))))
    closing = [ClosingTransition(q, p, a, _pick(rng, states), NestedWord((close_tag(relabel[(p, a)]),)))
               for q in states for p in hiers for a in letters]
    final = states if total else _final(rng, states)
    return Nwt(set(letters) | set(emitted), states, hiers, (), states[0], final,
               opening, (), closing, functional_claimed=True)
