"""Composition of transducers and restriction to a regular domain."""

import logging
from itertools import product
from typing import Dict, List, Set

from src.nwa.automaton import BOTTOM, EpsNwa, pair_state
from src.nwt.normal_form import normalize
from src.nwt.properties import classify
from src.nwt.transducer import (
    EPS, ClosingTransition, InternalTransition, Nwt, OpeningTransition, identity_transducer,
)
from src.utils.errors import DeletingTransducerError

logger = logging.getLogger(__name__)


def require_non_deleting(transducer: Nwt, operation: str):
    if not classify(transducer).non_deleting:
        raise DeletingTransducerError(operation)


def trim_nwt(transducer: Nwt) -> Nwt:
    """Drop states and rules that are unreachable from the initial state."""
    t = transducer
    reachable = {t.initial}
    pushed: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in t.opening:
            if rule.source in reachable:
                if rule.target not in reachable:
                    reachable.add(rule.target)
                    changed = True
                if rule.hier not in pushed:
                    pushed.add(rule.hier)
                    changed = True
        for rule in t.closing:
            if rule.source in reachable and rule.hier in pushed and rule.target not in reachable:
                reachable.add(rule.target)
                changed = True
        for rule in t.internal:
            if rule.source in reachable and rule.target not in reachable:
                reachable.add(rule.target)
                changed = True
    return Nwt(
        t.alphabet, reachable, pushed, t.eps_hier_states & pushed, t.initial, t.final & reachable,
        [r for r in t.opening if r.source in reachable],
        [r for r in t.internal if r.source in reachable],
        [r for r in t.closing if r.source in reachable and r.hier in pushed],
        functional_claimed=t.functional_claimed, depth_bound=t.depth_bound,
    )


def compose(first: Nwt, second: Nwt) -> Nwt:
    """
    Transducer for `second` applied to the outputs of `first`.

    Both are normalized; a step of `first` emitting one tag is paired with a
    step of `second` reading that tag. Steps where `second` emits on its own
    epsilon rules push (⊥, p2).

    Raises:
        DeletingTransducerError: either input deletes tags
    """
    require_non_deleting(first, "compose")
    require_non_deleting(second, "compose")
    t1 = normalize(first)
    t2 = normalize(second)

    second_opening: Dict[str, List[OpeningTransition]] = {}
    second_eps_opening: List[OpeningTransition] = []
    for rule in t2.opening:
        if rule.label == EPS:
            second_eps_opening.append(rule)
        else:
            second_opening.setdefault(rule.label, []).append(rule)
    second_closing: Dict[str, List[ClosingTransition]] = {}
    second_eps_closing: List[ClosingTransition] = []
    for rule in t2.closing:
        if rule.label == EPS:
            second_eps_closing.append(rule)
        else:
            second_closing.setdefault(rule.label, []).append(rule)

    opening = [
        OpeningTransition(pair_state(r1.source, r2.source), r1.label, pair_state(r1.target, r2.target),
                          pair_state(r1.hier, r2.hier), r2.output)
        for r1 in t1.opening for r2 in second_opening.get(r1.output[0].label, ())
    ]
    closing = [
        ClosingTransition(pair_state(r1.source, r2.source), pair_state(r1.hier, r2.hier), r1.label,
                          pair_state(r1.target, r2.target), r2.output)
        for r1 in t1.closing for r2 in second_closing.get(r1.output[0].label, ())
    ]
    internal = [InternalTransition(pair_state(r.source, q2), pair_state(r.target, q2), r.output)
                for r in t1.internal for q2 in t2.linear_states]
    for q1 in t1.linear_states:
        internal += [InternalTransition(pair_state(q1, r.source), pair_state(q1, r.target), r.output)
                     for r in t2.internal]
        opening += [OpeningTransition(pair_state(q1, r.source), EPS, pair_state(q1, r.target),
                                      pair_state(BOTTOM, r.hier), r.output)
                    for r in second_eps_opening]
        closing += [ClosingTransition(pair_state(q1, r.source), pair_state(BOTTOM, r.hier), EPS,
                                      pair_state(q1, r.target), r.output)
                    for r in second_eps_closing]

    states = [pair_state(a, b) for a, b in product(t1.linear_states, t2.linear_states)]
    hiers = [pair_state(a, b) for a, b in product(set(t1.hier_states) | {BOTTOM}, t2.hier_states)]
    eps_hiers = [pair_state(a, b) for a, b in product(t1.eps_hier_states, t2.hier_states)]
    eps_hiers += [pair_state(BOTTOM, b) for b in t2.eps_hier_states]
    raw = Nwt(
        t1.alphabet | t2.alphabet, states, hiers, eps_hiers, pair_state(t1.initial, t2.initial),
        [pair_state(a, b) for a, b in product(t1.final, t2.final)],
        opening, internal, closing,
        functional_claimed=t1.functional_claimed and t2.functional_claimed,
    )
    result = trim_nwt(raw)
    logger.debug(f"compose: sizes {t1.size} x {t2.size} -> {raw.size} (trimmed {result.size})")
    return result


def restrict_domain(transducer: Nwt, automaton: EpsNwa) -> Nwt:
    """Transducer agreeing with `transducer` on L(automaton) and undefined elsewhere."""
    require_non_deleting(transducer, "restrict_domain")
    return compose(identity_transducer(automaton), transducer)
