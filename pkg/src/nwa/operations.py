"""Runs, determinization, boolean operations and decision procedures for NWAs."""

import logging
from collections import deque
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.nested_words.words import NestedWord, Tag, check_word, close_tag, open_tag
from src.nwa.automaton import (
    ClosingRule, Dnwa, EpsNwa, EpsRule, OpeningRule, as_dnwa, fresh_name, pair_state,
)
from src.nwa.summaries import SummaryIndex
from src.utils.config import get_config_value
from src.utils.errors import BudgetExceededError, NonDeterministicError
from src.utils.validation import ValidationReport

logger = logging.getLogger(__name__)

# A summary is a set of (entry state, current state) pairs for the innermost
# open level of the input read so far.
Summary = FrozenSet[Tuple[str, str]]


def validate(automaton: EpsNwa) -> ValidationReport:
    """Report undeclared states/labels and, for a Dnwa, determinism defects."""
    report = ValidationReport(f"{automaton.header} automaton")
    states = automaton.linear_states
    hiers = automaton.hier_states
    alphabet = automaton.alphabet

    if automaton.initial not in states:
        report.add(f"initial state {automaton.initial} is not declared")
    for state in sorted(automaton.final - states):
        report.add(f"final state {state} is not declared")
    for rule in sorted(automaton.opening):
        _check_refs(report, f"open {' '.join(rule)}", states, [rule.source, rule.target],
                    hiers, [rule.hier], alphabet, rule.label)
    for rule in sorted(automaton.closing):
        _check_refs(report, f"close {' '.join(rule)}", states, [rule.source, rule.target],
                    hiers, [rule.hier], alphabet, rule.label)
    for rule in sorted(automaton.eps):
        for state in rule:
            if state not in states:
                report.add(f"eps {rule.source} -> {rule.target}: undeclared state {state}")

    if automaton.claims_determinism:
        if automaton.eps:
            report.add("deterministic automaton has epsilon rules")
        for (state, label), targets in sorted(automaton.opening_index.items()):
            if len(targets) > 1:
                report.add(f"nondeterministic opening on ({state}, <{label}>): {len(targets)} rules")
        for (state, hier, label), targets in sorted(automaton.closing_index.items()):
            if len(targets) > 1:
                report.add(f"nondeterministic closing on ({state}, {hier}, </{label}>): {len(targets)} rules")
    return report


def _check_refs(report, where, states, used_states, hiers, used_hiers, alphabet, label):
    for state in used_states:
        if state not in states:
            report.add(f"{where}: undeclared state {state}")
    for hier in used_hiers:
        if hier not in hiers:
            report.add(f"{where}: undeclared hierarchical state {hier}")
    if label not in alphabet:
        report.add(f"{where}: label {label} not in alphabet")


# ---------------------------------------------------------------------------
# Summary steps shared by membership and determinization
# ---------------------------------------------------------------------------

def _initial_summary(automaton: EpsNwa) -> Summary:
    start = automaton.initial
    return frozenset((start, q) for q in automaton.closure_of(start))


def _open_summary(automaton: EpsNwa, current: Summary, label: str) -> Summary:
    entries = set()
    for _, state in current:
        for target, _ in automaton.opening_index.get((state, label), ()):
            entries.add(target)
    return frozenset((entry, q) for entry in entries for q in automaton.closure_of(entry))


def _close_summary(automaton: EpsNwa, outer: Summary, inner: Summary, label: str) -> Summary:
    inner_by_entry: Dict[str, List[str]] = {}
    for entry, state in inner:
        inner_by_entry.setdefault(entry, []).append(state)
    result = set()
    for entry, state in outer:
        for target, hier in automaton.opening_index.get((state, label), ()):
            for inner_state in inner_by_entry.get(target, ()):
                for after in automaton.closing_index.get((inner_state, hier, label), ()):
                    for q in automaton.closure_of(after):
                        result.add((entry, q))
    return frozenset(result)


def accepts(automaton: EpsNwa, w: Iterable[Tag]) -> bool:
    """
    Membership test by summary simulation.

    Raises:
        MalformedWordError: w is not well-nested over the alphabet
    """
    word = tuple(w)
    check_word(word, automaton.alphabet)
    summary = _initial_summary(automaton)
    stack: List[Summary] = []
    for tag in word:
        if tag.opening:
            stack.append(summary)
            summary = _open_summary(automaton, summary, tag.label)
        else:
            summary = _close_summary(automaton, stack.pop(), summary, tag.label)
        if not summary:
            return False
    assert not stack, "accepting runs end with an empty stack"
    return any((automaton.initial, f) in summary for f in automaton.final)


def determinize(automaton: EpsNwa, state_budget: Optional[int] = None) -> Dnwa:
    """
    Summary-set determinization with epsilon closures.

    States of the result are named d0, d1, ... and hierarchical states
    h0, h1, ... in discovery order, so the output is reproducible.

    Raises:
        BudgetExceededError: more than state_budget linear states needed
    """
    if state_budget is None:
        state_budget = int(get_config_value('automata.state_budget', 10 ** 6))
    alphabet = sorted(automaton.alphabet)

    state_names: Dict[Summary, str] = {}
    state_order: List[Summary] = []
    hier_names: Dict[Tuple[Summary, str], str] = {}
    hier_order: List[Tuple[Summary, str]] = []
    opening: Set[OpeningRule] = set()
    closing: Set[ClosingRule] = set()
    to_open: deque = deque()
    to_close: deque = deque()

    def state_name(summary: Summary) -> str:
        name = state_names.get(summary)
        if name is None:
            if len(state_names) >= state_budget:
                raise BudgetExceededError("state", state_budget, "determinize")
            name = f"d{len(state_names)}"
            state_names[summary] = name
            state_order.append(summary)
            to_open.append(summary)
            to_close.extend((summary, hier) for hier in hier_order)
        return name

    def hier_name(hier: Tuple[Summary, str]) -> str:
        name = hier_names.get(hier)
        if name is None:
            name = f"h{len(hier_names)}"
            hier_names[hier] = name
            hier_order.append(hier)
            to_close.extend((summary, hier) for summary in state_order)
        return name

    state_name(_initial_summary(automaton))
    while to_open or to_close:
        if to_open:
            summary = to_open.popleft()
            source = state_names[summary]
            for label in alphabet:
                target = state_name(_open_summary(automaton, summary, label))
                opening.add(OpeningRule(source, label, target, hier_name((summary, label))))
            continue
        summary, (outer, pushed_label) = to_close.popleft()
        source = state_names[summary]
        hier = hier_names[(outer, pushed_label)]
        for label in alphabet:
            if label == pushed_label:
                after = _close_summary(automaton, outer, summary, label)
            else:
                after = frozenset()
            closing.add(ClosingRule(source, hier, label, state_name(after)))

    final = {name for summary, name in state_names.items()
             if any((automaton.initial, f) in summary for f in automaton.final)}
    logger.debug(f"determinize: {automaton.size} -> {len(state_names)} states, {len(hier_names)} hier")
    return Dnwa(automaton.alphabet, state_names.values(), hier_names.values(), "d0",
                final, opening, closing)


# ---------------------------------------------------------------------------
# Completion, trimming and boolean operations
# ---------------------------------------------------------------------------

def complete(automaton: EpsNwa, alphabet: Optional[Iterable[str]] = None) -> EpsNwa:
    """
    Add a rejecting sink so every configuration has a move on every tag.

    Only missing (q, a) and (q, p, a) combinations are filled, so a
    deterministic automaton stays deterministic.
    """
    letters = sorted(set(automaton.alphabet) | set(alphabet or ()))
    states = sorted(automaton.linear_states)
    hiers = sorted(automaton.hier_states)
    missing_open = [(q, a) for q in states for a in letters if (q, a) not in automaton.opening_index]
    missing_close = [(q, p, a) for q in states for p in hiers for a in letters
                     if (q, p, a) not in automaton.closing_index]
    if not missing_open and not missing_close:
        return type(automaton)(letters, automaton.linear_states, automaton.hier_states,
                               automaton.initial, automaton.final, automaton.opening,
                               automaton.closing, automaton.eps)

    sink = fresh_name("sink", automaton.linear_states)
    sink_hier = fresh_name("sink", automaton.hier_states)
    opening = set(automaton.opening)
    closing = set(automaton.closing)
    for q, a in missing_open:
        opening.add(OpeningRule(q, a, sink, sink_hier))
    for q, p, a in missing_close:
        closing.add(ClosingRule(q, p, a, sink))
    for a in letters:
        opening.add(OpeningRule(sink, a, sink, sink_hier))
        for p in hiers + [sink_hier]:
            closing.add(ClosingRule(sink, p, a, sink))
        for q in states:
            closing.add(ClosingRule(q, sink_hier, a, sink))
    return type(automaton)(letters, set(states) | {sink}, set(hiers) | {sink_hier},
                           automaton.initial, automaton.final, opening, closing, automaton.eps)


def trim(automaton: EpsNwa) -> EpsNwa:
    """Drop states and rules that no run from the initial state can use."""
    reachable = {automaton.initial}
    pushed: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in automaton.opening:
            if rule.source in reachable:
                if rule.target not in reachable:
                    reachable.add(rule.target)
                    changed = True
                if rule.hier not in pushed:
                    pushed.add(rule.hier)
                    changed = True
        for rule in automaton.closing:
            if rule.source in reachable and rule.hier in pushed and rule.target not in reachable:
                reachable.add(rule.target)
                changed = True
        for rule in automaton.eps:
            if rule.source in reachable and rule.target not in reachable:
                reachable.add(rule.target)
                changed = True
    return type(automaton)(
        automaton.alphabet, reachable, pushed, automaton.initial, automaton.final & reachable,
        [r for r in automaton.opening if r.source in reachable],
        [r for r in automaton.closing if r.source in reachable and r.hier in pushed],
        [r for r in automaton.eps if r.source in reachable],
    )


def _product(left: EpsNwa, right: EpsNwa, final: Iterable[Tuple[str, str]]) -> EpsNwa:
    """Synchronised product on tags; epsilon rules move one side at a time."""
    right_opening: Dict[str, List[OpeningRule]] = {}
    for rule in right.opening:
        right_opening.setdefault(rule.label, []).append(rule)
    right_closing: Dict[str, List[ClosingRule]] = {}
    for rule in right.closing:
        right_closing.setdefault(rule.label, []).append(rule)

    opening = [
        OpeningRule(pair_state(l.source, r.source), l.label, pair_state(l.target, r.target),
                    pair_state(l.hier, r.hier))
        for l in left.opening for r in right_opening.get(l.label, ())
    ]
    closing = [
        ClosingRule(pair_state(l.source, r.source), pair_state(l.hier, r.hier), l.label,
                    pair_state(l.target, r.target))
        for l in left.closing for r in right_closing.get(l.label, ())
    ]
    eps = [EpsRule(pair_state(rule.source, q), pair_state(rule.target, q))
           for rule in left.eps for q in right.linear_states]
    eps += [EpsRule(pair_state(q, rule.source), pair_state(q, rule.target))
            for rule in right.eps for q in left.linear_states]

    result_type = Dnwa if isinstance(left, Dnwa) and isinstance(right, Dnwa) else EpsNwa
    states = [pair_state(a, b) for a, b in product(left.linear_states, right.linear_states)]
    hiers = [pair_state(a, b) for a, b in product(left.hier_states, right.hier_states)]
    raw = result_type(
        left.alphabet | right.alphabet, states, hiers,
        pair_state(left.initial, right.initial), [pair_state(a, b) for a, b in final],
        opening, closing, eps,
    )
    return trim(raw)


def intersect(left: EpsNwa, right: EpsNwa) -> EpsNwa:
    """Product automaton for L(left) ∩ L(right)."""
    final = product(left.final, right.final)
    return _product(left, right, final)


def union(left: EpsNwa, right: EpsNwa) -> EpsNwa:
    """Product of the sink-completed automata, accepting when either side does."""
    alphabet = left.alphabet | right.alphabet
    left_total = complete(left, alphabet)
    right_total = complete(right, alphabet)
    final = {(a, b) for a in left_total.final for b in right_total.linear_states}
    final |= {(a, b) for a in left_total.linear_states for b in right_total.final}
    return _product(left_total, right_total, final)


def _require_deterministic(automaton: EpsNwa, operation: str):
    if not automaton.is_deterministic():
        raise NonDeterministicError(f"{operation} needs a deterministic automaton")


def complement(automaton: EpsNwa, alphabet: Optional[Iterable[str]] = None) -> Dnwa:
    """
    Complement relative to the well-nested words over the (widened) alphabet.

    Raises:
        NonDeterministicError: automaton has epsilon rules or competing rules
    """
    _require_deterministic(automaton, "complement")
    total = as_dnwa(complete(automaton, alphabet))
    return total.with_final(total.linear_states - total.final)


def is_empty(automaton: EpsNwa) -> bool:
    return SummaryIndex(automaton).is_empty()


def included_in(automaton: EpsNwa, deterministic: EpsNwa) -> bool:
    """
    L(automaton) ⊆ L(deterministic), via emptiness of A ∩ complement(D).

    Raises:
        NonDeterministicError: the right-hand automaton is not deterministic
    """
    _require_deterministic(deterministic, "included_in")
    alphabet = automaton.alphabet | deterministic.alphabet
    return is_empty(intersect(automaton, complement(deterministic, alphabet)))


def enumerate_language(automaton: EpsNwa, max_len: int) -> FrozenSet[NestedWord]:
    """
    All accepted words with at most max_len tags.

    Depth-first over prefixes carrying the set of reachable configurations;
    a prefix is only extended while some accepted completion still fits in
    max_len (read off the shortest-summary matrix).
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    index = SummaryIndex(automaton)
    found: Set[NestedWord] = set()
    labels = sorted(automaton.alphabet)
    initial = frozenset((q, ()) for q in automaton.closure_of(automaton.initial))

    def cost(configs) -> float:
        return min((index.completion_cost(q, stack) for q, stack in configs), default=float('inf'))

    def extend(prefix: Tuple[Tag, ...], configs, open_labels: Tuple[str, ...]):
        if not open_labels and any(q in automaton.final for q, stack in configs if not stack):
            found.add(NestedWord(prefix))
        room = max_len - len(prefix)
        if room <= 0:
            return
        if room >= len(open_labels) + 2:
            for label in labels:
                step = set()
                for q, stack in configs:
                    for target, hier in automaton.opening_index.get((q, label), ()):
                        pushed = stack + ((hier, label),)
                        step.update((r, pushed) for r in automaton.closure_of(target))
                if step and cost(step) <= room - 1:
                    extend(prefix + (open_tag(label),), frozenset(step), open_labels + (label,))
        if open_labels:
            label = open_labels[-1]
            step = set()
            for q, stack in configs:
                hier = stack[-1][0]
                for target in automaton.closing_index.get((q, hier, label), ()):
                    step.update((r, stack[:-1]) for r in automaton.closure_of(target))
            if step and cost(step) <= room - 1:
                extend(prefix + (close_tag(label),), frozenset(step), open_labels[:-1])

    if cost(initial) <= max_len:
        extend((), initial, ())
    return frozenset(found)
