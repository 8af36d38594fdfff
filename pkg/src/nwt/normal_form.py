"""Splitting multi-tag outputs into chains of one-tag rules."""

import hashlib
import logging
from typing import List, Set

from src.nested_words.words import NestedWord, Tag, unmatched_positions
from src.nwt.properties import is_normal_form, validate_nwt
from src.nwt.transducer import (
    EPS, ClosingTransition, InternalTransition, Nwt, OpeningTransition, label_token, rule_text,
)

logger = logging.getLogger(__name__)


def _rule_id(rule) -> str:
    return hashlib.sha1(rule_text(rule).encode("utf-8")).hexdigest()[:8]


def _eps_hier(hier: str, label: str, output_label: str) -> str:
    """Epsilon hierarchical state for tags emitted around a (hier, label) rule pair."""
    return f"{hier}~{label_token(label)}~{output_label}"


class _Builder:
    """Collects the rules and fresh states of the normalized transducer."""

    def __init__(self, transducer: Nwt):
        self.t = transducer
        self.states: Set[str] = set(transducer.linear_states)
        self.hiers: Set[str] = set(transducer.hier_states)
        self.eps_hiers: Set[str] = set(transducer.eps_hier_states)
        self.opening: List[OpeningTransition] = []
        self.closing: List[ClosingTransition] = []
        self.internal: List[InternalTransition] = []

    def chain(self, rule, source: str, target: str, output: NestedWord, real_index: int,
              real_step, eps_hier_of):
        """
        Emit one rule per output tag from source to target.

        The tag at real_index is produced by `real_step(from, to, tag)`, the
        others by epsilon steps whose hierarchical state is eps_hier_of(tag).
        """
        prefix = f"{source}~{_rule_id(rule)}"
        steps = [source] + [f"{prefix}~{i}" for i in range(1, len(output))] + [target]
        self.states.update(steps)
        for i, tag in enumerate(output):
            here, there = steps[i], steps[i + 1]
            if i == real_index:
                real_step(here, there, tag)
                continue
            hier = eps_hier_of(tag)
            self.hiers.add(hier)
            self.eps_hiers.add(hier)
            single = NestedWord((tag,))
            if tag.opening:
                self.opening.append(OpeningTransition(here, EPS, there, hier, single))
            else:
                self.closing.append(ClosingTransition(here, hier, EPS, there, single))

    def add_opening(self, rule: OpeningTransition):
        if len(rule.output) <= 1:
            self.opening.append(rule)
            return
        last_unmatched = unmatched_positions(rule.output)[0][-1]

        def real_step(here: str, there: str, tag: Tag):
            self.opening.append(OpeningTransition(here, rule.label, there, rule.hier, NestedWord((tag,))))

        self.chain(rule, rule.source, rule.target, rule.output, last_unmatched, real_step,
                   lambda tag: _eps_hier(rule.hier, rule.label, tag.label))

    def add_closing(self, rule: ClosingTransition):
        if len(rule.output) <= 1:
            self.closing.append(rule)
            return
        first_unmatched = unmatched_positions(rule.output)[1][0]

        def real_step(here: str, there: str, tag: Tag):
            self.closing.append(ClosingTransition(here, rule.hier, rule.label, there, NestedWord((tag,))))

        self.chain(rule, rule.source, rule.target, rule.output, first_unmatched, real_step,
                   lambda tag: _eps_hier(rule.hier, rule.label, tag.label))

    def add_internal(self, rule: InternalTransition):
        if not rule.output:
            self.internal.append(rule)
            return
        marker = f"~{_rule_id(rule)}"
        self.chain(rule, rule.source, rule.target, rule.output, -1, None,
                   lambda tag: f"{marker}~{tag.label}")

    def build(self) -> Nwt:
        t = self.t
        return Nwt(t.alphabet, self.states, self.hiers, self.eps_hiers, t.initial, t.final,
                   self.opening, self.internal, self.closing,
                   functional_claimed=t.functional_claimed, depth_bound=t.depth_bound)


def normalize(transducer: Nwt) -> Nwt:
    """
    Image-equivalent transducer in which every rule outputs at most one tag
    and internal rules output nothing.

    An opening rule with output v1..vn becomes a chain whose step at the
    last unmatched opening tag of v reads the original input tag; the other
    steps read epsilon tags. Closing rules use the first unmatched closing
    tag. Fresh state names derive from a digest of the source rule.

    Raises:
        ValidationError: transducer violates a defining side-condition
    """
    if is_normal_form(transducer):
        return transducer
    validate_nwt(transducer).raise_if_invalid()
    builder = _Builder(transducer)
    for rule in sorted(transducer.opening):
        builder.add_opening(rule)
    for rule in sorted(transducer.closing):
        builder.add_closing(rule)
    for rule in sorted(transducer.internal):
        builder.add_internal(rule)
    result = builder.build()
    logger.debug(f"normalize: {transducer.size} -> {result.size}")
    return result
