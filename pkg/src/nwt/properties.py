"""Validation and classification of nested word transducers."""

import logging
from dataclasses import dataclass, asdict
from typing import Dict, Iterable, List, Optional, Set, Tuple

from src.nested_words.words import NestedWord, depth, format_word, is_well_nested, unmatched_positions
from src.nwt.transducer import EPS, InternalTransition, Nwt, OpeningTransition, label_token, rule_text
from src.utils.errors import FunctionalityError
from src.utils.validation import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NwtClass:
    """Syntactic class flags of a transducer."""
    eps_free: bool
    non_deleting: bool
    relabelling: bool
    deterministic: bool
    functional_claimed: bool

    def to_dict(self):
        """Convert to dictionary."""
        return asdict(self)


def validate_nwt(transducer: Nwt) -> ValidationReport:
    """
    Check declarations, epsilon-consistency, well-formedness and
    synchronisation. Deleting transducers are valid.
    """
    report = ValidationReport("nwt")
    t = transducer
    if t.initial not in t.linear_states:
        report.add(f"initial state {t.initial} is not declared")
    for state in sorted(t.final - t.linear_states):
        report.add(f"final state {state} is not declared")
    for hier in sorted(t.eps_hier_states - t.hier_states):
        report.add(f"epsilon hierarchical state {hier} is not a hierarchical state")

    for rule in t.transitions:
        where = rule_text(rule)
        for state in (rule.source, rule.target):
            if state not in t.linear_states:
                report.add(f"{where}: undeclared state {state}")
        for tag in rule.output:
            if tag.label not in t.alphabet:
                report.add(f"{where}: output label {tag.label} not in alphabet")
        if isinstance(rule, InternalTransition):
            if not is_well_nested(rule.output):
                report.add(f"{where}: internal output is not well-nested")
            continue
        if rule.hier not in t.hier_states:
            report.add(f"{where}: undeclared hierarchical state {rule.hier}")
        if rule.label != EPS and rule.label not in t.alphabet:
            report.add(f"{where}: label {rule.label} not in alphabet")
        if (rule.label == EPS) != (rule.hier in t.eps_hier_states):
            report.add(f"{where}: epsilon-consistency violated")
        if rule.output:
            opening_left, closing_left = unmatched_positions(rule.output)
            is_opening = isinstance(rule, OpeningTransition)
            if not (opening_left if is_opening else closing_left):
                kind = "opening" if is_opening else "closing"
                report.add(f"{where}: synchronisation violated (no unmatched {kind} tag)")

    # Well-formedness: outputs of rules sharing (p, label) must nest.
    opening_outputs: Dict[Tuple[str, str], Set[NestedWord]] = {}
    for rule in t.opening:
        opening_outputs.setdefault((rule.hier, rule.label), set()).add(rule.output)
    closing_outputs: Dict[Tuple[str, str], Set[NestedWord]] = {}
    for rule in t.closing:
        closing_outputs.setdefault((rule.hier, rule.label), set()).add(rule.output)
    for key in sorted(set(opening_outputs) & set(closing_outputs)):
        for u in sorted(opening_outputs[key]):
            for v in sorted(closing_outputs[key]):
                if not is_well_nested(u + v):
                    hier, label = key
                    report.add(f"well-formedness violated on ({hier}, {label_token(label)}): "
                               f'"{format_word(u)}" + "{format_word(v)}"')
    return report


def classify(transducer: Nwt) -> NwtClass:
    t = transducer
    reading = list(t.opening) + list(t.closing)
    eps_free = (not t.eps_hier_states and not t.internal
                and all(rule.label != EPS for rule in reading))
    non_deleting = all(rule.output for rule in reading)
    relabelling = eps_free and all(
        len(rule.output) == 1 and rule.output[0].opening for rule in t.opening
    ) and all(
        len(rule.output) == 1 and rule.output[0].closing for rule in t.closing
    )
    # At most one rule per (q, a) and per (q, p, a); missing rules reject.
    deterministic = eps_free and all(
        len(rules) <= 1 for rules in t.opening_index.values()
    ) and all(
        len(rules) <= 1 for rules in t.closing_index.values()
    )
    return NwtClass(
        eps_free=eps_free,
        non_deleting=non_deleting,
        relabelling=relabelling,
        deterministic=deterministic,
        functional_claimed=t.functional_claimed or deterministic,
    )


def is_normal_form(transducer: Nwt) -> bool:
    """Every rule outputs at most one tag; internal rules output nothing."""
    return (all(len(rule.output) <= 1 for rule in transducer.opening)
            and all(len(rule.output) <= 1 for rule in transducer.closing)
            and all(not rule.output for rule in transducer.internal))


def sample_functionality(transducer: Nwt, words: Iterable[NestedWord], max_len: int,
                         strict: bool = False) -> Optional[Tuple[NestedWord, List[NestedWord]]]:
    """
    Look for an input with two distinct transducts among sampled words.

    Returns the first counterexample (input, two outputs) or None. With
    strict=True a counterexample against a functional claim raises.
    """
    from src.nwt.images import enumerate_image

    for w in words:
        images = sorted(enumerate_image(transducer, w, max_len), key=lambda u: (len(u), format_word(u)))
        if len(images) > 1:
            counterexample = (w, images[:2])
            logger.warning(f"Transducer not functional on {format_word(w)}: "
                           f"{format_word(images[0])} / {format_word(images[1])}")
            if strict and transducer.functional_claimed:
                raise FunctionalityError(f"two transducts for {format_word(w)}")
            return counterexample
    return None


def sample_depth_bound(transducer: Nwt, words: Iterable[NestedWord], bound: int,
                       max_len: int) -> Optional[Tuple[NestedWord, NestedWord]]:
    """First (input, output) pair whose output is deeper than bound, or None."""
    from src.nwt.images import enumerate_image

    for w in words:
        for u in enumerate_image(transducer, w, max_len):
            if depth(u) > bound:
                return w, u
    return None
