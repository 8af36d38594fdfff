"""Nested word transducers with epsilon rules."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Tuple, Union

from src.nested_words.words import NestedWord, close_tag, format_word, open_tag
from src.nwa.automaton import EpsNwa

# Label of a rule that reads <eps> / </eps> instead of an input tag.
EPS = ""
EPS_TOKEN = "_eps"


class OpeningTransition(NamedTuple):
    source: str
    label: str
    target: str
    hier: str
    output: NestedWord


class InternalTransition(NamedTuple):
    source: str
    target: str
    output: NestedWord


class ClosingTransition(NamedTuple):
    source: str
    hier: str
    label: str
    target: str
    output: NestedWord


Transition = Union[OpeningTransition, InternalTransition, ClosingTransition]


def label_token(label: str) -> str:
    return label if label != EPS else EPS_TOKEN


def rule_text(rule: Transition) -> str:
    """Text-format line of a transition."""
    out = f'out "{format_word(rule.output)}"'
    if isinstance(rule, OpeningTransition):
        return f"open {rule.source} {label_token(rule.label)} -> {rule.target} {rule.hier} {out}"
    if isinstance(rule, ClosingTransition):
        return f"close {rule.source} {rule.hier} {label_token(rule.label)} -> {rule.target} {out}"
    return f"internal {rule.source} -> {rule.target} {out}"


@dataclass(frozen=True)
class Nwt:
    """
    Nested word transducer.

    Opening rules read <a> or <eps> and push a hierarchical state, closing
    rules pop one while reading </a> or </eps>, internal rules consume
    nothing. Rules reading epsilon tags use hierarchical states from
    `eps_hier_states`.
    """
    alphabet: FrozenSet[str]
    linear_states: FrozenSet[str]
    hier_states: FrozenSet[str]
    eps_hier_states: FrozenSet[str]
    initial: str
    final: FrozenSet[str]
    opening: FrozenSet[OpeningTransition] = field(default_factory=frozenset)
    internal: FrozenSet[InternalTransition] = field(default_factory=frozenset)
    closing: FrozenSet[ClosingTransition] = field(default_factory=frozenset)
    functional_claimed: bool = False
    depth_bound: Optional[int] = None

    def __post_init__(self):
        for name in ('alphabet', 'linear_states', 'hier_states', 'eps_hier_states', 'final'):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(self, 'opening', frozenset(
            OpeningTransition(r.source, r.label, r.target, r.hier, NestedWord(r.output)) for r in self.opening))
        object.__setattr__(self, 'internal', frozenset(
            InternalTransition(r.source, r.target, NestedWord(r.output)) for r in self.internal))
        object.__setattr__(self, 'closing', frozenset(
            ClosingTransition(r.source, r.hier, r.label, r.target, NestedWord(r.output)) for r in self.closing))

    @property
    def transitions(self) -> List[Transition]:
        return sorted(self.opening) + sorted(self.internal) + sorted(self.closing)

    @property
    def size(self) -> int:
        """States plus rules plus total output length."""
        rules = self.transitions
        return (len(self.linear_states) + len(self.hier_states) + len(rules)
                + sum(len(rule.output) for rule in rules))

    @property
    def output_alphabet(self) -> FrozenSet[str]:
        return frozenset(tag.label for rule in self.transitions for tag in rule.output)

    @property
    def max_output_length(self) -> int:
        return max((len(rule.output) for rule in self.transitions), default=0)

    @cached_property
    def opening_index(self) -> Dict[Tuple[str, str], List[OpeningTransition]]:
        """(q, label) -> rules; label EPS indexes the epsilon-opening rules."""
        index: Dict[Tuple[str, str], List[OpeningTransition]] = {}
        for rule in sorted(self.opening):
            index.setdefault((rule.source, rule.label), []).append(rule)
        return index

    @cached_property
    def closing_index(self) -> Dict[Tuple[str, str, str], List[ClosingTransition]]:
        index: Dict[Tuple[str, str, str], List[ClosingTransition]] = {}
        for rule in sorted(self.closing):
            index.setdefault((rule.source, rule.hier, rule.label), []).append(rule)
        return index

    @cached_property
    def internal_index(self) -> Dict[str, List[InternalTransition]]:
        index: Dict[str, List[InternalTransition]] = {}
        for rule in sorted(self.internal):
            index.setdefault(rule.source, []).append(rule)
        return index

    @cached_property
    def eps_closing_index(self) -> Dict[str, List[ClosingTransition]]:
        """q -> epsilon-closing rules leaving q."""
        index: Dict[str, List[ClosingTransition]] = {}
        for rule in sorted(self.closing):
            if rule.label == EPS:
                index.setdefault(rule.source, []).append(rule)
        return index


def identity_transducer(automaton: EpsNwa) -> Nwt:
    """Transducer copying every word of L(automaton); epsilon rules become internal rules."""
    opening = [OpeningTransition(r.source, r.label, r.target, r.hier, NestedWord((open_tag(r.label),)))
               for r in automaton.opening]
    closing = [ClosingTransition(r.source, r.hier, r.label, r.target, NestedWord((close_tag(r.label),)))
               for r in automaton.closing]
    internal = [InternalTransition(r.source, r.target, NestedWord()) for r in automaton.eps]
    return Nwt(automaton.alphabet, automaton.linear_states, automaton.hier_states, (),
               automaton.initial, automaton.final, opening, internal, closing,
               functional_claimed=automaton.is_deterministic())


def relabelling_transducer(alphabet: Iterable[str], mapping: Mapping[str, Union[str, Iterable[str]]]) -> Nwt:
    """
    One-state relabelling: a tag labelled a becomes any label in mapping[a].

    Labels absent from mapping are copied unchanged.
    """
    letters = sorted(set(alphabet))
    opening, closing, hiers = [], [], []
    for a in letters:
        images = mapping.get(a, a)
        images = [images] if isinstance(images, str) else sorted(images)
        for b in images:
            hier = f"p_{a}_{b}"
            hiers.append(hier)
            opening.append(OpeningTransition("q", a, "q", hier, NestedWord((open_tag(b),))))
            closing.append(ClosingTransition("q", hier, a, "q", NestedWord((close_tag(b),))))
    functional = all(isinstance(mapping.get(a, a), str) or len(set(mapping[a])) <= 1 for a in letters)
    return Nwt(set(letters) | {tag.label for r in opening for tag in r.output}, {"q"}, hiers, (),
               "q", {"q"}, opening, (), closing, functional_claimed=functional)
