"""Nested word automata with optional epsilon rules."""

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import ClassVar, Dict, FrozenSet, Iterable, List, NamedTuple, Set, Tuple

# Stands for "no hierarchical state" in product constructions.
BOTTOM = "⊥"


def pair_state(left: str, right: str) -> str:
    """Injective name for a product state."""
    return f"({left},{right})"


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """Return base, or base with the first free numeric suffix."""
    used = set(taken)
    if base not in used:
        return base
    index = 1
    while f"{base}_{index}" in used:
        index += 1
    return f"{base}_{index}"


class OpeningRule(NamedTuple):
    source: str
    label: str
    target: str
    hier: str


class ClosingRule(NamedTuple):
    source: str
    hier: str
    label: str
    target: str


class EpsRule(NamedTuple):
    source: str
    target: str


@dataclass(frozen=True)
class EpsNwa:
    """
    Nested word automaton with internal epsilon rules.

    Opening tags push a hierarchical state, closing tags pop one. With an
    empty `eps` set the value is a plain NWA.
    """
    alphabet: FrozenSet[str]
    linear_states: FrozenSet[str]
    hier_states: FrozenSet[str]
    initial: str
    final: FrozenSet[str]
    opening: FrozenSet[OpeningRule] = field(default_factory=frozenset)
    closing: FrozenSet[ClosingRule] = field(default_factory=frozenset)
    eps: FrozenSet[EpsRule] = field(default_factory=frozenset)

    header: ClassVar[str] = "eps-nwa"

    def __post_init__(self):
        for name in ('alphabet', 'linear_states', 'hier_states', 'final', 'opening', 'closing', 'eps'):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @property
    def claims_determinism(self) -> bool:
        return False

    @property
    def size(self) -> int:
        return (len(self.linear_states) + len(self.hier_states)
                + len(self.opening) + len(self.closing) + len(self.eps))

    @cached_property
    def opening_index(self) -> Dict[Tuple[str, str], List[Tuple[str, str]]]:
        """(q, a) -> [(target, hier)]"""
        index: Dict[Tuple[str, str], List[Tuple[str, str]]] = {}
        for rule in sorted(self.opening):
            index.setdefault((rule.source, rule.label), []).append((rule.target, rule.hier))
        return index

    @cached_property
    def closing_index(self) -> Dict[Tuple[str, str, str], List[str]]:
        """(q, p, a) -> [target]"""
        index: Dict[Tuple[str, str, str], List[str]] = {}
        for rule in sorted(self.closing):
            index.setdefault((rule.source, rule.hier, rule.label), []).append(rule.target)
        return index

    @cached_property
    def closing_by_hier(self) -> Dict[str, List[ClosingRule]]:
        index: Dict[str, List[ClosingRule]] = {}
        for rule in sorted(self.closing):
            index.setdefault(rule.hier, []).append(rule)
        return index

    @cached_property
    def eps_closure(self) -> Dict[str, FrozenSet[str]]:
        """Reflexive-transitive closure of the epsilon rules, per state."""
        successors: Dict[str, Set[str]] = {}
        for rule in self.eps:
            successors.setdefault(rule.source, set()).add(rule.target)
        closure = {}
        for state in self.linear_states:
            seen = {state}
            frontier = [state]
            while frontier:
                current = frontier.pop()
                for nxt in successors.get(current, ()):
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
            closure[state] = frozenset(seen)
        return closure

    def closure_of(self, state: str) -> FrozenSet[str]:
        return self.eps_closure.get(state, frozenset((state,)))

    def is_deterministic(self) -> bool:
        """No epsilon rules and at most one rule per (q, a) and (q, p, a)."""
        if self.eps:
            return False
        return (all(len(targets) == 1 for targets in self.opening_index.values())
                and all(len(targets) == 1 for targets in self.closing_index.values()))

    def is_total(self) -> bool:
        for q in self.linear_states:
            for a in self.alphabet:
                if (q, a) not in self.opening_index:
                    return False
                for p in self.hier_states:
                    if (q, p, a) not in self.closing_index:
                        return False
        return True

    def with_final(self, final: Iterable[str]) -> 'EpsNwa':
        return replace(self, final=frozenset(final))


@dataclass(frozen=True)
class Dnwa(EpsNwa):
    """
    Deterministic NWA: one opening rule per (q, a), one closing rule per
    (q, p, a), no epsilon rules. Missing rules are tolerated and read as
    a rejecting sink (see `complete`).
    """
    header: ClassVar[str] = "dnwa"

    @property
    def claims_determinism(self) -> bool:
        return True


def as_dnwa(automaton: EpsNwa) -> Dnwa:
    """Re-type a deterministic automaton as a Dnwa."""
    if isinstance(automaton, Dnwa):
        return automaton
    return Dnwa(automaton.alphabet, automaton.linear_states, automaton.hier_states,
                automaton.initial, automaton.final, automaton.opening, automaton.closing)


def as_eps_nwa(automaton: EpsNwa) -> EpsNwa:
    if type(automaton) is EpsNwa:
        return automaton
    return EpsNwa(automaton.alphabet, automaton.linear_states, automaton.hier_states,
                  automaton.initial, automaton.final, automaton.opening, automaton.closing,
                  automaton.eps)
