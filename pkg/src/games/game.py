"""Context-free games on nested words: games, constraints, configurations and results."""

import hashlib
from dataclasses import dataclass, field, asdict
from functools import cached_property
from typing import Any, Dict, FrozenSet, NamedTuple, Optional, Tuple

from src.nested_words.words import EMPTY_WORD, NestedWord, Tag, format_word
from src.nwa.automaton import EpsNwa
from src.nwa.operations import is_empty, validate
from src.nwt.properties import NwtClass, classify, validate_nwt
from src.nwt.transducer import Nwt
from src.utils.validation import ValidationReport

JULIET = "juliet"
ROMEO = "romeo"

JULIET_WINS = "JulietWins"
ROMEO_WINS = "RomeoWins"
BUDGET_EXHAUSTED = "BudgetExhausted"

READ = "read"
CALL = "call"
REPLY = "reply"


@dataclass(frozen=True)
class Game:
    """
    A game (alphabet, callable labels, replacement transducer, target).

    Juliet may Call on a closing tag whose label is in `gamma`; Romeo then
    replaces the rooted word ending there by one of its transducts under
    `replacement`. Juliet wins a finished play if the final word is in
    L(target).
    """
    alphabet: FrozenSet[str]
    gamma: FrozenSet[str]
    replacement: Nwt
    target: EpsNwa
    name: str = "game"

    def __post_init__(self):
        object.__setattr__(self, 'alphabet', frozenset(self.alphabet))
        object.__setattr__(self, 'gamma', frozenset(self.gamma))

    @cached_property
    def nwt_class(self) -> NwtClass:
        return classify(self.replacement)


def validate_game(game: Game) -> ValidationReport:
    """Report alphabet mismatches, invalid components and an empty target."""
    report = ValidationReport("game")
    for label in sorted(game.gamma - game.alphabet):
        report.add(f"callable label {label} is not in the alphabet")
    for label in sorted(game.replacement.alphabet - game.alphabet):
        report.add(f"transducer label {label} is not in the game alphabet")
    for label in sorted(game.target.alphabet - game.alphabet):
        report.add(f"target label {label} is not in the game alphabet")
    for issue in validate_nwt(game.replacement).issues:
        report.add(f"transducer: {issue}")
    for issue in validate(game.target).issues:
        report.add(f"target: {issue}")
    if report.is_valid and is_empty(game.target):
        report.add("target language is empty")
    return report


@dataclass(frozen=True)
class Constraints:
    """
    Restrictions on Juliet's Call moves.

    None means unbounded. `width_includes_input` makes the input word count
    as a replacement string for the width bound. Write-once games allow no
    Call inside a replacement, so their effective depth is 1.
    """
    max_call_depth: Optional[int] = None
    max_call_width: Optional[int] = None
    width_includes_input: bool = False
    write_once: bool = False
    romeo_output_budget: Optional[int] = None

    def __post_init__(self):
        for name in ('max_call_depth', 'max_call_width', 'romeo_output_budget'):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")

    @property
    def effective_depth(self) -> Optional[int]:
        if self.write_once:
            return 1 if self.max_call_depth is None else min(1, self.max_call_depth)
        return self.max_call_depth

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return asdict(self)


class Slot(NamedTuple):
    """A tag of the current word with its Call bookkeeping."""
    tag: Tag
    level: int = 0
    origin: int = 0
    marked: bool = False

    def text(self) -> str:
        mark = "*" if self.marked else ""
        return f"{format_word((self.tag,))}{self.level}.{self.origin}{mark}"


class Move(NamedTuple):
    kind: str
    word: NestedWord = EMPTY_WORD

    def text(self) -> str:
        if self.kind == REPLY:
            return f'{REPLY} "{format_word(self.word)}"'
        return self.kind


def plain(slots) -> NestedWord:
    return NestedWord(slot.tag for slot in slots)


@dataclass(frozen=True)
class Configuration:
    """
    Player to move, processed part u and remaining part v of the current word.

    `widths` lists (origin, calls used) for replacement strings that still
    have tags in v.
    """
    player: str
    u: Tuple[Slot, ...]
    v: Tuple[Slot, ...]
    widths: Tuple[Tuple[int, int], ...] = ()

    @property
    def processed(self) -> NestedWord:
        return plain(self.u)

    @property
    def remaining(self) -> NestedWord:
        return plain(self.v)

    @property
    def current_word(self) -> NestedWord:
        return plain(self.u + self.v)

    def used_width(self, origin: int) -> int:
        return dict(self.widths).get(origin, 0)

    def serialize(self) -> str:
        widths = ",".join(f"{origin}={used}" for origin, used in self.widths)
        return (f"{self.player}|{' '.join(s.text() for s in self.u)}"
                f"|{' '.join(s.text() for s in self.v)}|{widths}")

    @cached_property
    def digest(self) -> str:
        return hashlib.sha1(self.serialize().encode("utf-8")).hexdigest()[:12]

    def describe(self) -> str:
        """Human-readable form: u | v."""
        who = "J" if self.player == JULIET else "R"
        return f"[{who}] {format_word(self.processed)} | {format_word(self.remaining)}"


# Juliet's decisions keyed by configuration digest; Juliet configurations
# without an entry play Read. Romeo entries hold a chosen reply.
Strategy = Dict[str, Move]


@dataclass
class SolveResult:
    """Verdict of a solver with optional witness and exploration statistics."""
    verdict: str
    solver: str
    witness: Optional[Strategy] = None
    final_word: Optional[NestedWord] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def decided(self) -> bool:
        return self.verdict != BUDGET_EXHAUSTED

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        result = {
            'verdict': self.verdict,
            'solver': self.solver,
            'stats': dict(self.stats),
            'witness': None,
            'final_word': None,
        }
        if self.witness is not None:
            result['witness'] = {digest: move.text() for digest, move in sorted(self.witness.items())}
        if self.final_word is not None:
            result['final_word'] = format_word(self.final_word)
        return result
