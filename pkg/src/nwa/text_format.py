"""
Line-oriented text format for automata.

    nwa | dnwa | eps-nwa
    alphabet: a b
    linear: q0 q1
    hier: p
    initial: q0
    final: q1
    open q0 a -> q1 p
    close q1 p a -> q1
    eps q0 -> q1

Blank lines and `#` comments are ignored.
"""

from pathlib import Path
from typing import Dict, List, Tuple

from src.nwa.automaton import ClosingRule, Dnwa, EpsNwa, EpsRule, OpeningRule
from src.utils.errors import FormatError

NWA_HEADERS = ("nwa", "dnwa", "eps-nwa")
_SECTIONS = ("alphabet", "linear", "hier", "initial", "final")


def content_lines(text: str) -> List[Tuple[int, str]]:
    """Numbered non-empty lines with comments removed."""
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def read_header(text: str) -> str:
    lines = content_lines(text)
    if not lines:
        raise FormatError("empty artifact")
    return lines[0][1]


def split_section(line: str, number: int, known) -> Tuple[str, List[str]]:
    name, _, rest = line.partition(":")
    name = name.strip()
    if name not in known:
        raise FormatError(f"unknown section {name!r}", number)
    return name, rest.split()


def parse_nwa(text: str) -> EpsNwa:
    """
    Parse an automaton; a `dnwa` header yields a Dnwa.

    Raises:
        FormatError: unknown header, section or rule syntax
    """
    lines = content_lines(text)
    if not lines or lines[0][1] not in NWA_HEADERS:
        raise FormatError(f"expected one of {', '.join(NWA_HEADERS)} as header", lines[0][0] if lines else None)
    header = lines[0][1]
    sections: Dict[str, List[str]] = {}
    opening, closing, eps = [], [], []
    for number, line in lines[1:]:
        words = line.split()
        keyword = words[0]
        if keyword == "open":
            if len(words) != 6 or words[3] != "->":
                raise FormatError("expected: open q a -> q' p", number)
            opening.append(OpeningRule(words[1], words[2], words[4], words[5]))
        elif keyword == "close":
            if len(words) != 6 or words[4] != "->":
                raise FormatError("expected: close q p a -> q'", number)
            closing.append(ClosingRule(words[1], words[2], words[3], words[5]))
        elif keyword == "eps":
            if header != "eps-nwa":
                raise FormatError(f"epsilon rule in a {header} automaton", number)
            if len(words) != 4 or words[2] != "->":
                raise FormatError("expected: eps q -> q'", number)
            eps.append(EpsRule(words[1], words[3]))
        else:
            name, values = split_section(line, number, _SECTIONS)
            sections[name] = values

    initial = sections.get("initial", [])
    if len(initial) != 1:
        raise FormatError("exactly one initial state required")
    automaton_type = Dnwa if header == "dnwa" else EpsNwa
    return automaton_type(
        sections.get("alphabet", []), sections.get("linear", []), sections.get("hier", []),
        initial[0], sections.get("final", []), opening, closing, eps,
    )


def format_nwa(automaton: EpsNwa) -> str:
    """Print an automaton; parse_nwa(format_nwa(A)) == A."""
    if isinstance(automaton, Dnwa):
        header = "dnwa"
    else:
        header = "eps-nwa" if automaton.eps else "nwa"
    lines = [
        header,
        "alphabet: " + " ".join(sorted(automaton.alphabet)),
        "linear: " + " ".join(sorted(automaton.linear_states)),
        "hier: " + " ".join(sorted(automaton.hier_states)),
        f"initial: {automaton.initial}",
        "final: " + " ".join(sorted(automaton.final)),
    ]
    lines += [f"open {r.source} {r.label} -> {r.target} {r.hier}" for r in sorted(automaton.opening)]
    lines += [f"close {r.source} {r.hier} {r.label} -> {r.target}" for r in sorted(automaton.closing)]
    lines += [f"eps {r.source} -> {r.target}" for r in sorted(automaton.eps)]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def load_nwa(path) -> EpsNwa:
    return parse_nwa(Path(path).read_text())
