"""
Text format for transducers.

    nwt
    alphabet: a b
    linear: q0
    hier: p pe
    eps-hier: pe
    initial: q0
    final: q0
    functional: no
    depth-bound: 2
    open q0 a -> q0 p out "<b>"
    open q0 _eps -> q0 pe out "<a>"
    close q0 p a -> q0 out "</b>"
    internal q0 -> q0 out ""

`functional` and `depth-bound` are optional metadata.
"""

import shlex
from pathlib import Path
from typing import Dict, List

from src.nested_words.words import parse_tags
from src.nwa.text_format import content_lines, split_section
from src.nwt.transducer import (
    EPS, EPS_TOKEN, ClosingTransition, InternalTransition, Nwt, OpeningTransition, rule_text,
)
from src.utils.errors import FormatError, MalformedWordError

_SECTIONS = ("alphabet", "linear", "hier", "eps-hier", "initial", "final", "functional", "depth-bound")


def _label(token: str) -> str:
    return EPS if token == EPS_TOKEN else token


def _output(words: List[str], number: int):
    if len(words) != 2 or words[0] != "out":
        raise FormatError('expected trailing: out "<tags>"', number)
    try:
        return parse_tags(words[1])
    except MalformedWordError as e:
        raise FormatError(f"bad output literal: {e}", number) from e


def parse_nwt(text: str) -> Nwt:
    """
    Parse a transducer.

    Raises:
        FormatError: bad header, section, rule syntax or output literal
    """
    lines = content_lines(text)
    if not lines or lines[0][1] != "nwt":
        raise FormatError("expected header nwt", lines[0][0] if lines else None)
    sections: Dict[str, List[str]] = {}
    opening, closing, internal = [], [], []
    for number, line in lines[1:]:
        try:
            words = shlex.split(line)
        except ValueError as e:
            raise FormatError(str(e), number) from e
        keyword = words[0]
        if keyword == "open":
            if len(words) != 8 or words[3] != "->":
                raise FormatError("expected: open q a -> q' p out \"...\"", number)
            opening.append(OpeningTransition(words[1], _label(words[2]), words[4], words[5],
                                             _output(words[6:], number)))
        elif keyword == "close":
            if len(words) != 8 or words[4] != "->":
                raise FormatError("expected: close q p a -> q' out \"...\"", number)
            closing.append(ClosingTransition(words[1], words[2], _label(words[3]), words[5],
                                             _output(words[6:], number)))
        elif keyword == "internal":
            if len(words) != 6 or words[2] != "->":
                raise FormatError("expected: internal q -> q' out \"...\"", number)
            internal.append(InternalTransition(words[1], words[3], _output(words[4:], number)))
        else:
            name, values = split_section(line, number, _SECTIONS)
            sections[name] = values

    initial = sections.get("initial", [])
    if len(initial) != 1:
        raise FormatError("exactly one initial state required")
    functional = sections.get("functional", ["no"])
    if functional not in (["yes"], ["no"]):
        raise FormatError("functional: expects yes or no")
    depth_bound = sections.get("depth-bound")
    if depth_bound is not None:
        if len(depth_bound) != 1 or not depth_bound[0].isdigit():
            raise FormatError("depth-bound: expects a natural number")
        depth_bound = int(depth_bound[0])
    return Nwt(
        sections.get("alphabet", []), sections.get("linear", []), sections.get("hier", []),
        sections.get("eps-hier", []), initial[0], sections.get("final", []),
        opening, internal, closing,
        functional_claimed=functional == ["yes"], depth_bound=depth_bound,
    )


def format_nwt(transducer: Nwt) -> str:
    """Print a transducer; parse_nwt(format_nwt(T)) == T."""
    t = transducer
    lines = [
        "nwt",
        "alphabet: " + " ".join(sorted(t.alphabet)),
        "linear: " + " ".join(sorted(t.linear_states)),
        "hier: " + " ".join(sorted(t.hier_states)),
        "eps-hier: " + " ".join(sorted(t.eps_hier_states)),
        f"initial: {t.initial}",
        "final: " + " ".join(sorted(t.final)),
        "functional: " + ("yes" if t.functional_claimed else "no"),
    ]
    if t.depth_bound is not None:
        lines.append(f"depth-bound: {t.depth_bound}")
    lines += [rule_text(rule) for rule in t.transitions]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def load_nwt(path) -> Nwt:
    return parse_nwt(Path(path).read_text())
