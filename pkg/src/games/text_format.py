"""
Text format for games.

    game
    name: ab
    alphabet: a b
    gamma: a
    transducer: relabel_ab.nwt
    target: target_b.dnwa
    class: functional

Component paths are relative to the game file. The optional `class:`
line lists hints; `functional` marks the replacement as functional.
"""

from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional

from src.nwa.text_format import content_lines, format_nwa, load_nwa, split_section
from src.nwt.text_format import format_nwt, load_nwt
from src.games.game import Game
from src.utils.errors import FormatError

_SECTIONS = ("name", "alphabet", "gamma", "transducer", "target", "class")
_CLASS_HINTS = ("functional",)


def parse_game(text: str, base_dir=".") -> Game:
    """
    Parse a game file, loading its transducer and target relative to base_dir.

    Raises:
        FormatError: bad header or section, missing component, unknown class hint
    """
    lines = content_lines(text)
    if not lines or lines[0][1] != "game":
        raise FormatError("expected header game", lines[0][0] if lines else None)
    sections: Dict[str, List[str]] = {}
    for number, line in lines[1:]:
        name, values = split_section(line, number, _SECTIONS)
        sections[name] = values
    if "alphabet" not in sections:
        raise FormatError("missing section 'alphabet'")
    for required in ("transducer", "target"):
        if len(sections.get(required, [])) != 1:
            raise FormatError(f"section {required!r} expects one path")
    for hint in sections.get("class", []):
        if hint not in _CLASS_HINTS:
            raise FormatError(f"unknown class hint {hint!r}")

    base = Path(base_dir)
    transducer_path = base / sections["transducer"][0]
    target_path = base / sections["target"][0]
    for path in (transducer_path, target_path):
        if not path.exists():
            raise FormatError(f"component file not found: {path}")
    transducer = load_nwt(transducer_path)
    if "functional" in sections.get("class", []):
        transducer = replace(transducer, functional_claimed=True)
    name = sections.get("name", ["game"])
    return Game(sections["alphabet"], sections.get("gamma", []), transducer, load_nwa(target_path),
                name=" ".join(name) or "game")


def load_game(path) -> Game:
    path = Path(path)
    return parse_game(path.read_text(), path.parent)


def format_game(game: Game, transducer_file: str, target_file: str) -> str:
    lines = [
        "game",
        f"name: {game.name}",
        "alphabet: " + " ".join(sorted(game.alphabet)),
        "gamma: " + " ".join(sorted(game.gamma)),
        f"transducer: {transducer_file}",
        f"target: {target_file}",
    ]
    if game.replacement.functional_claimed:
        lines.append("class: functional")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def save_game(game: Game, path, stem: Optional[str] = None) -> Path:
    """
    Write the game file and its two component files next to it.

    Returns:
        Path of the game file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    stem = stem or path.stem
    transducer_file = f"{stem}.nwt"
    target_file = f"{stem}.{'dnwa' if game.target.claims_determinism else 'nwa'}"
    (path.parent / transducer_file).write_text(format_nwt(game.replacement))
    (path.parent / target_file).write_text(format_nwa(game.target))
    path.write_text(format_game(game, transducer_file, target_file))
    return path
