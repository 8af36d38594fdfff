"""
Command dispatch for the nwgames command line.

`run(invocation)` returns an exit code and the report text. Exit codes:
0 success or true, 1 false or RomeoWins, 2 usage, format or validation
error, 3 budget exhausted.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.nested_words.words import NestedWord, format_word, parse_word, random_well_nested, shortlex_key
from src.nwa.automaton import EpsNwa
from src.nwa.operations import accepts, enumerate_language, validate
from src.nwa.text_format import NWA_HEADERS, content_lines, parse_nwa, read_header
from src.nwt.composition import compose
from src.nwt.images import enumerate_image, typecheck
from src.nwt.properties import sample_depth_bound, sample_functionality, validate_nwt
from src.nwt.text_format import format_nwt, parse_nwt
from src.nwt.transducer import Nwt
from src.games.doubling import gen_doubling_game, run_doubling_script
from src.games.engine import PlayEngine
from src.games.game import (
    BUDGET_EXHAUSTED, JULIET_WINS, Constraints, Game, SolveResult, validate_game,
)
from src.games.replay_free import check_win_replay_free
from src.games.single_call import solve_single_call
from src.games.solver import solve
from src.games.strategy import format_strategy, format_trace, load_strategy, trace_play
from src.games.text_format import load_game, parse_game, save_game
from src.games.write_once import solve_write_once
from src.utils.config import get_config_value
from src.utils.errors import (
    BudgetExceededError, FormatError, MalformedWordError, NestedWordsError, ValidationError,
)
from src.utils.validation import ValidationReport

logger = logging.getLogger(__name__)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3

COMMANDS = ("validate", "accept", "transduce", "compose", "typecheck", "solve", "trace", "gen-doubling", "enum")
SOLVERS = ("auto", "graph", "replay-free", "single-call", "write-once")

_ARITY = {
    "validate": (1, 1), "accept": (2, 2), "transduce": (2, 2), "compose": (2, 2),
    "typecheck": (3, 3), "solve": (2, 2), "trace": (3, 3), "gen-doubling": (0, 0), "enum": (1, 2),
}
# Input positions that may hold a literal word instead of a file
_WORD_INPUTS = {"accept": 1, "transduce": 1, "solve": 1, "trace": 1, "enum": 1}


class UsageError(NestedWordsError):
    """Wrong number of inputs or an inconsistent flag combination."""


@dataclass
class Invocation:
    """One command with its input files and flags."""
    command: str
    inputs: List[str] = field(default_factory=list)
    depth: Optional[int] = None
    width: Optional[int] = None
    width_includes_input: bool = False
    write_once: bool = False
    romeo_budget: Optional[int] = None
    state_budget: Optional[int] = None
    max_len: Optional[int] = None
    seed: Optional[int] = None
    json: bool = False
    solver: str = "auto"
    witness: bool = False
    output: Optional[str] = None
    k: int = 1
    n: int = 1
    run_script: bool = False

    @property
    def constraints(self) -> Constraints:
        return Constraints(self.depth, self.width, self.width_includes_input, self.write_once,
                           self.romeo_budget)


@dataclass
class Outcome:
    exit_code: int
    lines: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)


# ----------------------------------------------------------------------
# Loading and validating inputs
# ----------------------------------------------------------------------

def read_word(argument: str, alphabet=None) -> NestedWord:
    """A word argument is a file path when such a file exists, else literal text."""
    path = Path(argument)
    text = path.read_text() if path.is_file() else argument
    return parse_word(text.strip(), alphabet)


def load_automaton(path: str) -> EpsNwa:
    automaton = parse_nwa(Path(path).read_text())
    validate(automaton).raise_if_invalid()
    return automaton


def load_transducer(path: str) -> Nwt:
    transducer = parse_nwt(Path(path).read_text())
    validate_nwt(transducer).raise_if_invalid()
    return transducer


def load_valid_game(path: str) -> Game:
    game = load_game(path)
    validate_game(game).raise_if_invalid()
    return game


def _artifact_kind(path: str) -> str:
    text = Path(path).read_text()
    if not content_lines(text) or text.lstrip().startswith("<"):
        return "word"
    header = read_header(text)
    if header in NWA_HEADERS:
        return "nwa"
    if header in ("nwt", "game"):
        return header
    return "word"


def sample_inputs(alphabet, seed: Optional[int] = None) -> List[NestedWord]:
    """Seeded random well-nested words for checking transducer declarations."""
    if seed is None:
        seed = int(get_config_value('validation.seed', 7))
    letters = sorted(alphabet)
    if not letters:
        return [NestedWord()]
    rng = np.random.default_rng(seed)
    count = int(get_config_value('validation.samples', 50))
    longest = int(get_config_value('validation.max_word_length', 6))
    return [random_well_nested(rng, letters, 2 * int(rng.integers(0, longest // 2 + 1))) for _ in range(count)]


def _check_declarations(transducer: Nwt, report: ValidationReport, inv: Invocation):
    """Add an issue when sampled inputs contradict `functional: yes` or `depth-bound:`."""
    if not transducer.functional_claimed and transducer.depth_bound is None:
        return
    words = sample_inputs(transducer.alphabet, inv.seed)
    longest = max(len(word) for word in words)
    max_len = _max_len(inv, longest * max(transducer.max_output_length, 1))
    if transducer.functional_claimed:
        found = sample_functionality(transducer, words, max_len)
        if found is not None:
            word, (first, second) = found
            report.add(f"declared functional but maps {format_word(word)} to "
                       f"{format_word(first)} and {format_word(second)}")
    if transducer.depth_bound is not None:
        found = sample_depth_bound(transducer, words, transducer.depth_bound, max_len)
        if found is not None:
            word, output = found
            report.add(f"depth bound {transducer.depth_bound} exceeded: {format_word(word)} "
                       f"maps to {format_word(output)}")


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _validate(inv: Invocation) -> Outcome:
    path = inv.inputs[0]
    kind = _artifact_kind(path)
    text = Path(path).read_text()
    if kind == "nwa":
        report = validate(parse_nwa(text))
    elif kind == "nwt":
        transducer = parse_nwt(text)
        report = validate_nwt(transducer)
        if report.is_valid:
            _check_declarations(transducer, report, inv)
    elif kind == "game":
        report = validate_game(parse_game(text, Path(path).parent))
    else:
        word = parse_word(text.strip())
        return Outcome(EXIT_TRUE, [f"valid word of {len(word)} tags"], {'kind': "word", 'is_valid': True})
    lines = [f"{kind}: valid"] if report.is_valid else [f"{kind}: {issue}" for issue in report.issues]
    data = {'kind': kind, **report.to_dict()}
    return Outcome(EXIT_TRUE if report.is_valid else EXIT_FALSE, lines, data)


def _accept(inv: Invocation) -> Outcome:
    automaton = load_automaton(inv.inputs[0])
    word = read_word(inv.inputs[1])
    accepted = all(label in automaton.alphabet for label in word.labels) and accepts(automaton, word)
    return Outcome(EXIT_TRUE if accepted else EXIT_FALSE, ["accepted" if accepted else "rejected"],
                   {'accepted': accepted})


def _max_len(inv: Invocation, fallback: int) -> int:
    if inv.max_len is not None:
        return inv.max_len
    return max(fallback, int(get_config_value('enumeration.default_max_len', 8)))


def _word_lines(words) -> List[str]:
    return [format_word(w) or "(empty)" for w in sorted(words, key=shortlex_key)]


def _transduce(inv: Invocation) -> Outcome:
    transducer = load_transducer(inv.inputs[0])
    word = read_word(inv.inputs[1])
    found = enumerate_image(transducer, word, _max_len(inv, len(word) * max(transducer.max_output_length, 1)))
    lines = _word_lines(found)
    return Outcome(EXIT_TRUE if found else EXIT_FALSE, lines or ["no transducts"], {'transducts': lines})


def _write_artifact(inv: Invocation, text: str, lines: List[str]) -> List[str]:
    if inv.output:
        Path(inv.output).parent.mkdir(parents=True, exist_ok=True)
        Path(inv.output).write_text(text)
        return lines + [f"written to {inv.output}"]
    return lines + text.rstrip("\n").split("\n")


def _compose(inv: Invocation) -> Outcome:
    first = load_transducer(inv.inputs[0])
    second = load_transducer(inv.inputs[1])
    composed = compose(first, second)
    text = format_nwt(composed)
    return Outcome(EXIT_TRUE, _write_artifact(inv, text, []), {'size': composed.size, 'nwt': text})


def _typecheck(inv: Invocation) -> Outcome:
    transducer = load_transducer(inv.inputs[0])
    source = load_automaton(inv.inputs[1])
    target = load_automaton(inv.inputs[2])
    ok = typecheck(transducer, source, target, inv.state_budget)
    return Outcome(EXIT_TRUE if ok else EXIT_FALSE, ["typechecks" if ok else "does not typecheck"],
                   {'typechecks': ok})


def choose_solver(game: Game, inv: Invocation) -> str:
    """The solver `auto` picks for the game class and constraints."""
    if inv.solver != "auto":
        return inv.solver
    nwt_class = game.nwt_class
    c = inv.constraints
    if c.write_once and nwt_class.relabelling and nwt_class.functional_claimed:
        return "write-once"
    if c.write_once:
        return "graph"
    if c.max_call_depth == 1 and c.max_call_width is None and nwt_class.eps_free:
        return "replay-free"
    if (c.max_call_depth == 1 and c.max_call_width == 1 and c.width_includes_input
            and nwt_class.non_deleting):
        return "single-call"
    return "graph"


def run_solver(game: Game, word: NestedWord, inv: Invocation) -> SolveResult:
    solver = choose_solver(game, inv)
    logger.info(f"solving with the {solver} solver")
    if solver == "replay-free":
        return check_win_replay_free(game, word, inv.romeo_budget)
    if solver == "single-call":
        return solve_single_call(game, word, inv.state_budget)
    if solver == "write-once":
        return solve_write_once(game, word)
    return solve(game, word, inv.constraints)


def _verdict_code(verdict: str) -> int:
    if verdict == JULIET_WINS:
        return EXIT_TRUE
    if verdict == BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_FALSE


def _solve(inv: Invocation) -> Outcome:
    game = load_valid_game(inv.inputs[0])
    word = read_word(inv.inputs[1], game.alphabet)
    result = run_solver(game, word, inv)
    lines = [result.verdict, f"solver: {result.solver}"]
    lines += [f"{name}: {value}" for name, value in sorted(result.stats.items())]
    if result.final_word is not None:
        lines.append(f"final word: {format_word(result.final_word)}")
    if inv.witness and result.witness is not None:
        if not inv.output:
            lines.append("strategy:")
        lines = _write_artifact(inv, format_strategy(result.witness), lines)
    data = result.to_dict()
    data['constraints'] = inv.constraints.to_dict()
    return Outcome(_verdict_code(result.verdict), lines, data)


def _trace(inv: Invocation) -> Outcome:
    game = load_valid_game(inv.inputs[0])
    word = read_word(inv.inputs[1], game.alphabet)
    strategy = load_strategy(inv.inputs[2])
    engine = PlayEngine(game, inv.constraints)
    trace = trace_play(engine, word, strategy)
    last = trace[-1][0]
    won = engine.juliet_wins(last)
    steps = [{'configuration': config.digest, 'position': config.describe(),
              'move': move.text() if move is not None else None} for config, move in trace]
    return Outcome(EXIT_TRUE if won else EXIT_FALSE, format_trace(engine, trace).rstrip("\n").split("\n"),
                   {'steps': steps, 'juliet_wins': won})


def _gen_doubling(inv: Invocation) -> Outcome:
    game, word = gen_doubling_game(inv.k, inv.n)
    lines = [f"input word ({len(word)} tags): {format_word(word)}"]
    data: Dict[str, Any] = {'k': inv.k, 'n': inv.n, 'input': format_word(word), 'input_length': len(word)}
    if inv.output:
        path = save_game(game, inv.output)
        path.with_suffix(".nw").write_text(format_word(word) + "\n")
        lines.append(f"game written to {path}")
    if inv.run_script:
        final = run_doubling_script(game, word)
        lines.append(f"final length: {len(final)}")
        data['final_length'] = len(final)
    return Outcome(EXIT_TRUE, lines, data)


def _enum(inv: Invocation) -> Outcome:
    path = inv.inputs[0]
    kind = _artifact_kind(path)
    if kind == "nwa":
        found = enumerate_language(load_automaton(path), _max_len(inv, 0))
    elif kind == "nwt":
        if len(inv.inputs) != 2:
            raise UsageError("enum on a transducer needs a word")
        transducer = load_transducer(path)
        found = enumerate_image(transducer, read_word(inv.inputs[1]), _max_len(inv, 0))
    else:
        raise UsageError(f"enum expects an automaton or a transducer, got a {kind}")
    lines = _word_lines(found)
    return Outcome(EXIT_TRUE, lines or ["(no words)"], {'words': lines, 'count': len(lines)})


_HANDLERS = {
    "validate": _validate,
    "accept": _accept,
    "transduce": _transduce,
    "compose": _compose,
    "typecheck": _typecheck,
    "solve": _solve,
    "trace": _trace,
    "gen-doubling": _gen_doubling,
    "enum": _enum,
}


def _check_usage(inv: Invocation):
    if inv.command not in _HANDLERS:
        raise UsageError(f"unknown command {inv.command!r}; expected one of {', '.join(COMMANDS)}")
    low, high = _ARITY[inv.command]
    if not low <= len(inv.inputs) <= high:
        raise UsageError(f"{inv.command} takes {low if low == high else f'{low} to {high}'} inputs, "
                         f"got {len(inv.inputs)}")
    if inv.solver not in SOLVERS:
        raise UsageError(f"unknown solver {inv.solver!r}")
    word_position = _WORD_INPUTS.get(inv.command)
    for position, argument in enumerate(inv.inputs):
        if Path(argument).is_file():
            continue
        if position != word_position:
            raise UsageError(f"no such file: {argument}")
        parse_word(argument.strip())


def run(inv: Invocation) -> Tuple[int, str]:
    """Execute one invocation; returns (exit code, report text)."""
    try:
        _check_usage(inv)
        outcome = _HANDLERS[inv.command](inv)
    except (UsageError, FormatError, ValidationError, MalformedWordError, ValueError) as e:
        outcome = Outcome(EXIT_ERROR, [f"error: {e}"], {'error': str(e)})
    except BudgetExceededError as e:
        outcome = Outcome(EXIT_BUDGET, [f"budget exhausted: {e}"], {'error': str(e)})
    except NestedWordsError as e:
        outcome = Outcome(EXIT_ERROR, [f"error: {e}"], {'error': str(e)})
    if inv.json:
        report = json.dumps({'command': inv.command, 'exit_code': outcome.exit_code, **outcome.data},
                            indent=2, sort_keys=True)
    else:
        report = "\n".join(outcome.lines)
    return outcome.exit_code, report + "\n"
