"""Context-free games on nested words and their solvers."""

from src.games.doubling import exp_tower, gen_doubling_game, run_doubling_script
from src.games.engine import PlayEngine, ReplacementOracle, successors
from src.games.game import (
    BUDGET_EXHAUSTED, CALL, JULIET, JULIET_WINS, READ, REPLY, ROMEO, ROMEO_WINS, Configuration,
    Constraints, Game, Move, Slot, SolveResult, Strategy, validate_game,
)
from src.games.oracle import search_without_memo
from src.games.replay_free import check_win_replay_free
from src.games.single_call import solve_single_call
from src.games.solver import GameSolver, solve
from src.games.strategy import (
    format_strategy, format_trace, load_strategy, parse_strategy, replay_strategy, trace_play,
)
from src.games.text_format import format_game, load_game, parse_game, save_game
from src.games.transforms import make_non_deleting
from src.games.write_once import build_juliet_transducer, solve_write_once
