#!/usr/bin/env python3
"""
Nested word automata, transducers and context-free games from the command line.

Usage:
    # Check an artifact (automaton, transducer, game or word)
    python scripts/nwgames.py validate data/examples/a2.nwa

    # Membership and transduction
    python scripts/nwgames.py accept data/examples/a1.nwa "<a></a>"
    python scripts/nwgames.py transduce data/examples/t_ab.nwt "<a></a>" --max-len 6

    # Solve a game replay-free and print Juliet's strategy
    python scripts/nwgames.py solve data/examples/ab.game data/examples/word_a.nw --depth 1 --witness

    # Generate the doubling fixture and replay its scripted strategy
    python scripts/nwgames.py gen-doubling --k 1 --n 3 --run-script

Exit codes: 0 success/true/JulietWins, 1 false/RomeoWins, 2 usage or input
error, 3 budget exhausted.
"""

import sys
import os
import argparse
import logging

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.cli.commands import COMMANDS, EXIT_ERROR, SOLVERS, Invocation, run
from src.utils.logger import get_default_logger


def natural_or_unbounded(text: str):
    """argparse type: a natural number, or `unbounded` for None."""
    if text == "unbounded":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number or 'unbounded', got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {value}")
    return value


def parse_args(argv=None):
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description='Nested word automata, transducers and context-free games',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__
    )

    parser.add_argument('command', choices=COMMANDS, help='Command to run')
    parser.add_argument('inputs', nargs='*', help='Input files; a word may also be given literally')

    # Game constraints
    parser.add_argument('--depth', type=natural_or_unbounded, default=None, help='Call depth bound (N or unbounded)')
    parser.add_argument('--width', type=natural_or_unbounded, default=None, help='Call width bound (N or unbounded)')
    parser.add_argument('--width-includes-input', action='store_true',
                        help='Count Calls on the input word against the width bound')
    parser.add_argument('--write-once', action='store_true', help='Write-once game semantics')
    parser.add_argument('--solver', choices=SOLVERS, default='auto', help='Solver for the solve command')
    parser.add_argument('--witness', action='store_true', help='Print the winning strategy')

    # Budgets
    parser.add_argument('--romeo-budget', type=int, help='Length cap on enumerated Romeo replies')
    parser.add_argument('--state-budget', type=int, help='State budget for determinization')
    parser.add_argument('--max-len', type=int, help='Length bound for enumeration')

    # Fixtures
    parser.add_argument('--k', type=int, default=1, help='Tower height for gen-doubling')
    parser.add_argument('--n', type=int, default=1, help='Tower base for gen-doubling')
    parser.add_argument('--run-script', action='store_true', help='Replay the scripted doubling strategy')
    parser.add_argument('--seed', type=int, help='Seed for the inputs validate samples against transducer declarations')

    # Output options
    parser.add_argument('-o', '--output', type=str, help='Write the produced artifact to this path')
    parser.add_argument('--json', action='store_true', help='Machine-readable report')
    parser.add_argument(
        '--log-level',
        type=str,
        default=None,
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging level'
    )

    return parser.parse_args(argv)


def to_invocation(args) -> Invocation:
    return Invocation(
        command=args.command,
        inputs=list(args.inputs),
        depth=args.depth,
        width=args.width,
        width_includes_input=args.width_includes_input,
        write_once=args.write_once,
        romeo_budget=args.romeo_budget,
        state_budget=args.state_budget,
        max_len=args.max_len,
        seed=args.seed,
        json=args.json,
        solver=args.solver,
        witness=args.witness,
        output=args.output,
        k=args.k,
        n=args.n,
        run_script=args.run_script,
    )


def main(argv=None):
    """Main entry point."""
    args = parse_args(argv)

    # Setup logging
    get_default_logger(args.log_level)

    try:
        exit_code, report = run(to_invocation(args))
        sys.stdout.write(report)
        return exit_code

    except KeyboardInterrupt:
        print("\n\n⚠️  Interrupted by user\n", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        print(f"\n✗ Error running {args.command}: {e}\n", file=sys.stderr)
        logging.exception(f"{args.command} failed")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
