"""Command-line front end."""

from src.cli.commands import COMMANDS, SOLVERS, Invocation, choose_solver, run, run_solver
