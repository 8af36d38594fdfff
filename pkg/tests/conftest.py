#!/usr/bin/env python3
"""
Shared fixtures: the example automata, transducers and games from
data/examples, loaded through the text parsers.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from pathlib import Path

import pytest

from src.nwa.text_format import load_nwa
from src.nwt.text_format import load_nwt
from src.games.text_format import load_game

EXAMPLES_DIR = Path(__file__).resolve().parent.parent / "data" / "examples"


@pytest.fixture
def a1():
    """Every well-nested word over {a, b}."""
    return load_nwa(EXAMPLES_DIR / "a1.nwa")


@pytest.fixture
def a2():
    """<a>^n </a>^n for n >= 1."""
    return load_nwa(EXAMPLES_DIR / "a2.nwa")


@pytest.fixture
def t_ab():
    return load_nwt(EXAMPLES_DIR / "t_ab.nwt")


@pytest.fixture
def ab_game():
    """Callable a, relabelling a -> b, target exactly <b></b>."""
    return load_game(EXAMPLES_DIR / "ab.game")


@pytest.fixture
def swap_game():
    return load_game(EXAMPLES_DIR / "swap.game")
