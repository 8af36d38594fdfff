#!/usr/bin/env python3
"""
Tests for configuration loading and environment overrides.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest

from src.utils.config import get_config_value, reload_config


@pytest.fixture
def fresh_config():
    reload_config()
    yield
    reload_config()


def test_dot_path_lookup(fresh_config):
    assert get_config_value('games.doubling_size_limit') == 65536
    assert get_config_value('cross_validation.seed') == 7
    assert get_config_value('games.no_such_key', 42) == 42
    assert get_config_value('logging.file') is None


def test_environment_overrides(fresh_config, monkeypatch):
    monkeypatch.setenv('NWG_MAX_CONFIGURATIONS', '123')
    monkeypatch.setenv('NWG_LOG_LEVEL', 'DEBUG')
    reload_config()
    assert get_config_value('games.max_configurations') == 123
    assert get_config_value('logging.level') == 'DEBUG'
