"""
Pytest configuration and shared fixtures for vcmod tests.

This module provides reusable fixtures and test utilities used across
the test suite.

Fixture Scopes
--------------
- function: Created per test (default) - for unit tests
- session: Created once per test session - for expensive constructions
  such as the Leech-lattice constellations
"""

from __future__ import annotations

import copy
from pathlib import Path
from typing import Any

import numpy as np
import pytest
import yaml

from vcmod.config.defaults import DEFAULT_CONFIG
from vcmod.config.loader import deep_merge


@pytest.fixture
def tmp_test_dir(tmp_path: Path) -> Path:
    """
    Provide a temporary directory for test artifacts.

    Automatically cleaned up after test completion.
    """
    return tmp_path


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded generator so that sampled tests are reproducible."""
    return np.random.default_rng(2024)


@pytest.fixture
def sample_experiment_data() -> dict[str, Any]:
    """
    Provide a small uncoded 16-QAM experiment.

    The stop rule is tight so that sweeps finish in a fraction of a second.
    """
    return {
        "apiVersion": "vcmod/v1",
        "name": "qam16-test",
        "constellation": "16-QAM",
        "mapping": "gray",
        "snr_db": [8.0, 10.0],
        "seed": 1,
        "stop": {"max_errors": 50, "max_bits": 20000},
    }


@pytest.fixture
def create_yaml_file(tmp_test_dir: Path):
    """
    Factory fixture for creating temporary YAML files.

    Usage:
        yaml_path = create_yaml_file("test.yaml", {"key": "value"})
    """

    def _create(filename: str, data: dict[str, Any]) -> Path:
        path = tmp_test_dir / filename
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            yaml.dump(data, f)
        return path

    return _create


@pytest.fixture
def make_config():
    """Creates a config dict from DEFAULT_CONFIG, overridden by provided values.

    Usage:
        config = make_config({"constellation": "E8-24", "scheme": "bicm"})
    """

    def _make(overrides: dict[str, Any] | None = None) -> dict[str, Any]:
        base = copy.deepcopy(DEFAULT_CONFIG)
        if overrides:
            return deep_merge(base, overrides)
        return base

    return _make


@pytest.fixture(scope="session")
def l24_72():
    """The 2^72-point Leech constellation, built once per session."""
    from vcmod.vc import build_constellation

    return build_constellation("L24-72")
