"""
Test fixtures and configuration for pytest
"""
import shutil
import tempfile
from pathlib import Path

import pytest

from hyperprover.core.config import Config
from hyperprover.core.syntax import parse_formula, parse_hypersequent, parse_sequent


@pytest.fixture
def temp_project_dir():
    """Create temporary project directory"""
    temp_dir = Path(tempfile.mkdtemp())
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture
def mock_config():
    """Small, fast configuration"""
    config = Config.default()
    config.data["search"]["timeout_ms"] = 20_000
    config.data["sampling"]["soundness_samples"] = 20
    config.data["corpus"]["max_nodes"] = 3
    config.data["corpus"]["reduction_systems"] = 20
    config.data["corpus"]["elaboration_goals"] = 5
    return config


@pytest.fixture
def fa():
    """Parse an abelian-dialect formula"""
    return lambda text: parse_formula(text, "a")


@pytest.fixture
def fl():
    """Parse a Łukasiewicz-dialect formula"""
    return lambda text: parse_formula(text, "l")


@pytest.fixture
def hs():
    """Parse a hypersequent (abelian dialect unless given)"""
    return lambda text, dialect="a": parse_hypersequent(text, dialect)


@pytest.fixture
def seq():
    """Parse a sequent (abelian dialect unless given)"""
    return lambda text, dialect="a": parse_sequent(text, dialect)


@pytest.fixture
def bundled_dir():
    """Directory holding the bundled proofs"""
    import hyperprover

    return Path(hyperprover.__file__).parent / "data"
