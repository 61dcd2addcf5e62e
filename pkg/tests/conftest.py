from pathlib import Path

import pytest

from tests.strategies import TOURNAMENT_VALUES, TEAM_VALUES

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def tournament_values() -> list[int]:
    return list(TOURNAMENT_VALUES)


@pytest.fixture
def team_values() -> list[int]:
    return list(TEAM_VALUES)
