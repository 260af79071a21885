from pathlib import Path

import pytest

import dimstat
from dimstat.model import load_model

SPECS = Path(dimstat.__file__).parent / "specs"


@pytest.fixture
def spec():
    def _load(name):
        return load_model(SPECS / f"{name}.dim")
    return _load
