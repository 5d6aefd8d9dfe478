from pathlib import Path

import pytest
from hypothesis import settings

DATA = Path(__file__).parent / "data"

# first calls trigger numba compilation
settings.register_profile("polysemi", deadline=None, max_examples=60)
settings.load_profile("polysemi")


@pytest.fixture
def data_dir():
    return DATA
