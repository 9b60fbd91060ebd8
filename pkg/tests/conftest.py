import sys
from pathlib import Path

import pytest
from hypothesis import settings

from ncad.testkit import RngSpec

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def rng():
    return RngSpec(12345)


@pytest.fixture
def golden():
    return GOLDEN
