"""Test configuration: fresh settings per test and shared parameter pairs."""

import pytest

from pqtrig.config import reset_settings
from pqtrig.params import ParamPair


@pytest.fixture(autouse=True)
def _fresh_settings():
    """Settings are cached process-wide; drop them around every test."""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def classical():
    """(2, 2): the ordinary sin/cos and sinh/cosh."""
    return ParamPair(2.0, 2.0)


@pytest.fixture
def tanh_pair():
    """(1, 2): sin_{1,2} = tanh, sinh_{1,2} = tan."""
    return ParamPair(1.0, 2.0)


@pytest.fixture
def sample_pairs():
    """A spread of pairs covering p < 1, p = 1, p > 1 and p above q."""
    return [
        ParamPair(2.0, 2.0),
        ParamPair(1.5, 3.0),
        ParamPair(0.9, 2.0),
        ParamPair(1.0, 4.0),
        ParamPair(4.0, 1.5),
        ParamPair(3.0, 6.0),
    ]
