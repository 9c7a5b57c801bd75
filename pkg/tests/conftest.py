import pytest

from busout.levels import classic_trap


@pytest.fixture
def classic():
    return classic_trap()
