import pytest

from srt_lab import SystemParams


@pytest.fixture
def defaults():
    """Baseline configuration used throughout: six relays, 10 dB, 1 bit/s/Hz."""
    return SystemParams.defaults()
