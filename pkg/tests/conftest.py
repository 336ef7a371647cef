import pytest

from machyper.macdonald import MacdonaldCache


@pytest.fixture(scope="session")
def cache():
    # shared across the whole run; construction results are immutable
    return MacdonaldCache()
