import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def ctx128():
    from zetabounds import PrecisionContext
    return PrecisionContext(128)


@pytest.fixture(scope="session")
def ctx64():
    from zetabounds import PrecisionContext
    return PrecisionContext(64)
