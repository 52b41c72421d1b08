import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "det",
    derandomize=True,
    deadline=None,
    max_examples=80,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")


@pytest.fixture(scope="session")
def baseline():
    """Resolved default configuration (the reference operating point)."""
    from beccool.config import resolve_config

    return resolve_config({})
