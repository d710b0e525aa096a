import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def w20():
    from polycond import wilkinson

    return wilkinson(20)


@pytest.fixture(scope="session")
def c20():
    from polycond import clustered_at_zero

    return clustered_at_zero(20)


@pytest.fixture(scope="session")
def s20():
    from polycond import clustered_at_one

    return clustered_at_one(20)
