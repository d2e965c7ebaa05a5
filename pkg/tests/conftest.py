import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def scenarios():
    from snc_hodge.geometries import scenario

    return {
        "hopf-f1": scenario("hopf-f1"),
        "hashimoto-sano": scenario("hashimoto-sano", a=1),
        "clemens-1": scenario("clemens", l=1),
        "clemens-2": scenario("clemens", l=2),
        "quintic-tyurin": scenario("quintic-tyurin"),
        "conic-product": scenario("conic-product"),
    }
