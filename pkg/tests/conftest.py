import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from iwgrowth import ActionSpec

settings.register_profile("repo", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("stress", deadline=None, max_examples=400, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture
def spec2():
    return ActionSpec(3, 6, 12, "+-")


@pytest.fixture
def spec1():
    return ActionSpec(3, 6, 12, "+")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
