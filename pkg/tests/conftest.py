import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "symqsp", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("symqsp")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_phi(rng, length, norm):
    """Random vector with a prescribed l1 norm."""
    v = rng.standard_normal(length)
    return norm * v / np.sum(np.abs(v))
