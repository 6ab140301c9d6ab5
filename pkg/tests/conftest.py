import numpy as np
import pytest
from hypothesis import settings

from mobcorr import sieve

settings.register_profile("ci", derandomize=True, max_examples=50, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def mu_oracle():
    """Trial-division mu values for 1..3000, independent of the sieve."""
    limit = 3000
    table = np.array([sieve.mobius_at(n) for n in range(1, limit + 1)], dtype=np.int8)

    def at(n: int) -> int:
        return int(table[n - 1]) if n <= limit else sieve.mobius_at(n)

    return at
