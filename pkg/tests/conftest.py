import numpy as np
import pytest
from hypothesis import strategies as st

from qswitch.statevector import StateVector


def random_state(rng: np.random.Generator, n: int) -> StateVector:
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(v, normalize=True)


@st.composite
def states(draw, n):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_state(np.random.default_rng(seed), n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
