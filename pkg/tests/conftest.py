"""
Shared fixtures for the QEC coding-map tests.
"""
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from code_catalog import catalog_code  # noqa: E402
from qubit_channels import PauliProbs, pauli_probs_to_diagonal  # noqa: E402

SINGLE_CODES = ["bitflip", "phaseflip", "phaseflip_prime", "steane", "five_bit"]
ALL_CODES = SINGLE_CODES + ["shor", "shor_prime"]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bitflip():
    return catalog_code("bitflip")


@pytest.fixture
def five_bit():
    return catalog_code("five_bit")


@pytest.fixture
def steane():
    return catalog_code("steane")


def random_physical_diagonal(rng):
    """Uniform draw from the Pauli-probability simplex"""
    p_i, p_x, p_y, p_z = rng.dirichlet(np.ones(4))
    return pauli_probs_to_diagonal(PauliProbs(p_x, p_y, p_z))


@pytest.fixture
def random_channel(rng):
    """Callable drawing a fresh random physical diagonal channel"""
    return lambda: random_physical_diagonal(rng)
