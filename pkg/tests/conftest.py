import numpy as np
import pytest

from pauli_search.pauli_core import DenseState
from pauli_search.samplers import random_stabilizer

ACCEPTANCE_LINES: list[str] = []


def reference_states() -> dict[str, DenseState]:
    """Small test states: |0><0|, maximally mixed, singleton, stabilizer, full-rank mixed."""
    rng = np.random.default_rng(20240611)
    states = {"zero1": DenseState.basis_state("0")}
    for n in (1, 2, 3):
        states[f"mixed{n}"] = DenseState.maximally_mixed(n)
        states[f"singleton{n}"] = DenseState.pauli_singleton(n)
        states[f"random{n}"] = DenseState.random(n, rng)
    states["stab2"] = DenseState(random_stabilizer(2, seed=11).to_dense())
    states["stab3"] = DenseState(random_stabilizer(3, seed=12).to_dense())
    return states


@pytest.fixture(scope="session")
def states() -> dict[str, DenseState]:
    return reference_states()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
