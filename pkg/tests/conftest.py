import numpy as np
import pytest

from reachctl import ControlSystem, StateVector

from helpers import SIGMA_X, SIGMA_Z


@pytest.fixture
def su2_system() -> ControlSystem:
    """The workhorse controllable pair: drift i sigma_z, control i sigma_x."""
    return ControlSystem(1j * SIGMA_Z, 1j * SIGMA_X)


@pytest.fixture
def torus_system() -> ControlSystem:
    """Commuting pair with incommensurate frequencies: the non-compact-group case."""
    A = np.diag([1j, 1j * np.sqrt(2.0)])
    return ControlSystem(A, 2.0 * A)


@pytest.fixture
def plus_state() -> StateVector:
    return StateVector.normalized(np.array([1.0, 1.0], dtype=complex))


@pytest.fixture
def basis_state() -> StateVector:
    return StateVector(np.array([1.0, 0.0], dtype=complex))
