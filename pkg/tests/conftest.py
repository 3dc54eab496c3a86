import numpy as np
import pytest

from cvarqopt.hamiltonian import QuboProblem
from cvarqopt.objective import OutcomeDistribution


def random_qubo(rng: np.random.Generator, n: int, integer: bool = False) -> QuboProblem:
    """Random dense QUBO; integer coefficients keep every value dyadic-exact."""
    if integer:
        b = rng.integers(-10, 11, size=n).astype(float)
        A = rng.integers(-10, 11, size=(n, n)).astype(float)
        const = float(rng.integers(-10, 11))
    else:
        b = rng.normal(size=n)
        A = rng.normal(size=(n, n))
        const = float(rng.normal())
    return QuboProblem(n, b, A, const=const)


def random_distribution(rng: np.random.Generator, size: int = 12) -> OutcomeDistribution:
    values = np.sort(rng.choice(np.arange(-50, 50), size=size, replace=False)).astype(float)
    probs = rng.random(size)
    return OutcomeDistribution(values, probs / probs.sum())


def all_bitstrings(n: int) -> np.ndarray:
    """All assignments as rows of 0/1, row index = basis index (qubit 0 high bit)."""
    idx = np.arange(2**n)
    return ((idx[:, None] >> np.arange(n - 1, -1, -1)[None, :]) & 1).astype(float)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
