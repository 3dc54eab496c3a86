"""Golden reference data: the published two-qubit counterexample (circuit,
closed-form state, CVaR landscape), the published six-asset portfolio
constants, and frozen computed regression values.

Computed entries live in data/golden.json and can be rebuilt with
`regenerate_golden()` (CLI: `cvarqopt regen-golden`); a test diffs the
committed file against a fresh regeneration.  Published constants are defined
here, once, and referenced everywhere else.
"""
from __future__ import annotations

import importlib.resources
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .hamiltonian import DiagonalHamiltonian
from .statevector import Circuit, cnot, h, ry

GOLDEN_VERSION = 1

# Two-qubit counterexample: H(q0), CNOT(q0->q1), RY(theta on q1) against
# diag(0, 1, 1, 2).  Mean objective is 1 for every theta while CVaR_0.5 is
# sin^2(theta/2), so only the tail objective has a usable landscape.
TWO_QUBIT_DIAGONAL = (0.0, 1.0, 1.0, 2.0)

# Six-asset portfolio case: risk factor, budget, penalty weight, expected
# returns, and covariance, as published.
PORTFOLIO_N = 6
PORTFOLIO_RISK_FACTOR = 0.5
PORTFOLIO_BUDGET = 3
PORTFOLIO_PENALTY = 12.0
PORTFOLIO_RETURNS = (0.7313, 0.9893, 0.2725, 0.8750, 0.7667, 0.3622)
PORTFOLIO_COVARIANCE = (
    (0.7312, -0.6233, 0.4689, -0.5452, -0.0082, -0.3809),
    (-0.6233, 2.4732, -0.7538, 2.4659, -0.0733, 0.8945),
    (0.4689, -0.7538, 1.1543, -1.4095, 0.0007, -0.4301),
    (-0.5452, 2.4659, -1.4095, 3.5067, 0.2012, 1.0922),
    (-0.0082, -0.0733, 0.0007, 0.2012, 0.6231, 0.1509),
    (-0.3809, 0.8945, -0.4301, 1.0922, 0.1509, 0.8992),
)


def two_qubit_hamiltonian() -> DiagonalHamiltonian:
    return DiagonalHamiltonian(2, np.array(TWO_QUBIT_DIAGONAL))


def two_qubit_circuit(theta: float) -> Circuit:
    return Circuit(2, [h(0), cnot(0, 1), ry(1, theta)])


def two_qubit_amplitudes(theta: float) -> np.ndarray:
    """Closed-form state of the two-qubit circuit."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([c, s, -s, c], dtype=complex) / math.sqrt(2)


def two_qubit_cvar(theta: float, alpha: float) -> float:
    """Closed-form CVaR landscape of the two-qubit case.

    Outcomes are {0: c^2/2, 1: s^2, 2: c^2/2} with c = cos(theta/2) and
    s = sin(theta/2); the boundary outcome enters the tail fractionally.
    """
    ground = math.cos(theta / 2) ** 2 / 2
    middle = math.sin(theta / 2) ** 2
    if alpha <= ground:
        return 0.0
    if alpha <= ground + middle:
        return (alpha - ground) / alpha
    return (middle + 2.0 * (alpha - ground - middle)) / alpha


@dataclass(frozen=True)
class GoldenCase:
    name: str
    inputs: dict
    expected: object
    tolerance: float
    source: str  # published | analytic | computed

    def __post_init__(self):
        if self.source not in ("published", "analytic", "computed"):
            raise ValueError(f"unknown source {self.source!r}")


_DATA_PACKAGE = "cvarqopt.data"
_GOLDEN_FILE = "golden.json"


def golden_path() -> Path:
    return Path(importlib.resources.files(_DATA_PACKAGE) / _GOLDEN_FILE)


def load_golden_json() -> dict:
    text = (importlib.resources.files(_DATA_PACKAGE) / _GOLDEN_FILE).read_text()
    data = json.loads(text)
    if data.get("version") != GOLDEN_VERSION:
        raise ValueError(f"unsupported golden data version {data.get('version')}")
    return data


def compute_golden_values() -> dict:
    """Recompute every frozen 'computed' value from the brute-force oracle."""
    from .flatness import flatness_report, needle_hamiltonian
    from .hamiltonian import qubo_to_hamiltonian
    from .oracle import enumerate_hamiltonian
    from .problems import InstanceSpec, generate, portfolio_qubo

    data: dict = {"version": GOLDEN_VERSION, "prng": "numpy.random.PCG64"}

    truth = enumerate_hamiltonian(qubo_to_hamiltonian(portfolio_qubo()))
    data["portfolio_optimum"] = {
        "value": truth.min_value,
        "bitstrings": list(truth.minimizers),
    }

    tri = generate(InstanceSpec("maxcut", 3, seed=0, params={"edges": [[0, 1], [1, 2], [0, 2]], "weights": [1, 1, 1]}))
    data["triangle_maxcut_optimum"] = enumerate_hamiltonian(qubo_to_hamiltonian(tri)).min_value

    # amplitude-cluster regression: random angles on a random maxcut instance
    rng = np.random.Generator(np.random.PCG64(2024))
    cut = generate(InstanceSpec("maxcut", 6, seed=7))
    angles = rng.uniform(-np.pi, np.pi, size=4)
    rep = flatness_report(qubo_to_hamiltonian(cut), betas=angles[:2], gammas=angles[2:])
    data["maxcut_flatness_regression"] = {
        "n": 6,
        "p": 2,
        "instance_seed": 7,
        "angle_seed": 2024,
        "equal_fraction_final": rep.delta_per_layer[-1],
        "max_abs_amplitude": rep.max_abs_amplitude,
    }

    # single-layer peak amplitudes on needle objectives, per size (flatness trend)
    needle = {}
    for n in (8, 10, 12):
        rng_n = np.random.Generator(np.random.PCG64(91000 + n))
        peak = 0.0
        for _ in range(20):
            beta, gamma = rng_n.uniform(-np.pi, np.pi, size=2)
            rep = flatness_report(needle_hamiltonian(n), betas=[beta], gammas=[gamma])
            peak = max(peak, rep.max_abs_amplitude)
        needle[str(n)] = peak
    data["needle_peak_amplitude"] = {"draws": 20, "seed_base": 91000, "by_n": needle}

    # seed-pinned sampled-mode run on the six-asset case: ring layout, theta0 = 0
    from .harness import run_single
    from .optimizer import best_observed_solution

    trace = run_single(
        portfolio_qubo(), algo="vqe", p=1, alpha=0.25, mode="sampled", shots=8192,
        seed=77, entanglement="ring", initial_point="zeros",
    )
    bitstring, bit_value = best_observed_solution(trace)
    data["portfolio_run_regression"] = {
        "algo": "vqe", "p": 1, "alpha": 0.25, "shots": 8192, "seed": 77,
        "n_evaluations": trace.n_evaluations,
        "best_value": trace.best_value,
        "best_bitstring": bitstring,
        "best_bitstring_value": bit_value,
        "overlap_checkpoints": {
            str(r.index): r.overlap for r in trace.records if r.index % 25 == 0 or r.index == trace.n_evaluations
        },
    }

    return data


def regenerate_golden(path: Path | None = None) -> Path:
    """Rewrite the committed golden JSON from a fresh oracle run."""
    path = path or golden_path()
    data = compute_golden_values()
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def load_golden_suite() -> list[GoldenCase]:
    """Assemble the full golden-case list: published constants, analytic
    identities on a canonical angle grid, and frozen computed values."""
    cases: list[GoldenCase] = []
    thetas = np.linspace(0.0, 2 * np.pi, 25)
    cases.append(
        GoldenCase(
            name="two-qubit-state-closed-form",
            inputs={"thetas": thetas},
            expected=np.stack([two_qubit_amplitudes(t) for t in thetas]),
            tolerance=1e-9,
            source="published",
        )
    )
    cases.append(
        GoldenCase(
            name="two-qubit-cvar-mean-constant",
            inputs={"thetas": thetas, "alpha": 1.0},
            expected=np.ones_like(thetas),
            tolerance=1e-9,
            source="published",
        )
    )
    cases.append(
        GoldenCase(
            name="two-qubit-cvar-half-landscape",
            inputs={"thetas": thetas, "alpha": 0.5},
            expected=np.sin(thetas / 2) ** 2,
            tolerance=1e-9,
            source="published",
        )
    )
    cases.append(
        GoldenCase(
            name="portfolio-constants",
            inputs={},
            expected={
                "n": PORTFOLIO_N,
                "risk_factor": PORTFOLIO_RISK_FACTOR,
                "budget": PORTFOLIO_BUDGET,
                "penalty": PORTFOLIO_PENALTY,
                "returns": PORTFOLIO_RETURNS,
                "covariance": PORTFOLIO_COVARIANCE,
            },
            tolerance=0.0,
            source="published",
        )
    )
    cases.append(
        GoldenCase(
            name="uniform-superposition-amplitude",
            inputs={"n": list(range(1, 13))},
            expected=[1.0 / math.sqrt(2**n) for n in range(1, 13)],
            tolerance=1e-12,
            source="analytic",
        )
    )
    data = load_golden_json()
    cases.append(
        GoldenCase(
            name="portfolio-optimum",
            inputs={},
            expected=data["portfolio_optimum"],
            tolerance=0.0,
            source="computed",
        )
    )
    cases.append(
        GoldenCase(
            name="triangle-maxcut-optimum",
            inputs={"edges": [[0, 1], [1, 2], [0, 2]]},
            expected=data["triangle_maxcut_optimum"],
            tolerance=0.0,
            source="computed",
        )
    )
    cases.append(
        GoldenCase(
            name="maxcut-flatness-regression",
            inputs={k: v for k, v in data["maxcut_flatness_regression"].items() if "seed" in k or k in ("n", "p")},
            expected=data["maxcut_flatness_regression"],
            tolerance=1e-9,
            source="computed",
        )
    )
    cases.append(
        GoldenCase(
            name="needle-peak-amplitude",
            inputs={"draws": data["needle_peak_amplitude"]["draws"]},
            expected=data["needle_peak_amplitude"]["by_n"],
            tolerance=1e-9,
            source="computed",
        )
    )
    return cases
