"""Derivative-free outer-loop minimization.

The workhorse is a linear-surrogate trust-region method (COBYLA, via scipy):
it keeps dim+1 interpolation points and shrinks the trust region from
`initial_step` down to `final_step`.  A counting wrapper enforces the hard
evaluation budget, rejects non-finite objective values, and invokes the
observer after every evaluation, so traces are complete and deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize as scipy_minimize


class ObjectiveValueError(RuntimeError):
    """Raised when the objective returns a non-finite value."""


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    max_evaluations: int
    initial_point: np.ndarray
    initial_step: float = 0.5
    final_step: float = 1e-4
    seed: int | None = None  # reserved for stochastic restarts

    def __post_init__(self):
        x0 = np.asarray(self.initial_point, dtype=float)
        if x0.ndim != 1 or x0.size == 0:
            raise ValueError("initial_point must be a nonempty 1-D array")
        object.__setattr__(self, "initial_point", x0)
        if not self.final_step < self.initial_step:
            raise ValueError("final_step must be smaller than initial_step")
        if self.max_evaluations < x0.size + 2:
            raise ValueError(
                f"max_evaluations must be >= dimension + 2 = {x0.size + 2}, "
                f"got {self.max_evaluations}"
            )


@dataclass(frozen=True)
class EvalRecord:
    index: int  # 1-based evaluation count
    theta: np.ndarray
    value: float
    overlap: float = math.nan
    bitstring: int | None = None  # best basis state seen in this evaluation
    bitstring_value: float = math.nan


@dataclass
class RunTrace:
    records: list[EvalRecord] = field(default_factory=list)

    @property
    def n_evaluations(self) -> int:
        return len(self.records)

    @property
    def best_record(self) -> EvalRecord:
        if not self.records:
            raise ValueError("empty trace")
        return min(self.records, key=lambda r: r.value)

    @property
    def best_value(self) -> float:
        return self.best_record.value

    @property
    def best_point(self) -> np.ndarray:
        return self.best_record.theta


def minimize(
    f: Callable,
    cfg: OptimizerConfig,
    observer: Callable[[EvalRecord], None] | None = None,
) -> RunTrace:
    """Minimize f over angles, recording every evaluation.

    f maps a parameter vector to either a float or a (float, extras) pair,
    where extras may carry "overlap", "bitstring" and "bitstring_value" for
    the trace.  Deterministic: identical config and objective give an
    identical trace.
    """
    trace = RunTrace()

    def wrapped(theta):
        if trace.n_evaluations >= cfg.max_evaluations:
            raise _BudgetExhausted
        theta = np.array(theta, dtype=float, copy=True)
        if theta.shape != cfg.initial_point.shape:
            raise ValueError(f"objective called with shape {theta.shape}")
        out = f(theta)
        value, extras = out if isinstance(out, tuple) else (out, {})
        value = float(value)
        if not math.isfinite(value):
            raise ObjectiveValueError(
                f"objective returned {value} at evaluation "
                f"{trace.n_evaluations + 1}, theta={theta.tolist()}"
            )
        record = EvalRecord(
            index=trace.n_evaluations + 1,
            theta=theta,
            value=value,
            overlap=float(extras.get("overlap", math.nan)),
            bitstring=extras.get("bitstring"),
            bitstring_value=float(extras.get("bitstring_value", math.nan)),
        )
        trace.records.append(record)
        if observer is not None:
            observer(record)
        return value

    try:
        scipy_minimize(
            wrapped,
            cfg.initial_point,
            method="COBYLA",
            tol=cfg.final_step,
            options={"rhobeg": cfg.initial_step, "maxiter": cfg.max_evaluations},
        )
    except _BudgetExhausted:
        pass
    return trace


def best_observed_solution(trace: RunTrace) -> tuple[int, float]:
    """Bitstring with the smallest objective value seen anywhere in the run."""
    seen = [r for r in trace.records if r.bitstring is not None]
    if not seen:
        raise ValueError("trace has no recorded bitstrings")
    best = min(seen, key=lambda r: r.bitstring_value)
    return best.bitstring, best.bitstring_value
