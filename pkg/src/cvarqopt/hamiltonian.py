"""Binary-quadratic problem encodings and the induced diagonal Hamiltonian.

A QUBO min b.x + x^T A x (+ const) over x in {0,1}^n maps to spin variables
via x_i = (1 - z_i)/2, z_i in {-1,+1}.  The Ising form stores the upper
triangle of the symmetric coupling matrix, so the pair (i, k) contributes
2*Q[i,k]*z_i*z_k; the constant dropped by the textbook transform is kept in
`offset` so objective values stay comparable to the original problem.
Spin convention: bit value 0 of qubit i means z_i = +1, bit 1 means z_i = -1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .statevector import MAX_QUBITS


@dataclass(frozen=True)
class QuboProblem:
    n: int
    b: np.ndarray
    A: np.ndarray
    const: float = 0.0

    def __post_init__(self):
        b = np.asarray(self.b, dtype=float)
        A = np.asarray(self.A, dtype=float)
        if b.shape != (self.n,) or A.shape != (self.n, self.n):
            raise ValueError(f"inconsistent dimensions for n={self.n}: b{b.shape}, A{A.shape}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "const", float(self.const))

    def value(self, x) -> float:
        """Objective const + b.x + x^T A x at a binary assignment."""
        x = np.asarray(x, dtype=float)
        return float(self.const + self.b @ x + x @ self.A @ x)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "b": self.b.tolist(), "A": self.A.tolist(), "const": self.const}
        )

    @classmethod
    def from_json(cls, text: str) -> "QuboProblem":
        d = json.loads(text)
        return cls(n=int(d["n"]), b=d["b"], A=d["A"], const=float(d.get("const", 0.0)))


@dataclass(frozen=True)
class IsingModel:
    n: int
    c: np.ndarray
    Q: np.ndarray  # strictly upper triangular; pair (i,k) weighs 2*Q[i,k]
    offset: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        Q = np.asarray(self.Q, dtype=float)
        if c.shape != (self.n,) or Q.shape != (self.n, self.n):
            raise ValueError(f"inconsistent dimensions for n={self.n}: c{c.shape}, Q{Q.shape}")
        if np.any(Q != np.triu(Q, k=1)):
            raise ValueError("Q must be strictly upper triangular")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "offset", float(self.offset))

    def value(self, z) -> float:
        """Energy offset + c.z + sum_{i<k} 2*Q[i,k]*z_i*z_k at a spin assignment."""
        z = np.asarray(z, dtype=float)
        return float(self.offset + self.c @ z + 2.0 * (z @ self.Q @ z))

    def cost_values(self) -> np.ndarray:
        """Energies without the offset for every basis index (used as QAOA phases)."""
        return _spin_table(self.n, self.c, self.Q)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "c": self.c.tolist(), "Q": self.Q.tolist(), "offset": self.offset}
        )

    @classmethod
    def from_json(cls, text: str) -> "IsingModel":
        d = json.loads(text)
        return cls(n=int(d["n"]), c=d["c"], Q=d["Q"], offset=float(d["offset"]))


@dataclass(frozen=True)
class DiagonalHamiltonian:
    n: int
    table: np.ndarray  # 2^n objective values, index = basis state

    def __post_init__(self):
        table = np.asarray(self.table, dtype=float)
        if table.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} diagonal entries, got {table.shape}")
        object.__setattr__(self, "table", table)


def spins_of_index(j: int, n: int) -> np.ndarray:
    """Spin vector of basis index j: bit 0 -> +1, bit 1 -> -1 (qubit 0 is the high bit)."""
    bits = (j >> np.arange(n - 1, -1, -1)) & 1
    return 1.0 - 2.0 * bits


def _spin_table(n: int, c: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """c.z + sum_{i<k} 2*Q[i,k]*z_i*z_k for all 2^n spin assignments."""
    idx = np.arange(2**n)
    cols = [(1 - 2 * ((idx >> (n - 1 - i)) & 1)).astype(np.int8) for i in range(n)]
    out = np.zeros(2**n)
    for i in range(n):
        if c[i] != 0.0:
            out += c[i] * cols[i]
    for i, k in zip(*np.nonzero(Q)):
        out += (2.0 * Q[i, k]) * (cols[i] * cols[k])
    return out


def qubo_to_ising(q: QuboProblem) -> IsingModel:
    """Exact spin re-encoding of a QUBO, offset included."""
    n = q.n
    A, b = q.A, q.b
    pair = A + A.T  # combined coefficient of x_i x_j for i != j
    c = -b / 2.0 - np.diag(A) / 2.0 - (pair.sum(axis=1) - 2.0 * np.diag(A)) / 4.0
    Q = np.triu(pair, k=1) / 8.0
    off_diag_sum = pair.sum() / 2.0 - np.trace(A)  # sum over i != j of A_ij
    offset = q.const + b.sum() / 2.0 + np.trace(A) / 2.0 + off_diag_sum / 4.0
    return IsingModel(n=n, c=c, Q=Q, offset=float(offset))


def ising_to_hamiltonian(m: IsingModel) -> DiagonalHamiltonian:
    """Materialize the 2^n diagonal (n capped at MAX_QUBITS)."""
    if m.n > MAX_QUBITS:
        raise ValueError(f"n={m.n} exceeds the {MAX_QUBITS}-qubit dense limit")
    return DiagonalHamiltonian(m.n, m.offset + m.cost_values())


def qubo_to_hamiltonian(q: QuboProblem) -> DiagonalHamiltonian:
    return ising_to_hamiltonian(qubo_to_ising(q))


def evaluate_bitstring(ham: DiagonalHamiltonian, j: int) -> float:
    """Objective value of basis state j."""
    if not 0 <= j < 2**ham.n:
        raise IndexError(f"basis index {j} out of range for n={ham.n}")
    return float(ham.table[j])
