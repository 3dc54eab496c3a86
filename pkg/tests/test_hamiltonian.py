import numpy as np
import pytest

from conftest import all_bitstrings, random_qubo
from cvarqopt.hamiltonian import (
    DiagonalHamiltonian,
    IsingModel,
    QuboProblem,
    evaluate_bitstring,
    ising_to_hamiltonian,
    qubo_to_hamiltonian,
    qubo_to_ising,
)


def test_single_variable_transform():
    m = qubo_to_ising(QuboProblem(1, b=[2.0], A=[[0.0]]))
    np.testing.assert_allclose(m.c, [-1.0])
    np.testing.assert_allclose(m.Q, [[0.0]])
    assert m.offset == 1.0
    # x=0 (z=+1) -> 0, x=1 (z=-1) -> 2
    assert m.value([1.0]) == 0.0
    assert m.value([-1.0]) == 2.0


def test_zero_problem_maps_to_zero_model():
    m = qubo_to_ising(QuboProblem(3, b=np.zeros(3), A=np.zeros((3, 3))))
    assert m.offset == 0.0
    np.testing.assert_array_equal(m.c, np.zeros(3))
    np.testing.assert_array_equal(m.Q, np.zeros((3, 3)))


def test_four_variable_round_trip_is_exact(rng):
    q = random_qubo(rng, 4, integer=True)
    m = qubo_to_ising(q)
    for x in all_bitstrings(4):
        assert q.value(x) == m.value(1.0 - 2.0 * x)


@pytest.mark.parametrize("n", [2, 5, 8, 10])
def test_float_round_trip_matches_to_machine_precision(n, rng):
    q = random_qubo(rng, n)
    m = qubo_to_ising(q)
    ham = ising_to_hamiltonian(m)
    xs = all_bitstrings(n)
    for j, x in enumerate(xs):
        z = 1.0 - 2.0 * x
        assert abs(q.value(x) - m.value(z)) < 1e-10
        assert abs(q.value(x) - ham.table[j]) < 1e-10


def test_single_spin_hamiltonian():
    ham = ising_to_hamiltonian(IsingModel(1, c=[1.0], Q=[[0.0]]))
    np.testing.assert_array_equal(ham.table, [1.0, -1.0])


def test_composed_single_variable_hamiltonian():
    ham = qubo_to_hamiltonian(QuboProblem(1, b=[2.0], A=[[0.0]]))
    np.testing.assert_array_equal(ham.table, [0.0, 2.0])


@pytest.mark.parametrize("n", [2, 4, 7])
def test_diagonal_sums_to_offset_times_dimension(n, rng):
    m = qubo_to_ising(random_qubo(rng, n, integer=True))
    ham = ising_to_hamiltonian(m)
    assert ham.table.sum() == pytest.approx(2**n * m.offset, abs=1e-9)


def test_evaluate_bitstring_reference_diagonal():
    ham = DiagonalHamiltonian(2, [0.0, 1.0, 1.0, 2.0])
    assert evaluate_bitstring(ham, 3) == 2.0
    assert evaluate_bitstring(ham, 0) == 0.0
    with pytest.raises(IndexError):
        evaluate_bitstring(ham, 4)
    with pytest.raises(IndexError):
        evaluate_bitstring(ham, -1)


def test_triangle_cut_values():
    from cvarqopt.problems import InstanceSpec, generate

    tri = generate(InstanceSpec("maxcut", 3, 0, {"edges": [[0, 1], [1, 2], [0, 2]]}))
    ham = qubo_to_hamiltonian(tri)
    # any single-vertex cut severs two unit edges
    for j in (0b100, 0b010, 0b001):
        assert ham.table[j] == -2.0
    assert ham.table[0] == 0.0


def test_json_round_trips(rng):
    q = random_qubo(rng, 4)
    q2 = QuboProblem.from_json(q.to_json())
    assert q2.n == q.n and q2.const == q.const
    np.testing.assert_array_equal(q.b, q2.b)
    np.testing.assert_array_equal(q.A, q2.A)
    m = qubo_to_ising(q)
    m2 = IsingModel.from_json(m.to_json())
    np.testing.assert_array_equal(m.c, m2.c)
    np.testing.assert_array_equal(m.Q, m2.Q)
    assert m.offset == m2.offset


def test_ising_requires_strict_upper_triangle():
    with pytest.raises(ValueError):
        IsingModel(2, c=[0.0, 0.0], Q=[[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        IsingModel(2, c=[0.0, 0.0], Q=[[1.0, 0.0], [0.0, 0.0]])


def test_table_agrees_with_model_value(rng):
    m = qubo_to_ising(random_qubo(rng, 5))
    ham = ising_to_hamiltonian(m)
    for j, x in enumerate(all_bitstrings(5)):
        assert ham.table[j] == pytest.approx(m.value(1.0 - 2.0 * x), abs=1e-12)
