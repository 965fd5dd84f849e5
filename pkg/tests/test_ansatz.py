import numpy as np
import pytest
from scipy.linalg import expm

from quasimo.ansatz import (
    hardware_efficient,
    qaoa_ansatz,
    rx_ry,
    symmetric_trotter_step,
    trotter_step,
)
from quasimo.model import create_star_maxcut
from quasimo.pauli import X, Y, Z
from quasimo.simulator import NonHermitianError, expectation, run

from conftest import circuit_unitary


def two_spin_heisenberg(g=1.0):
    return X(0) * X(1) + Y(0) * Y(1) + g * (Z(0) * Z(1))


def test_trotter_step_single_z_term():
    circuit = trotter_step(Z(0), 0.1)
    assert len(circuit.gates) == 1
    assert circuit.gates[0].kind == "Rz"
    assert circuit.gates[0].angle == pytest.approx(0.2)


def test_trotter_step_two_spin_heisenberg_error():
    h = two_spin_heisenberg()
    dt = 0.05
    circuit = trotter_step(h, dt)
    # one exp block (a single Rz rotation) per Hamiltonian term
    assert sum(1 for g in circuit.gates if g.kind == "Rz") == 3
    exact = expm(-1j * dt * h.to_matrix(2))
    error = np.max(np.abs(circuit_unitary(circuit) - exact))
    assert error < 5e-3


def test_trotter_step_zero_dt_acts_as_identity():
    circuit = trotter_step(two_spin_heisenberg(), 0.0)
    assert np.allclose(circuit_unitary(circuit), np.eye(4), atol=1e-12)


def test_trotter_step_ignores_constant_term():
    h = two_spin_heisenberg()
    assert trotter_step(h + 3.5, 0.1) == trotter_step(h, 0.1)


def test_trotter_step_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        trotter_step(1j * Z(0), 0.1)


def test_trotter_error_scales_quadratically():
    # A one-sided field makes the leading commutator sum non-zero; the
    # plain two-spin Heisenberg bond has mutually commuting terms (and even
    # a symmetric field cancels at leading order), so both split exactly.
    h = two_spin_heisenberg() + 0.7 * Z(0)
    dense = h.to_matrix(2)

    def err(dt):
        return np.max(np.abs(circuit_unitary(trotter_step(h, dt)) - expm(-1j * dt * dense)))

    ratio = err(0.05) / err(0.025)
    assert 3.0 < ratio < 5.0


def test_symmetric_trotter_error_scales_cubically():
    h = two_spin_heisenberg() + 0.7 * Z(0)
    dense = h.to_matrix(2)

    def err(dt):
        return np.max(
            np.abs(circuit_unitary(symmetric_trotter_step(h, dt)) - expm(-1j * dt * dense))
        )

    ratio = err(0.05) / err(0.025)
    assert 6.5 < ratio < 9.5


def test_qaoa_ansatz_structure_p1_n2():
    cost = create_star_maxcut(2).hamiltonian
    circuit = qaoa_ansatz(cost, 1, 2)
    assert circuit.num_params == 2
    kinds = [g.kind for g in circuit.gates]
    assert kinds == ["H", "H", "CNOT", "Rz", "CNOT", "Rx", "Rx"]


def test_qaoa_ansatz_p3_has_six_parameters():
    cost = create_star_maxcut(8).hamiltonian
    assert qaoa_ansatz(cost, 3, 8).num_params == 6


@pytest.mark.parametrize("n", [2, 5])
def test_qaoa_zero_angles_leave_uniform_superposition(n):
    model = create_star_maxcut(n)
    circuit = qaoa_ansatz(model.hamiltonian, 1, n).bind_parameters([0.0, 0.0])
    value = expectation(run(circuit), model.observable)
    assert value == pytest.approx(-(n - 1) / 2, abs=1e-12)


def test_qaoa_rejects_zero_steps():
    with pytest.raises(ValueError):
        qaoa_ansatz(create_star_maxcut(2).hamiltonian, 0, 2)


def test_hardware_efficient_single_qubit_layer():
    circuit = hardware_efficient(1, 1)
    assert [g.kind for g in circuit.gates] == ["Ry", "Rz"]
    assert circuit.num_params == 2


def test_hardware_efficient_counts():
    circuit = hardware_efficient(2, 2)
    assert circuit.num_params == 8
    assert sum(1 for g in circuit.gates if g.kind == "CNOT") == 2


def test_hardware_efficient_rejects_zero_layers():
    with pytest.raises(ValueError):
        hardware_efficient(2, 0)


def test_rx_ry_single_qubit_ansatz():
    circuit = rx_ry()
    assert [g.kind for g in circuit.gates] == ["Rx", "Ry"]
    assert circuit.num_params == 2
    assert circuit.num_qubits == 1
