import numpy as np
import pytest

from quasimo.circuit import GATE_KINDS, Circuit, Gate
from quasimo.pauli import PauliOperator, PauliString
from quasimo.simulator import run

RANDOM_GATE_KINDS = ["H", "S", "Sdg", "Rx", "Ry", "Rz", "CNOT", "CZ", "X", "Y", "Z"]


def random_circuit(num_qubits, depth, rng):
    gates = []
    for _ in range(depth):
        kind = RANDOM_GATE_KINDS[rng.integers(len(RANDOM_GATE_KINDS))]
        arity, takes_angle = GATE_KINDS[kind]
        qubits = tuple(rng.choice(num_qubits, size=arity, replace=False).tolist())
        angle = float(rng.uniform(-np.pi, np.pi)) if takes_angle else None
        gates.append(Gate(kind, qubits, angle))
    return Circuit(num_qubits, tuple(gates))


def random_hermitian(num_qubits, num_terms, rng, constant=True):
    op = PauliOperator.zero()
    for _ in range(num_terms):
        axes = {}
        for q in range(num_qubits):
            pick = rng.integers(4)
            if pick:
                axes[q] = "IXYZ"[pick]
        if axes:
            op = op + float(rng.normal()) * PauliOperator.from_string(PauliString(axes))
    if constant:
        op = op + PauliOperator.identity(float(rng.normal()))
    return op


def random_state(num_qubits, rng):
    amps = rng.normal(size=2**num_qubits) + 1j * rng.normal(size=2**num_qubits)
    return amps / np.linalg.norm(amps)


def circuit_unitary(circuit):
    """Column-by-column unitary of a bound circuit via the simulator."""
    dim = 2**circuit.num_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        out[:, k] = run(circuit, k).amplitudes
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
