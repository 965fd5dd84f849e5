"""Dense statevector backend: circuit execution, exact expectation values,
and seeded shot sampling.

Amplitude index convention: qubit 0 is the least-significant bit, so basis
state k has qubit i in state (k >> i) & 1.  Bitstring keys in ShotResult
list qubit 0 first (leftmost), matching ket notation like |100> for a
single X on qubit 0 of a three-qubit register.
"""

from dataclasses import dataclass, field
from math import cos, sin

import numpy as np

from .circuit import Circuit, Gate, UnboundParametersError, WidthMismatchError
from .pauli import PauliOperator, PauliString, TooManyQubitsError

# Dense amplitudes: 2^24 complex values is ~0.25 GB, a sane desk-scale cap.
MAX_QUBITS = 24

_SQRT2_INV = 2**-0.5

_FIXED_1Q = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "Sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
}


class NonHermitianError(ValueError):
    """Observable expectation values need a Hermitian operator."""


def gate_matrix(gate: Gate) -> np.ndarray:
    """Dense matrix of a bound gate (2x2 or 4x4)."""
    if gate.kind in _FIXED_1Q:
        return _FIXED_1Q[gate.kind]
    if gate.kind == "CNOT":
        return np.array(
            [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
        )  # basis order |t c>: control is the higher bit below
    if gate.kind == "CZ":
        return np.diag([1, 1, 1, -1]).astype(complex)
    t = gate.angle
    c, sn = cos(t / 2), sin(t / 2)
    if gate.kind == "Rx":
        return np.array([[c, -1j * sn], [-1j * sn, c]])
    if gate.kind == "Ry":
        return np.array([[c, -sn], [sn, c]])
    if gate.kind == "Rz":
        return np.array([[np.exp(-1j * t / 2), 0], [0, np.exp(1j * t / 2)]])
    raise ValueError(f"no matrix for gate kind {gate.kind!r}")


@dataclass
class StateVector:
    """2^n complex amplitudes over an n-qubit register."""

    num_qubits: int
    amplitudes: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.num_qubits > MAX_QUBITS:
            raise TooManyQubitsError(
                f"{self.num_qubits} qubits exceeds the {MAX_QUBITS}-qubit simulator cap"
            )
        if self.amplitudes is None:
            amps = np.zeros(2**self.num_qubits, dtype=complex)
            amps[0] = 1.0
            self.amplitudes = amps
        else:
            self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
            if self.amplitudes.shape != (2**self.num_qubits,):
                raise ValueError(
                    f"expected {2**self.num_qubits} amplitudes, got {self.amplitudes.shape}"
                )

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        return cls(num_qubits)

    @classmethod
    def basis(cls, num_qubits: int, index: int) -> "StateVector":
        if not 0 <= index < 2**num_qubits:
            raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def from_bits(cls, bits) -> "StateVector":
        """Product state from a 0/1 sequence indexed by qubit."""
        index = sum(1 << q for q, b in enumerate(bits) if int(b))
        return cls.basis(len(tuple(bits)), index)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def fidelity(self, other: "StateVector") -> float:
        """|<self|other>|^2."""
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass
class ShotResult:
    """Measurement counts keyed by bitstring (qubit 0 leftmost)."""

    counts: dict
    shots: int

    def frequency(self, bitstring: str) -> float:
        return self.counts.get(bitstring, 0) / self.shots


def bitstring(index: int, num_qubits: int) -> str:
    return "".join(str((index >> q) & 1) for q in range(num_qubits))


def _apply_1q(amps: np.ndarray, matrix: np.ndarray, qubit: int, n: int) -> np.ndarray:
    # Axis n-1-q of the [2]*n tensor corresponds to qubit q.
    tensor = amps.reshape([2] * n)
    moved = np.moveaxis(tensor, n - 1 - qubit, 0)
    out = np.tensordot(matrix, moved, axes=([1], [0]))
    return np.moveaxis(out, 0, n - 1 - qubit).reshape(-1)


def _apply_2q(amps: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    tensor = amps.reshape([2] * n).copy()
    qa, qb = gate.qubits
    axa, axb = n - 1 - qa, n - 1 - qb

    def sel(va, vb):
        idx = [slice(None)] * n
        idx[axa], idx[axb] = va, vb
        return tuple(idx)

    if gate.kind == "CNOT":
        tmp = tensor[sel(1, 0)].copy()
        tensor[sel(1, 0)] = tensor[sel(1, 1)]
        tensor[sel(1, 1)] = tmp
    elif gate.kind == "CZ":
        tensor[sel(1, 1)] *= -1
    else:
        raise ValueError(f"unknown two-qubit gate {gate.kind!r}")
    return tensor.reshape(-1)


def apply_gate(amps: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Apply one bound gate to a flat amplitude array."""
    if not gate.is_bound:
        raise UnboundParametersError(f"gate {gate.dump()!r} has an unbound parameter")
    if len(gate.qubits) == 1:
        return _apply_1q(amps, gate_matrix(gate), gate.qubits[0], n)
    return _apply_2q(amps, gate, n)


def apply_pauli_string(amps: np.ndarray, string: PauliString, n: int) -> np.ndarray:
    """P|psi> for a single Pauli string, as a new amplitude array."""
    out = amps
    for q, axis in string.factors:
        out = _apply_1q(out, _FIXED_1Q[axis], q, n)
    return out


def apply_operator(amps: np.ndarray, op: PauliOperator, n: int) -> np.ndarray:
    """A|psi> for a Pauli-sum operator (not unitary in general)."""
    if op.width > n:
        raise WidthMismatchError(
            f"operator touches qubit {op.width - 1} on an {n}-qubit state"
        )
    out = np.zeros_like(amps)
    for string, coeff in op.terms():
        out += coeff * apply_pauli_string(amps, string, n)
    return out


def run(circuit: Circuit, initial=None) -> StateVector:
    """Execute a fully bound circuit.

    ``initial`` may be None (all-zeros state), a basis-state index, or a
    StateVector of matching width.

    Raises:
        UnboundParametersError: the circuit still has symbolic parameters.
        WidthMismatchError: initial state width differs from the circuit.
    """
    if not circuit.is_bound:
        raise UnboundParametersError(
            f"circuit has {circuit.num_params} unbound parameter(s); bind first"
        )
    n = circuit.num_qubits
    if initial is None:
        state = StateVector.zero(n)
    elif isinstance(initial, StateVector):
        if initial.num_qubits != n:
            raise WidthMismatchError(
                f"{initial.num_qubits}-qubit state fed to a {n}-qubit circuit"
            )
        state = initial.copy()
    else:
        state = StateVector.basis(n, int(initial))
    amps = state.amplitudes
    for gate in circuit.gates:
        amps = apply_gate(amps, gate, n)
    return StateVector(n, amps)


def expectation(state: StateVector, op: PauliOperator) -> float:
    """<psi|op|psi> for a Hermitian operator; the residual imaginary part
    (below 1e-10) is discarded.

    Raises:
        NonHermitianError: op has a coefficient with a significant imaginary part.
    """
    if not op.is_hermitian:
        raise NonHermitianError("expectation value requires a Hermitian operator")
    if op.width > state.num_qubits:
        raise WidthMismatchError(
            f"operator touches qubit {op.width - 1} on a {state.num_qubits}-qubit state"
        )
    amps = state.amplitudes
    value = 0j
    for string, coeff in op.terms():
        value += coeff * np.vdot(amps, apply_pauli_string(amps, string, state.num_qubits))
    return float(value.real)


def sample(state: StateVector, shots: int, seed=0) -> ShotResult:
    """Draw ``shots`` i.i.d. bitstrings from |amplitude|^2.

    Identical (state, shots, seed) gives identical counts; the generator is
    numpy's PCG64 seeded with ``seed``.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    probs = state.probabilities()
    probs = probs / probs.sum()
    drawn = rng.multinomial(shots, probs)
    counts = {}
    for index in np.flatnonzero(drawn):
        counts[bitstring(int(index), state.num_qubits)] = int(drawn[index])
    return ShotResult(counts, shots)
