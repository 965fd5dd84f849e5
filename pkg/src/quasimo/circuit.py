"""Gate-level circuit representation for state preparation and ansatz kernels.

Rotation convention: Rz(phi) = exp(-i*phi*Z/2), and Rx/Ry analogously.
Global phase is not tracked.  Circuits are immutable after construction.

Debug text dump: one gate per line, ``KIND q<i>[,q<j>][(angle)]``; symbolic
angles print as ``(p<slot>)``, scaled slots as ``(<scale>*p<slot>)``.
"""

from dataclasses import dataclass

from .pauli import PauliString

# kind -> (arity, takes_angle)
GATE_KINDS = {
    "X": (1, False),
    "Y": (1, False),
    "Z": (1, False),
    "H": (1, False),
    "S": (1, False),
    "Sdg": (1, False),
    "Rx": (1, True),
    "Ry": (1, True),
    "Rz": (1, True),
    "CNOT": (2, False),
    "CZ": (2, False),
}

_SELF_INVERSE = {"X", "Y", "Z", "H", "CNOT", "CZ"}
_INVERSE_PAIR = {"S": "Sdg", "Sdg": "S"}
_ROTATIONS = {"Rx", "Ry", "Rz"}


class WidthMismatchError(ValueError):
    """Circuits or states of incompatible qubit counts."""


class ArityMismatchError(ValueError):
    """Wrong number of parameter values supplied to bind_parameters."""


class IdentityStringError(ValueError):
    """exp_pauli needs a non-identity Pauli string."""


class UnboundParametersError(ValueError):
    """Operation requires a fully bound circuit."""


@dataclass(frozen=True, slots=True)
class Param:
    """A symbolic angle: ``scale * values[index]`` once bound."""

    index: int
    scale: float = 1.0

    def __mul__(self, factor):
        return Param(self.index, self.scale * factor)

    __rmul__ = __mul__

    def __neg__(self):
        return Param(self.index, -self.scale)

    def __str__(self):
        if self.scale == 1.0:
            return f"p{self.index}"
        return f"{self.scale!r}*p{self.index}"


@dataclass(frozen=True, slots=True)
class Gate:
    kind: str
    qubits: tuple
    angle: object = None  # float | Param | None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity, takes_angle = GATE_KINDS[self.kind]
        qubits = tuple(self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {qubits}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate qubits in {self.kind} gate: {qubits}")
        if takes_angle:
            if self.angle is None:
                raise ValueError(f"{self.kind} needs an angle")
            if not isinstance(self.angle, Param):
                object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")

    @property
    def is_bound(self) -> bool:
        return not isinstance(self.angle, Param)

    def bound(self, values) -> "Gate":
        if isinstance(self.angle, Param):
            return Gate(self.kind, self.qubits, self.angle.scale * values[self.angle.index])
        return self

    def inverse(self) -> "Gate":
        if self.kind in _SELF_INVERSE:
            return self
        if self.kind in _INVERSE_PAIR:
            return Gate(_INVERSE_PAIR[self.kind], self.qubits)
        return Gate(self.kind, self.qubits, -self.angle)

    def dump(self) -> str:
        text = f"{self.kind} " + ",".join(f"q{q}" for q in self.qubits)
        if self.angle is not None:
            angle = str(self.angle) if isinstance(self.angle, Param) else repr(self.angle)
            text += f"({angle})"
        return text

    def __str__(self):
        return self.dump()


@dataclass(frozen=True, slots=True)
class Circuit:
    """An ordered gate list over a fixed-width register.

    ``num_params`` counts the distinct symbolic parameter slots; a fully
    bound circuit has ``num_params == 0``.
    """

    num_qubits: int
    gates: tuple = ()
    num_params: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        for gate in self.gates:
            for q in gate.qubits:
                if q >= self.num_qubits:
                    raise WidthMismatchError(
                        f"gate {gate.dump()!r} touches qubit {q} on a "
                        f"{self.num_qubits}-qubit circuit"
                    )
            if isinstance(gate.angle, Param) and not 0 <= gate.angle.index < self.num_params:
                raise ValueError(
                    f"parameter slot {gate.angle.index} out of range "
                    f"(num_params={self.num_params})"
                )

    @property
    def is_bound(self) -> bool:
        return self.num_params == 0

    @property
    def num_gates(self) -> int:
        return len(self.gates)

    def gate_counts(self) -> dict:
        """Per-kind gate counts plus a ``"total"`` entry."""
        counts = {}
        for gate in self.gates:
            counts[gate.kind] = counts.get(gate.kind, 0) + 1
        counts["total"] = len(self.gates)
        return counts

    def bind_parameters(self, values) -> "Circuit":
        """Replace every symbolic angle; ``values`` must have one entry per slot."""
        values = [float(v) for v in values]
        if len(values) != self.num_params:
            raise ArityMismatchError(
                f"circuit has {self.num_params} parameter(s), got {len(values)} value(s)"
            )
        return Circuit(self.num_qubits, tuple(g.bound(values) for g in self.gates), 0)

    def compose(self, other: "Circuit") -> "Circuit":
        """This circuit followed by ``other`` (program order)."""
        if other.num_qubits != self.num_qubits:
            raise WidthMismatchError(
                f"cannot compose {self.num_qubits}-qubit and {other.num_qubits}-qubit circuits"
            )
        return Circuit(
            self.num_qubits,
            self.gates + other.gates,
            max(self.num_params, other.num_params),
        )

    def inverse(self) -> "Circuit":
        """Circuit implementing the adjoint unitary."""
        return Circuit(
            self.num_qubits,
            tuple(g.inverse() for g in reversed(self.gates)),
            self.num_params,
        )

    def dump(self) -> str:
        return "\n".join(g.dump() for g in self.gates)


# -- gate constructors -------------------------------------------------------


def x(q):
    return Gate("X", (q,))


def y(q):
    return Gate("Y", (q,))


def z(q):
    return Gate("Z", (q,))


def h(q):
    return Gate("H", (q,))


def s(q):
    return Gate("S", (q,))


def sdg(q):
    return Gate("Sdg", (q,))


def rx(q, angle):
    return Gate("Rx", (q,), angle)


def ry(q, angle):
    return Gate("Ry", (q,), angle)


def rz(q, angle):
    return Gate("Rz", (q,), angle)


def cnot(control, target):
    return Gate("CNOT", (control, target))


def cz(a, b):
    return Gate("CZ", (a, b))


def basis_change_gates(string: PauliString) -> tuple:
    """Gates rotating each factor of ``string`` into the Z basis.

    H for an X factor; Sdg then H for a Y factor.  Used both by exp_pauli
    and by the sampled-tomography evaluator.
    """
    gates = []
    for q, axis in string.factors:
        if axis == "X":
            gates.append(h(q))
        elif axis == "Y":
            gates.append(sdg(q))
            gates.append(h(q))
    return tuple(gates)


def exp_pauli(theta, string: PauliString, num_qubits=None) -> Circuit:
    """Circuit for exp(-i*theta*P) for a non-identity Pauli string P.

    Change of basis into Z, CNOT ladder onto the highest-index support
    qubit, Rz(2*theta), then undo.  ``theta`` may be a Param slot.

    Raises:
        IdentityStringError: if ``string`` is the identity.
    """
    if string.is_identity:
        raise IdentityStringError("exp_pauli of the identity string is a global phase")
    n = string.width if num_qubits is None else num_qubits
    if n < string.width:
        raise WidthMismatchError(f"string {string} does not fit on {n} qubits")
    pre = list(basis_change_gates(string))
    support = string.support
    target = support[-1]
    ladder = [cnot(support[i], support[i + 1]) for i in range(len(support) - 1)]
    angle = 2.0 * theta if isinstance(theta, Param) else 2.0 * float(theta)
    gates = pre + ladder + [rz(target, angle)] + [g for g in reversed(ladder)]
    gates += [g.inverse() for g in reversed(pre)]
    num_params = theta.index + 1 if isinstance(theta, Param) else 0
    return Circuit(n, tuple(gates), num_params)


def _cancels(a: Gate, b: Gate) -> bool:
    if a.qubits != b.qubits:
        return False
    if a.kind in _SELF_INVERSE:
        return a.kind == b.kind
    if a.kind in _INVERSE_PAIR:
        return b.kind == _INVERSE_PAIR[a.kind]
    if a.kind in _ROTATIONS and a.kind == b.kind:
        if isinstance(a.angle, Param) and isinstance(b.angle, Param):
            return a.angle.index == b.angle.index and a.angle.scale == -b.angle.scale
        if isinstance(a.angle, Param) or isinstance(b.angle, Param):
            return False
        return a.angle == -b.angle
    return False


def cancel_adjacent_inverses(circuit: Circuit) -> Circuit:
    """Remove adjacent G, G-dagger pairs on identical qubits; unitary-preserving.

    Cancellation cascades (a removed pair can expose a new adjacent pair),
    so the result is a fixed point of the pass.
    """
    stack = []
    for gate in circuit.gates:
        if stack and _cancels(stack[-1], gate):
            stack.pop()
        else:
            stack.append(gate)
    return Circuit(circuit.num_qubits, tuple(stack), circuit.num_params)
