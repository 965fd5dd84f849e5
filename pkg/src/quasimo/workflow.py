"""Hybrid quantum/classical workflows behind a name-keyed registry.

Workflows are configured with a string-keyed option map (the external
spelling: "dt", "steps", "step-size", "optimizer", "shots", "seed",
"starts", "circuit-optimizer"), execute against a QuantumSimulationModel,
and return a WorkflowResult.  Instances are single-use; independent
executions may run concurrently.

WorkflowResult keys by workflow:
    time-dependent: "exp-vals", "final-circuit-stats"
    vqe:            "energy", "opt-params", "trace", "evaluations"
    qaoa:           "energy", "opt-params", "trace", "evaluations"
    qite:           "exp-vals", "energy", "final-circuit-stats"
"""

import itertools

import numpy as np

from . import ansatz
from .circuit import Circuit, cancel_adjacent_inverses, exp_pauli
from .costfn import CostFunctionEvaluator, EvaluatorConfig
from .model import QuantumSimulationModel
from .optimizer import Optimizer, create_optimizer
from .pauli import PauliString, TooManyQubitsError
from .simulator import StateVector, apply_gate, apply_operator, apply_pauli_string, run
from .tapering import SingularSystemError
from .validation import QuantumValidationModel

QITE_MAX_QUBITS = 5
QITE_REGULARIZATION = 1e-8


class UnknownWorkflowError(KeyError):
    """No workflow registered under that name."""


class BadConfigError(ValueError):
    """Config rejected; the message names the offending key."""


class NoOptimizerError(BadConfigError):
    """Variational workflow configured without an optimizer."""


class WorkflowResult(dict):
    """Heterogeneous keyed result container."""


def _require(condition, message):
    if not condition:
        raise BadConfigError(message)


class QuantumSimulationWorkflow:
    """Base workflow: validate config at initialize, compute at execute."""

    name = ""
    allowed_keys = frozenset()
    required_keys = frozenset()

    def __init__(self):
        self.config = {}
        self.evaluator = CostFunctionEvaluator()

    def initialize(self, config: dict | None = None) -> "QuantumSimulationWorkflow":
        config = dict(config or {})
        common = {"shots", "seed"}
        for key in config:
            if key not in self.allowed_keys and key not in common:
                raise BadConfigError(f"unknown config key '{key}' for workflow '{self.name}'")
        for key in self.required_keys:
            if key not in config:
                raise BadConfigError(f"workflow '{self.name}' requires config key '{key}'")
        self.config = config
        self.evaluator = CostFunctionEvaluator(self._evaluator_config())
        self._check_config()
        return self

    def _evaluator_config(self) -> EvaluatorConfig:
        seed = int(self.config.get("seed", 0))
        shots = int(self.config.get("shots", 0))
        if shots > 0:
            return EvaluatorConfig(mode="tomography", shots=shots, seed=seed)
        return EvaluatorConfig(mode="exact", seed=seed)

    def _check_config(self):
        pass

    def execute(self, model: QuantumSimulationModel) -> WorkflowResult:
        raise NotImplementedError

    def validate(self, result: WorkflowResult, validation_model: QuantumValidationModel):
        """Delegate to a QuantumValidationModel: (accepted, measured distance)."""
        return validation_model.accept_results(result)

    # -- shared helpers ------------------------------------------------------

    def _seed(self) -> int:
        return int(self.config.get("seed", 0))

    def _resolve_optimizer(self) -> Optimizer:
        value = self.config.get("optimizer")
        if value is None:
            raise NoOptimizerError(f"workflow '{self.name}' requires config key 'optimizer'")
        if isinstance(value, Optimizer):
            return value
        options = {"seed": self._seed()}
        for key in ("budget", "tolerance", "perturbation", "stability"):
            if key in self.config:
                options[key] = self.config[key]
        return create_optimizer(str(value), options)

    @staticmethod
    def _prep_circuit(model: QuantumSimulationModel) -> Circuit:
        # A missing state_prep is tolerated: default |0...0>.
        if model.state_prep is None:
            return Circuit(model.num_qubits)
        prep = model.state_prep
        if prep.num_qubits < model.num_qubits:
            prep = Circuit(model.num_qubits, prep.gates, prep.num_params)
        return prep


class TimeDependentWorkflow(QuantumSimulationWorkflow):
    """Trotterized real-time evolution, recording the observable after every
    step (step 0 included).

    Config: "dt" (> 0, required), "steps" (>= 0, required), "trotter-order"
    (1 or 2, default 2).  The default symmetric step reproduces reference
    magnetization curves well inside their tolerance; order 1 is the plain
    per-term product.
    """

    name = "time-dependent"
    allowed_keys = frozenset({"dt", "steps", "trotter-order"})
    required_keys = frozenset({"dt", "steps"})

    def _check_config(self):
        _require(float(self.config["dt"]) > 0, "config key 'dt' must be > 0")
        _require(int(self.config["steps"]) >= 0, "config key 'steps' must be >= 0")
        _require(
            int(self.config.get("trotter-order", 2)) in (1, 2),
            "config key 'trotter-order' must be 1 or 2",
        )

    def execute(self, model: QuantumSimulationModel) -> WorkflowResult:
        dt = float(self.config["dt"])
        steps = int(self.config["steps"])
        order = int(self.config.get("trotter-order", 2))
        n = model.num_qubits
        prep = self._prep_circuit(model)
        if order == 1:
            step = ansatz.trotter_step(model.hamiltonian, dt, n)
        else:
            step = ansatz.symmetric_trotter_step(model.hamiltonian, dt, n)
        state = run(prep)
        values = [self.evaluator.evaluate_state(state, model.observable)]
        for _ in range(steps):
            state = run(step, state)
            values.append(self.evaluator.evaluate_state(state, model.observable))
        stats = {"total": prep.num_gates + steps * step.num_gates}
        for kind, count in prep.gate_counts().items():
            if kind != "total":
                stats[kind] = stats.get(kind, 0) + count
        for kind, count in step.gate_counts().items():
            if kind != "total":
                stats[kind] = stats.get(kind, 0) + steps * count
        return WorkflowResult({"exp-vals": values, "final-circuit-stats": stats})


class VqeWorkflow(QuantumSimulationWorkflow):
    """Variational minimization of the observable's expectation value.

    Config: "optimizer" (name or Optimizer instance, required), "budget",
    "tolerance", "initial-params" (defaults to all zeros).
    """

    name = "vqe"
    allowed_keys = frozenset(
        {"optimizer", "budget", "tolerance", "perturbation", "stability", "initial-params"}
    )
    required_keys = frozenset()

    def _check_config(self):
        self._resolve_optimizer()

    def execute(self, model: QuantumSimulationModel) -> WorkflowResult:
        if model.num_params < 1:
            raise ValueError("VQE needs a parameterized ansatz (num_params >= 1)")
        optimizer = self._resolve_optimizer()
        prep = self._prep_circuit(model)
        observable = model.observable

        def objective(theta):
            return self.evaluator.evaluate(prep.bind_parameters(theta), observable)

        x0 = np.asarray(
            self.config.get("initial-params", np.zeros(model.num_params)), dtype=float
        )
        if x0.size != model.num_params:
            raise BadConfigError(
                f"config key 'initial-params' has {x0.size} entries, "
                f"model needs {model.num_params}"
            )
        opt = optimizer.minimize(objective, x0)
        return WorkflowResult(
            {
                "energy": opt.best_value,
                "opt-params": list(opt.best_params),
                "trace": opt.trace,
                "evaluations": opt.evaluations_used,
            }
        )


class QaoaWorkflow(QuantumSimulationWorkflow):
    """QAOA over the model's cost Hamiltonian with a transverse-field mixer.

    Config: "steps" (p >= 1, required), "optimizer" (required), "starts"
    (default 10), "budget", "tolerance".  Each start draws uniform initial
    angles in [0, 2*pi)^(2p) from the seeded generator; the reported energy
    is the smallest over starts.
    """

    name = "qaoa"
    allowed_keys = frozenset(
        {"steps", "optimizer", "starts", "budget", "tolerance", "perturbation", "stability"}
    )
    required_keys = frozenset({"steps"})

    def _check_config(self):
        _require(int(self.config["steps"]) >= 1, "config key 'steps' must be >= 1")
        _require(int(self.config.get("starts", 10)) >= 1, "config key 'starts' must be >= 1")
        self._resolve_optimizer()

    def execute(self, model: QuantumSimulationModel) -> WorkflowResult:
        p = int(self.config["steps"])
        starts = int(self.config.get("starts", 10))
        optimizer = self._resolve_optimizer()
        n = model.num_qubits
        circuit = ansatz.qaoa_ansatz(model.hamiltonian, p, n)
        observable = model.observable

        def objective(angles):
            return self.evaluator.evaluate(circuit.bind_parameters(angles), observable)

        seed = self._seed()
        best = None
        for start in range(starts):
            rng = np.random.default_rng([seed, start])
            x0 = rng.uniform(0.0, 2 * np.pi, size=2 * p)
            opt = optimizer.minimize(objective, x0)
            if best is None or opt.best_value < best.best_value:
                best = opt
        return WorkflowResult(
            {
                "energy": best.best_value,
                "opt-params": list(best.best_params),
                "trace": best.trace,
                "evaluations": best.evaluations_used,
            }
        )


def _full_pauli_basis(n: int) -> list:
    """All 4^n - 1 non-identity strings on n qubits, canonical order."""
    strings = []
    for axes in itertools.product("IXYZ", repeat=n):
        mapping = {q: a for q, a in enumerate(axes) if a != "I"}
        if mapping:
            strings.append(PauliString(mapping))
    strings.sort(key=lambda s: s.sort_key())
    return strings


class QiteWorkflow(QuantumSimulationWorkflow):
    """Imaginary-time evolution by per-step unitary fits.

    At each step the target state e^{-dbeta*H}|psi>, normalized to first
    order via c = 1 - 2*dbeta*<H>, is matched by a unitary generated over
    the full non-identity Pauli basis: solve
    (S + S^T + lambda*I) a = 2*Im<psi|P_I H|psi> / sqrt(c),
    with S_IJ = <psi|P_I P_J|psi>, then append exp(-i*a_I*dbeta*P_I) in
    canonical order.  Tikhonov lambda = 1e-8, least-squares fallback.

    Config: "steps" (required), "step-size" (dbeta > 0, required),
    "circuit-optimizer" (pass name or callable, optional).
    """

    name = "qite"
    allowed_keys = frozenset({"steps", "step-size", "circuit-optimizer"})
    required_keys = frozenset({"steps", "step-size"})

    def _check_config(self):
        _require(int(self.config["steps"]) >= 0, "config key 'steps' must be >= 0")
        _require(float(self.config["step-size"]) > 0, "config key 'step-size' must be > 0")
        self._resolve_circuit_optimizer()

    def _resolve_circuit_optimizer(self):
        value = self.config.get("circuit-optimizer")
        if value is None:
            return None
        if callable(value):
            return value
        if str(value) in _CIRCUIT_OPTIMIZERS:
            return _CIRCUIT_OPTIMIZERS[str(value)]
        raise BadConfigError(
            f"unknown circuit-optimizer '{value}'; known: {sorted(_CIRCUIT_OPTIMIZERS)}"
        )

    def execute(self, model: QuantumSimulationModel) -> WorkflowResult:
        n = model.num_qubits
        if n > QITE_MAX_QUBITS:
            raise TooManyQubitsError(
                f"QITE uses the full 4^n Pauli basis; capped at {QITE_MAX_QUBITS} "
                f"qubits, got {n}"
            )
        steps = int(self.config["steps"])
        dbeta = float(self.config["step-size"])
        optimizer_pass = self._resolve_circuit_optimizer()
        hamiltonian = model.hamiltonian
        basis = _full_pauli_basis(n)

        circuit = self._prep_circuit(model)
        state = run(circuit)
        amps = state.amplitudes
        values = [self.evaluator.evaluate_state(state, model.observable)]
        for _ in range(steps):
            coeffs = self._solve_step(amps, hamiltonian, basis, dbeta, n)
            gates = []
            for string, a in zip(basis, coeffs):
                theta = a * dbeta
                if abs(theta) < 1e-12:
                    continue
                gates.extend(exp_pauli(theta, string, n).gates)
            chunk = Circuit(n, tuple(gates))
            circuit = circuit.compose(chunk)
            if optimizer_pass is not None:
                circuit = optimizer_pass(circuit)
            for gate in chunk.gates:
                amps = apply_gate(amps, gate, n)
            amps = amps / np.linalg.norm(amps)
            state = StateVector(n, amps)
            values.append(self.evaluator.evaluate_state(state, model.observable))
        return WorkflowResult(
            {
                "exp-vals": values,
                "energy": values[-1],
                "final-circuit-stats": circuit.gate_counts(),
            }
        )

    @staticmethod
    def _solve_step(amps, hamiltonian, basis, dbeta, n):
        rotated = np.stack([apply_pauli_string(amps, p, n) for p in basis])
        overlap = rotated.conj() @ rotated.T
        h_amps = apply_operator(amps, hamiltonian, n)
        b = np.imag(rotated.conj() @ h_amps)
        energy = float(np.real(np.vdot(amps, h_amps)))
        norm_factor = max(1.0 - 2.0 * dbeta * energy, 1e-12)
        matrix = (overlap + overlap.T).real + QITE_REGULARIZATION * np.eye(len(basis))
        rhs = 2.0 * b / np.sqrt(norm_factor)
        try:
            coeffs = np.linalg.solve(matrix, rhs)
        except np.linalg.LinAlgError:
            coeffs, *_ = np.linalg.lstsq(matrix, rhs, rcond=None)
        if not np.all(np.isfinite(coeffs)):
            raise SingularSystemError("QITE linear system produced non-finite update")
        return coeffs


_CIRCUIT_OPTIMIZERS = {"cancel-inverses": cancel_adjacent_inverses}


def register_circuit_optimizer(name: str, optimizer_pass) -> None:
    """Expose a Circuit -> Circuit pass under a config-addressable name."""
    _CIRCUIT_OPTIMIZERS[name] = optimizer_pass


_REGISTRY = {}


def register_workflow(name: str, factory) -> None:
    """Register a workflow factory; user plugins may be added before use."""
    _REGISTRY[name] = factory


def get_workflow(name: str, config: dict | None = None) -> QuantumSimulationWorkflow:
    """Construct and initialize a registered workflow.

    Raises:
        UnknownWorkflowError: nothing is registered under ``name``.
        BadConfigError: the config fails validation.
    """
    if name not in _REGISTRY:
        raise UnknownWorkflowError(
            f"unknown workflow '{name}'; known: {sorted(_REGISTRY)}"
        )
    workflow = _REGISTRY[name]()
    workflow.initialize(config)
    return workflow


def list_workflows() -> list:
    return sorted(_REGISTRY)


for _cls in (TimeDependentWorkflow, VqeWorkflow, QaoaWorkflow, QiteWorkflow):
    register_workflow(_cls.name, _cls)
