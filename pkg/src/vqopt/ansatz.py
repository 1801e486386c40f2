"""Parametrized circuit families and their parameter initializations.

Two families are covered:

* ``vqe-ry-cnot`` — ``d`` blocks of a full RY rotation layer followed by a
  CNOT ladder (qubit j-1 controls qubit j, ascending, open boundaries),
  closed by one final RY layer, acting on |0...0>.  L*(d+1) angles,
  layer-major layout.
* ``qaoa`` — ``d`` blocks of problem phase exp(-i theta_P H_P) and mixer
  exp(+i theta_M H_M) with H_M = sum_j X_j, acting on |+>^L.  2*d angles,
  interleaved layout [theta_P^1, theta_M^1, ..., theta_P^d, theta_M^d].
  The relative sign of the two exponents is what makes the circuit a
  digitized anneal: |+> is the ground state of -H_M, and a schedule that
  ramps theta_P up while theta_M decays drags the state toward the
  minimizers of f (same-sign exponents would target the maximizers).

The problem phase is applied as an exact diagonal using the instance's
energy table; an equivalent RZZ/RZ gate decomposition is used on the
noisy path so that every physical gate passes through the noise channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import simulator as sim
from .errors import DomainError
from .ising import IsingInstance, energy_table
from .simulator import GateOp, NoiseModel, StateVector

FAMILY_VQE = "vqe-ry-cnot"
FAMILY_QAOA = "qaoa"


@dataclass(frozen=True)
class AnsatzSpec:
    """Circuit family, width, depth, and (for QAOA) the target instance."""

    family: str
    size: int
    depth: int
    instance: IsingInstance | None = None

    def __post_init__(self) -> None:
        if self.family not in (FAMILY_VQE, FAMILY_QAOA):
            raise DomainError(f"unknown ansatz family {self.family!r}")
        if self.depth < 1:
            raise DomainError(f"depth must be >= 1, got {self.depth}")
        if self.size < 2:
            raise DomainError(f"size must be >= 2, got {self.size}")
        if self.family == FAMILY_QAOA:
            if self.instance is None:
                raise DomainError("qaoa ansatz needs its problem instance")
            if self.instance.size != self.size:
                raise DomainError("instance size does not match ansatz size")

    @property
    def n_params(self) -> int:
        if self.family == FAMILY_VQE:
            return self.size * (self.depth + 1)
        return 2 * self.depth

    def to_json(self) -> dict:
        ref = None
        if self.instance is not None:
            ref = {
                "kind": self.instance.kind,
                "L": self.instance.size,
                "seed": self.instance.seed,
            }
        return {"family": self.family, "L": self.size, "d": self.depth, "instance_ref": ref}


def _check_params(spec: AnsatzSpec, theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (spec.n_params,):
        raise DomainError(
            f"expected {spec.n_params} parameters for {spec.family}, "
            f"got shape {theta.shape}"
        )
    return theta


def _qaoa_phase_gates(instance: IsingInstance, gamma: float) -> list[GateOp]:
    """RZZ/RZ decomposition of exp(-i gamma H_P); exact, all terms commute.

    H_P = -sum J_j Z_j Z_{j+1} - sum h_j Z_j in qubit space, so each bond
    contributes rzz(2 gamma J_j) and each site rz(2 gamma h_j).
    """
    ops = [
        GateOp("rzz", (j, j + 1), 2.0 * gamma * float(instance.couplings[j]))
        for j in range(instance.size - 1)
    ]
    ops += [
        GateOp("rz", (j,), 2.0 * gamma * float(instance.fields[j]))
        for j in range(instance.size)
    ]
    return ops


def prepare_state(
    spec: AnsatzSpec,
    theta: np.ndarray,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> StateVector:
    """Run the circuit and return the prepared state.

    With a noise model, every gate is followed by one sampled relaxation
    trajectory on the qubits it touches (initial-state preparation itself
    is noiseless).
    """
    theta = _check_params(spec, theta)
    if noise is not None and rng is None:
        raise DomainError("noisy preparation needs an rng")
    size, depth = spec.size, spec.depth

    if spec.family == FAMILY_VQE:
        state = sim.init_zero(size)
        for layer in range(depth + 1):
            if noise is None:
                for j in range(size):
                    sim.apply_ry(state, j, theta[layer * size + j])
                if layer < depth:
                    for j in range(size - 1):
                        sim.apply_cnot(state, j, j + 1)
            else:
                for j in range(size):
                    op = GateOp("ry", (j,), theta[layer * size + j])
                    sim.apply_noisy_gate(state, op, noise, rng)
                if layer < depth:
                    for j in range(size - 1):
                        sim.apply_noisy_gate(state, GateOp("cnot", (j, j + 1)), noise, rng)
        return state

    table = energy_table(spec.instance)
    state = sim.init_plus(size)
    for layer in range(depth):
        gamma, beta = theta[2 * layer], theta[2 * layer + 1]
        if noise is None:
            sim.apply_diagonal_phase(state, table, -gamma)
            for j in range(size):
                # exp(i beta X_j) = rx(2 beta) under the rx sign convention
                sim.apply_rx(state, j, 2.0 * beta)
        else:
            for op in _qaoa_phase_gates(spec.instance, gamma):
                sim.apply_noisy_gate(state, op, noise, rng)
            for j in range(size):
                sim.apply_noisy_gate(state, GateOp("rx", (j,), 2.0 * beta), noise, rng)
    return state


def init_random(
    spec: AnsatzSpec,
    rng: np.random.Generator,
    low: float = -math.pi,
    high: float = math.pi,
) -> np.ndarray:
    """I.i.d. uniform angles in (low, high)."""
    if not low < high:
        raise DomainError(f"invalid range [{low}, {high})")
    return rng.uniform(low, high, size=spec.n_params)


def init_linear_schedule(depth: int, dt: float) -> np.ndarray:
    """Annealing-style QAOA start: theta_P^l = (l/d) dt, theta_M^l = (1 - l/d) dt."""
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    if dt <= 0:
        raise DomainError(f"dt must be positive, got {dt}")
    steps = np.arange(1, depth + 1) / depth
    theta = np.empty(2 * depth)
    theta[0::2] = steps * dt
    theta[1::2] = (1.0 - steps) * dt
    return theta
