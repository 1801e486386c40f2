"""Classical outer loops driving the shot-based cost estimates.

Three optimizers sit behind one ``run`` entry point:

* ``TrustRegionConfig`` — a COBYLA-flavored derivative-free method: a
  simplex of n_par+1 points carries a linear interpolation model of the
  noisy cost, steps are steepest-descent moves of length rho on that
  model, and rho shrinks from ``initial_radius`` to ``final_radius`` on
  failures.  Exactly one cost evaluation (M shots) per iteration,
  including the evaluations that build the initial simplex.
* ``HillClimbConfig`` — propose theta + delta with delta uniform on the
  radius-W sphere, accept if the fresh estimate beats the incumbent's
  last estimate.
* ``GradientDescentConfig`` — plain theta -= eta * grad with the gradient
  from the parameter-shift rule or central finite differences; each
  iteration spends 2 * n_par * shots_per_circuit measurement shots.

``run`` counts every Born-rule draw into the trace and scans every sample
set (gradient evaluations included) for ground-state hits.  A run with
``n_iter = 0`` performs a single M-shot measurement of theta0 and no
optimization, which is the smallest run that can still observe success.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np

from .ansatz import AnsatzSpec
from .errors import DomainError
from .estimator import (
    CostKind,
    MinimumTracker,
    SampleSet,
    _grad_finite_diff_full,
    _grad_param_shift_full,
    _sample_once,
    cost,
    exact_cost,
    minimizer_hits,
)
from .ising import GroundTruth, IsingInstance, energy_table
from .simulator import NoiseModel

TRACE_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TrustRegionConfig:
    """COBYLA-style linear-model trust region (energy-based)."""

    initial_radius: float = 1.0
    final_radius: float = 1e-4

    def __post_init__(self) -> None:
        if not 0 < self.final_radius <= self.initial_radius:
            raise DomainError("radii must satisfy 0 < final <= initial")

    def to_json(self) -> dict:
        return {
            "name": "trust-region-dfo",
            "initial_radius": self.initial_radius,
            "final_radius": self.final_radius,
        }


@dataclass(frozen=True)
class HillClimbConfig:
    """Random-direction hill climb with fixed proposal length (energy-based)."""

    step_norm: float = 0.03

    def __post_init__(self) -> None:
        if self.step_norm <= 0:
            raise DomainError(f"step norm must be positive, got {self.step_norm}")

    def to_json(self) -> dict:
        return {"name": "hill-climb", "step_norm": self.step_norm}


@dataclass(frozen=True)
class GradientDescentConfig:
    """Fixed-rate gradient descent on shot-estimated gradients.

    ``shots_per_circuit = None`` selects the exact-expectation testing mode
    (gradients from the statevector, nothing sampled, n_calls stays 0).
    """

    learning_rate: float = 0.1
    gradient: str = "param-shift"  # "param-shift" | "finite-diff"
    step: float = 0.5  # finite-difference increment
    shots_per_circuit: int | None = 8

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise DomainError("learning rate must be positive")
        if self.gradient not in ("param-shift", "finite-diff"):
            raise DomainError(f"unknown gradient estimator {self.gradient!r}")
        if self.step <= 0:
            raise DomainError("finite-difference step must be positive")
        if self.shots_per_circuit is not None and self.shots_per_circuit < 1:
            raise DomainError("shots_per_circuit must be >= 1 (or None for exact)")

    def to_json(self) -> dict:
        return {
            "name": "gradient-descent",
            "learning_rate": self.learning_rate,
            "gradient": self.gradient,
            "step": self.step,
            "shots_per_circuit": self.shots_per_circuit,
        }


OptimizerConfig = Union[TrustRegionConfig, HillClimbConfig, GradientDescentConfig]


@dataclass(frozen=True)
class IterationRecord:
    index: int
    cost: float
    f_min: float
    n_calls: int


@dataclass
class RunTrace:
    """Per-iteration history and outcome flags of one optimization run."""

    records: list[IterationRecord]
    final_theta: np.ndarray
    success: bool  # a minimizer was sampled at least once anywhere
    psucc_hit: bool  # the terminal M-shot sample contained a minimizer
    first_hit_calls: int | None
    f_min: float
    n_calls: int
    probe_shots: int = 0  # terminal-probe shots, kept outside n_calls


def step_hill_climb(theta: np.ndarray, step_norm: float, rng: np.random.Generator) -> np.ndarray:
    """Propose theta + delta with delta uniform on the sphere of radius step_norm."""
    if step_norm <= 0:
        raise DomainError(f"step norm must be positive, got {step_norm}")
    while True:
        direction = rng.standard_normal(len(theta))
        norm = float(np.linalg.norm(direction))
        if norm > 0:
            return theta + (step_norm / norm) * direction


def step_gradient_descent(theta: np.ndarray, gradient: np.ndarray, learning_rate: float) -> np.ndarray:
    if np.shape(theta) != np.shape(gradient):
        raise DomainError("gradient shape does not match parameters")
    return np.asarray(theta, dtype=float) - learning_rate * np.asarray(gradient, dtype=float)


def _random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        v = rng.standard_normal(n)
        norm = float(np.linalg.norm(v))
        if norm > 0:
            return v / norm


def hill_climb(
    objective: Callable[[np.ndarray], float],
    theta0: np.ndarray,
    budget: int,
    step_norm: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float]:
    """Accept-if-better random-direction search.

    Spends ``budget`` evaluations: first the incumbent theta0, then one
    fresh estimate per proposal.  A proposal replaces the incumbent when
    its estimate beats the incumbent's last recorded estimate (the
    incumbent is not re-evaluated).
    """
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}")
    incumbent = np.asarray(theta0, dtype=float)
    best = float(objective(incumbent))
    for _ in range(budget - 1):
        proposal = step_hill_climb(incumbent, step_norm, rng)
        value = float(objective(proposal))
        if value < best:
            incumbent, best = proposal, value
    return incumbent, best


def trust_region_dfo(
    objective: Callable[[np.ndarray], float],
    theta0: np.ndarray,
    budget: int,
    initial_radius: float = 1.0,
    final_radius: float = 1e-4,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, float]:
    """Linear-model trust-region minimization of a (noisy) black box.

    Spends exactly ``budget`` objective evaluations: first theta0 and the
    n coordinate points theta0 + rho e_i that seed the simplex, then one
    evaluation per step.  Steps are either trust-region moves of length
    rho against the interpolated gradient, geometry refreshes that pull
    the farthest vertex back to distance rho from the best point, or
    random probes when the model is flat.  rho halves whenever a move
    fails to improve the best value, never below ``final_radius``.

    Returns the best point and its recorded value.
    """
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}")
    if rng is None:
        rng = np.random.default_rng()
    theta0 = np.asarray(theta0, dtype=float)
    n = theta0.size
    rho = initial_radius
    evals = 0

    points = np.empty((n + 1, n))
    values = np.empty(n + 1)
    filled = 0

    def ev(x: np.ndarray) -> float:
        nonlocal evals
        evals += 1
        return float(objective(x))

    points[0], values[0] = theta0, ev(theta0)
    filled = 1
    for i in range(n):
        if evals >= budget:
            break
        x = theta0.copy()
        x[i] += rho
        points[filled], values[filled] = x, ev(x)
        filled += 1
    points, values = points[:filled], values[:filled]

    while evals < budget:
        best = int(np.argmin(values))
        worst = int(np.argmax(values))
        offsets = points - points[best]
        dists = np.sqrt((offsets * offsets).sum(axis=1))
        far = int(np.argmax(dists))

        if dists[far] > 3.0 * rho:
            # geometry refresh: keep the simplex at the trust-region scale
            x = points[best] + rho * _random_unit(rng, n)
            points[far], values[far] = x, ev(x)
            continue

        mask = np.arange(filled) != best
        rows = offsets[mask]
        deltas = values[mask] - values[best]
        if rows.shape[0] == rows.shape[1]:
            try:
                grad = np.linalg.solve(rows, deltas)
            except np.linalg.LinAlgError:
                grad, *_ = np.linalg.lstsq(rows, deltas, rcond=None)
        else:
            grad, *_ = np.linalg.lstsq(rows, deltas, rcond=None)
        gnorm = math.sqrt(float(grad @ grad))

        if gnorm <= 1e-12 * max(1.0, abs(values[best])):
            # flat model, usually drowned by shot noise: probe and shrink
            x = points[best] + rho * _random_unit(rng, n)
            f = ev(x)
            if f < values[worst]:
                points[worst], values[worst] = x, f
            rho = max(0.5 * rho, final_radius)
            continue

        x = points[best] - (rho / gnorm) * grad
        f = ev(x)
        if f < values[best]:
            points[worst], values[worst] = x, f
        else:
            if f < values[worst]:
                points[worst], values[worst] = x, f
            rho = max(0.5 * rho, final_radius)

    best = int(np.argmin(values))
    return points[best].copy(), float(values[best])


class _TracedEvaluator:
    """Cost evaluations with shot accounting, hit tracking, and trace rows."""

    def __init__(self, spec, table, kind, shots, noise, rng, tracker):
        self.spec = spec
        self.table = table
        self.kind = kind
        self.shots = shots
        self.noise = noise
        self.rng = rng
        self.tracker = tracker
        self.records: list[IterationRecord] = []
        self.n_calls = 0
        self.last_samples: SampleSet | None = None

    def __call__(self, theta: np.ndarray) -> float:
        samples = _sample_once(self.spec, theta, self.table, self.shots, self.noise, self.rng)
        self.tracker.observe(samples)
        value = cost(samples, self.kind)
        self.n_calls += samples.shots_spent
        self.last_samples = samples
        self.records.append(
            IterationRecord(len(self.records) + 1, value, self.tracker.f_min, self.n_calls)
        )
        return value


def run(
    spec: AnsatzSpec,
    instance: IsingInstance,
    ground: GroundTruth,
    config: OptimizerConfig,
    cost_kind: CostKind,
    shots: int,
    n_iter: int,
    theta0: np.ndarray,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
    final_probe: bool = False,
) -> RunTrace:
    """Execute one optimization run and record its full trace.

    ``final_probe=True`` draws one extra M-shot sample from the state at
    the returned parameters to decide ``psucc_hit``; those shots are
    reported in ``probe_shots`` and never counted into ``n_calls``.  With
    ``n_iter = 0`` the single theta0 sample decides both flags, so the
    terminal-sample and anywhere-success criteria coincide by construction.
    """
    if rng is None:
        raise DomainError("run needs an rng")
    if n_iter < 0:
        raise DomainError(f"n_iter must be >= 0, got {n_iter}")
    theta0 = np.asarray(theta0, dtype=float)
    if theta0.shape != (spec.n_params,):
        raise DomainError("theta0 length does not match the ansatz")
    if isinstance(config, GradientDescentConfig) and config.gradient == "param-shift":
        if spec.family != "vqe-ry-cnot":
            raise DomainError("parameter-shift gradients require the RY-CNOT family")

    table = energy_table(instance)
    tracker = MinimumTracker(ground.minimizers)
    evaluator = _TracedEvaluator(spec, table, cost_kind, shots, noise, rng, tracker)

    if n_iter == 0:
        evaluator(theta0)
        final_theta = theta0
    elif isinstance(config, TrustRegionConfig):
        final_theta, _ = trust_region_dfo(
            evaluator,
            theta0,
            budget=n_iter,
            initial_radius=config.initial_radius,
            final_radius=config.final_radius,
            rng=rng,
        )
    elif isinstance(config, HillClimbConfig):
        final_theta, _ = hill_climb(evaluator, theta0, n_iter, config.step_norm, rng)
    elif isinstance(config, GradientDescentConfig):
        final_theta = _run_gradient_descent(
            spec, instance, config, n_iter, theta0, noise, rng, evaluator
        )
    else:
        raise DomainError(f"unknown optimizer config {type(config).__name__}")

    success = tracker.hit
    probe_shots = 0
    minimizers = np.asarray(ground.minimizers, dtype=np.int64)
    if n_iter == 0:
        psucc_hit = success
    elif final_probe:
        # terminal measurement only; deliberately kept out of the tracker so
        # success/first_hit_calls reflect the optimization loop alone
        probe = _sample_once(spec, final_theta, table, shots, noise, rng)
        psucc_hit = bool(minimizer_hits(probe.bitstrings, minimizers).any())
        probe_shots = shots
    else:
        last = evaluator.last_samples
        psucc_hit = (
            bool(minimizer_hits(last.bitstrings, minimizers).any())
            if last is not None
            else False
        )

    return RunTrace(
        records=evaluator.records,
        final_theta=np.asarray(final_theta, dtype=float),
        success=success,
        psucc_hit=psucc_hit,
        first_hit_calls=tracker.first_hit_calls,
        f_min=tracker.f_min,
        n_calls=evaluator.n_calls,
        probe_shots=probe_shots,
    )


def _run_gradient_descent(spec, instance, config, n_iter, theta0, noise, rng, evaluator):
    theta = np.array(theta0, dtype=float)
    exact = config.shots_per_circuit is None
    for _ in range(n_iter):
        if config.gradient == "param-shift":
            grad, shots_spent, sets = _grad_param_shift_full(
                spec, theta, instance, config.shots_per_circuit, rng, noise
            )
        else:
            grad, shots_spent, sets = _grad_finite_diff_full(
                spec, theta, instance, config.step, config.shots_per_circuit, rng, noise
            )
        if exact:
            value = exact_cost(spec, theta, instance)
        else:
            for samples in sets:
                evaluator.tracker.observe(samples)
            evaluator.last_samples = sets[-1]
            value = float(np.mean(np.concatenate([s.energies for s in sets])))
        evaluator.n_calls += shots_spent
        evaluator.records.append(
            IterationRecord(
                len(evaluator.records) + 1, value, evaluator.tracker.f_min, evaluator.n_calls
            )
        )
        theta = step_gradient_descent(theta, grad, config.learning_rate)
    return theta


def write_trace(path: str | Path, trace: RunTrace, config_echo: dict) -> None:
    """JSON-lines export: a config header, one row per iteration, a summary."""
    lines = [
        json.dumps(
            {"record": "config", "schema_version": TRACE_SCHEMA_VERSION, **config_echo},
            sort_keys=True,
        )
    ]
    for rec in trace.records:
        lines.append(
            json.dumps(
                {
                    "record": "iteration",
                    "index": rec.index,
                    "cost": rec.cost,
                    "f_min": None if math.isinf(rec.f_min) else rec.f_min,
                    "n_calls": rec.n_calls,
                },
                sort_keys=True,
            )
        )
    lines.append(
        json.dumps(
            {
                "record": "summary",
                "success": trace.success,
                "psucc_hit": trace.psucc_hit,
                "first_hit_calls": trace.first_hit_calls,
                "f_min": None if math.isinf(trace.f_min) else trace.f_min,
                "n_calls": trace.n_calls,
                "probe_shots": trace.probe_shots,
                "final_theta": [float(v) for v in trace.final_theta],
            },
            sort_keys=True,
        )
    )
    Path(path).write_text("\n".join(lines) + "\n")
