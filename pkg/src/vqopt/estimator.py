"""Shot-based cost estimation, CVaR aggregation, and gradient estimators.

A circuit evaluation draws M bitstrings from the prepared state, scores
them against the instance's energy table, and aggregates them with either
the plain mean or the CVaR rule (average of the lowest alpha-fraction).
Gradient estimators always aggregate with the mean, and each of the
2 * n_par shifted circuit evaluations uses its own batch of shots.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import simulator as sim
from .ansatz import FAMILY_VQE, AnsatzSpec, prepare_state
from .errors import DomainError
from .ising import IsingInstance, energy_table
from .simulator import NoiseModel


@dataclass(frozen=True)
class SampleSet:
    """Measured bitstrings and their energies from one circuit execution."""

    bitstrings: np.ndarray  # (M,) integer bitstrings in draw order
    energies: np.ndarray  # (M,) energies f(x_i)
    shots_spent: int

    def __len__(self) -> int:
        return int(self.bitstrings.size)


@dataclass(frozen=True)
class CostKind:
    """Aggregation rule: retain the best ``alpha`` fraction of shots.

    ``alpha = 1.0`` is the plain sample mean; smaller values give the CVaR
    estimator over the lowest-energy samples.
    """

    alpha: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must be in (0, 1], got {self.alpha}")


MEAN = CostKind(1.0)
CVAR25 = CostKind(0.25)


def mean_cost(samples: SampleSet) -> float:
    if len(samples) == 0:
        raise DomainError("empty sample set")
    return float(samples.energies.mean())


def cvar_cost(samples: SampleSet, alpha: float) -> float:
    """Average of the M* = max(1, floor(alpha * M)) lowest energies.

    Ties are broken by bitstring value so the retained set is deterministic.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must be in (0, 1], got {alpha}")
    m = len(samples)
    if m == 0:
        raise DomainError("empty sample set")
    retained = max(1, math.floor(alpha * m))
    if retained >= m:
        return float(samples.energies.mean())
    order = np.lexsort((samples.bitstrings, samples.energies))
    return float(samples.energies[order[:retained]].mean())


def cost(samples: SampleSet, kind: CostKind) -> float:
    if kind.alpha == 1.0:
        return mean_cost(samples)
    return cvar_cost(samples, kind.alpha)


def _sample_once(
    spec: AnsatzSpec,
    theta: np.ndarray,
    table: np.ndarray,
    shots: int,
    noise: NoiseModel | None,
    rng: np.random.Generator,
) -> SampleSet:
    state = prepare_state(spec, theta, noise=noise, rng=rng)
    bitstrings = sim.sample_shots(state, shots, rng)
    return SampleSet(bitstrings=bitstrings, energies=table[bitstrings], shots_spent=shots)


def evaluate(
    spec: AnsatzSpec,
    theta: np.ndarray,
    instance: IsingInstance,
    shots: int,
    kind: CostKind = MEAN,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[float, SampleSet]:
    """Prepare the state, draw ``shots`` measurements, aggregate with ``kind``."""
    if rng is None:
        raise DomainError("evaluate needs an rng")
    samples = _sample_once(spec, theta, energy_table(instance), shots, noise, rng)
    return cost(samples, kind), samples


def exact_cost(spec: AnsatzSpec, theta: np.ndarray, instance: IsingInstance) -> float:
    """Noise- and shot-free expectation value; the state-vector reference."""
    state = prepare_state(spec, theta)
    return sim.expectation_diagonal(state, energy_table(instance))


def _shifted_means(
    spec: AnsatzSpec,
    theta: np.ndarray,
    instance: IsingInstance,
    shift: float,
    shots_per_eval: int | None,
    noise: NoiseModel | None,
    rng: np.random.Generator | None,
) -> tuple[np.ndarray, int, list[SampleSet]]:
    """Mean-energy estimates at theta +- shift*e_n for every component n.

    Returns the (n_par, 2) estimates, the shots spent, and the sample sets
    in evaluation order.  ``shots_per_eval=None`` selects the exact
    expectation mode (no shots, no samples).
    """
    table = energy_table(instance)
    n_par = spec.n_params
    means = np.empty((n_par, 2))
    sets: list[SampleSet] = []
    shifted = np.array(theta, dtype=float)
    for n in range(n_par):
        base = shifted[n]
        for col, sign in enumerate((1.0, -1.0)):
            shifted[n] = base + sign * shift
            if shots_per_eval is None:
                state = prepare_state(spec, shifted)
                means[n, col] = sim.expectation_diagonal(state, table)
            else:
                samples = _sample_once(spec, shifted, table, shots_per_eval, noise, rng)
                means[n, col] = mean_cost(samples)
                sets.append(samples)
        shifted[n] = base
    shots_spent = 0 if shots_per_eval is None else 2 * n_par * shots_per_eval
    return means, shots_spent, sets


def grad_param_shift(
    spec: AnsatzSpec,
    theta: np.ndarray,
    instance: IsingInstance,
    shots_per_eval: int | None,
    rng: np.random.Generator | None = None,
    noise: NoiseModel | None = None,
) -> tuple[np.ndarray, int]:
    """Exact-formula gradient from +-pi/2 shifted evaluations.

    Only valid for the RY-CNOT family (every parametrized gate is a
    half-Pauli rotation).  Component n is (<H>_+ - <H>_-) / 2, each side
    estimated with ``shots_per_eval`` mean-cost shots (None = exact mode).
    """
    grad, shots, _ = _grad_param_shift_full(spec, theta, instance, shots_per_eval, rng, noise)
    return grad, shots


def _grad_param_shift_full(spec, theta, instance, shots_per_eval, rng, noise):
    if spec.family != FAMILY_VQE:
        raise DomainError("parameter-shift gradients require the RY-CNOT family")
    means, shots, sets = _shifted_means(
        spec, theta, instance, math.pi / 2, shots_per_eval, noise, rng
    )
    return 0.5 * (means[:, 0] - means[:, 1]), shots, sets


def grad_finite_diff(
    spec: AnsatzSpec,
    theta: np.ndarray,
    instance: IsingInstance,
    step: float,
    shots_per_eval: int | None,
    rng: np.random.Generator | None = None,
    noise: NoiseModel | None = None,
) -> tuple[np.ndarray, int]:
    """Central-difference gradient with increment ``step`` on mean-cost estimates."""
    grad, shots, _ = _grad_finite_diff_full(
        spec, theta, instance, step, shots_per_eval, rng, noise
    )
    return grad, shots


def _grad_finite_diff_full(spec, theta, instance, step, shots_per_eval, rng, noise):
    if step <= 0:
        raise DomainError(f"finite-difference step must be positive, got {step}")
    means, shots, sets = _shifted_means(
        spec, theta, instance, step, shots_per_eval, noise, rng
    )
    return (means[:, 0] - means[:, 1]) / (2.0 * step), shots, sets


def minimizer_hits(bitstrings: np.ndarray, minimizers: np.ndarray) -> np.ndarray:
    """Boolean mask of draws that landed on a global minimizer."""
    if minimizers.size == 1:
        return bitstrings == minimizers[0]
    return np.isin(bitstrings, minimizers)


class MinimumTracker:
    """Running record of the best energy seen and the first ground-state hit.

    ``observe`` scans one sample set in draw order; the first-hit counter is
    the cumulative number of shots up to and including the hitting shot.
    """

    def __init__(self, minimizers) -> None:
        self._minimizers = np.asarray(sorted(minimizers), dtype=np.int64)
        self.f_min = math.inf
        self.shots_seen = 0
        self.first_hit_calls: int | None = None

    @property
    def hit(self) -> bool:
        return self.first_hit_calls is not None

    def observe(self, samples: SampleSet) -> bool:
        """Fold one sample set in; returns True if it contains a minimizer."""
        low = float(samples.energies.min())
        if low < self.f_min:
            self.f_min = low
        hits = minimizer_hits(samples.bitstrings, self._minimizers)
        found = bool(hits.any())
        if found and self.first_hit_calls is None:
            self.first_hit_calls = self.shots_seen + int(np.argmax(hits)) + 1
        self.shots_seen += len(samples)
        return found


def samples_to_csv(samples: SampleSet, path: str | Path) -> None:
    """Write rows (shot_index, bitstring_hex, energy)."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["shot_index", "bitstring_hex", "energy"])
        for i, (x, e) in enumerate(zip(samples.bitstrings, samples.energies)):
            writer.writerow([i, format(int(x), "x"), repr(float(e))])
