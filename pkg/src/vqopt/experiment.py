"""Measurement protocols: success sweeps, optimal-call search, scaling fits.

A *sweep* runs R independent optimizations for every (M, n_iter) grid
cell and records, per run, the cumulative shot count at which a global
minimizer was first sampled.  From those first-hit counts the success
probability F_succ(n_calls) is known at every shot-count checkpoint, so
one run contributes a whole curve rather than a single point.  P_succ
(terminal-sample success) is recorded when the sweep is asked to probe
the final parameters.

Disordered problems are ensembles: each cell is aggregated per instance
first, then summarized by the median and the 25th/75th percentiles
across realizations.  Single-instance cells carry Wilson intervals
instead.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import ansatz as anz
from . import optimizer as opt
from .ansatz import FAMILY_QAOA, FAMILY_VQE, AnsatzSpec
from .errors import DomainError, SchemaError
from .estimator import CostKind
from .ising import (
    DISORDERED,
    FERROMAGNETIC,
    GroundTruth,
    IsingInstance,
    brute_force_minimum,
    make_disordered,
    make_ferromagnetic,
)
from .simulator import NoiseModel

SCHEMA_VERSION = 1


# --- problem description -----------------------------------------------------


@dataclass(frozen=True)
class InitSpec:
    """How theta0 is drawn: uniform random angles, the linear schedule, or
    all-zero angles (the no-evolution baseline)."""

    mode: str = "random"  # "random" | "linear" | "zeros"
    low: float = -math.pi
    high: float = math.pi
    dt: float = 0.8

    def __post_init__(self) -> None:
        if self.mode not in ("random", "linear", "zeros"):
            raise DomainError(f"unknown init mode {self.mode!r}")

    def to_json(self) -> dict:
        if self.mode == "random":
            return {"mode": "random", "low": self.low, "high": self.high}
        if self.mode == "zeros":
            return {"mode": "zeros"}
        return {"mode": "linear", "dt": self.dt}

    @classmethod
    def from_json(cls, obj: dict) -> "InitSpec":
        if obj.get("mode") == "linear":
            return cls(mode="linear", dt=float(obj.get("dt", 0.8)))
        if obj.get("mode") == "zeros":
            return cls(mode="zeros")
        return cls(
            mode="random",
            low=float(obj.get("low", -math.pi)),
            high=float(obj.get("high", math.pi)),
        )


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark problem: circuit family, size, depth, instance set."""

    family: str
    size: int
    depth: int
    kind: str = FERROMAGNETIC
    instance_seeds: tuple[int, ...] = (0,)
    init: InitSpec = InitSpec()

    def __post_init__(self) -> None:
        if self.family not in (FAMILY_VQE, FAMILY_QAOA):
            raise DomainError(f"unknown family {self.family!r}")
        if self.kind not in (FERROMAGNETIC, DISORDERED):
            raise DomainError(f"unknown instance kind {self.kind!r}")
        if self.kind == DISORDERED and not self.instance_seeds:
            raise DomainError("disordered problems need at least one seed")
        if self.init.mode == "linear" and self.family != FAMILY_QAOA:
            raise DomainError("the linear schedule only applies to qaoa")

    def instances(self) -> list[IsingInstance]:
        if self.kind == FERROMAGNETIC:
            return [make_ferromagnetic(self.size)]
        return [make_disordered(self.size, s) for s in self.instance_seeds]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "size": self.size,
            "depth": self.depth,
            "kind": self.kind,
            "instance_seeds": list(self.instance_seeds),
            "init": self.init.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ProblemSpec":
        return cls(
            family=str(obj["family"]),
            size=int(obj["size"]),
            depth=int(obj["depth"]),
            kind=str(obj.get("kind", FERROMAGNETIC)),
            instance_seeds=tuple(int(s) for s in obj.get("instance_seeds", [0])),
            init=InitSpec.from_json(obj.get("init", {"mode": "random"})),
        )


def _ansatz_for(problem: ProblemSpec, instance: IsingInstance) -> AnsatzSpec:
    ref = instance if problem.family == FAMILY_QAOA else None
    return AnsatzSpec(problem.family, problem.size, problem.depth, instance=ref)


def _theta0_for(problem: ProblemSpec, spec: AnsatzSpec, rng: np.random.Generator) -> np.ndarray:
    if problem.init.mode == "linear":
        return anz.init_linear_schedule(problem.depth, problem.init.dt)
    if problem.init.mode == "zeros":
        return np.zeros(spec.n_params)
    return anz.init_random(spec, rng, problem.init.low, problem.init.high)


# --- statistics helpers ------------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise DomainError("need at least one trial")
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


# --- sweep results -----------------------------------------------------------


@dataclass
class CellResult:
    """Outcome of R repetitions per instance at one (M, n_iter) grid cell."""

    shots: int
    iters: int
    repetitions: int  # per instance
    budget_calls: int  # n_calls of one full run
    calls_per_iter: int
    hit_calls: list[list[int]]  # per instance, sorted first-hit shot counts
    psucc_hits: list[int] | None  # per instance, terminal-sample hit counts

    def fsucc_per_instance(self, n_calls: int | None = None) -> list[float]:
        if n_calls is None:
            n_calls = self.budget_calls
        return [
            sum(1 for h in hits if h <= n_calls) / self.repetitions
            for hits in self.hit_calls
        ]

    def fsucc(self, n_calls: int | None = None) -> float:
        per = self.fsucc_per_instance(n_calls)
        return per[0] if len(per) == 1 else float(np.median(per))

    def fsucc_band(self) -> tuple[float, float, str]:
        per = self.fsucc_per_instance()
        if len(per) == 1:
            lo, hi = wilson_interval(len(self.hit_calls[0]), self.repetitions)
            return lo, hi, "wilson"
        q25, q75 = np.percentile(per, [25, 75])
        return float(q25), float(q75), "percentile"

    def psucc_per_instance(self) -> list[float] | None:
        if self.psucc_hits is None:
            return None
        return [h / self.repetitions for h in self.psucc_hits]

    def psucc(self) -> float | None:
        per = self.psucc_per_instance()
        if per is None:
            return None
        return per[0] if len(per) == 1 else float(np.median(per))

    def checkpoints(self) -> list[int]:
        """Iteration-boundary shot counts at which F_succ is reported."""
        steps = max(1, self.iters)
        return [self.calls_per_iter * k for k in range(1, steps + 1)]


@dataclass
class SweepResult:
    problem: ProblemSpec
    optimizer: dict
    cost_alpha: float
    repetitions: int
    master_seed: int
    final_probe: bool
    cells: list[CellResult]
    noise: dict | None = None
    schema_version: int = SCHEMA_VERSION

    def cell(self, shots: int, iters: int) -> CellResult:
        for c in self.cells:
            if c.shots == shots and c.iters == iters:
                return c
        raise DomainError(f"no cell with shots={shots}, iters={iters}")

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "result_type": "sweep",
            "problem": self.problem.to_json(),
            "optimizer": self.optimizer,
            "cost_alpha": self.cost_alpha,
            "repetitions": self.repetitions,
            "master_seed": self.master_seed,
            "final_probe": self.final_probe,
            "noise": self.noise,
            "cells": [
                {
                    "shots": c.shots,
                    "iters": c.iters,
                    "repetitions": c.repetitions,
                    "budget_calls": c.budget_calls,
                    "calls_per_iter": c.calls_per_iter,
                    "hit_calls": c.hit_calls,
                    "psucc_hits": c.psucc_hits,
                }
                for c in self.cells
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SweepResult":
        version = obj.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaError(f"unsupported sweep schema_version {version!r}")
        cells = [
            CellResult(
                shots=int(c["shots"]),
                iters=int(c["iters"]),
                repetitions=int(c["repetitions"]),
                budget_calls=int(c["budget_calls"]),
                calls_per_iter=int(c["calls_per_iter"]),
                hit_calls=[[int(h) for h in hits] for hits in c["hit_calls"]],
                psucc_hits=(
                    None
                    if c.get("psucc_hits") is None
                    else [int(h) for h in c["psucc_hits"]]
                ),
            )
            for c in obj["cells"]
        ]
        return cls(
            problem=ProblemSpec.from_json(obj["problem"]),
            optimizer=dict(obj["optimizer"]),
            cost_alpha=float(obj["cost_alpha"]),
            repetitions=int(obj["repetitions"]),
            master_seed=int(obj["master_seed"]),
            final_probe=bool(obj["final_probe"]),
            noise=obj.get("noise"),
            cells=cells,
        )


# --- sweep execution ---------------------------------------------------------


def _optimizer_from_json(obj: dict) -> opt.OptimizerConfig:
    name = obj.get("name")
    if name == "trust-region-dfo":
        return opt.TrustRegionConfig(
            initial_radius=float(obj.get("initial_radius", 1.0)),
            final_radius=float(obj.get("final_radius", 1e-4)),
        )
    if name == "hill-climb":
        return opt.HillClimbConfig(step_norm=float(obj.get("step_norm", 0.03)))
    if name == "gradient-descent":
        spc = obj.get("shots_per_circuit", 8)
        return opt.GradientDescentConfig(
            learning_rate=float(obj.get("learning_rate", 0.1)),
            gradient=str(obj.get("gradient", "param-shift")),
            step=float(obj.get("step", 0.5)),
            shots_per_circuit=None if spc is None else int(spc),
        )
    raise SchemaError(f"unknown optimizer {name!r}")


def _run_cell_block(
    problem: ProblemSpec,
    instance: IsingInstance,
    minimizers: tuple[int, ...],
    minimum_energy: float,
    config: opt.OptimizerConfig,
    kind: CostKind,
    shots: int,
    iters: int,
    master_seed: int,
    instance_index: int,
    rep_range: range,
    noise: NoiseModel | None,
    final_probe: bool,
) -> tuple[list[int], int, int]:
    """Run a block of repetitions; returns (hits, psucc count, budget_calls)."""
    ground = GroundTruth(minimum_energy, minimizers, len(minimizers))
    spec = _ansatz_for(problem, instance)
    hits: list[int] = []
    psucc = 0
    budget = -1
    for rep in rep_range:
        # keyed by shots, not by grid position: cells sharing M share their
        # run prefixes exactly (success is cumulative in n_iter), and results
        # cannot depend on grid ordering
        rng = np.random.default_rng([master_seed, instance_index, shots, rep])
        theta0 = _theta0_for(problem, spec, rng)
        trace = opt.run(
            spec, instance, ground, config, kind, shots, iters, theta0,
            noise=noise, rng=rng, final_probe=final_probe,
        )
        if trace.first_hit_calls is not None:
            hits.append(trace.first_hit_calls)
        if trace.psucc_hit:
            psucc += 1
        if budget < 0:
            budget = trace.n_calls
        elif budget != trace.n_calls:
            raise DomainError("inconsistent run budgets within one cell")
    return hits, psucc, budget


def _sweep_task(args: dict) -> tuple[int, int, list[int], int, int]:
    instance = IsingInstance(
        size=args["size"],
        couplings=np.asarray(args["couplings"]),
        fields=np.asarray(args["fields"]),
        kind=args["instance_kind"],
        seed=args["instance_seed"],
    )
    hits, psucc, budget = _run_cell_block(
        ProblemSpec.from_json(args["problem"]),
        instance,
        tuple(args["minimizers"]),
        args["minimum_energy"],
        _optimizer_from_json(args["optimizer"]),
        CostKind(args["cost_alpha"]),
        args["shots"],
        args["iters"],
        args["master_seed"],
        args["instance_index"],
        range(args["rep_lo"], args["rep_hi"]),
        None if args["noise"] is None else NoiseModel.from_json(args["noise"]),
        args["final_probe"],
    )
    return args["instance_index"], args["cell_index"], hits, psucc, budget


def success_sweep(
    problem: ProblemSpec,
    config: opt.OptimizerConfig,
    cost_kind: CostKind,
    grid: list[tuple[int, int]],
    repetitions: int,
    master_seed: int,
    threads: int = 1,
    noise: NoiseModel | None = None,
    final_probe: bool = False,
) -> SweepResult:
    """Run the full (M, n_iter) grid, R repetitions per instance per cell.

    Every run gets its own generator seeded by (master_seed, instance,
    cell, repetition), so results are reproducible and independent of the
    worker count.
    """
    if not grid:
        raise DomainError("empty grid")
    if repetitions < 1:
        raise DomainError(f"repetitions must be >= 1, got {repetitions}")
    instances = problem.instances()
    grounds = [brute_force_minimum(inst) for inst in instances]

    tasks = []
    block = max(1, repetitions if threads <= 1 else math.ceil(repetitions / (4 * threads)))
    for inst_idx, instance in enumerate(instances):
        for cell_idx, (shots, iters) in enumerate(grid):
            for lo in range(0, repetitions, block):
                tasks.append(
                    {
                        "problem": problem.to_json(),
                        "size": instance.size,
                        "couplings": instance.couplings.tolist(),
                        "fields": instance.fields.tolist(),
                        "instance_kind": instance.kind,
                        "instance_seed": instance.seed,
                        "minimizers": list(grounds[inst_idx].minimizers),
                        "minimum_energy": grounds[inst_idx].minimum_energy,
                        "optimizer": config.to_json(),
                        "cost_alpha": cost_kind.alpha,
                        "shots": shots,
                        "iters": iters,
                        "master_seed": master_seed,
                        "instance_index": inst_idx,
                        "cell_index": cell_idx,
                        "rep_lo": lo,
                        "rep_hi": min(lo + block, repetitions),
                        "noise": None if noise is None else noise.to_json(),
                        "final_probe": final_probe,
                    }
                )

    if threads <= 1:
        outcomes = [_sweep_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_sweep_task, tasks, chunksize=1))

    hit_map: dict[tuple[int, int], list[int]] = {}
    psucc_map: dict[tuple[int, int], int] = {}
    budget_map: dict[int, int] = {}
    for inst_idx, cell_idx, hits, psucc, budget in outcomes:
        key = (inst_idx, cell_idx)
        hit_map.setdefault(key, []).extend(hits)
        psucc_map[key] = psucc_map.get(key, 0) + psucc
        if budget >= 0:
            if cell_idx in budget_map and budget_map[cell_idx] != budget:
                raise DomainError("inconsistent budgets across instances")
            budget_map[cell_idx] = budget

    cells = []
    for cell_idx, (shots, iters) in enumerate(grid):
        budget = budget_map[cell_idx]
        calls_per_iter = budget // max(1, iters)
        cells.append(
            CellResult(
                shots=shots,
                iters=iters,
                repetitions=repetitions,
                budget_calls=budget,
                calls_per_iter=calls_per_iter,
                hit_calls=[
                    sorted(hit_map[(i, cell_idx)]) for i in range(len(instances))
                ],
                psucc_hits=(
                    [psucc_map[(i, cell_idx)] for i in range(len(instances))]
                    if (final_probe or iters == 0)
                    else None
                ),
            )
        )
    return SweepResult(
        problem=problem,
        optimizer=config.to_json(),
        cost_alpha=cost_kind.alpha,
        repetitions=repetitions,
        master_seed=master_seed,
        final_probe=final_probe,
        noise=None if noise is None else noise.to_json(),
        cells=cells,
    )


# --- optimal call counts and scaling fits ------------------------------------


@dataclass(frozen=True)
class OptimalCalls:
    target: float
    reached: bool
    n_calls: int | None = None
    shots: int | None = None
    iters: int | None = None


def _cell_calls_to_target(cell: CellResult, target: float) -> int | None:
    """Smallest checkpoint at which the cell's aggregate F_succ reaches target.

    Checkpoints are iteration boundaries, so shot-resolved first hits round
    up to the end of the iteration that produced them.
    """
    step = cell.calls_per_iter

    def boundary(calls: int) -> int:
        return ((calls + step - 1) // step) * step

    if target == 0.0:
        # vacuous target: met at the cell's first recorded checkpoint
        return step
    if len(cell.hit_calls) == 1:
        hits = cell.hit_calls[0]
        k = math.ceil(target * cell.repetitions)
        if len(hits) < k:
            return None
        return boundary(hits[k - 1])
    # ensemble: median across instances of per-instance step curves
    candidates = sorted({boundary(h) for hits in cell.hit_calls for h in hits})
    for c in candidates:
        if cell.fsucc(c) >= target:
            return c
    return None


def optimal_calls(sweep: SweepResult, target: float) -> OptimalCalls:
    """Minimum n_calls over all grid cells reaching the target F_succ.

    Returns an explicit unreached marker when no cell ever meets the
    target within its budget.
    """
    if not 0.0 <= target < 1.0:
        raise DomainError(f"target must be in [0, 1), got {target}")
    best: tuple[int, int, int] | None = None
    for cell in sweep.cells:
        calls = _cell_calls_to_target(cell, target)
        if calls is None:
            continue
        key = (calls, cell.shots, cell.iters)
        if best is None or key < best:
            best = key
    if best is None:
        return OptimalCalls(target=target, reached=False)
    return OptimalCalls(
        target=target, reached=True, n_calls=best[0], shots=best[1], iters=best[2]
    )


@dataclass
class ScalingFit:
    """Least-squares fit of log2(n_calls*) vs L: n_calls* = a * 2^(k L)."""

    points: list[tuple[int, float]]
    amplitude: float
    exponent: float
    l_min: int
    residuals: list[float]
    target: float | None = None
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "result_type": "fit",
            "points": [[int(l), float(n)] for l, n in self.points],
            "amplitude": self.amplitude,
            "exponent": self.exponent,
            "l_min": self.l_min,
            "residuals": self.residuals,
            "target": self.target,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ScalingFit":
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise SchemaError(
                f"unsupported fit schema_version {obj.get('schema_version')!r}"
            )
        return cls(
            points=[(int(l), float(n)) for l, n in obj["points"]],
            amplitude=float(obj["amplitude"]),
            exponent=float(obj["exponent"]),
            l_min=int(obj["l_min"]),
            residuals=[float(r) for r in obj["residuals"]],
            target=obj.get("target"),
        )


def fit_scaling(
    points: list[tuple[int, float]], l_min: int = 8, target: float | None = None
) -> ScalingFit:
    """Fit n_calls* = a * 2^(k L) on the points with L >= l_min."""
    used = sorted((int(l), float(n)) for l, n in points if l >= l_min)
    if len(used) < 2:
        raise DomainError(f"need >= 2 points with L >= {l_min} to fit")
    sizes = np.array([l for l, _ in used], dtype=float)
    logs = np.log2([n for _, n in used])
    slope, intercept = np.polyfit(sizes, logs, 1)
    residuals = list(logs - (slope * sizes + intercept))
    return ScalingFit(
        points=[(int(l), float(n)) for l, n in points],
        amplitude=float(2.0**intercept),
        exponent=float(slope),
        l_min=l_min,
        residuals=[float(r) for r in residuals],
        target=target,
    )


def random_search_baseline(size: int, degeneracy: int, n_calls: int) -> float:
    """Success probability of uniform sampling with replacement."""
    if degeneracy < 1:
        raise DomainError("degeneracy must be >= 1")
    if n_calls < 0:
        raise DomainError("n_calls must be >= 0")
    total = 1 << size
    if degeneracy > total:
        raise DomainError(f"degeneracy {degeneracy} exceeds 2^{size}")
    return 1.0 - (1.0 - degeneracy / total) ** n_calls


def runtime_bound(n_calls: float, depth: int, gate_time_s: float) -> float:
    """Lower bound on wall time: n_calls * depth * per-block gate time."""
    if n_calls < 0:
        raise DomainError("n_calls must be >= 0")
    if depth <= 0 or gate_time_s <= 0:
        raise DomainError("depth and gate time must be positive")
    return float(n_calls) * depth * gate_time_s


# --- depth sweep with the linear schedule ------------------------------------


@dataclass
class DepthCell:
    size: int
    depth: int
    p_gs: list[float]  # exact ground-state Born probability, per instance
    fsucc: list[float]  # sampled M-shot success fraction, per instance

    def p_gs_median(self) -> float:
        return self.p_gs[0] if len(self.p_gs) == 1 else float(np.median(self.p_gs))

    def fsucc_median(self) -> float:
        return self.fsucc[0] if len(self.fsucc) == 1 else float(np.median(self.fsucc))


@dataclass
class DepthSweepResult:
    kind: str
    dt: float
    shots: int
    repetitions: int
    master_seed: int
    instance_seeds: tuple[int, ...]
    cells: list[DepthCell]
    schema_version: int = SCHEMA_VERSION

    def cell(self, size: int, depth: int) -> DepthCell:
        for c in self.cells:
            if c.size == size and c.depth == depth:
                return c
        raise DomainError(f"no cell with size={size}, depth={depth}")

    def to_json(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "result_type": "depth-sweep",
            "kind": self.kind,
            "dt": self.dt,
            "shots": self.shots,
            "repetitions": self.repetitions,
            "master_seed": self.master_seed,
            "instance_seeds": list(self.instance_seeds),
            "cells": [
                {
                    "size": c.size,
                    "depth": c.depth,
                    "p_gs": c.p_gs,
                    "fsucc": c.fsucc,
                }
                for c in self.cells
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DepthSweepResult":
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise SchemaError(
                f"unsupported depth-sweep schema_version {obj.get('schema_version')!r}"
            )
        return cls(
            kind=str(obj["kind"]),
            dt=float(obj["dt"]),
            shots=int(obj["shots"]),
            repetitions=int(obj["repetitions"]),
            master_seed=int(obj["master_seed"]),
            instance_seeds=tuple(int(s) for s in obj["instance_seeds"]),
            cells=[
                DepthCell(
                    size=int(c["size"]),
                    depth=int(c["depth"]),
                    p_gs=[float(p) for p in c["p_gs"]],
                    fsucc=[float(f) for f in c["fsucc"]],
                )
                for c in obj["cells"]
            ],
        )


def depth_sweep(
    sizes: list[int],
    depths: list[int],
    dt: float,
    shots: int,
    repetitions: int,
    master_seed: int,
    kind: str = FERROMAGNETIC,
    instance_seeds: tuple[int, ...] = (0,),
) -> DepthSweepResult:
    """Sample linearly-initialized QAOA states (no optimization) over (L, d).

    Records both the exact ground-state Born probability of each state and
    the fraction of R M-shot repetitions that saw a minimizer.
    """
    cells = []
    for size in sizes:
        if kind == FERROMAGNETIC:
            instances = [make_ferromagnetic(size)]
        else:
            instances = [make_disordered(size, s) for s in instance_seeds]
        grounds = [brute_force_minimum(inst) for inst in instances]
        for depth in depths:
            p_gs: list[float] = []
            fsucc: list[float] = []
            theta = anz.init_linear_schedule(depth, dt)
            for inst_idx, instance in enumerate(instances):
                spec = AnsatzSpec(FAMILY_QAOA, size, depth, instance=instance)
                state = anz.prepare_state(spec, theta)
                probs = state.probabilities()
                minimizers = np.array(grounds[inst_idx].minimizers)
                p_gs.append(float(probs[minimizers].sum()))
                rng = np.random.default_rng(
                    [master_seed, size, depth, instance.seed]
                )
                draws = rng.choice(probs.size, size=(repetitions, shots), p=probs / probs.sum())
                hits = np.isin(draws, minimizers).any(axis=1)
                fsucc.append(float(hits.mean()))
            cells.append(DepthCell(size=size, depth=depth, p_gs=p_gs, fsucc=fsucc))
    return DepthSweepResult(
        kind=kind,
        dt=dt,
        shots=shots,
        repetitions=repetitions,
        master_seed=master_seed,
        instance_seeds=tuple(instance_seeds),
        cells=cells,
    )


# --- persistence -------------------------------------------------------------


_RESULT_TYPES = {
    "sweep": SweepResult,
    "fit": ScalingFit,
    "depth-sweep": DepthSweepResult,
}


def save_result(result, path: str | Path) -> None:
    Path(path).write_text(json.dumps(result.to_json(), sort_keys=True) + "\n")


def load_result(path: str | Path):
    obj = json.loads(Path(path).read_text())
    kind = obj.get("result_type")
    if kind not in _RESULT_TYPES:
        raise SchemaError(f"unknown result_type {kind!r}")
    return _RESULT_TYPES[kind].from_json(obj)
