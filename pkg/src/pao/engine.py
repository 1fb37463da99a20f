"""The particle attractor optimiser.

One generation: compute attractors, shift positions into attractor-centred
coordinates, advance every (position, velocity) pair exactly through the
precomputed Gaussian transition kernel, shift back, apply the bounds policy
and update the best archives.  The state of N particles in D dimensions
lives in one (N, D, 2) tensor so the whole move is a pair of broadcasted
2x2 matrix products.
"""

import time
from dataclasses import dataclass

import numpy as np

from .attractors import AttractorSpec, compute_attractors, noise_scale, weighted_centroid
from .benchmarks import Problem, shift_to_zero
from .kernel import Hyperparams, TransitionKernel, build_kernel
from .records import RunRecord, history_entry

BOUNDS_POLICIES = ("none", "clip", "reflect")
VELOCITY_INITS = ("zero", "uniform-scaled")


class ObjectiveEvaluationError(RuntimeError):
    """The objective returned a non-finite value."""


@dataclass
class Swarm:
    """Swarm state: (N, D, 2) position/velocity tensor plus best archives."""

    x: np.ndarray
    fitness: np.ndarray
    local_best_pos: np.ndarray
    local_best_fit: np.ndarray
    global_best_pos: np.ndarray
    global_best_fit: float
    generation: int = 0

    @property
    def positions(self) -> np.ndarray:
        return self.x[:, :, 0]

    @property
    def velocities(self) -> np.ndarray:
        return self.x[:, :, 1]


@dataclass(frozen=True)
class PaoConfig:
    """Optimiser configuration: dynamics hyperparameters, one stiffness per
    attractor, and the artifact-level policies the dynamics do not fix."""

    hp: Hyperparams = Hyperparams()
    specs: tuple = (AttractorSpec("localbest"), AttractorSpec("globalbest"))
    bounds_policy: str = "clip"
    velocity_init: str = "zero"

    def __post_init__(self):
        object.__setattr__(self, "specs", tuple(self.specs))
        if len(self.specs) != len(self.hp.k):
            raise ValueError(
                f"{len(self.specs)} attractor specs but {len(self.hp.k)} stiffnesses"
            )
        if self.bounds_policy not in BOUNDS_POLICIES:
            raise ValueError(
                f"bounds_policy must be one of {BOUNDS_POLICIES}, got {self.bounds_policy!r}"
            )
        if self.velocity_init not in VELOCITY_INITS:
            raise ValueError(
                f"velocity_init must be one of {VELOCITY_INITS}, got {self.velocity_init!r}"
            )

    def params_dict(self) -> dict:
        return {
            "m": self.hp.m,
            "zeta": self.hp.zeta,
            "k": list(self.hp.k),
            "q0": self.hp.q0,
            "dt": self.hp.dt,
            "attractors": [s.label() for s in self.specs],
            "bounds_policy": self.bounds_policy,
            "velocity_init": self.velocity_init,
        }


def evaluate_population(problem: Problem, positions) -> np.ndarray:
    """Batch-evaluate the objective, rejecting non-finite fitness."""
    fit = np.asarray(problem.evaluate(positions), dtype=float)
    if not np.all(np.isfinite(fit)):
        bad = positions[~np.isfinite(fit)][0]
        raise ObjectiveEvaluationError(
            f"objective {problem.name!r} returned a non-finite value at {bad}"
        )
    return fit


def apply_bounds(pos, vel, lower, upper, policy):
    """Apply the bounds policy to positions; reflect also flips velocity."""
    if policy == "none":
        return pos, vel
    if policy == "clip":
        return np.clip(pos, lower, upper), vel
    # reflect: fold the position back into the box, negate the velocity of
    # every component that left it
    out = (pos < lower) | (pos > upper)
    span = upper - lower
    y = np.mod(pos - lower, 2.0 * span)
    folded = lower + np.where(y <= span, y, 2.0 * span - y)
    return np.where(out, folded, pos), np.where(out, -vel, vel)


def initialize_swarm(problem: Problem, n: int, cfg: PaoConfig, rng) -> Swarm:
    """Uniform positions within the box, velocities per cfg.velocity_init,
    best archives seeded from the first evaluation."""
    if n < 1:
        raise ValueError(f"population size must be >= 1, got {n}")
    d = problem.dim
    x = np.zeros((n, d, 2))
    x[:, :, 0] = rng.uniform(problem.lower, problem.upper, size=(n, d))
    if cfg.velocity_init == "uniform-scaled":
        v_half = (problem.upper - problem.lower) / (2.0 * cfg.hp.dt)
        x[:, :, 1] = rng.uniform(-v_half, v_half, size=(n, d))
    fitness = evaluate_population(problem, x[:, :, 0])
    best = int(np.argmin(fitness))
    return Swarm(
        x=x,
        fitness=fitness,
        local_best_pos=x[:, :, 0].copy(),
        local_best_fit=fitness.copy(),
        global_best_pos=x[best, :, 0].copy(),
        global_best_fit=float(fitness[best]),
        generation=0,
    )


def step_swarm(
    swarm: Swarm,
    kernel: TransitionKernel,
    cfg: PaoConfig,
    problem: Problem,
    rng,
    noise=None,
) -> Swarm:
    """Advance the swarm one generation; returns a new Swarm.

    ``noise`` may supply the (N, D, 2) standard-normal tensor explicitly
    (the per-element draws are otherwise taken from ``rng`` in one block, so
    the draw-to-particle assignment is deterministic given the seed).
    """
    aset = compute_attractors(swarm, cfg.specs, rng, k=cfg.hp.k)
    nu = noise_scale(swarm)
    centroid = weighted_centroid(aset)

    # attractors are frozen within the step, so the velocity transforms as-is
    state = swarm.x.copy()
    state[:, :, 0] -= centroid
    new_state = np.einsum("kl,ijl->ijk", kernel.a, state)
    variance = cfg.hp.q0 * nu
    if variance > 0.0:
        if noise is None:
            noise = rng.standard_normal(state.shape)
        new_state += np.sqrt(variance) * np.einsum("kl,ijl->ijk", kernel.h, noise)
    new_state[:, :, 0] += centroid

    pos, vel = apply_bounds(
        new_state[:, :, 0], new_state[:, :, 1], problem.lower, problem.upper, cfg.bounds_policy
    )
    fitness = evaluate_population(problem, pos)

    local_best_pos = swarm.local_best_pos.copy()
    local_best_fit = swarm.local_best_fit.copy()
    improved = fitness < local_best_fit
    local_best_pos[improved] = pos[improved]
    local_best_fit[improved] = fitness[improved]
    best = int(np.argmin(local_best_fit))
    if local_best_fit[best] < swarm.global_best_fit:
        global_best_pos = local_best_pos[best].copy()
        global_best_fit = float(local_best_fit[best])
    else:
        global_best_pos = swarm.global_best_pos
        global_best_fit = swarm.global_best_fit

    new_x = np.empty_like(swarm.x)
    new_x[:, :, 0] = pos
    new_x[:, :, 1] = vel
    return Swarm(
        x=new_x,
        fitness=fitness,
        local_best_pos=local_best_pos,
        local_best_fit=local_best_fit,
        global_best_pos=global_best_pos,
        global_best_fit=global_best_fit,
        generation=swarm.generation + 1,
    )


def run_pao(problem: Problem, n: int, generations: int, cfg: PaoConfig, seed) -> RunRecord:
    """Full optimiser run: init plus ``generations`` steps, seeded end to end.

    Uses exactly n * (generations + 1) objective evaluations.
    """
    if generations < 0:
        raise ValueError(f"generations must be >= 0, got {generations}")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    kernel = build_kernel(cfg.hp)
    swarm = initialize_swarm(problem, n, cfg, rng)

    record = RunRecord(
        run_id=f"pao_{problem.name}_{problem.dim}d_seed{seed}",
        optimizer="pao",
        problem=problem.name,
        dim=problem.dim,
        seed=int(seed),
        pop=n,
        gens=generations,
        evals=n * (generations + 1),
        history=[],
        params=cfg.params_dict(),
    )
    _log_generation(record, problem, swarm)
    for _ in range(generations):
        swarm = step_swarm(swarm, kernel, cfg, problem, rng)
        _log_generation(record, problem, swarm)
    record.duration_ms = (time.perf_counter() - t0) * 1e3
    return record


def _log_generation(record: RunRecord, problem: Problem, swarm: Swarm):
    best = float(swarm.global_best_fit)
    record.history.append(
        history_entry(
            g=swarm.generation,
            best=best,
            mean=float(swarm.fitness.mean()),
            shifted_best=shift_to_zero(problem, best),
        )
    )
    record.best_pos.append(swarm.global_best_pos.copy())
    record.nu.append(noise_scale(swarm))
