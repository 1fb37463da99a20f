"""Attraction points, their stiffness-weighted centroid and the swarm noise
scale.

Each attractor rule fills one (N, D) slice of the (r, N, D) attractor tensor
from a snapshot of the swarm.  All rules are pure functions of that snapshot
plus an explicit random source.
"""

from dataclasses import dataclass

import numpy as np

# Differential weight of the rand/1/bin donor attractor.
DE_WEIGHT = 0.5

_DETERMINISTIC_KINDS = (
    "globalbest",
    "localbest",
    "averagelocalbest",
    "averageparticle",
    "weightedaverageparticle",
)
VALID_KINDS = _DETERMINISTIC_KINDS + ("derand1bin", "stochasticgaussian")


@dataclass(frozen=True)
class AttractorSpec:
    """One attractor rule; ``stddev`` applies to stochasticgaussian only."""

    kind: str
    stddev: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", self.kind.strip().lower())
        if self.kind not in VALID_KINDS:
            raise ValueError(
                f"unknown attractor kind {self.kind!r}; expected one of {VALID_KINDS}"
            )
        if self.stddev < 0:
            raise ValueError(f"stddev must be >= 0, got {self.stddev}")

    @classmethod
    def parse(cls, text: str) -> "AttractorSpec":
        """Parse a config string, e.g. ``globalbest`` or ``stochasticgaussian:0.5``."""
        kind, _, arg = text.partition(":")
        if arg:
            return cls(kind, stddev=float(arg))
        return cls(kind)

    def label(self) -> str:
        """Round-trippable config string for this spec."""
        if self.kind == "stochasticgaussian":
            return f"{self.kind}:{self.stddev}"
        return self.kind


@dataclass(frozen=True)
class AttractorSet:
    """Attractor positions alpha (r, N, D) with their stiffness weights."""

    alpha: np.ndarray
    k: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(float(v) for v in self.k))
        if self.alpha.ndim != 3:
            raise ValueError(f"alpha must be (r, N, D), got shape {self.alpha.shape}")
        if self.alpha.shape[0] != len(self.k):
            raise ValueError(
                f"{self.alpha.shape[0]} attractor slices but {len(self.k)} stiffnesses"
            )


def compute_attractors(swarm, specs, rng, k=None) -> AttractorSet:
    """Fill one attractor slice per spec from the current swarm snapshot.

    ``k`` gives the stiffness per slice (defaults to all ones).  Needs the
    swarm's fitness and best archives to be up to date.
    """
    specs = list(specs)
    if k is None:
        k = (1.0,) * len(specs)
    if len(k) != len(specs):
        raise ValueError(f"{len(specs)} specs but {len(k)} stiffnesses")
    positions = swarm.x[:, :, 0]
    n, d = positions.shape
    alpha = np.empty((len(specs), n, d))
    for s, spec in enumerate(specs):
        if spec.kind == "globalbest":
            alpha[s] = swarm.global_best_pos
        elif spec.kind == "localbest":
            alpha[s] = swarm.local_best_pos
        elif spec.kind == "averagelocalbest":
            alpha[s] = swarm.local_best_pos.mean(axis=0)
        elif spec.kind == "averageparticle":
            alpha[s] = positions.mean(axis=0)
        elif spec.kind == "weightedaverageparticle":
            alpha[s] = _fitness_weighted_mean(positions, swarm.fitness)
        elif spec.kind == "derand1bin":
            alpha[s] = _de_donors(positions, rng)
        elif spec.kind == "stochasticgaussian":
            alpha[s] = swarm.global_best_pos + spec.stddev * rng.standard_normal((n, d))
    return AttractorSet(alpha=alpha, k=tuple(k))


def _fitness_weighted_mean(positions, fitness):
    # softmax of negative min-max-normalised fitness: scale-free and
    # minimisation-consistent, no division by possibly-zero raw fitness
    lo, hi = fitness.min(), fitness.max()
    w = np.exp(-(fitness - lo) / (hi - lo + 1e-12))
    w /= w.sum()
    return w @ positions


def _de_donors(positions, rng):
    n = positions.shape[0]
    if n < 4:
        raise ValueError(f"derand1bin attractor needs at least 4 particles, got {n}")
    donors = np.empty_like(positions)
    for i in range(n):
        others = np.delete(np.arange(n), i)
        a, b, c = rng.choice(others, size=3, replace=False)
        donors[i] = positions[a] + DE_WEIGHT * (positions[b] - positions[c])
    return donors


def weighted_centroid(aset: AttractorSet) -> np.ndarray:
    """Stiffness-weighted mean attractor, (N, D): (1/k') sum_r k_r alpha_r."""
    k = np.asarray(aset.k)
    k_total = k.sum()
    if not (k_total > 0):
        raise ValueError("total stiffness must be strictly positive")
    return np.tensordot(k, aset.alpha, axes=(0, 0)) / k_total


def noise_scale(swarm) -> float:
    """Squared distance between mean particle position and the global best.

    One scalar per swarm per generation; shrinks to zero as the swarm
    collapses onto its best point, so the injected noise dies out with
    convergence.
    """
    diff = swarm.x[:, :, 0].mean(axis=0) - swarm.global_best_pos
    return float(diff @ diff)
