"""Seeded shot sampling and theta sweeps."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .circuit import CircuitConfig, JointDistribution, exact_joint

EXACT_NOMINAL_SHOTS = 1_000_000


def derive_seed(seed: int, index: int) -> int:
    """Child seed for grid point ``index``; independent of evaluation order."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True, eq=False)
class EnsembleCounts:
    """Joint outcome counts ``counts[x_i, y_d]`` accumulated at one setting.

    ``exact`` counts are Born probabilities scaled by ``n_shots`` and may be
    fractional; sampled counts are integers.
    """

    counts: np.ndarray
    n_shots: int
    cfg: CircuitConfig
    seed: Optional[int] = None
    exact: bool = False

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=float if self.exact else np.int64).reshape(2, 2)
        if self.n_shots <= 0:
            raise ValueError("n_shots must be positive")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        if self.exact:
            if abs(counts.sum() - self.n_shots) > 1e-9 * self.n_shots:
                raise ValueError("exact counts do not sum to n_shots")
        elif counts.sum() != self.n_shots:
            raise ValueError(f"counts sum to {counts.sum()}, expected {self.n_shots}")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    n00 = property(lambda self: self.counts[0, 0])
    n01 = property(lambda self: self.counts[0, 1])
    n10 = property(lambda self: self.counts[1, 0])
    n11 = property(lambda self: self.counts[1, 1])


@dataclass(frozen=True, eq=False)
class SweepRecord:
    theta_grid: np.ndarray
    counts: List[EnsembleCounts]

    def __post_init__(self):
        grid = np.asarray(self.theta_grid, dtype=float)
        if grid.ndim != 1 or len(grid) == 0:
            raise ValueError("sweep needs a nonempty 1-d theta grid")
        if len(grid) != len(self.counts):
            raise ValueError("theta grid and counts are misaligned")
        if np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > 2 * np.pi + 1e-9:
            raise ValueError("theta grid must be strictly increasing within [0, 2pi]")
        grid.setflags(write=False)
        object.__setattr__(self, "theta_grid", grid)
        object.__setattr__(self, "counts", list(self.counts))

    def counts_array(self) -> np.ndarray:
        """Stacked counts, shape ``(n_theta, 2, 2)``."""
        return np.stack([c.counts for c in self.counts]).astype(float)

    def pooled(self) -> np.ndarray:
        """Counts summed over the theta grid."""
        return self.counts_array().sum(axis=0)

    @property
    def cfg(self) -> CircuitConfig:
        return self.counts[0].cfg


def _probabilities(cfg: CircuitConfig) -> np.ndarray:
    return exact_joint(cfg).p.ravel()


def sample_shots(cfg: CircuitConfig, n_shots: int, seed: int) -> EnsembleCounts:
    """Draw ``n_shots`` i.i.d. joint outcomes from the circuit's distribution."""
    if n_shots < 1:
        raise ValueError("n_shots must be at least 1")
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    counts = rng.multinomial(int(n_shots), _probabilities(cfg))
    return EnsembleCounts(counts, int(n_shots), cfg, seed=int(seed))


def exact_counts(cfg: CircuitConfig, nominal: int = EXACT_NOMINAL_SHOTS) -> EnsembleCounts:
    return EnsembleCounts(_probabilities(cfg) * nominal, int(nominal), cfg, exact=True)


def empirical_joint(counts: EnsembleCounts) -> JointDistribution:
    p = counts.counts / counts.counts.sum()
    return JointDistribution(p, counts.cfg)


def theta_grid(resolution: float) -> np.ndarray:
    """Grid over ``[0, 2pi]`` including both endpoints."""
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    n = 2 * np.pi / resolution
    steps = int(round(n))
    if steps < 2 or abs(n - steps) > 1e-9 * max(1.0, n):
        raise ValueError(f"resolution {resolution} does not split 2pi into >= 2 equal steps")
    return np.linspace(0.0, 2 * np.pi, steps + 1)


def theta_sweep(
    cfg_base: CircuitConfig,
    resolution: float,
    n_shots: Optional[int],
    seed: int = 0,
    workers: Optional[int] = None,
) -> SweepRecord:
    """Sample every point of the theta grid; ``n_shots=None`` gives exact counts.

    Point ``k`` uses ``derive_seed(seed, k)`` so the result does not depend on
    ``workers``.
    """
    return theta_points(cfg_base, theta_grid(resolution), n_shots, seed, workers)


def theta_points(
    cfg_base: CircuitConfig,
    thetas,
    n_shots: Optional[int],
    seed: int = 0,
    workers: Optional[int] = None,
) -> SweepRecord:
    """Like :func:`theta_sweep` on an explicit, increasing list of phase shifts."""
    grid = np.asarray(thetas, dtype=float)

    def point(k: int) -> EnsembleCounts:
        cfg = cfg_base.replace(theta=float(grid[k]))
        if n_shots is None:
            return exact_counts(cfg)
        return sample_shots(cfg, n_shots, derive_seed(seed, k))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(point, range(len(grid))))
    else:
        counts = [point(k) for k in range(len(grid))]
    return SweepRecord(grid, counts)
