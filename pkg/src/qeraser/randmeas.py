"""Purity and second-order Renyi entropy from randomized local measurements.

For one qubit measured after a random unitary ``U``, the purity is
recovered as the average over ``U`` of::

    X_U = 2 * sum_{s, s'} (-2)^(-[s != s']) P_U(s) P_U(s')
        = 2 * (P(0)^2 + P(1)^2 - P(0) P(1))

Products of probabilities from the same setting are estimated without bias
from shot counts via ``n_s (n_s - 1) / (N (N - 1))`` and ``n_0 n_1 / (N (N - 1))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import unitary_group

from . import qcore
from .circuit import CircuitConfig, build_slices

TARGETS = ("slice2-i-qubit",)
N_BOOTSTRAP = 1000


@dataclass(frozen=True)
class RandMeasPlan:
    n_unitaries: int = 500
    n_shots_per_unitary: int = 512
    seed: int = 0
    target: str = "slice2-i-qubit"

    def __post_init__(self):
        if self.n_unitaries < 2:
            raise ValueError("need at least 2 random unitaries")
        if self.n_shots_per_unitary < 2:
            raise ValueError("the unbiased product estimator needs >= 2 shots per unitary")
        if self.target not in TARGETS:
            raise ValueError(f"unsupported target {self.target!r}")


@dataclass(frozen=True)
class PurityEstimate:
    gamma_hat: float
    s2_hat: Optional[float]  # None when gamma_hat <= 0
    std_err: float


def haar_unitaries(n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` Haar-random 2x2 unitaries, shape ``(n, 2, 2)``."""
    return unitary_group.rvs(2, size=n, random_state=rng).reshape(n, 2, 2)


def clifford_unitaries() -> np.ndarray:
    """The 24 single-qubit Clifford rotations (modulo phase)."""
    h = qcore.gate_hadamard()
    s = qcore.gate_phase(np.pi / 2)
    found = [np.eye(2, dtype=complex)]

    def known(u):
        return any(abs(abs(np.trace(v.conj().T @ u)) - 2) < 1e-9 for v in found)

    frontier = list(found)
    while frontier:
        nxt = []
        for u in frontier:
            for g in (h, s):
                v = g @ u
                if not known(v):
                    found.append(v)
                    nxt.append(v)
        frontier = nxt
    return np.array(found)


def outcome_probabilities(rho: np.ndarray, unitaries: np.ndarray) -> np.ndarray:
    """``P_U(s) = <s| U rho U^dag |s>`` for each unitary; shape ``(n, 2)``."""
    rotated = np.einsum("nab,bc,ndc->nad", unitaries, rho, unitaries.conj())
    p = np.clip(np.einsum("naa->na", rotated).real, 0.0, 1.0)
    return p / p.sum(axis=1, keepdims=True)


def purity_from_probabilities(p: np.ndarray) -> np.ndarray:
    """Per-setting cross-correlation ``X_U`` from exact outcome probabilities."""
    p0, p1 = p[..., 0], p[..., 1]
    return 2 * (p0 ** 2 + p1 ** 2 - p0 * p1)


def purity_from_counts(n0: np.ndarray, n_shots: int) -> np.ndarray:
    """Unbiased per-setting ``X_U`` from counts of outcome 0."""
    n0 = np.asarray(n0, dtype=float)
    n1 = n_shots - n0
    pairs = n_shots * (n_shots - 1)
    return 2 * (n0 * (n0 - 1) + n1 * (n1 - 1) - n0 * n1) / pairs


def estimate_purity_of(rho: np.ndarray, plan: RandMeasPlan) -> PurityEstimate:
    """Randomized-measurement purity estimate for an arbitrary qubit state."""
    rng = np.random.default_rng(np.random.SeedSequence(int(plan.seed)))
    unitaries = haar_unitaries(plan.n_unitaries, rng)
    p = outcome_probabilities(np.asarray(rho, dtype=complex), unitaries)
    n0 = rng.binomial(plan.n_shots_per_unitary, p[:, 0])
    x = purity_from_counts(n0, plan.n_shots_per_unitary)
    gamma = float(x.mean())
    boot = rng.choice(x, size=(N_BOOTSTRAP, x.size), replace=True).mean(axis=1)
    s2 = float(-np.log2(gamma)) if gamma > 0 else None
    return PurityEstimate(gamma, s2, float(boot.std(ddof=1)))


def slice2_reduced_state(phi: float) -> np.ndarray:
    psi2 = build_slices(CircuitConfig(phi)).psi2
    return np.array(qcore.partial_trace(psi2, "i").m)


def estimate_purity(phi: float, plan: RandMeasPlan) -> PurityEstimate:
    """Purity of the i qubit right after the entangling gate."""
    return estimate_purity_of(slice2_reduced_state(phi), plan)


def theoretical_purity(phi: float) -> float:
    return (1 + np.cos(phi) ** 2) / 2
