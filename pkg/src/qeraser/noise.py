"""Noise channels and device calibration presets.

The delayed d-wire measurement is modelled as amplitude damping followed by
pure dephasing, with rates set from (T1, T2) so that the total coherence
decays as ``exp(-t / T2)``.  CNOT error is modelled as two-qubit
depolarizing noise ``rho -> (1 - eps) rho + eps * 1/4``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .qcore import I2, Z, DensityMatrix, KrausChannel

DT_NS = 0.22
"""Drive-channel sampling timestep of the emulated devices, in ns."""


def delay_us(delay_dt: int) -> float:
    """Convert a delay in units of dt to microseconds."""
    if delay_dt < 0:
        raise ValueError("delay_dt must be nonnegative")
    return delay_dt * DT_NS * 1e-3


def amplitude_damping(gamma: float) -> KrausChannel:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"damping probability must lie in [0, 1], got {gamma}")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    return KrausChannel((k0, k1))


def phase_damping(lam: float) -> KrausChannel:
    """Pure dephasing; off-diagonals shrink by ``sqrt(1 - lam)``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"dephasing parameter must lie in [0, 1], got {lam}")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - lam)]], dtype=complex)
    k1 = np.array([[0, 0], [0, np.sqrt(lam)]], dtype=complex)
    return KrausChannel((k0, k1))


def dephasing(p: float) -> KrausChannel:
    """Phase flip with probability ``p``; ``p = 1/2`` fully dephases."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"flip probability must lie in [0, 1], got {p}")
    return KrausChannel((np.sqrt(1 - p) * I2, np.sqrt(p) * Z))


def pure_dephasing_rate(t1: float, t2: float) -> float:
    """Rate ``1/T_phi = max(0, 1/T2 - 1/(2 T1))`` in inverse time units of T1, T2."""
    _check_times(t1, t2)
    if np.isinf(t2):
        return 0.0
    inv_t1 = 0.0 if np.isinf(t1) else 1.0 / t1
    return max(0.0, 1.0 / t2 - 0.5 * inv_t1)


def _check_times(t1: float, t2: float) -> None:
    if not (t1 > 0 and t2 > 0):
        raise ValueError("T1 and T2 must be positive")
    if t2 > 2 * t1:
        raise ValueError(f"T2 = {t2} exceeds 2*T1 = {2 * t1}; not a physical qubit")


def thermal_relaxation(t: float, t1: float, t2: float) -> KrausChannel:
    """Idle channel for duration ``t`` (same units as T1, T2).

    Returns the composition of amplitude damping and pure dephasing as a
    single set of Kraus operators.
    """
    if t < 0:
        raise ValueError("duration must be nonnegative")
    _check_times(t1, t2)
    gamma = 0.0 if np.isinf(t1) else -np.expm1(-t / t1)
    lam = -np.expm1(-2 * t * pure_dephasing_rate(t1, t2))
    ad = amplitude_damping(gamma).ops
    pd = phase_damping(lam).ops
    return KrausChannel(tuple(p @ a for p in pd for a in ad))


def depolarize_two_qubit(dm: DensityMatrix, eps: float) -> DensityMatrix:
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"depolarizing strength must lie in [0, 1], got {eps}")
    return DensityMatrix((1 - eps) * dm.m + eps * np.eye(4) / 4)


@dataclass(frozen=True)
class NoiseModel:
    """Calibration snapshot for an (i, d) qubit pair; times in microseconds.

    Only the d-qubit times enter the delay channel.
    """

    t1_d: float = np.inf
    t2_d: float = np.inf
    cnot_error: float = 0.0
    t1_i: float = np.inf
    t2_i: float = np.inf
    name: Optional[str] = None

    def __post_init__(self):
        _check_times(self.t1_d, self.t2_d)
        _check_times(self.t1_i, self.t2_i)
        if not 0.0 <= self.cnot_error <= 1.0:
            raise ValueError("cnot_error must lie in [0, 1]")

    def delay_channel(self, delay_dt: int) -> KrausChannel:
        return thermal_relaxation(delay_us(delay_dt), self.t1_d, self.t2_d)


# Calibration snapshots: pair -> (i qubit T1, T2), (d qubit T1, T2), CNOT error.
PRESETS = {
    "auckland-pair-i": NoiseModel(
        t1_i=277.64, t2_i=359.54, t1_d=221.56, t2_d=202.29,
        cnot_error=3.653e-3, name="auckland-pair-i"),
    "auckland-pair-ii": NoiseModel(
        t1_i=200.88, t2_i=203.58, t1_d=250.98, t2_d=246.0,
        cnot_error=6.071e-3, name="auckland-pair-ii"),
    "toronto-pair-iii": NoiseModel(
        t1_i=136.34, t2_i=113.5, t1_d=117.56, t2_d=151.47,
        cnot_error=1.17e-2, name="toronto-pair-iii"),
}


def load_preset(name: str) -> NoiseModel:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown noise preset {name!r}; choose from {sorted(PRESETS)}"
        ) from None
