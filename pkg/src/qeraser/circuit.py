"""The delayed-choice eraser circuit.

Gate sequence, starting from ``|0>_i |0>_d``::

    slice 1: Ry(phi) on d
    slice 2: CNOT, control d, target i
    slice 3: H on i
    slice 4: P(theta) on i
    slice 5: Ry(phi') on d
    slice 6: H on i        (closed configuration only)

followed by the (possibly delayed) computational-basis measurements of both
wires.  Removing the last Hadamard gives the open configuration.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import qcore
from .noise import NoiseModel, depolarize_two_qubit
from .qcore import DensityMatrix, TwoQubitState

CONFIGURATIONS = ("closed", "open")


@dataclass(frozen=True)
class CircuitConfig:
    phi: float
    phi_prime: float = 0.0
    theta: float = 0.0
    configuration: str = "closed"
    delay_dt: int = 0
    noise: Optional[NoiseModel] = None
    cnot: bool = True  # False drops the entangling gate (ablation runs)

    def __post_init__(self):
        for name in ("phi", "phi_prime", "theta"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.configuration not in CONFIGURATIONS:
            raise ValueError(f"configuration must be 'closed' or 'open', got {self.configuration!r}")
        if int(self.delay_dt) != self.delay_dt or self.delay_dt < 0:
            raise ValueError("delay_dt must be a nonnegative integer")

    def replace(self, **changes) -> "CircuitConfig":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class SliceStates:
    psi1: TwoQubitState
    psi2: TwoQubitState
    psi3: TwoQubitState
    psi4: TwoQubitState
    psi5: TwoQubitState
    psi6: TwoQubitState

    def __getitem__(self, n: int) -> TwoQubitState:
        return getattr(self, f"psi{n}")


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Outcome probabilities ``p[x_i, y_d]`` for one circuit setting."""

    p: np.ndarray
    cfg: Optional[CircuitConfig] = None

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).reshape(2, 2)
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > qcore.ATOL_EXACT:
            raise ValueError(f"probabilities sum to {p.sum()!r}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def __getitem__(self, key):
        return self.p[key]

    @property
    def p_i(self) -> np.ndarray:
        return self.p.sum(axis=1)

    @property
    def p_d(self) -> np.ndarray:
        return self.p.sum(axis=0)


def build_slices(cfg: CircuitConfig) -> SliceStates:
    """Pure states after each gate of the circuit."""
    if cfg.noise is not None:
        raise ValueError("build_slices is noiseless; use noisy_final_dm for noisy configs")
    psi0 = TwoQubitState.basis("00")
    psi1 = qcore.apply_to_qubit(psi0, qcore.gate_ry(cfg.phi), "d")
    psi2 = qcore.apply_cnot(psi1, control="d") if cfg.cnot else psi1
    psi3 = qcore.apply_to_qubit(psi2, qcore.gate_hadamard(), "i")
    psi4 = qcore.apply_to_qubit(psi3, qcore.gate_phase(cfg.theta), "i")
    psi5 = qcore.apply_to_qubit(psi4, qcore.gate_ry(cfg.phi_prime), "d")
    psi6 = qcore.apply_to_qubit(psi5, qcore.gate_hadamard(), "i")
    return SliceStates(psi1, psi2, psi3, psi4, psi5, psi6)


def _normalized(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def exact_joint(cfg: CircuitConfig) -> JointDistribution:
    if cfg.noise is not None:
        p = noisy_final_dm(cfg).diagonal().reshape(2, 2)
    else:
        slices = build_slices(cfg)
        final = slices.psi6 if cfg.configuration == "closed" else slices.psi5
        p = final.probabilities()
    return JointDistribution(_normalized(p), cfg)


def noisy_final_dm(cfg: CircuitConfig) -> DensityMatrix:
    """Density matrix right before readout, with CNOT and delay noise."""
    noise = cfg.noise
    if noise is None:
        raise ValueError("noisy_final_dm needs a noise model")
    h = qcore.gate_hadamard()
    rho = TwoQubitState.basis("00").density_matrix()
    rho = qcore.apply_unitary(rho, qcore.lift(qcore.gate_ry(cfg.phi), "d"))
    if cfg.cnot:
        rho = qcore.apply_unitary(rho, qcore.cnot_matrix("d"))
        rho = depolarize_two_qubit(rho, noise.cnot_error)
    rho = qcore.apply_unitary(rho, qcore.lift(h, "i"))
    rho = qcore.apply_unitary(rho, qcore.lift(qcore.gate_phase(cfg.theta), "i"))
    rho = qcore.apply_unitary(rho, qcore.lift(qcore.gate_ry(cfg.phi_prime), "d"))
    if cfg.delay_dt > 0:
        rho = qcore.apply_channel(rho, noise.delay_channel(cfg.delay_dt), "d")
    if cfg.configuration == "closed":
        rho = qcore.apply_unitary(rho, qcore.lift(h, "i"))
    return rho


# -- vectorized noiseless path ------------------------------------------------

def _ry_batch(phi: np.ndarray) -> np.ndarray:
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    return np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2).astype(complex)


def _on_i(g, s):
    return np.einsum("...ab,...by->...ay", g, s)


def _on_d(g, s):
    return np.einsum("...ab,...xb->...xa", g, s)


def joint_grid(phi, phi_prime, theta, configuration: str = "closed", cnot: bool = True) -> np.ndarray:
    """Noiseless outcome probabilities over broadcast angle arrays.

    Same gate-by-gate evolution as :func:`build_slices`, batched.  Returns an
    array of shape ``broadcast_shape + (2, 2)`` indexed ``[..., x_i, y_d]``.
    """
    if configuration not in CONFIGURATIONS:
        raise ValueError(f"unknown configuration {configuration!r}")
    phi, phi_prime, theta = np.broadcast_arrays(
        np.asarray(phi, float), np.asarray(phi_prime, float), np.asarray(theta, float))
    s = np.zeros(phi.shape + (2, 2), dtype=complex)
    s[..., 0, 0] = 1.0
    s = _on_d(_ry_batch(phi), s)
    if cnot:
        s[..., :, 1] = s[..., ::-1, 1].copy()
    h = qcore.gate_hadamard()
    s = _on_i(h, s)
    s[..., 1, :] *= np.exp(1j * theta)[..., None]
    s = _on_d(_ry_batch(phi_prime), s)
    if configuration == "closed":
        s = _on_i(h, s)
    return np.abs(s) ** 2
