"""Exact linear algebra for one- and two-qubit states.

Joint basis ordering is ``|i d>`` with the interference ("i") qubit as the
leftmost ket, so the flat amplitude index is ``2 * x_i + y_d``::

    0 -> |00>   1 -> |01>   2 -> |10>   3 -> |11>

All entropies use log base 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

ATOL_EXACT = 1e-12
ATOL_CHANNEL = 1e-10

WIRES = ("i", "d")

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _check_wire(which: str) -> None:
    if which not in WIRES:
        raise ValueError(f"wire must be 'i' or 'd', got {which!r}")


def _check_angle(x: float, name: str) -> float:
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x}")
    return x


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Pure two-qubit state ``a|00> + b|01> + c|10> + d|11>`` (``|i d>`` order)."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > ATOL_EXACT:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm2!r})")
        object.__setattr__(self, "amps", _frozen(amps))

    @classmethod
    def basis(cls, label: str) -> "TwoQubitState":
        amps = np.zeros(4, dtype=complex)
        amps[int(label, 2)] = 1.0
        return cls(amps)

    @classmethod
    def from_unnormalized(cls, amps) -> "TwoQubitState":
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        return cls(amps / np.linalg.norm(amps))

    a = property(lambda self: complex(self.amps[0]))
    b = property(lambda self: complex(self.amps[1]))
    c = property(lambda self: complex(self.amps[2]))
    d = property(lambda self: complex(self.amps[3]))

    def probabilities(self) -> np.ndarray:
        """Born probabilities as a 2x2 array indexed ``[x_i, y_d]``."""
        return (np.abs(self.amps) ** 2).reshape(2, 2)

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amps, self.amps.conj()))

    def allclose(self, other: "TwoQubitState", atol: float = ATOL_EXACT) -> bool:
        return bool(np.allclose(self.amps, other.amps, rtol=0, atol=atol))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 2x2 or 4x4 matrix."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape not in ((2, 2), (4, 4)):
            raise ValueError(f"density matrix must be 2x2 or 4x4, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("density matrix must be finite")
        if not np.allclose(m, m.conj().T, rtol=0, atol=ATOL_EXACT):
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > ATOL_EXACT:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        if np.linalg.eigvalsh(m).min() < -ATOL_CHANNEL:
            raise ValueError("density matrix has negative eigenvalues")
        object.__setattr__(self, "m", _frozen(m))

    @property
    def dim(self) -> int:
        return self.m.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.clip(np.linalg.eigvalsh(self.m), 0.0, 1.0)

    def diagonal(self) -> np.ndarray:
        return np.clip(np.diag(self.m).real, 0.0, None)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Single-qubit CPTP map given by its Kraus operators."""

    ops: tuple

    def __post_init__(self):
        ops = tuple(_frozen(k) for k in self.ops)
        if not ops or any(k.shape != (2, 2) for k in ops):
            raise ValueError("Kraus operators must be a nonempty list of 2x2 matrices")
        total = sum(k.conj().T @ k for k in ops)
        if not np.allclose(total, I2, rtol=0, atol=ATOL_CHANNEL):
            raise ValueError("Kraus operators violate completeness (sum K^dag K != 1)")
        object.__setattr__(self, "ops", ops)


# -- gates --------------------------------------------------------------------

def check_unitary(u: np.ndarray, atol: float = ATOL_EXACT) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"single-qubit gate must be 2x2, got {u.shape}")
    if not np.allclose(u @ u.conj().T, I2, rtol=0, atol=atol):
        raise ValueError("gate is not unitary")
    return u


def gate_phase(theta: float) -> np.ndarray:
    """Phase gate ``diag(1, e^{i theta})``."""
    theta = _check_angle(theta, "theta")
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)


def gate_ry(phi: float) -> np.ndarray:
    """Rotation about the y axis, ``exp(-i phi Y / 2)``."""
    phi = _check_angle(phi, "phi")
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def gate_hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def lift(g: np.ndarray, which: str) -> np.ndarray:
    """Embed a single-qubit operator into the two-qubit space on wire ``which``."""
    _check_wire(which)
    return np.kron(g, I2) if which == "i" else np.kron(I2, g)


def cnot_matrix(control: str) -> np.ndarray:
    """CNOT as a 4x4 permutation; the other wire is the target."""
    _check_wire(control)
    perm = np.zeros((4, 4), dtype=complex)
    for x in (0, 1):
        for y in (0, 1):
            if control == "i":
                out = (x, y ^ x)
            else:
                out = (x ^ y, y)
            perm[2 * out[0] + out[1], 2 * x + y] = 1.0
    return perm


def apply_to_qubit(state: TwoQubitState, g: np.ndarray, which: str) -> TwoQubitState:
    g = check_unitary(g)
    return TwoQubitState(lift(g, which) @ state.amps)


def apply_cnot(state: TwoQubitState, control: str) -> TwoQubitState:
    """Flip the target wire when ``control`` is 1.

    ``control="i"`` maps ``|x, y> -> |x, y xor x>``;
    ``control="d"`` maps ``|x, y> -> |x xor y, y>``.
    """
    return TwoQubitState(cnot_matrix(control) @ state.amps)


# -- partial trace, channels --------------------------------------------------

def partial_trace(
    state: Union[TwoQubitState, DensityMatrix], keep: str
) -> DensityMatrix:
    """Reduced 2x2 state of wire ``keep``."""
    _check_wire(keep)
    if isinstance(state, TwoQubitState):
        m = np.outer(state.amps, state.amps.conj())
    else:
        if state.dim != 4:
            raise ValueError("partial trace needs a two-qubit density matrix")
        m = state.m
    t = m.reshape(2, 2, 2, 2)  # [i, d, i', d']
    if keep == "i":
        red = np.einsum("ajbj->ab", t)
    else:
        red = np.einsum("jajb->ab", t)
    return DensityMatrix(red)


def _apply_kraus(m: np.ndarray, ops: Sequence[np.ndarray]) -> np.ndarray:
    out = sum(k @ m @ k.conj().T for k in ops)
    return (out + out.conj().T) / 2


def apply_channel(dm: DensityMatrix, ch: KrausChannel, which: str = "d") -> DensityMatrix:
    """Evolve ``dm`` through ``ch``; for 4x4 inputs the channel acts on wire ``which``."""
    if not isinstance(ch, KrausChannel):
        ch = KrausChannel(tuple(ch))
    if dm.dim == 2:
        ops = ch.ops
    else:
        ops = [lift(k, which) for k in ch.ops]
    return DensityMatrix(_apply_kraus(dm.m, ops))


def apply_unitary(dm: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    m = u @ dm.m @ u.conj().T
    return DensityMatrix((m + m.conj().T) / 2)


# -- scalar functionals -------------------------------------------------------

def entropy_of_entanglement(dm: DensityMatrix) -> float:
    """Von Neumann entropy ``-Tr(rho log2 rho)`` in bits."""
    lam = dm.eigenvalues()
    lam = lam[lam > 0]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def purity(dm: DensityMatrix) -> float:
    """Degree of purity ``Tr(rho^2)``."""
    return float(np.real(np.trace(dm.m @ dm.m)))


def renyi2_entropy(dm: DensityMatrix) -> float:
    return float(-np.log2(purity(dm)))
