"""Visibility, distinguishability and triality quantifiers.

Three perspectives are supported: the total ensemble, the two subensembles
selected by the d-qubit readout, and the probability-weighted average over
those subensembles.  Undefined subensemble quantities (no events in the
conditioning outcome) are returned as ``None``, never NaN.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .circuit import CircuitConfig, JointDistribution, build_slices
from .qcore import ATOL_EXACT, TwoQubitState
from .sampling import EnsembleCounts, SweepRecord

PERSPECTIVES = ("total", "sub0d", "sub1d")
ESTIMATORS = ("maxmin", "cosfit")

# A conditioning weight below this fraction of the ensemble counts as empty.
ZERO_WEIGHT = 1e-12

OpenData = Union[JointDistribution, EnsembleCounts, SweepRecord]


@dataclass(frozen=True)
class QuantifierSet:
    V: float
    D: float
    V0d: Optional[float]
    V1d: Optional[float]
    D0d: Optional[float]
    D1d: Optional[float]
    Vavg: Optional[float]
    Davg: float
    p0d: float
    p1d: float

    def pair(self, perspective: str) -> Tuple[Optional[float], Optional[float]]:
        """(visibility, distinguishability) for one of total/sub0d/sub1d/average."""
        return {
            "total": (self.V, self.D),
            "sub0d": (self.V0d, self.D0d),
            "sub1d": (self.V1d, self.D1d),
            "average": (self.Vavg, self.Davg),
        }[perspective]


@dataclass(frozen=True)
class Subensembles:
    V0d: Optional[float]
    D0d: Optional[float]
    V1d: Optional[float]
    D1d: Optional[float]
    p0d: float
    p1d: float


@dataclass(frozen=True)
class TrialityTriple:
    C: float
    Vk: float
    Pk: float
    k: int


# -- total ensemble -----------------------------------------------------------

def contrast_total(jd: JointDistribution) -> float:
    p_i = jd.p_i
    return float(p_i[0] - p_i[1])


def visibility_maxmin(pattern, axis: int = -1):
    """``(max - min) / (max + min)`` of an interference pattern."""
    pattern = np.asarray(pattern, dtype=float)
    hi, lo = pattern.max(axis=axis), pattern.min(axis=axis)
    return (hi - lo) / (hi + lo)


def cosine_fit(theta, pattern) -> Tuple[float, float, float]:
    """Least-squares fit ``pattern ~ A + B cos(theta) + C sin(theta)``."""
    theta = np.asarray(theta, dtype=float)
    design = np.column_stack([np.ones_like(theta), np.cos(theta), np.sin(theta)])
    coef, *_ = np.linalg.lstsq(design, np.asarray(pattern, dtype=float), rcond=None)
    return tuple(float(c) for c in coef)


def visibility_cosine_fit(theta, pattern) -> float:
    a, b, c = cosine_fit(theta, pattern)
    return float(np.hypot(b, c) / a)


def pattern_from_counts(counts: np.ndarray, perspective: str) -> Optional[np.ndarray]:
    """p(0_i | conditioning) along the theta axis of ``counts[k, x_i, y_d]``.

    Returns None when any grid point has no events in the conditioning outcome.
    """
    counts = np.asarray(counts, dtype=float)
    total = counts.sum(axis=(1, 2))
    if perspective == "total":
        return counts[:, 0, :].sum(axis=1) / total
    if perspective not in PERSPECTIVES:
        raise ValueError(f"unknown perspective {perspective!r}")
    y = 0 if perspective == "sub0d" else 1
    weight = counts[:, :, y].sum(axis=1)
    if np.any(weight <= ZERO_WEIGHT * total):
        return None
    return counts[:, 0, y] / weight


def visibility_from_sweep(
    sweep: SweepRecord, perspective: str = "total", estimator: str = "maxmin"
) -> Optional[float]:
    if len(sweep.counts) == 0:
        raise ValueError("empty sweep")
    if estimator not in ESTIMATORS:
        raise ValueError(f"unknown estimator {estimator!r}")
    pattern = pattern_from_counts(sweep.counts_array(), perspective)
    if pattern is None:
        return None
    if estimator == "cosfit":
        return visibility_cosine_fit(sweep.theta_grid, pattern)
    return float(visibility_maxmin(pattern))


def contrast_coefficient(sweep: SweepRecord, perspective: str = "total") -> Optional[float]:
    """Signed ratio ``B/A`` of the fitted pattern ``A + B cos(theta) + ...``.

    Equals the contrast amplitude (``cos(phi)`` for the total ensemble),
    keeping the sign that the nonnegative visibility discards.
    """
    pattern = pattern_from_counts(sweep.counts_array(), perspective)
    if pattern is None:
        return None
    a, b, _ = cosine_fit(sweep.theta_grid, pattern)
    return b / a


def _open_probabilities(data: OpenData) -> Tuple[np.ndarray, Optional[CircuitConfig]]:
    if isinstance(data, JointDistribution):
        return np.asarray(data.p), data.cfg
    if isinstance(data, EnsembleCounts):
        return data.counts / data.counts.sum(), data.cfg
    if isinstance(data, SweepRecord):
        pooled = data.pooled()
        return pooled / pooled.sum(), data.cfg
    raise TypeError(f"cannot read open-configuration data from {type(data).__name__}")


def distinguishability_total(open_data: OpenData) -> float:
    """``2 p_succ - 1`` with ``p_succ = p(0_i,0_d) + p(1_i,1_d)``; sign kept."""
    p, _ = _open_probabilities(open_data)
    return float(2 * (p[0, 0] + p[1, 1]) - 1)


# -- subensembles and averages -----------------------------------------------

def _check_match(open_cfg: Optional[CircuitConfig], closed_cfg: Optional[CircuitConfig]) -> None:
    if open_cfg is None or closed_cfg is None:
        return
    if open_cfg.configuration != "open" or closed_cfg.configuration != "closed":
        raise ValueError("need open-configuration data and a closed-configuration sweep")
    for name in ("phi", "phi_prime", "delay_dt", "cnot"):
        if getattr(open_cfg, name) != getattr(closed_cfg, name):
            raise ValueError(f"open and closed data disagree on {name}")


def subensemble_quantifiers(
    open_data: OpenData, closed_sweep: SweepRecord, estimator: str = "maxmin"
) -> Subensembles:
    p, open_cfg = _open_probabilities(open_data)
    _check_match(open_cfg, closed_sweep.cfg)
    p_d = p.sum(axis=0)
    out = {}
    for y, tag in ((0, "0d"), (1, "1d")):
        if p_d[y] <= ZERO_WEIGHT:
            out["D" + tag] = None
        else:
            # success means guessing x_i == y_d
            out["D" + tag] = float(2 * p[y, y] / p_d[y] - 1)
        out["V" + tag] = visibility_from_sweep(closed_sweep, "sub" + tag, estimator)
    return Subensembles(p0d=float(p_d[0]), p1d=float(p_d[1]), **out)


def _weighted(values, weights) -> float:
    total = 0.0
    for v, w in zip(values, weights):
        if v is None:
            if w > ZERO_WEIGHT:
                raise ValueError("undefined subensemble term carries nonzero weight")
            continue
        total += w * v
    return float(total)


def average_quantifiers(q: Subensembles) -> Tuple[float, float]:
    """``(Vavg, Davg)``; undefined terms may appear only with zero weight."""
    weights = (q.p0d, q.p1d)
    return _weighted((q.V0d, q.V1d), weights), _weighted((q.D0d, q.D1d), weights)


def quantify(
    open_data: OpenData, closed_sweep: SweepRecord, estimator: str = "maxmin"
) -> QuantifierSet:
    """All quantifiers for one (phi, phi') pair from open data and a closed sweep.

    ``Vavg`` is None when a subensemble visibility is undefined although its
    weight (taken from the open data) is not zero, which can happen with
    sparse sampled counts.
    """
    sub = subensemble_quantifiers(open_data, closed_sweep, estimator)
    weights = (sub.p0d, sub.p1d)
    try:
        v_avg = _weighted((sub.V0d, sub.V1d), weights)
    except ValueError:
        v_avg = None
    return QuantifierSet(
        V=visibility_from_sweep(closed_sweep, "total", estimator),
        D=distinguishability_total(open_data),
        V0d=sub.V0d, V1d=sub.V1d, D0d=sub.D0d, D1d=sub.D1d,
        Vavg=v_avg, Davg=_weighted((sub.D0d, sub.D1d), weights),
        p0d=sub.p0d, p1d=sub.p1d,
    )


def theoretical_quantifiers(phi: float, phi_prime: float) -> QuantifierSet:
    """Closed-form quantifiers of the noiseless circuit.

    Evaluated through the half angles ``(phi +- phi') / 2``, using
    ``1 + cos(phi) cos(phi') = cp^2 + cm^2`` and ``1 - cos(phi) cos(phi') = sp^2 + sm^2``,
    which avoids cancellation next to the undefined lines.  Both
    subensemble distinguishabilities carry the sign of ``-sin(phi) sin(phi')``,
    so ``p0d * D0d + p1d * D1d`` reproduces the total ``D``.
    """
    c, cp_ = np.cos(phi), np.cos(phi_prime)
    s, sp_ = np.sin(phi), np.sin(phi_prime)
    hp, hm = (phi + phi_prime) / 2, (phi - phi_prime) / 2
    cp, cm, sp, sm = np.cos(hp), np.cos(hm), np.sin(hp), np.sin(hm)
    w0, w1 = cp * cp + cm * cm, sp * sp + sm * sm
    p0d, p1d = w0 / 2, w1 / 2
    if p0d <= ZERO_WEIGHT:
        v0, d0 = None, None
    else:
        v0, d0 = 2 * abs(cp * cm) / w0, (cp * cp - cm * cm) / w0
    if p1d <= ZERO_WEIGHT:
        v1, d1 = None, None
    else:
        v1, d1 = 2 * abs(sp * sm) / w1, (sm * sm - sp * sp) / w1
    return QuantifierSet(
        V=float(abs(c)), D=float(-s * sp_),
        V0d=_f(v0), V1d=_f(v1), D0d=_f(d0), D1d=_f(d1),
        Vavg=float(max(abs(c), abs(cp_))), Davg=float(-s * sp_),
        p0d=float(p0d), p1d=float(p1d),
    )


def _f(x):
    return None if x is None else float(x)


# -- bipartite state quantities ----------------------------------------------

def triality(state: TwoQubitState, k: int = 1) -> TrialityTriple:
    """Concurrence, coherence and predictability of qubit ``k`` (1 = i, 2 = d)."""
    a, b, c, d = state.amps
    conc = 2 * abs(a * d - b * c)
    if k == 1:
        coh = 2 * abs(a * np.conj(c) + b * np.conj(d))
        pred = abs((abs(c) ** 2 + abs(d) ** 2) - (abs(a) ** 2 + abs(b) ** 2))
    elif k == 2:
        coh = 2 * abs(a * np.conj(b) + c * np.conj(d))
        pred = abs((abs(b) ** 2 + abs(d) ** 2) - (abs(a) ** 2 + abs(c) ** 2))
    else:
        raise ValueError("k must be 1 or 2")
    return TrialityTriple(float(conc), float(coh), float(pred), k)


def subensemble_from_amplitudes(a: complex, b: complex, c: complex = 0, d: complex = 0):
    """``(contrast coefficient, V, D)`` of the subensemble carried by ``a, b``.

    ``a`` is the i-qubit amplitude that the d readout predicts (the successful
    guess) and ``b`` the other one, both paired with the same d readout;
    ``c, d`` belong to the other readout and do not enter.  The contrast coefficient ``2 Re(a* b) / (|a|^2 + |b|^2)`` is the
    signed contrast at zero extra phase.  Returns ``(None, None, None)`` when
    the subensemble is empty.
    """
    wa, wb = abs(a) ** 2, abs(b) ** 2
    norm = wa + wb
    if norm <= ZERO_WEIGHT:
        return None, None, None
    contrast = 2 * (np.conj(a) * b).real / norm
    return float(contrast), float(2 * abs(a) * abs(b) / norm), float((wa - wb) / norm)


def subensemble_from_state(state: TwoQubitState, outcome: int):
    """Apply :func:`subensemble_from_amplitudes` to the ``outcome`` readout of d.

    The guess for readout ``y`` is ``x_i = y``, so for ``1_d`` the ``|1>_i``
    amplitude plays the role of ``a``.
    """
    amps = state.amps
    if outcome == 0:
        return subensemble_from_amplitudes(amps[0], amps[2], amps[1], amps[3])
    if outcome == 1:
        return subensemble_from_amplitudes(amps[3], amps[1], amps[0], amps[2])
    raise ValueError("outcome must be 0 or 1")


def pre_measurement_state(phi: float, phi_prime: float) -> TwoQubitState:
    """State just before the d readout with the phase shift set to zero."""
    return build_slices(CircuitConfig(phi, phi_prime, 0.0)).psi5


def collapse_on_d(state: TwoQubitState, outcome: int) -> Optional[TwoQubitState]:
    """Post-measurement state for d readout ``outcome``; None if it has no weight."""
    amps = np.array(state.amps).reshape(2, 2)
    amps[:, 1 - outcome] = 0.0
    if np.sum(np.abs(amps) ** 2) <= ZERO_WEIGHT:
        return None
    return TwoQubitState.from_unnormalized(amps.ravel())


def duality_sum(v: Optional[float], d: Optional[float]) -> Optional[float]:
    if v is None or d is None:
        return None
    return v * v + d * d


def is_saturated(v: Optional[float], d: Optional[float], atol: float = ATOL_EXACT) -> bool:
    total = duality_sum(v, d)
    return total is not None and abs(total - 1.0) <= atol
