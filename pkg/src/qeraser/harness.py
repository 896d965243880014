"""Sweep orchestration and the CSV/JSON record formats behind the CLI."""
from __future__ import annotations

import csv
import io
import json
import re
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import analysis
from .circuit import CircuitConfig
from .noise import NoiseModel, load_preset
from .randmeas import RandMeasPlan, estimate_purity
from .sampling import EnsembleCounts, SweepRecord, derive_seed, theta_points, theta_sweep

RAW_COLUMNS = ["phi", "phi_prime", "theta", "configuration", "delay_dt",
               "n_shots", "seed", "n00", "n01", "n10", "n11"]
ANALYSIS_COLUMNS = ["phi", "phi_prime", "perspective", "V", "D", "V2_plus_D2", "defined_flag"]
THEORY_COLUMNS = ["V_theory", "D_theory"]
ABLATION_COLUMNS = ["arm"] + ANALYSIS_COLUMNS
PURITY_COLUMNS = ["phi", "n_unitaries", "n_shots", "gamma_hat", "s2_hat", "std_err", "seed"]
ANALYSIS_PERSPECTIVES = ("total", "sub0d", "sub1d", "average")
EXACT_SEED = "exact"

DEFAULT_PHI = "0:2pi:0.1pi"
DEFAULT_PHI_PRIME = "0,0.25pi,0.5pi"
DEFAULT_THETA_STEP = 0.04 * np.pi

_ANGLE = re.compile(
    r"^\s*(?P<sign>[+-]?)(?P<num>\d*\.?\d*(?:e[+-]?\d+)?)\s*(?P<pi>pi)?(?:/(?P<den>\d*\.?\d+))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Parse ``1.2``, ``0.25pi``, ``pi/2``, ``-3pi/4`` into radians."""
    m = _ANGLE.match(text)
    if not m or not (m.group("num") or m.group("pi")):
        raise ValueError(f"cannot parse angle {text!r}")
    value = float(m.group("num")) if m.group("num") else 1.0
    if m.group("pi"):
        value *= np.pi
    elif not m.group("num"):
        raise ValueError(f"cannot parse angle {text!r}")
    if m.group("den"):
        value /= float(m.group("den"))
    return -value if m.group("sign") == "-" else value


def parse_angle_list(text: str) -> List[float]:
    """Comma-separated angles; ``start:stop:step`` expands to an inclusive range."""
    out: List[float] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            parts = token.split(":")
            if len(parts) != 3:
                raise ValueError(f"range must be start:stop:step, got {token!r}")
            start, stop, step = (parse_angle(p) for p in parts)
            if step <= 0:
                raise ValueError("range step must be positive")
            n = int(np.floor((stop - start) / step + 1e-9))
            out.extend(start + k * step for k in range(n + 1))
        else:
            out.append(parse_angle(token))
    if not out:
        raise ValueError("empty angle list")
    return out


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class RunSpec:
    phi_list: Sequence[float]
    phi_prime_list: Sequence[float] = (0.0,)
    theta_resolution: float = DEFAULT_THETA_STEP
    shots: Optional[int] = 5000  # None: exact probabilities
    configuration: str = "both"
    delay_dt: int = 0
    noise_preset: Optional[str] = None
    seed: int = 0
    output_path: Optional[str] = None
    cnot: bool = True
    workers: Optional[int] = None
    theta_list: Optional[Sequence[float]] = None  # replaces the theta grid when given

    def __post_init__(self):
        if not len(self.phi_list) or not len(self.phi_prime_list):
            raise ValueError("angle lists must be nonempty")
        if not 0 < self.theta_resolution <= np.pi:
            raise ValueError("theta resolution must lie in (0, pi]")
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be positive")
        if self.configuration not in ("closed", "open", "both"):
            raise ValueError(f"unknown configuration {self.configuration!r}")
        if self.delay_dt < 0:
            raise ValueError("delay_dt must be nonnegative")
        if self.noise_preset is not None:
            load_preset(self.noise_preset)

    @property
    def configurations(self) -> Tuple[str, ...]:
        return ("closed", "open") if self.configuration == "both" else (self.configuration,)


def run_sweep(spec: RunSpec, noise=None) -> List[EnsembleCounts]:
    """Counts for every (phi', phi, configuration, theta) point, in that order.

    ``noise`` overrides the run's named preset.
    """
    if noise is None and spec.noise_preset:
        noise = load_preset(spec.noise_preset)
    out: List[EnsembleCounts] = []
    pair = 0
    for phi_prime in spec.phi_prime_list:
        for phi in spec.phi_list:
            pair_seed = derive_seed(spec.seed, pair)
            pair += 1
            for k, conf in enumerate(spec.configurations):
                cfg = CircuitConfig(phi, phi_prime, 0.0, conf, spec.delay_dt, noise, spec.cnot)
                if spec.theta_list is not None:
                    sweep = theta_points(cfg, sorted(spec.theta_list), spec.shots,
                                         derive_seed(pair_seed, k), workers=spec.workers)
                else:
                    sweep = theta_sweep(cfg, spec.theta_resolution, spec.shots,
                                        derive_seed(pair_seed, k), workers=spec.workers)
                out.extend(sweep.counts)
    return out


def raw_rows(counts: Iterable[EnsembleCounts]) -> List[Dict[str, str]]:
    rows = []
    for c in counts:
        cfg = c.cfg
        rows.append(OrderedDict(
            phi=fmt(cfg.phi), phi_prime=fmt(cfg.phi_prime), theta=fmt(cfg.theta),
            configuration=cfg.configuration, delay_dt=str(int(cfg.delay_dt)),
            n_shots=str(c.n_shots), seed=EXACT_SEED if c.exact else str(c.seed),
            n00=fmt(c.n00), n01=fmt(c.n01), n10=fmt(c.n10), n11=fmt(c.n11),
        ))
    return rows


def counts_from_rows(rows: Iterable[Dict[str, str]]) -> List[EnsembleCounts]:
    out = []
    for r in rows:
        missing = [k for k in RAW_COLUMNS if k not in r]
        if missing:
            raise ValueError(f"raw counts row lacks columns {missing}")
        exact = r["seed"] == EXACT_SEED
        cfg = CircuitConfig(float(r["phi"]), float(r["phi_prime"]), float(r["theta"]),
                            r["configuration"], int(r["delay_dt"]))
        counts = [float(r[k]) if exact else int(r[k]) for k in ("n00", "n01", "n10", "n11")]
        if exact:
            counts = np.asarray(counts) * int(r["n_shots"]) / sum(counts)
        out.append(EnsembleCounts(counts, int(r["n_shots"]), cfg,
                                  seed=None if exact else int(r["seed"]), exact=exact))
    return out


def group_sweeps(counts: Sequence[EnsembleCounts]):
    """Map (phi, phi') -> {configuration: SweepRecord}, keeping file order."""
    groups: "OrderedDict[tuple, Dict[str, List[EnsembleCounts]]]" = OrderedDict()
    delays = {c.cfg.delay_dt for c in counts}
    if len(delays) > 1:
        raise ValueError(f"raw counts mix several delays {sorted(delays)}; analyze them separately")
    for c in counts:
        key = (c.cfg.phi, c.cfg.phi_prime)
        groups.setdefault(key, {}).setdefault(c.cfg.configuration, []).append(c)
    out = OrderedDict()
    for key, by_conf in groups.items():
        out[key] = {}
        for conf, items in by_conf.items():
            items = sorted(items, key=lambda c: c.cfg.theta)
            out[key][conf] = SweepRecord([c.cfg.theta for c in items], items)
    return out


def analysis_rows(phi: float, phi_prime: float, q: analysis.QuantifierSet,
                  perspectives: Sequence[str] = ANALYSIS_PERSPECTIVES,
                  theory: bool = False) -> List[Dict[str, str]]:
    ref = analysis.theoretical_quantifiers(phi, phi_prime) if theory else None
    rows = []
    for p in perspectives:
        v, d = q.pair(p)
        row = OrderedDict(
            phi=fmt(phi), phi_prime=fmt(phi_prime), perspective=p, V=fmt(v), D=fmt(d),
            V2_plus_D2=fmt(analysis.duality_sum(v, d)),
            defined_flag="1" if v is not None and d is not None else "0",
        )
        if ref is not None:
            tv, td = ref.pair(p)
            row["V_theory"], row["D_theory"] = fmt(tv), fmt(td)
        rows.append(row)
    return rows


def analyze_counts(counts: Sequence[EnsembleCounts],
                   perspectives: Sequence[str] = ANALYSIS_PERSPECTIVES,
                   estimator: str = "maxmin", theory: bool = False,
                   require_open: bool = True) -> List[Dict[str, str]]:
    rows = []
    for (phi, phi_prime), sweeps in group_sweeps(counts).items():
        closed = sweeps.get("closed")
        opened = sweeps.get("open")
        if closed is None:
            raise ValueError(f"no closed-configuration rows for phi={phi}, phi'={phi_prime}")
        if opened is None:
            if require_open:
                raise ValueError(f"no open-configuration rows for phi={phi}, phi'={phi_prime}")
            q = _visibility_only(closed, estimator)
        else:
            q = analysis.quantify(opened, closed, estimator)
        rows.extend(analysis_rows(phi, phi_prime, q, perspectives, theory))
    return rows


def _visibility_only(closed: SweepRecord, estimator: str) -> analysis.QuantifierSet:
    v = {p: analysis.visibility_from_sweep(closed, p, estimator) for p in analysis.PERSPECTIVES}
    return analysis.QuantifierSet(V=v["total"], D=None, V0d=v["sub0d"], V1d=v["sub1d"],
                                  D0d=None, D1d=None, Vavg=None, Davg=None,
                                  p0d=None, p1d=None)


def theory_rows(phi_list, phi_prime_list,
                perspectives: Sequence[str] = ANALYSIS_PERSPECTIVES) -> List[Dict[str, str]]:
    rows = []
    for phi_prime in phi_prime_list:
        for phi in phi_list:
            q = analysis.theoretical_quantifiers(phi, phi_prime)
            rows.extend(analysis_rows(phi, phi_prime, q, perspectives))
    return rows


def cnot_ablation_rows(phi_prime_list, noise_preset: Optional[str] = "auckland-pair-ii",
                       cnot_error: Optional[float] = None, shots: Optional[int] = None,
                       theta_resolution: float = DEFAULT_THETA_STEP, seed: int = 0,
                       arms: Sequence[str] = ("without-cnot", "with-cnot")) -> List[Dict[str, str]]:
    """Sub-1d quantifiers versus phi' with the Ry(phi) gate removed (phi = 0).

    The ``without-cnot`` arm is noiseless; the ``with-cnot`` arm adds
    depolarizing CNOT error from the preset (or ``cnot_error`` if given).
    """
    if cnot_error is None:
        cnot_error = load_preset(noise_preset).cnot_error if noise_preset else 0.0
    rows = []
    for a, arm in enumerate(arms):
        with_cnot = arm == "with-cnot"
        spec = RunSpec([0.0], list(phi_prime_list), theta_resolution, shots, "both",
                       seed=derive_seed(seed, a), cnot=with_cnot)
        counts = run_sweep(spec, NoiseModel(cnot_error=cnot_error) if with_cnot else None)
        for row in analyze_counts(counts, ("sub1d",)):
            rows.append(OrderedDict([("arm", arm)] + list(row.items())))
    return rows


def purity_rows(phi_list, plan_kwargs) -> List[Dict[str, str]]:
    rows = []
    for phi in phi_list:
        plan = RandMeasPlan(**plan_kwargs)
        est = estimate_purity(phi, plan)
        rows.append(OrderedDict(
            phi=fmt(phi), n_unitaries=str(plan.n_unitaries),
            n_shots=str(plan.n_shots_per_unitary), gamma_hat=fmt(est.gamma_hat),
            s2_hat=fmt(est.s2_hat), std_err=fmt(est.std_err), seed=str(plan.seed),
        ))
    return rows


# -- serialization ------------------------------------------------------------

def dumps(rows: List[Dict[str, str]], columns: Sequence[str], fmt_name: str = "csv") -> str:
    if fmt_name == "json":
        records = [{k: _json_value(r.get(k, "")) for k in _all_columns(rows, columns)} for r in rows]
        return json.dumps(records, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_all_columns(rows, columns), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _all_columns(rows, columns) -> List[str]:
    cols = list(columns)
    for r in rows[:1]:
        cols += [k for k in r if k not in cols]
    return cols


def _json_value(text: str):
    if text == "":
        return None
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def loads(text: str) -> List[Dict[str, str]]:
    """Parse CSV or JSON records back into string-valued rows."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return [{k: "" if v is None else (fmt(v) if isinstance(v, float) else str(v))
                 for k, v in rec.items()} for rec in json.loads(text)]
    return list(csv.DictReader(io.StringIO(text)))
