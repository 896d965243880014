"""Delayed d readout on a noisy device, and the CNOT-removal comparison.

Run:  python demos/noise_studies.py
"""
import numpy as np

from qeraser import CircuitConfig, exact_joint, load_preset, quantify, theta_sweep
from qeraser.harness import cnot_ablation_rows
from qeraser.noise import delay_us

model = load_preset("auckland-pair-ii")
print(f"preset {model.name}: d qubit T1 = {model.t1_d} us, T2 = {model.t2_d} us, "
      f"CNOT error {model.cnot_error}\n")

for delay in (0, 50_000, 500_000):
    print(f"delay {delay} dt = {delay_us(delay):.0f} us")
    for phi in (0.25 * np.pi, 0.5 * np.pi):
        cfg = CircuitConfig(phi, 0.0, noise=model, delay_dt=delay)
        q = quantify(exact_joint(cfg.replace(configuration="open")),
                     theta_sweep(cfg, 0.04 * np.pi, None))
        print(f"  phi = {phi / np.pi:.2f}pi  V = {q.V:.4f}  V0d = {q.V0d:.4f}  Vavg = {q.Vavg:.4f}")

# With Ry(phi) removed the two qubits never entangle, so without noise
# V1d = 1 for every phi'.  A depolarizing CNOT spoils that.
print("\nsub-1d visibility with phi = 0")
rows = cnot_ablation_rows(np.linspace(0.25, 1.75, 7) * np.pi)
for arm in ("without-cnot", "with-cnot"):
    values = [float(r["V"]) for r in rows if r["arm"] == arm]
    print(f"  {arm:>12}: " + " ".join(f"{v:.4f}" for v in values))
