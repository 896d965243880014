"""Concurrence, coherence and predictability of the pre-measurement state.

Run:  python demos/triality.py
"""
import numpy as np

from qeraser.analysis import collapse_on_d, pre_measurement_state, theoretical_quantifiers, triality

for phi in np.linspace(0, np.pi, 5):
    t = triality(pre_measurement_state(phi, 0.5 * np.pi))
    print(f"phi = {phi / np.pi:.2f}pi  C = {t.C:.4f}  V1 = {t.Vk:.4f}  P1 = {t.Pk:.4f}  "
          f"sum of squares = {t.C ** 2 + t.Vk ** 2 + t.Pk ** 2:.12f}")

# After the d readout the i qubit is alone: no entanglement left, and the
# coherence and predictability are the subensemble visibility and |D|.
phi, phi_p = 0.5 * np.pi, 0.25 * np.pi
psi = pre_measurement_state(phi, phi_p)
q = theoretical_quantifiers(phi, phi_p)
for y in (0, 1):
    t = triality(collapse_on_d(psi, y))
    v, d = q.pair(f"sub{y}d")
    print(f"\nreadout {y}_d: C = {t.C:.2e}, V1 = {t.Vk:.6f} (V{y}d = {v:.6f}), "
          f"P1 = {t.Pk:.6f} (|D{y}d| = {abs(d):.6f})")
