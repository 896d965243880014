"""Visibility and distinguishability from the total, subensemble and average perspectives.

Compares a 5000-shot simulated run with the closed forms.
Run:  python demos/three_perspectives.py
"""
import numpy as np

from qeraser import CircuitConfig, quantify, theoretical_quantifiers, theta_sweep

STEP = 0.04 * np.pi
SHOTS = 5000

print(f"{'phi':>6} {'phi_p':>6} | {'V':>6} {'D':>7} | {'V0d':>6} {'D0d':>7} | "
      f"{'V1d':>6} {'D1d':>7} | {'Vavg':>6} {'Davg':>7}")

for k, (phi, phi_p) in enumerate([(0.5, 0.0), (0.5, 0.25), (0.5, 0.5), (0.3, 0.25), (1.2, 0.5)]):
    closed = theta_sweep(CircuitConfig(phi * np.pi, phi_p * np.pi), STEP, SHOTS, seed=2 * k)
    opened = theta_sweep(CircuitConfig(phi * np.pi, phi_p * np.pi, configuration="open"),
                         STEP, SHOTS, seed=2 * k + 1)
    sampled = quantify(opened, closed)
    exact = theoretical_quantifiers(phi * np.pi, phi_p * np.pi)
    for label, q in (("sim", sampled), ("exact", exact)):
        cells = [q.V, q.D, q.V0d, q.D0d, q.V1d, q.D1d, q.Vavg, q.Davg]
        text = ["   n/a" if c is None else f"{c:6.3f}" for c in cells]
        print(f"{phi:5.2f}p {phi_p:5.2f}p | {text[0]} {text[1]:>7} | {text[2]} {text[3]:>7} | "
              f"{text[4]} {text[5]:>7} | {text[6]} {text[7]:>7}   {label}")

# In each subensemble the duality relation is saturated, while the total is not.
q = theoretical_quantifiers(0.3 * np.pi, 0.25 * np.pi)
print("\nphi = 0.3pi, phi' = 0.25pi")
print("  V^2 + D^2     =", round(q.V ** 2 + q.D ** 2, 6))
print("  V0d^2 + D0d^2 =", round(q.V0d ** 2 + q.D0d ** 2, 6))
print("  V1d^2 + D1d^2 =", round(q.V1d ** 2 + q.D1d ** 2, 6))
