"""Fringes of the i qubit, washed out by entanglement and restored by post-selection.

Run:  python demos/eraser_fringes.py
"""
import numpy as np

from qeraser import CircuitConfig, build_slices, theta_sweep
from qeraser.analysis import pattern_from_counts, visibility_from_sweep

np.set_printoptions(precision=4, suppress=True)

# The Bell pair appears right after the CNOT when phi = pi/2.
slices = build_slices(CircuitConfig(np.pi / 2))
print("psi2 at phi = pi/2:", slices.psi2.amps.real)

# Sweep the phase shift and look at p(0_i) for three degrees of entanglement.
for phi in (0.0, 0.25 * np.pi, 0.5 * np.pi):
    sweep = theta_sweep(CircuitConfig(phi, 0.0), 0.04 * np.pi, n_shots=None)
    total = pattern_from_counts(sweep.counts_array(), "total")
    print(f"\nphi = {phi / np.pi:.2f} pi")
    print("  p(0_i)       every 0.2pi:", total[::5])
    print("  total visibility       :", round(visibility_from_sweep(sweep, "total"), 6))
    # conditioning on the 0 readout of d brings the fringes back
    print("  p(0_i | 0_d) every 0.2pi:", pattern_from_counts(sweep.counts_array(), "sub0d")[::5])
    print("  0_d visibility         :", round(visibility_from_sweep(sweep, "sub0d"), 6))
