"""Second-order Renyi entropy of the i qubit right after entangling, from randomized measurements.

Run:  python demos/renyi_entropy.py
"""
import numpy as np

from qeraser import RandMeasPlan, estimate_purity
from qeraser.randmeas import theoretical_purity

plan = RandMeasPlan(n_unitaries=500, n_shots_per_unitary=512, seed=7)
print(f"{plan.n_unitaries} Haar unitaries x {plan.n_shots_per_unitary} shots\n")
print(f"{'phi':>7}  {'gamma_hat':>9} {'+-':>6}  {'gamma':>6}  {'S2_hat':>7}  {'S2':>6}")
for phi in np.linspace(0, np.pi, 11):
    est = estimate_purity(phi, plan)
    gamma = theoretical_purity(phi)
    s2 = "   n/a" if est.s2_hat is None else f"{est.s2_hat:7.4f}"
    print(f"{phi / np.pi:6.1f}p  {est.gamma_hat:9.4f} {est.std_err:6.4f}  {gamma:6.4f}  {s2}  "
          f"{-np.log2(gamma) + 0.0:6.4f}")
