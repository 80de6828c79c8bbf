"""
Approaching the large complex structure point of the quintic
============================================================

The mirror quintic periods near z = 0 come from the Frobenius method for
theta^4 - 5z(5 theta+1)(5 theta+2)(5 theta+3)(5 theta+4). Written as a
nilpotent orbit they let us follow the Yukawa coupling and the Hodge
metric down to the puncture.
"""

import numpy as np

from hodgelab import load_model, yukawa_limit_scan
from hodgelab.degeneration import limit_f3, wang_criterion
from hodgelab.families import frobenius_residual

model = load_model("quintic")
basis = model.basis
print("first series coefficients:", [int(basis.coeffs[0][k].real) for k in range(5)])
print(f"Frobenius recurrence residual: {frobenius_residual(basis):.1e}")
print(f"convergence radius: {model.radius:.3e} (= 5^-5)")

###############################################################################
# The limiting vector and Wang's criterion
# ----------------------------------------
# N F_inf != 0, so the Weil-Petersson metric is complete toward z = 0.

lim = limit_f3(model)
wang = wang_criterion(model.N, lim.Finf)
print("F_inf =", np.round(lim.Finf, 6))
print(f"|N F_inf| = {np.linalg.norm(wang.NFinf):.3f}  incomplete = {wang.incomplete}")

###############################################################################
# The Yukawa coupling near the puncture
# -------------------------------------
# z^3 F_zzz has a finite limit, and z^3 (1 - 5^5 z) F_zzz is exactly
# constant: the quintic Yukawa coupling is c / (z^3 (1 - 5^5 z)).

scan = yukawa_limit_scan(model, theta=0.3)
print(f"\n{'r':>9} {'z^3 F_zzz':>30} {'(1-5^5 z) z^3 F_zzz':>30} {'h r^2 log^2':>12}")
for row in scan.rows:
    z = row.r * np.exp(0.3j)
    print(f"{row.r:9.1e} {row.z3F:30.12e} {row.z3F * (1 - 5**5 * z):30.12e} {row.schwarz_ratio:12.6f}")

print(f"\nlimit (Richardson)      = {scan.limit_lhs:.12e}")
print(f"Q(F, M(M-1)(M-2) F)     = {scan.limit_rhs:.12e}")
print(f"h^3 >= |F|^2 on every rung: {scan.hodge_yukawa_ok}")
print(f"Schwarz exponent slope   : {scan.schwarz_slope:+.4f}  (bounded: {scan.schwarz_bounded})")

###############################################################################
# For comparison, a trivial orbit (N = 0) is at finite distance.

triv = yukawa_limit_scan(load_model("orbit_trivial"))
print(f"\norbit_trivial: limit {abs(triv.limit_lhs):.1e}, incomplete = {triv.wang.incomplete}")
