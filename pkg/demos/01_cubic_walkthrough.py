"""
The one-modulus cubic, step by step
===================================

The prepotential P = t^3 on the upper half-plane is the simplest special
Kahler geometry. Every quantity has a closed form, and the point t = i
makes the curvature bound of the Hodge metric an equality.
"""

import numpy as np

from hodgelab import load_model, hodge_report
from hodgelab.hodge import ANCHORS
from hodgelab.wp import normal_frame, wp_geometry, yukawa_data

model = load_model("cubic")
t = np.array([1j])

###############################################################################
# Periods and the Weil-Petersson layer
# ------------------------------------
# Omega = (1, t, -t^3, 3 t^2). Everything below is a pairing of its jet.

jet = model.jet(t, order=4)
print("Omega(i)    =", np.round(jet.omega, 12))

geo = wp_geometry(jet)
print(f"K           = {geo.K:.12f}   (-log 8 = {-np.log(8):.12f})")
print(f"g           = {geo.g[0, 0].real:.12f}")
print(f"Gamma, K_l  = {geo.Gamma[0, 0, 0]:.6f}, {geo.Kl[0]:.6f}")

yd = yukawa_data(jet)
print(f"F_ttt       = {yd.F[0, 0, 0]:.6f},  F_ttt,t = {abs(yd.Fcov[0, 0, 0, 0]):.1e}")

###############################################################################
# Normal frame
# ------------
# Rescaling t and the section makes g = 1, Gamma = 0, K_l = 0 at the point.

frame = normal_frame(jet)
F_n = frame.push_F(yd.F)
print(f"|F|^2 in the normal frame = {np.sum(abs(F_n) ** 2):.12f}  (4/3)")

###############################################################################
# Hodge metric and curvature
# --------------------------
# The report evaluates h both from the Ricci form of g and from the Yukawa
# formula, the closed-form curvature R = A + B, and an independent
# finite-difference curvature.

rep = hodge_report(model, t)
print(f"h (Ricci path)   = {rep.hodge.h_ricci[0, 0].real:.10f}")
print(f"h (Yukawa path)  = {rep.hodge.h_yukawa[0, 0].real:.10f}")
print(f"A, B             = {rep.A[0, 0, 0, 0].real:.10f}, {abs(rep.B[0, 0, 0, 0]):.1e}")
print(f"rho              = {rep.rho:.10f}   alpha = {rep.alpha:.10f}")
print(f"R closed form vs finite differences: {rep.curvature_deviation:.1e}")

###############################################################################
# Extremality
# -----------
# Ric(h) + alpha h and the holomorphic sectional curvature plus alpha both
# vanish here: the cubic attains the bound.

for key in ("ricci", "sectional"):
    c = rep.check(ANCHORS[key])
    print(f"{c.name:32} residual = {c.residual:+.2e}  passed = {c.passed}")

###############################################################################
# Away from t = i the metric is the hyperbolic one, h = (5/2) / Im(t)^2.

for y in (0.5, 1.0, 2.0):
    h = hodge_report(model, [0.2 + 1j * y], with_oracle=False).hodge.h_yukawa[0, 0].real
    print(f"Im t = {y:3.1f}:  h = {h:.10f}   (5/2)/y^2 = {2.5 / y**2:.10f}")
