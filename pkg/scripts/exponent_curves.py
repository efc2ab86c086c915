"""Finite-n E0 scaled by n^(1-alpha) approaching the VP closed form.

    python3 scripts/exponent_curves.py [--p 0.1] [--a 1] [--alpha 0.5]
"""

import argparse

import numpy as np

from vpstealth import BscChannel, VpProfile, e0_hat_alpha, eg_hat_alpha, r_alpha_max
from vpstealth.oracle import finite_n_exponent

ap = argparse.ArgumentParser()
ap.add_argument("--p", type=float, default=0.1)
ap.add_argument("--a", type=float, default=1.0)
ap.add_argument("--alpha", type=float, default=0.5)
args = ap.parse_args()

ch, prof = BscChannel(args.p), VpProfile(args.a, args.alpha)
rhos = np.linspace(0.1, 1.0, 10)
print("n," + ",".join(f"rho={r:.1f}" for r in rhos))
for e in (2, 4, 6, 8, 10):
    print(f"1e{e}," + ",".join(f"{finite_n_exponent(r, prof, 10**e, ch):.6f}" for r in rhos))
print("limit," + ",".join(f"{e0_hat_alpha(r, args.a, ch):.6f}" for r in rhos))

rmax = r_alpha_max(args.a, ch)
print(f"\nR_max = {rmax:.6f}")
print("R/R_max,EG_hat,rho*")
for f in np.linspace(0, 1.1, 12):
    res = eg_hat_alpha(f * rmax, args.a, ch)
    print(f"{f:.1f},{res.exponent:.6f},{res.rho:.4f}")
