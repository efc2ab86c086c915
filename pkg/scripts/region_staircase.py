"""Achievable (beta, alpha) staircase for a few of Warren's channels.

    python3 scripts/region_staircase.py [--delta 0.01]
"""

import argparse

import numpy as np

from vpstealth import BscChannel, achievable_region

ap = argparse.ArgumentParser()
ap.add_argument("--delta", type=float, default=0.01)
args = ap.parse_args()

betas = np.linspace(0, 1, 21)
print("q,k," + ",".join(f"{b:.2f}" for b in betas))
for q in (0.05, 0.1, 0.3, 0.5):
    rep = achievable_region(betas, BscChannel(q), args.delta)
    print(f"{q},{rep.k:.6f}," + ",".join(f"{r.alpha_max:.2f}" for r in rep.rows))
