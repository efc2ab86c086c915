"""Covert transmission at the square-root law: message size vs n and error rate.

Uses a = k(q, delta), alpha = 1/2 and a rate fraction of the largest
scaling constant, then simulates Bob's error rate with fresh codebooks.

    python3 scripts/square_root_law.py [--p 0.1] [--q 0.1] [--frac 0.5] [--trials 200]
"""

import argparse
import math

from vpstealth import (
    BscChannel,
    StealthScenario,
    TrialConfig,
    VpProfile,
    covert_scaling_constant,
    k_constant,
    r_alpha_max,
    run_reliability_trials,
    uncoded_divergence,
)

ap = argparse.ArgumentParser()
ap.add_argument("--p", type=float, default=0.1)
ap.add_argument("--q", type=float, default=0.1)
ap.add_argument("--delta", type=float, default=0.01)
ap.add_argument("--frac", type=float, default=0.5)
ap.add_argument("--trials", type=int, default=200)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()

bob, warren = BscChannel(args.p), BscChannel(args.q)
k = k_constant(warren, args.delta)
print(f"k = {k:.6f}, covert constant = {covert_scaling_constant(bob, warren, args.delta):.6f} nats/sqrt(n)")
sc = StealthScenario(VpProfile(k, 0.5), bob, warren)
r = args.frac * r_alpha_max(k, bob)
print("n,log_m,warren_divergence,errors,trials,ci_high,gallager_bound")
for e in range(10, 23, 2):
    n = 2**e
    m = max(2, int(round(math.exp(math.sqrt(n) * r))))
    rep = run_reliability_trials(TrialConfig(sc, n=n, m=m, trials=args.trials, seed=args.seed))
    d = uncoded_divergence(sc, n).exact
    print(f"{n},{math.log(m):.2f},{d:.6f},{rep.errors},{rep.trials},{rep.ci_high:.4f},{rep.gallager_bound:.3e}")
