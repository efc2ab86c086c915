"""Sampled-codebook excess divergence at Warren against the resolvability bound.

    python3 scripts/resolvability_decay.py [--q 0.1] [--a 1] [--alpha 0.75] [--mult 1.2]
"""

import argparse
import math

from vpstealth import BernoulliDist, BscChannel, VpProfile, resolvability_divergence_bound, resolvability_threshold
from vpstealth.binary_channel import vp_input_dist
from vpstealth.oracle import sampled_codebook_divergences
from vpstealth.simulator import stream

ap = argparse.ArgumentParser()
ap.add_argument("--q", type=float, default=0.1)
ap.add_argument("--a", type=float, default=1.0)
ap.add_argument("--alpha", type=float, default=0.75)
ap.add_argument("--mult", type=float, default=1.2)
ap.add_argument("--draws", type=int, default=100)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()

ch = BscChannel(args.q)
r = args.mult * resolvability_threshold(args.a, ch)
print("n,MK,mean_excess_divergence,stderr,bound,coupled_bound")
for n in range(6, 15, 2):
    mk = int(round(math.exp(n**args.alpha * r)))
    src = vp_input_dist(VpProfile(args.a, args.alpha), n)
    _, ex = sampled_codebook_divergences(n, mk, src, ch, BernoulliDist(0.0), args.draws, stream(args.seed, n, kind=3))
    b = resolvability_divergence_bound(n, args.alpha, math.log(mk) / n**args.alpha, args.a, ch)
    print(f"{n},{mk},{ex.mean:.4e},{ex.stderr:.1e},{b.value:.4f},{b.coupled:.4f}")
