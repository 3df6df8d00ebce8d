"""Compare DP and spectral counts on random knapsack equations.

    python scripts/count_compare.py --trials 300 --seed 7
"""

import argparse
import random
import time
from dataclasses import dataclass

from dagg.counting import count_dp, count_spectral
from dagg.instances import random_knapsack


@dataclass
class CountConfig:
    trials: int = 300
    seed: int = 0
    nmax: int = 5
    amax: int = 6
    bmax: int = 60
    umax: int = 5


def run(cfg: CountConfig) -> dict:
    rng = random.Random(cfg.seed)
    stats = {"bounded": [0, 0, 0.0], "unbounded": [0, 0, 0.0]}  # trials, agree, worst
    t0 = time.perf_counter()
    for _ in range(cfg.trials):
        eq = random_knapsack(rng, nmax=cfg.nmax, amax=cfg.amax, bmax=cfg.bmax, umax=cfg.umax)
        exact = count_dp(eq).count
        res = count_spectral(eq)
        s = stats["bounded" if eq.bounded else "unbounded"]
        s[0] += 1
        s[1] += res.count == exact
        # bounded: observed error; unbounded: reported alias + rounding bound
        s[2] = max(s[2], abs(res.estimate - exact) if eq.bounded else res.spectral_error_bound)
    out = {k: {"trials": v[0], "agree": v[1], "worst": v[2]} for k, v in stats.items()}
    out["seconds"] = round(time.perf_counter() - t0, 2)
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=CountConfig.trials)
    p.add_argument("--seed", type=int, default=CountConfig.seed)
    args = p.parse_args()
    print(run(CountConfig(trials=args.trials, seed=args.seed)))


if __name__ == "__main__":
    main()
