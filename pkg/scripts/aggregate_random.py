"""Aggregate random systems of each family and certify them by enumeration.

    python scripts/aggregate_random.py --family bounded --trials 200 --seed 1
"""

import argparse
import random
import time
from dataclasses import dataclass

from dagg.aggregation import (
    aggregate_bounded,
    aggregate_bounded_explicit,
    aggregate_general,
    aggregate_pointed,
)
from dagg.instances import random_bounded_system, random_lineal_system, random_pointed_system
from dagg.oracle import certify_strong, pointed_window


@dataclass
class AggregateConfig:
    family: str = "bounded"  # bounded | explicit | pointed | general
    trials: int = 100
    seed: int = 0
    general_window: int = 3


def run(cfg: AggregateConfig) -> dict:
    rng = random.Random(cfg.seed)
    equal = 0
    max_k = 0
    max_den = 0
    t0 = time.perf_counter()
    for _ in range(cfg.trials):
        if cfg.family in ("bounded", "explicit"):
            sys, _ = random_bounded_system(rng)
            build = aggregate_bounded if cfg.family == "bounded" else aggregate_bounded_explicit
            agg = build(sys)
            window = None
        elif cfg.family == "pointed":
            sys, _ = random_pointed_system(rng)
            agg = aggregate_pointed(sys)
            window = pointed_window(sys, agg)
        elif cfg.family == "general":
            sys, _, _ = random_lineal_system(rng)
            agg = aggregate_general(sys)
            window = (cfg.general_window,) * sys.n
        else:
            raise SystemExit(f"unknown family {cfg.family!r}")
        equal += certify_strong(sys, agg, window).equal
        max_k = max(max_k, agg.k)
        max_den = max(max_den, agg.T.denominator())
    return {"family": cfg.family, "trials": cfg.trials, "equal": equal, "max_k": max_k,
            "max_denominator": max_den, "seconds": round(time.perf_counter() - t0, 2)}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--family", default=AggregateConfig.family)
    p.add_argument("--trials", type=int, default=AggregateConfig.trials)
    p.add_argument("--seed", type=int, default=AggregateConfig.seed)
    args = p.parse_args()
    print(run(AggregateConfig(args.family, args.trials, args.seed)))


if __name__ == "__main__":
    main()
