#!/usr/bin/env python3
"""Criterion statistics with the truncated partition, next to the 1/zeta(k) reference.

    python3 scripts/run_truncated_partition.py --n 10 --samples 2000
"""
import argparse

from specident.experiment import ExperimentConfig, default_workers, run_table, zeta_reference
from specident.graph import truncation_size


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[10])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=default_workers())
    args = ap.parse_args()

    print(f"{'n':>4} {'cells':>5} {'d_n=0':>8} {'d_n=1':>8} {'1/zeta(k)':>10} {'time':>8}")
    for n in args.n:
        s = run_table(ExperimentConfig(n=n, samples=args.samples, seed=args.seed,
                                       truncated=True, parallelism=args.workers))
        p = s.proportions
        k = truncation_size(n) - 1
        ref = f"{zeta_reference(k):.4f}" if k >= 2 else "-"
        print(f"{n:>4} {k + 1:>5} {p['d_zero']:>8.4f} {p['d_one']:>8.4f} {ref:>10} "
              f"{s.runtime:>7.1f}s")


if __name__ == "__main__":
    main()
