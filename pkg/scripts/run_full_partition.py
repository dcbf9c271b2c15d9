#!/usr/bin/env python3
"""Criterion statistics over G(n, 1/2) with the full degree partition.

    python3 scripts/run_full_partition.py --n 10 20 --samples 2000 --workers 4
    python3 scripts/run_full_partition.py --n 40 50 --samples 10000   # long
"""
import argparse
import json

from specident.experiment import ExperimentConfig, default_workers, run_table, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[10, 20])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=default_workers())
    ap.add_argument("--csv-prefix", help="write per-sample logs to PREFIX_n<N>.csv")
    args = ap.parse_args()

    print(f"{'n':>4} {'samples':>8} {'d_n=0':>8} {'d_n=1':>8} {'certified':>10} {'time':>8}")
    for n in args.n:
        s = run_table(ExperimentConfig(n=n, samples=args.samples, seed=args.seed,
                                       parallelism=args.workers))
        p = s.proportions
        print(f"{n:>4} {args.samples:>8} {p['d_zero']:>8.4f} {p['d_one']:>8.4f} "
              f"{p['certified']:>10.4f} {s.runtime:>7.1f}s")
        if args.csv_prefix:
            with open(f"{args.csv_prefix}_n{n}.csv", "w", newline="") as fh:
                write_csv(s.records, fh)
        print(json.dumps(s.counts))


if __name__ == "__main__":
    main()
