"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 size-guard violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .criterion import run_criterion
from .errors import Graph6Error, SizeGuardError
from .experiment import ExperimentConfig, default_workers, run_table, write_csv
from .graph import automorphism_orbits, parse_graph6
from .linalg import smith_normal_form
from .spectra import VARIANTS, compare
from .wl import first_difference_round

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_graph(path: str):
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise Graph6Error(f"expected exactly one graph6 record in {path}, found {len(lines)}", 0)
    return parse_graph6(lines[0])


def read_int_matrix(text: str) -> list[list[int]]:
    rows = [[int(tok) for tok in line.replace(",", " ").split()]
            for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix rows")
    return rows


def _cmd_check(args) -> int:
    g = _read_graph(args.file)
    rep = run_criterion(g, truncated=args.truncated, always_delta=args.delta)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(f"verdict: {rep.verdict}")
        print(f"d_n: {rep.d_n} ({rep.d_n_digits} digits)")
        if rep.delta is not None:
            print(f"discriminant: {rep.delta}")
        if rep.verdict_prime is not None:
            print(f"offending prime: {rep.verdict_prime}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    g, h = _read_graph(args.g1), _read_graph(args.g2)
    if args.variant == "wl2":
        diff = first_difference_round(g, h)
        out = {"variant": "wl2", "equivalent": diff is None}
        if diff is not None:
            out["first_difference_round"] = diff
        if args.json:
            print(json.dumps(out, indent=2))
        else:
            print(f"equivalent: {str(diff is None).lower()}")
        return EXIT_OK
    verdict = compare(g, h, args.variant, trials=args.trials, seed=args.seed)
    if args.json:
        print(json.dumps(verdict.to_dict(), indent=2))
    else:
        print(f"outcome: {verdict.outcome}")
        if verdict.error_bound is not None:
            print(f"error bound: {verdict.error_bound:.3e}")
        if verdict.certificate is not None:
            print(f"certificate level: {verdict.certificate.level}")
        if verdict.witness is not None:
            print(f"witness: {json.dumps(verdict.witness)}")
    return EXIT_OK


def _cmd_snf(args) -> int:
    try:
        m = read_int_matrix(Path(args.file).read_text())
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    dec = smith_normal_form(m)
    if args.json:
        print(json.dumps({"factors": [str(d) for d in dec.factors]}))
    else:
        print(" ".join(str(d) for d in dec.factors))
    return EXIT_OK


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(n=args.n, samples=args.samples, seed=args.seed,
                           truncated=args.truncated, parallelism=args.workers)
    summary = run_table(cfg)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_csv(summary.records, fh)
    print(summary.to_json(include_runtime=args.timing))
    return EXIT_OK


def _cmd_orbits(args) -> int:
    g = _read_graph(args.file)
    ob = automorphism_orbits(g)
    if args.json:
        print(json.dumps({"orbits": [list(o) for o in ob.orbits]}))
    else:
        print(f"{len(ob.orbits)} orbits")
        for o in ob.orbits:
            print(" ".join(map(str, o)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="specident", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="run the criterion on one graph6 file")
    c.add_argument("file")
    c.add_argument("--truncated", action="store_true")
    c.add_argument("--json", action="store_true")
    c.add_argument("--delta", action="store_true", help="always compute the discriminant")
    c.set_defaults(func=_cmd_check)

    c = sub.add_parser("compare", help="compare two graphs by a multivariate spectrum or 2-WL")
    c.add_argument("g1")
    c.add_argument("g2")
    c.add_argument("--variant", choices=VARIANTS + ("wl2",), default="gbls")
    c.add_argument("--trials", type=int, default=8)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_compare)

    c = sub.add_parser("snf", help="Smith invariant factors of an integer matrix file")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_snf)

    c = sub.add_parser("experiment", help="criterion statistics over seeded G(n,1/2) samples")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--samples", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--truncated", action="store_true")
    c.add_argument("--workers", type=int, default=default_workers())
    c.add_argument("--csv", help="write the per-sample log here")
    c.add_argument("--timing", action="store_true", help="include runtime in the JSON")
    c.set_defaults(func=_cmd_experiment)

    c = sub.add_parser("orbits", help="automorphism orbits (n <= 12)")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_orbits)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (Graph6Error, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
