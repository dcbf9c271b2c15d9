"""Seeded G(n, 1/2) experiments over the criterion."""
from __future__ import annotations

import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .criterion import (
    CERTIFIED,
    DEFAULT_BUDGET,
    INCONCLUSIVE_EVEN,
    INCONCLUSIVE_SQUARE,
    RANK_DEFICIENT,
    UNKNOWN,
    run_criterion,
)
from .factor import FactorBudget
from .graph import Graph, truncation_size

WORKERS_ENV = "SPECIDENT_WORKERS"
COUNT_KEYS = ("d_zero", "d_one", "certified", "inconclusive_even", "inconclusive_square",
              "unknown")
CSV_COLUMNS = ("n", "sample_index", "d_n", "verdict", "delta_zero", "ms")

_VERDICT_KEY = {
    CERTIFIED: "certified",
    INCONCLUSIVE_EVEN: "inconclusive_even",
    INCONCLUSIVE_SQUARE: "inconclusive_square",
    UNKNOWN: "unknown",
}


def default_workers() -> int:
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    samples: int
    seed: int = 0
    truncated: bool = False
    parallelism: int = 1
    factor_budget: FactorBudget = DEFAULT_BUDGET

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


@dataclass
class SampleRecord:
    n: int
    sample_index: int
    d_n: int
    verdict: str
    delta_zero: bool | None
    ms: float


@dataclass
class ExperimentSummary:
    n: int
    samples: int
    seed: int
    truncated: bool
    counts: dict
    runtime: float = 0.0
    records: list = field(default_factory=list)

    @property
    def proportions(self) -> dict:
        return {k: self.counts[k] / self.samples for k in COUNT_KEYS}

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "truncated": self.truncated,
            "counts": {k: self.counts[k] for k in COUNT_KEYS},
            "proportions": self.proportions,
        }
        if self.truncated:
            k = truncation_size(self.n) - 1
            if k >= 2:
                out["zeta_reference"] = {"k": k, "inverse_zeta": zeta_reference(k)}
        if include_runtime:
            out["runtime_s"] = self.runtime
        return out

    def to_json(self, include_runtime: bool = False) -> str:
        return json.dumps(self.to_dict(include_runtime), indent=2, sort_keys=True)


def sample_gnp_half(n: int, rng: np.random.Generator) -> Graph:
    """Each pair u < v, in lexicographic order, is an edge with probability 1/2."""
    m = n * (n - 1) // 2
    bits = rng.integers(0, 2, size=m) if m else ()
    pairs = ((u, v) for u in range(n) for v in range(u + 1, n))
    return Graph.from_edges(n, (p for p, b in zip(pairs, bits) if b))


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent PCG64 stream for sample ``index`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def _run_one(args) -> SampleRecord:
    n, seed, index, truncated, budget = args
    g = sample_gnp_half(n, sample_rng(seed, index))
    start = time.perf_counter()
    rep = run_criterion(g, truncated=truncated, factor_budget=budget)
    ms = (time.perf_counter() - start) * 1000
    delta_zero = None if rep.delta is None else rep.delta == 0
    return SampleRecord(n, index, rep.d_n, rep.verdict, delta_zero, ms)


def summarize(records: list[SampleRecord], n: int, seed: int, truncated: bool) -> ExperimentSummary:
    counts = dict.fromkeys(COUNT_KEYS, 0)
    for r in records:
        if r.verdict == RANK_DEFICIENT:
            counts["d_zero"] += 1
        else:
            counts[_VERDICT_KEY[r.verdict]] += 1
        if r.d_n == 1:
            counts["d_one"] += 1
    return ExperimentSummary(n, len(records), seed, truncated, counts, records=records)


def run_table(config: ExperimentConfig) -> ExperimentSummary:
    start = time.perf_counter()
    jobs = [(config.n, config.seed, i, config.truncated, config.factor_budget)
            for i in range(config.samples)]
    if config.parallelism > 1:
        with ProcessPoolExecutor(config.parallelism) as pool:
            chunk = max(1, len(jobs) // (8 * config.parallelism))
            records = list(pool.map(_run_one, jobs, chunksize=chunk))
    else:
        records = [_run_one(j) for j in jobs]
    summary = summarize(records, config.n, config.seed, config.truncated)
    summary.runtime = time.perf_counter() - start
    return summary


def write_csv(records: list[SampleRecord], fh) -> None:
    w = csv.writer(fh)
    w.writerow(CSV_COLUMNS)
    for r in records:
        dz = "" if r.delta_zero is None else int(r.delta_zero)
        w.writerow([r.n, r.sample_index, str(r.d_n), r.verdict, dz, f"{r.ms:.3f}"])


def read_csv(fh) -> list[SampleRecord]:
    out = []
    for row in csv.DictReader(fh):
        dz = None if row["delta_zero"] == "" else bool(int(row["delta_zero"]))
        out.append(SampleRecord(int(row["n"]), int(row["sample_index"]), int(row["d_n"]),
                                row["verdict"], dz, float(row["ms"])))
    return out


def zeta_reference(k: int) -> float:
    """1/zeta(k) from the partial sum plus an Euler-Maclaurin tail (abs. error < 1e-12)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    big_n = 1000
    partial = sum(j ** -k for j in range(1, big_n))
    # tail sum_{j >= N} j^-k
    tail = (big_n ** (1 - k) / (k - 1) + big_n ** -k / 2 + k * big_n ** (-k - 1) / 12
            - k * (k + 1) * (k + 2) * big_n ** (-k - 3) / 720)
    return 1 / (partial + tail)
