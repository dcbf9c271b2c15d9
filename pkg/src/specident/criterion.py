"""Smith-form / discriminant test for identification among 2-WL-equivalent graphs.

Given the last invariant factor d_n of the walk matrix and the discriminant
Delta of the adjacency matrix, a graph is certified when d_n is odd and no
odd prime q dividing d_n has q^2 dividing Delta. A certified graph G is
isomorphic to every graph that 2-WL cannot distinguish from G, and so to
every graph sharing its generalized block Laplacian spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import ContractError, SizeGuardError
from .factor import FactorBudget, factorize
from .graph import Graph, adjacency_matrix, find_isomorphism
from .linalg import discriminant
from .walk import full_walk_matrix, last_factor, truncated_walk_matrix
from .wl import wl2_equivalent

CERTIFIED = "Certified"
RANK_DEFICIENT = "RankDeficient"
INCONCLUSIVE_EVEN = "InconclusiveEven"
INCONCLUSIVE_SQUARE = "InconclusiveSquare"
UNKNOWN = "Unknown"
VERDICTS = (CERTIFIED, RANK_DEFICIENT, INCONCLUSIVE_EVEN, INCONCLUSIVE_SQUARE, UNKNOWN)

SEMANTICS_MAX_N = 10
PROPERTY = "identified among graphs that 2-WL cannot distinguish from it"

# criterion pipeline never needs big trial division: only gcd(d_n, Delta) is factored
DEFAULT_BUDGET = FactorBudget(trial_bound=10**5, rho_rounds=64)


@dataclass(frozen=True)
class CriterionReport:
    d_n: int
    delta: Optional[int]  # None when the verdict did not need it
    gcd_dn_delta: Optional[int]
    offending_primes: tuple[tuple[int, bool], ...]  # (q, q^2 | Delta)
    verdict: str
    verdict_prime: Optional[int] = None  # the q of InconclusiveSquare
    truncated: bool = False

    @property
    def d_n_digits(self) -> int:
        return len(str(self.d_n))

    def to_dict(self) -> dict:
        def big(x):
            return None if x is None else str(x)

        return {
            "d_n": str(self.d_n),
            "d_n_digits": self.d_n_digits,
            "delta": big(self.delta),
            "delta_digits": None if self.delta is None else len(str(self.delta)),
            "gcd_dn_delta": big(self.gcd_dn_delta),
            "offending_primes": [
                {"prime": str(q), "square_divides_delta": flag}
                for q, flag in self.offending_primes
            ],
            "verdict": self.verdict,
            "verdict_prime": big(self.verdict_prime),
            "truncated": self.truncated,
            "property": PROPERTY if self.verdict == CERTIFIED else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CriterionReport":
        def big(x):
            return None if x is None else int(x)

        return cls(
            d_n=int(data["d_n"]),
            delta=big(data["delta"]),
            gcd_dn_delta=big(data["gcd_dn_delta"]),
            offending_primes=tuple(
                (int(p["prime"]), bool(p["square_divides_delta"]))
                for p in data["offending_primes"]
            ),
            verdict=data["verdict"],
            verdict_prime=big(data["verdict_prime"]),
            truncated=bool(data["truncated"]),
        )


def run_criterion(g: Graph, truncated: bool = False,
                  factor_budget: FactorBudget = DEFAULT_BUDGET,
                  always_delta: bool = False) -> CriterionReport:
    if g.n < 1:
        raise ContractError("criterion needs at least one vertex")
    w = truncated_walk_matrix(g) if truncated else full_walk_matrix(g)
    d_n = last_factor(w)
    delta = discriminant(adjacency_matrix(g)) if always_delta else None

    def report(verdict, **kw):
        return CriterionReport(d_n=d_n, delta=delta, gcd_dn_delta=kw.pop("gcd", None),
                               offending_primes=kw.pop("primes", ()), verdict=verdict,
                               truncated=truncated, **kw)

    if d_n == 0:
        return report(RANK_DEFICIENT)
    if d_n == 1:
        return report(CERTIFIED)
    if d_n % 2 == 0:
        return report(INCONCLUSIVE_EVEN)

    if delta is None:
        delta = discriminant(adjacency_matrix(g))
    common = gcd(d_n, delta)  # gcd(d, 0) = d
    if common == 1:
        # no odd prime of d_n divides Delta, so none can square-divide it
        return report(CERTIFIED, gcd=1)

    fac = factorize(common, factor_budget)
    if delta == 0:
        # q^2 | 0 for every q
        primes = tuple((q, True) for q in fac.primes())
        if not primes:
            return report(UNKNOWN, gcd=common)
        return report(INCONCLUSIVE_SQUARE, gcd=common, primes=primes,
                      verdict_prime=primes[0][0])

    primes = tuple((q, delta % (q * q) == 0) for q in fac.primes())
    bad = [q for q, flag in primes if flag]
    if bad:
        return report(INCONCLUSIVE_SQUARE, gcd=common, primes=primes, verdict_prime=bad[0])
    if not fac.complete:
        return report(UNKNOWN, gcd=common, primes=primes)
    return report(CERTIFIED, gcd=common, primes=primes)


def criterion_semantics_check(g: Graph, h: Graph) -> bool:
    """For certified g: 2-WL equivalence with h must come with an explicit isomorphism."""
    if max(g.n, h.n) > SEMANTICS_MAX_N:
        raise SizeGuardError(f"brute-force isomorphism is capped at n <= {SEMANTICS_MAX_N}")
    if run_criterion(g).verdict != CERTIFIED:
        raise ContractError("criterion_semantics_check expects a certified graph")
    if not wl2_equivalent(g, h):
        return True
    return find_isomorphism(g, h) is not None
