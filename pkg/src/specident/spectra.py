"""Multivariate characteristic polynomials of adjacency pencils.

A pencil is W(s) = s_0 A + sum_k s_k M_k where every M_k is a diagonal cell
indicator D_i, a block indicator J_{i,j} = e_i e_j^T, or the all-ones J.
Two graphs are compared through phi(s; t) = det(tI - W(s)).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, log2
from typing import Literal, Optional, Sequence

from .errors import (
    ContractError,
    InconsistentSystemError,
    NoUniqueSolutionError,
    SizeGuardError,
)
from .factor import is_probable_prime
from .graph import (
    DegreePartition,
    Graph,
    adjacency_matrix,
    degree_partition,
    truncated_partition,
)
from .linalg import (
    IntMatrix,
    IntPolynomial,
    RatMatrix,
    char_poly,
    char_poly_mod,
    level,
    poly_trim,
    solve_right,
    transpose,
)
from .walk import build_walk_matrix, last_factor

Variant = Literal["spectrum", "generalized", "gdls", "gbdls", "gbls", "gbls_truncated"]
VARIANTS: tuple[str, ...] = ("spectrum", "generalized", "gdls", "gbdls", "gbls", "gbls_truncated")
_PARTITIONED = {"gdls", "gbdls", "gbls", "gbls_truncated"}

PRIME_WINDOW = (1 << 60, 1 << 61)
DEFAULT_TRIALS = 8

SYMBOLIC_MAX_N = 8
SYMBOLIC_MAX_BLOCKS = 5


@dataclass(frozen=True)
class Term:
    kind: Literal["diag", "block", "ones"]
    i: int = -1
    j: int = -1


@dataclass(frozen=True)
class Pencil:
    base: IntMatrix
    blocks: tuple[Term, ...]
    partition: DegreePartition

    @property
    def n(self) -> int:
        return len(self.base)

    def term_matrix(self, term: Term) -> IntMatrix:
        n = self.n
        if term.kind == "ones":
            return [[1] * n for _ in range(n)]
        cell = self.partition.cell_of()
        if term.kind == "diag":
            return [[int(u == v and cell[u] == term.i) for v in range(n)] for u in range(n)]
        return [[int(cell[u] == term.i and cell[v] == term.j) for v in range(n)]
                for u in range(n)]

    def evaluate(self, s: Sequence[int]) -> IntMatrix:
        if len(s) != 1 + len(self.blocks):
            raise ContractError(f"pencil has {1 + len(self.blocks)} variables, got {len(s)}")
        w = [[s[0] * x for x in row] for row in self.base]
        cell = self.partition.cell_of()
        n = self.n
        for coef, term in zip(s[1:], self.blocks):
            if not coef:
                continue
            if term.kind == "ones":
                for u in range(n):
                    for v in range(n):
                        w[u][v] += coef
            elif term.kind == "diag":
                for u in range(n):
                    if cell[u] == term.i:
                        w[u][u] += coef
            else:
                rows = [u for u in range(n) if cell[u] == term.i]
                cols = [v for v in range(n) if cell[v] == term.j]
                for u in rows:
                    for v in cols:
                        w[u][v] += coef
        return w


def pencil_for(g: Graph, variant: str) -> Pencil:
    if variant not in VARIANTS:
        raise ContractError(f"unknown variant {variant!r}")
    part = truncated_partition(g) if variant == "gbls_truncated" and g.n else degree_partition(g)
    p = part.p
    if variant == "spectrum":
        blocks: tuple[Term, ...] = ()
    elif variant == "generalized":
        blocks = (Term("ones"),)
    elif variant == "gdls":
        blocks = tuple(Term("diag", i) for i in range(p))
    elif variant == "gbdls":
        blocks = tuple(Term("block", i, i) for i in range(p))
    else:
        blocks = tuple(Term("block", i, j) for i in range(p) for j in range(p))
    return Pencil(adjacency_matrix(g), blocks, part)


def eval_char_poly(p: Pencil, s: Sequence[int], modulus: Optional[int] = None) -> IntPolynomial:
    w = p.evaluate(s)
    if modulus is None:
        return char_poly(w)
    if not is_probable_prime(modulus):
        raise ContractError(f"modulus {modulus} is not prime")
    return char_poly_mod(w, modulus)


# --- symbolic expansion -------------------------------------------------------
# Polynomials in (t, s_0, ..., s_k) are dicts {exponent tuple: coefficient}.

Poly = dict[tuple[int, ...], int]


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for mono, c in b.items():
        v = out.get(mono, 0) + sign * c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            out[mono] = out.get(mono, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def symbolic_char_poly(p: Pencil) -> Poly:
    """Full expansion of det(tI - W(s)); exponent tuples are (t, s_0, s_1, ...)."""
    n, k = p.n, len(p.blocks)
    if n > SYMBOLIC_MAX_N or k > SYMBOLIC_MAX_BLOCKS:
        raise SizeGuardError(
            f"symbolic expansion is capped at n <= {SYMBOLIC_MAX_N} and "
            f"{SYMBOLIC_MAX_BLOCKS} blocks, got n = {n}, {k} blocks")
    nv = 2 + k

    def unit(idx: int) -> tuple[int, ...]:
        return tuple(int(i == idx) for i in range(nv))

    terms = [p.base] + [p.term_matrix(t) for t in p.blocks]
    entries = []
    for u in range(n):
        row = []
        for v in range(n):
            e: Poly = {unit(0): 1} if u == v else {}
            for idx, m in enumerate(terms):
                if m[u][v]:
                    e = _padd(e, {unit(idx + 1): m[u][v]}, -1)
            row.append(e)
        entries.append(row)

    memo: dict[int, Poly] = {}

    def minor(r: int, mask: int) -> Poly:
        if r == n:
            return {(0,) * nv: 1}
        if mask in memo:
            return memo[mask]
        total: Poly = {}
        pos = 0
        for c in range(n):
            if not mask >> c & 1:
                continue
            if entries[r][c]:
                term = _pmul(entries[r][c], minor(r + 1, mask & ~(1 << c)))
                total = _padd(total, term, -1 if pos % 2 else 1)
            pos += 1
        memo[mask] = total
        return total

    return minor(0, (1 << n) - 1)


def evaluate_symbolic(poly: Poly, s: Sequence[int]) -> IntPolynomial:
    """Specialize the s variables; returns ascending coefficients in t."""
    out: dict[int, int] = {}
    for mono, c in poly.items():
        val = c
        for e, x in zip(mono[1:], s):
            val *= x**e
        out[mono[0]] = out.get(mono[0], 0) + val
    deg = max(out, default=-1)
    return poly_trim([out.get(i, 0) for i in range(deg + 1)])


def find_separating_point(polys: Sequence[Poly], nvars: int, seed: int = 0,
                          bound: int = 8, tries: int = 1000) -> Optional[list[int]]:
    """Integer point at which the given distinct polynomials take distinct values."""
    rng = random.Random(seed)
    for _ in range(tries):
        s = [rng.randint(-bound, bound) for _ in range(nvars)]
        vals = [tuple(evaluate_symbolic(p, s)) for p in polys]
        if len(set(vals)) == len(vals):
            return s
    return None


# --- orthogonal certificates ---------------------------------------------------

@dataclass(frozen=True)
class OrthogonalCertificate:
    q: RatMatrix
    level: int
    d_n: int


def _rat_matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt]
            for row in a]


def reconstruct_q(g: Graph, h: Graph, truncated: bool = False) -> Optional[OrthogonalCertificate]:
    """The rational orthogonal Q with Q^T A Q = B and Q^T e_i = e_i, if it exists.

    Raises NoUniqueSolutionError when the walk matrix of g lacks full row rank.
    """
    part = truncated_partition if truncated else degree_partition
    pa, pb = part(g), part(h)
    if g.n != h.n or pa.shape() != pb.shape():
        raise ContractError("reconstruct_q needs identical degree partition shapes")
    wa = build_walk_matrix(g, pa)
    wb = build_walk_matrix(h, pb)
    try:
        r = solve_right(wa.matrix, wb.matrix)  # r = Q^T
    except InconsistentSystemError:
        return None
    n = g.n
    q = transpose(r)
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if _rat_matmul(r, q) != eye:
        return None
    a, b = adjacency_matrix(g), adjacency_matrix(h)
    if _rat_matmul(_rat_matmul(r, a), q) != b:
        return None
    for i in range(pa.p):
        qe = [sum((x for x, e in zip(row, pa.indicator(i)) if e), Fraction(0)) for row in r]
        if qe != pb.indicator(i):
            return None
    lvl = level(q)
    d_n = last_factor(wa)
    if d_n % lvl:
        raise AssertionError(f"level {lvl} does not divide d_n = {d_n}")
    return OrthogonalCertificate(q, lvl, d_n)


# --- comparison ------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralVerdict:
    outcome: Literal["EqualCertified", "EqualProbabilistic", "NotEqual", "Incomparable"]
    variant: str
    witness: Optional[dict] = None
    certificate: Optional[OrthogonalCertificate] = None
    error_bound: Optional[float] = None
    reason: str = ""

    @property
    def equal(self) -> bool:
        return self.outcome in ("EqualCertified", "EqualProbabilistic")

    def to_dict(self) -> dict:
        out = {"outcome": self.outcome, "variant": self.variant}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.certificate is not None:
            out["certificate"] = {
                "level": self.certificate.level,
                "d_n": str(self.certificate.d_n),
                "q": [[str(x) for x in row] for row in self.certificate.q],
            }
        if self.error_bound is not None:
            out["error_bound"] = self.error_bound
        if self.reason:
            out["reason"] = self.reason
        return out


def random_prime(rng: random.Random, window=PRIME_WINDOW) -> int:
    while True:
        c = rng.randrange(window[0], window[1]) | 1
        if is_probable_prime(c):
            return c


def _trial_error(n: int, nvars: int) -> float:
    """Chance that one random (prime, point) trial misses a nonzero difference.

    A nonzero coefficient of phi_A - phi_B is a polynomial of total degree <= n
    in the s variables. It survives reduction mod q unless q divides its
    content, which is below n! (nvars + 1)^n, so at most bits/60 window
    primes can do that; there are more than 2^60 / 64 primes in the window.
    Given survival, Schwartz-Zippel bounds vanishing at the point by n / q.
    """
    bits = log2(factorial(max(n, 1))) + n * log2(nvars + 1) + 1
    return n / PRIME_WINDOW[0] + (bits / 60) / (PRIME_WINDOW[0] / 64)


def _modular_trial(pa: Pencil, pb: Pencil, rng: random.Random) -> Optional[dict]:
    q = random_prime(rng)
    s = [rng.randrange(q) for _ in range(1 + len(pa.blocks))]
    ca, cb = eval_char_poly(pa, s, q), eval_char_poly(pb, s, q)
    if ca != cb:
        return {"kind": "evaluation", "point": [str(x) for x in s], "modulus": str(q),
                "phi_g": [str(x) for x in ca], "phi_h": [str(x) for x in cb]}
    return None


def compare(g: Graph, h: Graph, variant: str = "gbls", trials: int = DEFAULT_TRIALS,
            seed: int = 0) -> SpectralVerdict:
    if variant not in VARIANTS:
        raise ContractError(f"unknown variant {variant!r}")
    if g.n != h.n:
        return SpectralVerdict("Incomparable", variant,
                               reason=f"orders differ ({g.n} vs {h.n})")
    rng = random.Random(seed)
    truncated = variant == "gbls_truncated"
    part = truncated_partition if truncated and g.n else degree_partition
    same_shape = part(g).shape() == part(h).shape()

    if variant in _PARTITIONED and not same_shape:
        return SpectralVerdict("NotEqual", variant, witness={
            "kind": "degree_partition",
            "degrees_g": list(g.degree_sequence()),
            "degrees_h": list(h.degree_sequence()),
            "cells_g": [list(x) for x in part(g).shape()],
            "cells_h": [list(x) for x in part(h).shape()],
        })

    pa, pb = pencil_for(g, variant), pencil_for(h, variant)

    # a GBLS certificate implies equality of every sub-pencil except the D_i one
    if same_shape and variant != "gdls" and g.n:
        try:
            cert = reconstruct_q(g, h, truncated=truncated)
            certifiable = True
        except NoUniqueSolutionError:
            cert, certifiable = None, False
        if cert is not None:
            return SpectralVerdict("EqualCertified", variant, certificate=cert)
        if certifiable and variant in ("gbls", "gbls_truncated"):
            # full-rank walk matrix and no orthogonal Q: the polynomials differ
            for _ in range(256):
                witness = _modular_trial(pa, pb, rng)
                if witness:
                    return SpectralVerdict("NotEqual", variant, witness=witness,
                                           reason="no rational orthogonal Q exists")
            raise RuntimeError("no differing evaluation found despite failed certification")

    for _ in range(trials):
        witness = _modular_trial(pa, pb, rng)
        if witness:
            return SpectralVerdict("NotEqual", variant, witness=witness)
    bound = _trial_error(g.n, 1 + len(pa.blocks)) ** trials
    return SpectralVerdict("EqualProbabilistic", variant, error_bound=bound,
                           reason=f"{trials} random modular evaluations agree")
