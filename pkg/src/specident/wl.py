"""1-WL and 2-WL colour refinement on colored matrices.

A colored matrix is an n x n nested list of tokens. Tokens are compared for
equality and, for canonical renaming, sorted; ints and tuples of ints are
the intended vocabulary.

Colour ids are renamed every round by sorting the distinct signatures of all
pairs taking part in the run (across every matrix in a joint run) and
numbering them consecutively. Ids are therefore comparable between matrices
refined together and reproducible between runs.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

from .graph import Graph, adjacency_matrix, degree_partition

ColoredMatrix = list[list[Hashable]]
Coloring = tuple[tuple[int, ...], ...]
Histogram = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PairPartition:
    """Partition of V x V, stored as class labels in first-occurrence order."""

    n: int
    labels: tuple[int, ...]  # row-major over (u, v)

    @classmethod
    def from_coloring(cls, coloring: Sequence[Sequence[int]]) -> "PairPartition":
        n = len(coloring)
        seen: dict = {}
        labels = tuple(seen.setdefault(c, len(seen)) for row in coloring for c in row)
        return cls(n, labels)

    @property
    def num_classes(self) -> int:
        return len(set(self.labels))

    def classes(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.num_classes)]
        for k, lab in enumerate(self.labels):
            out[lab].append(divmod(k, self.n))
        return out

    def refines(self, other: "PairPartition") -> bool:
        """True if every class of self lies inside a class of other."""
        image: dict[int, int] = {}
        return all(image.setdefault(a, b) == b for a, b in zip(self.labels, other.labels))


@dataclass(frozen=True)
class WlColoring:
    stable: Coloring
    rounds: int
    histograms: tuple[Histogram, ...]  # one per round, X^1 .. X^rounds


def _rename(signatures: list[list[list]]) -> list[Coloring]:
    distinct = sorted({s for mat in signatures for row in mat for s in row})
    ids = {s: i for i, s in enumerate(distinct)}
    return [tuple(tuple(ids[s] for s in row) for row in mat) for mat in signatures]


def _atomic_signature(m: ColoredMatrix, u: int, v: int):
    # (equality flag, A(u,u), A(u,v), A(v,u), A(v,v)) encodes the 2x2 type matrix
    return (0 if u == v else 1, m[u][u], m[u][v], m[v][u], m[v][v])


def _atomic_colorings(mats: Sequence[ColoredMatrix]) -> list[Coloring]:
    sigs = [
        [[_atomic_signature(m, u, v) for v in range(len(m))] for u in range(len(m))]
        for m in mats
    ]
    return _rename(sigs)


def _histogram(c: Coloring) -> Histogram:
    return tuple(sorted(Counter(x for row in c for x in row).items()))


def _num_colors(cs: Sequence[Coloring]) -> int:
    return len({x for c in cs for row in c for x in row})


def _refine_round(cs: Sequence[Coloring]) -> list[Coloring]:
    # The atomic type of (u, v, w) is fixed by the atomic types of (u, v),
    # (u, w), (w, v); the current colours refine those, so the signature
    # (X(u,v), multiset of (X(u,w), X(w,v))) carries the same information.
    sigs = []
    for c in cs:
        n = len(c)
        cols = list(zip(*c))
        sigs.append([
            [(c[u][v], tuple(sorted(zip(c[u], cols[v])))) for v in range(n)]
            for u in range(n)
        ])
    return _rename(sigs)


def refine_joint(mats: Sequence[ColoredMatrix]) -> list[list[Coloring]]:
    """Joint 2-WL run; returns the colouring of every matrix after each round."""
    history = [_atomic_colorings(mats)]
    while True:
        nxt = _refine_round(history[-1])
        if _num_colors(nxt) == _num_colors(history[-1]):
            return history
        history.append(nxt)


def atomic_type_coloring(m: ColoredMatrix) -> PairPartition:
    return PairPartition.from_coloring(_atomic_colorings([m])[0])


def wl2_stable(m: ColoredMatrix) -> WlColoring:
    history = refine_joint([m])
    return WlColoring(
        stable=history[-1][0],
        rounds=len(history),
        histograms=tuple(_histogram(step[0]) for step in history),
    )


def closure(m: ColoredMatrix) -> PairPartition:
    return PairPartition.from_coloring(wl2_stable(m).stable)


def wl2_equivalent_matrices(a: ColoredMatrix, b: ColoredMatrix) -> bool:
    if len(a) != len(b):
        return False
    history = refine_joint([a, b])
    return all(_histogram(ca) == _histogram(cb) for ca, cb in history)


def wl2_equivalent(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    return wl2_equivalent_matrices(adjacency_matrix(g), adjacency_matrix(h))


def wl1_stable(g: Graph) -> tuple[int, ...]:
    """Colour refinement fixed point with canonical ids."""
    colors = tuple(0 for _ in range(g.n))
    if g.n:
        colors = _canonical([len(a) for a in g.neighbors])
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.neighbors[v]))) for v in range(g.n)]
        nxt = _canonical(sigs)
        if len(set(nxt)) == len(set(colors)):
            return colors
        colors = nxt


def _canonical(sigs) -> tuple[int, ...]:
    ids = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return tuple(ids[s] for s in sigs)


# --- partial refinements (adjacency pencils with cell tags) -----------------

def pencil_matrices(g: Graph) -> dict[str, ColoredMatrix]:
    """A, A' (diagonal cell tags), A'' (diagonal block tags), A''' (all block tags).

    An entry is the tuple of its coefficients in the formal variables, which
    determines the symbolic entry of the pencil.
    """
    a = adjacency_matrix(g)
    cell = degree_partition(g).cell_of()
    n = g.n
    rng = range(n)
    return {
        "A": a,
        "A'": [[(a[u][v], cell[u] if u == v else -1) for v in rng] for u in rng],
        "A''": [[(a[u][v], cell[u] if cell[u] == cell[v] else -1) for v in rng] for u in rng],
        "A'''": [[(a[u][v], cell[u], cell[v]) for v in rng] for u in rng],
    }


def verify_partial_refinement(g: Graph) -> bool:
    closures = [closure(m) for m in pencil_matrices(g).values()]
    return all(c == closures[0] for c in closures[1:])


def _matrix_powers(a: list[list[int]], r_max: int) -> list[list[list[int]]]:
    n = len(a)
    powers = [a]
    for _ in range(r_max - 1):
        prev = powers[-1]
        cols = list(zip(*a))
        powers.append([[sum(x * y for x, y in zip(prev[i], cols[j])) for j in range(n)]
                       for i in range(n)])
    return powers


def verify_power_invariant(g: Graph, h: Graph, r_max: int) -> bool:
    """Pairs sharing a stable joint 2-WL colour have equal entries in A^r, r <= r_max."""
    if not wl2_equivalent(g, h):
        return True
    a, b = adjacency_matrix(g), adjacency_matrix(h)
    stable = refine_joint([a, b])[-1]
    pa, pb = _matrix_powers(a, r_max), _matrix_powers(b, r_max)
    for r in range(r_max):
        value: dict[int, int] = {}
        for coloring, power in ((stable[0], pa[r]), (stable[1], pb[r])):
            for u, row in enumerate(coloring):
                for v, col in enumerate(row):
                    if value.setdefault(col, power[u][v]) != power[u][v]:
                        return False
    return True


def first_difference_round(g: Graph, h: Graph) -> Optional[int]:
    """Round at which the joint 2-WL histograms of g and h first differ, or None."""
    if g.n != h.n:
        return 0
    history = refine_joint([adjacency_matrix(g), adjacency_matrix(h)])
    for r, (ca, cb) in enumerate(history, start=1):
        if _histogram(ca) != _histogram(cb):
            return r
    return None
