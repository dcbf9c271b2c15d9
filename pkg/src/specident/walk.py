"""Generalized walk matrices [e_1, A e_1, ..., A^{n-1} e_1, e_2, ...]."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import ShapeError
from .graph import DegreePartition, Graph, degree_partition, truncated_partition
from .linalg import IntMatrix, last_invariant_factor


@dataclass(frozen=True)
class WalkMatrix:
    matrix: IntMatrix  # n x (n * p)
    partition: DegreePartition
    kind: Literal["full", "truncated", "custom"]

    def block(self, i: int) -> IntMatrix:
        n = self.partition.n
        return [row[i * n:(i + 1) * n] for row in self.matrix]


def build_walk_matrix(g: Graph, partition: DegreePartition, kind="custom") -> WalkMatrix:
    if partition.n != g.n:
        raise ShapeError(f"partition is over {partition.n} vertices, graph has {g.n}")
    n = g.n
    nbrs = [sorted(a) for a in g.neighbors]
    columns = []
    for i in range(partition.p):
        v = partition.indicator(i)
        for _ in range(n):
            columns.append(v)
            v = [sum(v[w] for w in nbrs[u]) for u in range(n)]
    matrix = [[col[u] for col in columns] for u in range(n)]
    return WalkMatrix(matrix, partition, kind)


def full_walk_matrix(g: Graph) -> WalkMatrix:
    return build_walk_matrix(g, degree_partition(g), "full")


def truncated_walk_matrix(g: Graph) -> WalkMatrix:
    return build_walk_matrix(g, truncated_partition(g), "truncated")


def last_factor(w: WalkMatrix) -> int:
    """d_n of the walk matrix; 0 when it lacks full row rank."""
    if w.partition.n == 0:
        return 1
    return last_invariant_factor(w.matrix)
