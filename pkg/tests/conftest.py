import itertools
import random
from functools import lru_cache
from math import gcd
from pathlib import Path

import pytest
from hypothesis import strategies as st

from specident.graph import Graph, relabel, write_graph6

FIXTURES = Path(__file__).parent / "fixtures"


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, lo=-9, hi=9):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [draw(st.lists(st.integers(lo, hi), min_size=c, max_size=c)) for _ in range(r)]


def random_graph(n, rng: random.Random, p=0.5) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_perm(n, rng: random.Random) -> list:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@lru_cache(maxsize=1)
def atlas_graphs() -> tuple:
    """Every graph on at most 7 vertices, one per isomorphism class."""
    import networkx as nx

    return tuple(
        Graph.from_edges(g.number_of_nodes(), g.edges()) for g in nx.graph_atlas_g()
    )


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return any(relabel(g, perm) == h for perm in itertools.permutations(range(g.n)))


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def leibniz_char_poly(m):
    """det(tI - m) by permutation expansion over polynomial entries."""
    n = len(m)
    entry = [[[-m[i][j], 1] if i == j else [-m[i][j]] for j in range(n)] for i in range(n)]
    total = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = [1]
        for i in range(n):
            prod = _pmul(prod, entry[i][perm[i]])
        for k, c in enumerate(prod):
            total[k] += -c if inv % 2 else c
    return total


def minor_gcd_factors(m):
    """Invariant factors from gcds of k x k minors (independent of any elimination)."""
    rows, cols = len(m), len(m[0])
    dets = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, leibniz_det([[m[i][j] for j in cs] for i in rs]))
        dets.append(g)
    out = []
    for k in range(1, len(dets)):
        out.append(0 if dets[k] == 0 else dets[k] // dets[k - 1])
    return out


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


def write_fixture(name: str, g: Graph) -> Path:
    path = FIXTURES / name
    path.write_text(write_graph6(g) + "\n")
    return path
