"""Simple undirected graphs, graph6 I/O, degree partitions and automorphism orbits."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import Graph6Error, SizeGuardError

IntMatrix = list[list[int]]

MAX_ORBIT_N = 12


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside [0, {self.n})")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.neighbors]

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees(), reverse=True))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


# --- constructors ---------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = ((u + g.n, v + g.n) for u, v in h.edges)
    return Graph.from_edges(g.n + h.n, list(g.edges) + list(shifted))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def rook_graph(k: int = 4) -> Graph:
    """The k x k rook's graph (line graph of K_{k,k})."""
    cells = [(i, j) for i in range(k) for j in range(k)]
    edges = [
        (a, b)
        for a in range(len(cells))
        for b in range(a + 1, len(cells))
        if cells[a][0] == cells[b][0] or cells[a][1] == cells[b][1]
    ]
    return Graph.from_edges(k * k, edges)


def shrikhande_graph() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    steps = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    cells = [(i, j) for i in range(4) for j in range(4)]
    edges = [
        (a, b)
        for a in range(16)
        for b in range(a + 1, 16)
        if ((cells[b][0] - cells[a][0]) % 4, (cells[b][1] - cells[a][1]) % 4) in steps
    ]
    return Graph.from_edges(16, edges)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Vertex v of g becomes vertex perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm is not a permutation of the vertex set")
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges))


def complement(g: Graph) -> Graph:
    return Graph.from_edges(
        g.n,
        ((u, v) for u in range(g.n) for v in range(u + 1, g.n) if (u, v) not in g.edges),
    )


def adjacency_matrix(g: Graph) -> IntMatrix:
    a = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        a[u][v] = a[v][u] = 1
    return a


# --- graph6 ---------------------------------------------------------------

_HEADER = ">>graph6<<"


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def write_graph6(g: Graph) -> str:
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _size_prefix(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
        base = len(_HEADER)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside [63,126]", base + i)
    if not s:
        raise Graph6Error("empty record", base)

    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise Graph6Error("truncated 18-bit size prefix", base + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
        if n <= 62:
            raise Graph6Error("long size prefix used for n <= 62", base)
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated 36-bit size prefix", base + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
        if n <= 258047:
            raise Graph6Error("36-bit size prefix used for n <= 258047", base)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - pos != need:
        raise Graph6Error(
            f"expected {need} body bytes for n={n}, found {len(vals) - pos}",
            base + min(len(vals), pos + need),
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    pad = need * 6 - nbits
    if pad and vals[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + len(vals) - 1)
    return Graph.from_edges(n, edges)


def read_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


# --- degree partitions ----------------------------------------------------

@dataclass(frozen=True)
class DegreePartition:
    """Ordered vertex cells.

    ``degrees[i]`` is the common degree of cell i, or None for an empty cell
    or for the catch-all cell of a truncated partition.
    """

    n: int
    cells: tuple[tuple[int, ...], ...]
    degrees: tuple[Optional[int], ...]

    @property
    def p(self) -> int:
        return len(self.cells)

    def indicator(self, i: int) -> list[int]:
        e = [0] * self.n
        for v in self.cells[i]:
            e[v] = 1
        return e

    def cell_of(self) -> list[int]:
        """Cell index of every vertex."""
        out = [-1] * self.n
        for i, cell in enumerate(self.cells):
            for v in cell:
                out[v] = i
        return out

    def shape(self) -> tuple[tuple[int, Optional[int]], ...]:
        """(cell size, cell degree) per cell; equal shapes make pencils comparable."""
        return tuple((len(c), d) for c, d in zip(self.cells, self.degrees))


def degree_partition(g: Graph) -> DegreePartition:
    deg = g.degrees()
    distinct = sorted(set(deg), reverse=True)
    cells = tuple(tuple(v for v in range(g.n) if deg[v] == d) for d in distinct)
    return DegreePartition(g.n, cells, tuple(distinct))


def truncation_size(n: int) -> int:
    """ceil(log2 n) + 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1).bit_length() + 1


def truncated_partition(g: Graph) -> DegreePartition:
    r = truncation_size(g.n)
    full = degree_partition(g)
    head = list(full.cells[: r - 1])
    head_deg: list[Optional[int]] = list(full.degrees[: r - 1])
    while len(head) < r - 1:
        head.append(())
        head_deg.append(None)
    rest = tuple(v for c in full.cells[r - 1:] for v in c)
    return DegreePartition(g.n, tuple(head) + (rest,), tuple(head_deg) + (None,))


# --- isomorphism search and orbits ----------------------------------------

def _extend(g: Graph, h: Graph, order: list[int], mapping: dict, used: set,
            gdeg: list[int], hdeg: list[int]) -> Optional[dict]:
    if len(mapping) == len(order):
        return dict(mapping)
    u = order[len(mapping)]
    for w in range(h.n):
        if w in used or gdeg[u] != hdeg[w]:
            continue
        if any(g.has_edge(u, x) != h.has_edge(w, y) for x, y in mapping.items()):
            continue
        mapping[u] = w
        used.add(w)
        found = _extend(g, h, order, mapping, used, gdeg, hdeg)
        if found is not None:
            return found
        del mapping[u]
        used.discard(w)
    return None


def find_isomorphism(g: Graph, h: Graph, fixed: Optional[dict] = None) -> Optional[list[int]]:
    """Backtracking search for perm with relabel(g, perm) == h, honouring ``fixed``."""
    if g.n != h.n or len(g.edges) != len(h.edges) or g.degree_sequence() != h.degree_sequence():
        return None
    gdeg, hdeg = g.degrees(), h.degrees()
    fixed = dict(fixed or {})
    for u, w in fixed.items():
        if gdeg[u] != hdeg[w]:
            return None
    for (u, w), (x, y) in ((a, b) for a in fixed.items() for b in fixed.items()):
        if g.has_edge(u, x) != h.has_edge(w, y):
            return None
    # visit vertices adjacent to already-placed ones first for earlier pruning
    order = list(fixed)
    placed = set(order)
    while len(order) < g.n:
        best = max(
            (v for v in range(g.n) if v not in placed),
            key=lambda v: (len(g.neighbors[v] & placed), gdeg[v], -v),
        )
        order.append(best)
        placed.add(best)
    found = _extend(g, h, order, fixed, set(fixed.values()), gdeg, hdeg)
    if found is None:
        return None
    return [found[v] for v in range(g.n)]


@dataclass(frozen=True)
class OrbitBasis:
    orbits: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[int, ...], ...]


def automorphism_orbits(g: Graph) -> OrbitBasis:
    if g.n > MAX_ORBIT_N:
        raise SizeGuardError(f"orbit search is capped at n <= {MAX_ORBIT_N}, got n = {g.n}")
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = []
    deg = g.degrees()
    for u in range(g.n):
        for w in range(u + 1, g.n):
            if deg[u] != deg[w] or find(u) == find(w):
                continue
            perm = find_isomorphism(g, g, {u: w})
            if perm is None:
                continue
            gens.append(tuple(perm))
            for v in range(g.n):
                a, b = find(v), find(perm[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)

    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    orbits = tuple(tuple(c) for c in sorted(groups.values()))
    basis = tuple(tuple(1 if v in set(o) else 0 for v in range(g.n)) for o in orbits)
    return OrbitBasis(orbits, basis, tuple(gens))
