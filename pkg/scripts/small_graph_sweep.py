#!/usr/bin/env python3
"""Exhaustive checks over all graphs on at most 7 vertices (needs networkx for the atlas).

For every order it reports how many graphs the criterion certifies, how many
equal-degree pairs 2-WL fails to separate, and whether any certified graph is
2-WL-equivalent to a non-isomorphic one.
"""
import itertools
from collections import Counter

import networkx as nx

from specident.criterion import CERTIFIED, run_criterion
from specident.graph import Graph, find_isomorphism
from specident.wl import wl2_equivalent


def main():
    atlas = [Graph.from_edges(g.number_of_nodes(), g.edges()) for g in nx.graph_atlas_g()]
    for n in range(1, 8):
        gs = [g for g in atlas if g.n == n]
        verdicts = Counter(run_criterion(g).verdict for g in gs)
        groups = {}
        for g in gs:
            groups.setdefault(g.degree_sequence(), []).append(g)
        equiv = violations = 0
        for group in groups.values():
            for g, h in itertools.combinations(group, 2):
                if wl2_equivalent(g, h):
                    equiv += 1
                    certified = CERTIFIED in (run_criterion(g).verdict, run_criterion(h).verdict)
                    violations += certified and find_isomorphism(g, h) is None
        print(f"n={n}: {len(gs)} graphs, verdicts {dict(verdicts)}, "
              f"{equiv} 2-WL-equivalent distinct pairs, {violations} violations")


if __name__ == "__main__":
    main()
