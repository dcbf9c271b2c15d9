import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import atlas_graphs, graphs, leibniz_char_poly, random_graph, random_perm
from specident.errors import ContractError, NoUniqueSolutionError, SizeGuardError
from specident.graph import (
    Graph,
    adjacency_matrix,
    complete_graph,
    cycle_graph,
    degree_partition,
    disjoint_union,
    empty_graph,
    relabel,
    rook_graph,
    shrikhande_graph,
    star_graph,
)
from specident.linalg import matmul, transpose
from specident.spectra import (
    VARIANTS,
    compare,
    eval_char_poly,
    evaluate_symbolic,
    find_separating_point,
    pencil_for,
    reconstruct_q,
    symbolic_char_poly,
)
from specident.walk import full_walk_matrix, last_factor

P61 = (1 << 61) - 1
C6K1 = Graph.from_edges(7, [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)])
TREE7 = Graph.from_edges(7, [(0, 1), (0, 3), (0, 4), (1, 2), (3, 6), (4, 5)])
C4K1 = disjoint_union(cycle_graph(4), empty_graph(1))


def _full_rank_graph(n, rng):
    while True:
        g = random_graph(n, rng)
        if last_factor(full_walk_matrix(g)):
            return g


def test_pencil_term_counts():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)])
    p = degree_partition(g).p
    assert p == 3
    counts = {v: len(pencil_for(g, v).blocks) for v in VARIANTS}
    assert counts["spectrum"] == 0 and counts["generalized"] == 1
    assert counts["gdls"] == p and counts["gbdls"] == p
    assert counts["gbls"] == p * p


def test_unknown_variant():
    with pytest.raises(ContractError):
        pencil_for(complete_graph(3), "bogus")
    with pytest.raises(ContractError):
        compare(complete_graph(3), complete_graph(3), "bogus")


def test_pencil_evaluate_arity():
    with pytest.raises(ContractError):
        pencil_for(complete_graph(3), "generalized").evaluate([1])


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=6), st.sampled_from(VARIANTS), st.integers(0, 10**6))
def test_eval_char_poly_matches_leibniz(g, variant, seed):
    p = pencil_for(g, variant)
    rng = random.Random(seed)
    s = [rng.randint(-5, 5) for _ in range(1 + len(p.blocks))]
    exact = eval_char_poly(p, s)
    assert exact == leibniz_char_poly(p.evaluate(s))
    assert eval_char_poly(p, s, P61) == [c % P61 for c in exact]


def test_eval_char_poly_rejects_composite_modulus():
    with pytest.raises(ContractError):
        eval_char_poly(pencil_for(complete_graph(3), "spectrum"), [1], 91)


def test_symbolic_small_example():
    # det(tI - s0 A - s1 J) for K2
    poly = symbolic_char_poly(pencil_for(complete_graph(2), "generalized"))
    assert poly == {(2, 0, 0): 1, (1, 0, 1): -2, (0, 2, 0): -1, (0, 1, 1): -2}
    assert evaluate_symbolic(poly, [1, 1]) == [-3, -2, 1]


@settings(max_examples=25, deadline=None)
@given(graphs(min_n=1, max_n=6), st.sampled_from(["generalized", "gdls", "gbdls", "gbls"]),
       st.integers(0, 10**6))
def test_symbolic_matches_evaluation(g, variant, seed):
    p = pencil_for(g, variant)
    if len(p.blocks) > 5:
        with pytest.raises(SizeGuardError):
            symbolic_char_poly(p)
        return
    poly = symbolic_char_poly(p)
    rng = random.Random(seed)
    for _ in range(3):
        s = [rng.randint(-4, 4) for _ in range(1 + len(p.blocks))]
        assert evaluate_symbolic(poly, s) == eval_char_poly(p, s)


def test_find_separating_point():
    pa = symbolic_char_poly(pencil_for(C4K1, "generalized"))
    pb = symbolic_char_poly(pencil_for(star_graph(4), "generalized"))
    s = find_separating_point([pa, pb], 2)
    assert s is not None and evaluate_symbolic(pa, s) != evaluate_symbolic(pb, s)
    assert find_separating_point([pa, pa], 2, tries=5) is None


def test_classic_cospectral_pair():
    # C4 + K1 and the star K_{1,4} share the adjacency spectrum only
    assert compare(C4K1, star_graph(4), "spectrum").outcome == "EqualProbabilistic"
    v = compare(C4K1, star_graph(4), "generalized")
    assert v.outcome == "NotEqual" and v.witness["kind"] == "evaluation"
    assert compare(C4K1, star_graph(4), "gbls").witness["kind"] == "degree_partition"


def test_generalized_cospectral_pair_from_atlas():
    assert compare(C6K1, TREE7, "generalized").outcome == "EqualProbabilistic"
    assert compare(C6K1, TREE7, "gbls").outcome == "NotEqual"


def test_witness_is_a_genuine_difference():
    v = compare(C4K1, star_graph(4), "generalized", seed=3)
    q = int(v.witness["modulus"])
    s = [int(x) for x in v.witness["point"]]
    a = eval_char_poly(pencil_for(C4K1, "generalized"), s, q)
    b = eval_char_poly(pencil_for(star_graph(4), "generalized"), s, q)
    assert a != b and [str(x) for x in a] == v.witness["phi_g"]


def test_incomparable_orders():
    assert compare(complete_graph(3), complete_graph(4)).outcome == "Incomparable"


def test_srg_pair_has_equal_gbls():
    for variant in VARIANTS:
        v = compare(shrikhande_graph(), rook_graph(), variant, trials=4)
        assert v.equal, variant
        assert v.outcome == "EqualProbabilistic" and 0 < v.error_bound < 1e-60


def test_no_nonisomorphic_gbls_mates_up_to_six_vertices():
    # exhaustive: equal degree partition shape and non-isomorphic implies NotEqual
    by_shape = {}
    for g in atlas_graphs():
        if 2 <= g.n <= 6:
            by_shape.setdefault((g.n, degree_partition(g).shape()), []).append(g)
    for group in by_shape.values():
        for i, g in enumerate(group):
            for h in group[i + 1:]:
                assert compare(g, h, "gbls", trials=2).outcome == "NotEqual"


def test_reconstruct_q_recovers_relabeling():
    rng = random.Random(12)
    for _ in range(10):
        g = _full_rank_graph(rng.randint(6, 10), rng)
        perm = random_perm(g.n, rng)
        h = relabel(g, perm)
        cert = reconstruct_q(g, h)
        assert cert is not None and cert.level == 1
        # h = relabel(g, perm): Q^T W_g = W_h sends row v to row perm[v]
        assert cert.q == [[int(perm[u] == v) for v in range(g.n)] for u in range(g.n)]
        c = compare(g, h, "gbls")
        assert c.outcome == "EqualCertified" and c.certificate.level == 1


def test_reconstruct_q_satisfies_orthogonality():
    rng = random.Random(13)
    g = _full_rank_graph(9, rng)
    h = relabel(g, random_perm(9, rng))
    q = reconstruct_q(g, h).q
    qt = transpose(q)
    assert matmul(qt, q) == [[Fraction(int(i == j)) for j in range(9)] for i in range(9)]
    assert matmul(matmul(qt, adjacency_matrix(g)), q) == adjacency_matrix(h)


def test_reconstruct_q_none_for_different_spectra():
    rng = random.Random(14)
    checked = 0
    while checked < 5:
        g = _full_rank_graph(8, rng)
        h = random_graph(8, rng)
        if degree_partition(g).shape() != degree_partition(h).shape():
            continue
        if eval_char_poly(pencil_for(g, "spectrum"), [1]) == eval_char_poly(
                pencil_for(h, "spectrum"), [1]):
            continue
        assert reconstruct_q(g, h) is None
        checked += 1


def test_reconstruct_q_contract():
    with pytest.raises(ContractError):
        reconstruct_q(complete_graph(3), star_graph(2))
    with pytest.raises(NoUniqueSolutionError):
        reconstruct_q(cycle_graph(5), cycle_graph(5))


def test_verdict_to_dict():
    d = compare(C4K1, star_graph(4), "spectrum").to_dict()
    assert d["outcome"] == "EqualProbabilistic" and "error_bound" in d


def test_pencil_sizes_and_trivial_points():
    from specident.graph import path_graph
    from specident.linalg import char_poly

    assert len(pencil_for(complete_graph(3), "gbls").blocks) == 1
    assert len(pencil_for(path_graph(4), "gbls").blocks) == 4
    g = random_graph(10, random.Random(31))
    assert len(pencil_for(g, "gbls_truncated").blocks) == 25
    p = pencil_for(g, "gbls")
    k = 1 + len(p.blocks)
    assert eval_char_poly(p, [0] * k) == [0] * 10 + [1]
    assert eval_char_poly(p, [1] + [0] * (k - 1)) == char_poly(adjacency_matrix(g))
    assert eval_char_poly(pencil_for(complete_graph(2), "gbls"), [1, 1]) == [-3, -2, 1]
    assert symbolic_char_poly(pencil_for(empty_graph(3), "spectrum")) == {(3, 0): 1}


def test_identity_certificate():
    g = _full_rank_graph(8, random.Random(32))
    cert = reconstruct_q(g, g)
    assert cert.level == 1 and cert.q == [[int(i == j) for j in range(8)] for i in range(8)]
