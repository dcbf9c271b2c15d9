import json
import random

import pytest
from sympy import Matrix, Symbol, factorint
from sympy import discriminant as sym_discriminant

from conftest import atlas_graphs, random_graph, random_perm
from specident import criterion as crit
from specident.criterion import (
    CERTIFIED,
    INCONCLUSIVE_EVEN,
    INCONCLUSIVE_SQUARE,
    PROPERTY,
    RANK_DEFICIENT,
    UNKNOWN,
    CriterionReport,
    criterion_semantics_check,
    run_criterion,
)
from specident.errors import ContractError, SizeGuardError
from specident.factor import FactorBudget
from specident.graph import Graph, adjacency_matrix, complete_graph, empty_graph, path_graph, relabel
from specident.linalg import invariant_factors
from specident.walk import full_walk_matrix, truncated_walk_matrix

ASYM6 = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 3)])


def oracle_verdict(g: Graph, truncated=False) -> str:
    w = truncated_walk_matrix(g) if truncated else full_walk_matrix(g)
    d = invariant_factors(w.matrix)[-1]
    if d == 0:
        return RANK_DEFICIENT
    if d % 2 == 0:
        return INCONCLUSIVE_EVEN
    t = Symbol("t")
    delta = int(sym_discriminant(Matrix(adjacency_matrix(g)).charpoly(t).as_expr(), t))
    for q in factorint(d):
        if delta % (q * q) == 0:
            return INCONCLUSIVE_SQUARE
    return CERTIFIED


def test_small_examples():
    assert run_criterion(empty_graph(1)).verdict == CERTIFIED
    assert run_criterion(complete_graph(2)).verdict == RANK_DEFICIENT
    assert run_criterion(path_graph(4)).verdict == RANK_DEFICIENT
    rep = run_criterion(ASYM6)
    assert rep.d_n != 0 and rep.verdict == oracle_verdict(ASYM6)


def test_empty_graph_rejected():
    with pytest.raises(ContractError):
        run_criterion(empty_graph(0))


def test_verdicts_match_oracle_on_atlas():
    seen = set()
    for g in atlas_graphs():
        if 1 <= g.n <= 7:
            v = run_criterion(g).verdict
            assert v == oracle_verdict(g)
            seen.add(v)
    assert {CERTIFIED, RANK_DEFICIENT} <= seen


def test_verdicts_match_oracle_on_random_graphs():
    rng = random.Random(21)
    seen = set()
    for _ in range(150):
        g = random_graph(rng.randint(7, 9), rng)
        for truncated in (False, True):
            v = run_criterion(g, truncated=truncated).verdict
            assert v == oracle_verdict(g, truncated)
            seen.add(v)
    assert {CERTIFIED, RANK_DEFICIENT, INCONCLUSIVE_EVEN} <= seen


def test_delta_is_lazy_unless_requested():
    rep = run_criterion(complete_graph(2))
    assert rep.delta is None
    assert run_criterion(complete_graph(2), always_delta=True).delta == 4


def test_report_json_roundtrip():
    rng = random.Random(22)
    for _ in range(30):
        rep = run_criterion(random_graph(9, rng), always_delta=True)
        data = json.loads(json.dumps(rep.to_dict()))
        assert CriterionReport.from_dict(data) == rep
        assert data["property"] == (PROPERTY if rep.verdict == CERTIFIED else None)


def _fake(monkeypatch, d_n, delta):
    monkeypatch.setattr(crit, "last_factor", lambda w: d_n)
    monkeypatch.setattr(crit, "discriminant", lambda a: delta)


def test_square_prime_found(monkeypatch):
    _fake(monkeypatch, 3 * 7, 7 * 7 * 5)
    rep = run_criterion(complete_graph(3))
    assert rep.verdict == INCONCLUSIVE_SQUARE and rep.verdict_prime == 7
    assert rep.offending_primes == ((7, True),) and rep.gcd_dn_delta == 7


def test_coprime_shortcut_certifies(monkeypatch):
    _fake(monkeypatch, 3 * 5, 7 * 7)
    rep = run_criterion(complete_graph(3))
    assert rep.verdict == CERTIFIED and rep.gcd_dn_delta == 1


def test_shared_prime_without_square(monkeypatch):
    _fake(monkeypatch, 3 * 5, 5 * 11)
    rep = run_criterion(complete_graph(3))
    assert rep.verdict == CERTIFIED and rep.offending_primes == ((5, False),)


def test_zero_discriminant(monkeypatch):
    _fake(monkeypatch, 15, 0)
    rep = run_criterion(complete_graph(3))
    assert rep.verdict == INCONCLUSIVE_SQUARE and rep.verdict_prime == 3


def test_unknown_when_budget_runs_out(monkeypatch):
    p, q = (1 << 89) - 1, (1 << 107) - 1
    _fake(monkeypatch, p * q, p * q * 5)
    budget = FactorBudget(trial_bound=10, rho_rounds=0)
    rep = run_criterion(complete_graph(3), factor_budget=budget)
    assert rep.verdict == UNKNOWN
    # an unsplit cofactor is never certified, even when its square might divide Delta
    _fake(monkeypatch, p * q, p * p * q)
    rep = run_criterion(complete_graph(3), factor_budget=budget)
    assert rep.verdict == UNKNOWN


def test_even_factor(monkeypatch):
    _fake(monkeypatch, 6, 1)
    assert run_criterion(complete_graph(3)).verdict == INCONCLUSIVE_EVEN


def test_semantics_check_guards():
    with pytest.raises(ContractError):
        criterion_semantics_check(complete_graph(2), complete_graph(2))
    with pytest.raises(SizeGuardError):
        criterion_semantics_check(random_graph(11, random.Random(0)), empty_graph(11))


def test_semantics_check_holds_on_five_vertices():
    small = [g for g in atlas_graphs() if g.n == 5]
    for g in small:
        if run_criterion(g).verdict == CERTIFIED:
            assert all(criterion_semantics_check(g, h) for h in small)


def test_gcd_shortcut_certifies_without_factoring(monkeypatch):
    def no_factoring(*a, **k):
        raise AssertionError("factorize must not run when gcd(d_n, Delta) = 1")

    rng = random.Random(23)
    found = 0
    for _ in range(3000):
        g = random_graph(rng.randint(7, 10), rng)
        rep = run_criterion(g)
        if rep.d_n > 1 and rep.d_n % 2 and rep.gcd_dn_delta == 1:
            monkeypatch.setattr(crit, "factorize", no_factoring)
            assert run_criterion(g).verdict == CERTIFIED
            monkeypatch.undo()
            found += 1
            if found == 3:
                break
    assert found > 0


def test_verdict_is_relabeling_invariant():
    rng = random.Random(24)
    for _ in range(40):
        g = random_graph(rng.randint(6, 11), rng)
        h = relabel(g, random_perm(g.n, rng))
        a = run_criterion(g, always_delta=True)
        b = run_criterion(h, always_delta=True)
        assert (a.verdict, a.d_n, a.delta) == (b.verdict, b.d_n, b.delta)


def test_soundness_over_equal_degree_pairs_up_to_seven():
    groups = {}
    for g in atlas_graphs():
        if g.n:
            groups.setdefault((g.n, g.degree_sequence()), []).append(g)
    for group in groups.values():
        for g in group:
            if run_criterion(g).verdict == CERTIFIED:
                assert all(criterion_semantics_check(g, h) for h in group)
