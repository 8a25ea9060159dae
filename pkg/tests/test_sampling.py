import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from hypertrees.asymptotics import expected_g_exact, hypergeom_falling_moment
from hypertrees.census import exact_expected_spanning_hypertrees
from hypertrees.enumeration import count_hypertrees_with_degrees, suitable_degree_sequences, unconstrained_host
from hypertrees.errors import BudgetError, DivisibilityError
from hypertrees.hypergraph import degree_sequence_of, is_incidence_forest
from hypertrees.sampling import (
    empirical_exp_g,
    is_simple,
    mc_expected_spanning_hypertrees,
    sample_degree_vector_X,
    sample_degree_vectors_X,
    sample_g_values,
    sample_pairing,
    sample_simple_hypergraph,
    sample_uniform_hypertree,
    stream,
)


def test_streams_are_reproducible_and_distinct():
    a = stream(11, 3).integers(0, 2**63, size=4)
    b = stream(11, 3).integers(0, 2**63, size=4)
    c = stream(11, 4).integers(0, 2**63, size=4)
    assert (a == b).all() and not (a == c).all()


def test_pairing_trivial_and_cells():
    assert sample_pairing((1, 1, 1), 3, stream(0)) == [(1, 2, 3)]
    k = (3, 2, 2, 2, 1, 1, 1)
    for i in range(200):
        cells = sample_pairing(k, 3, stream(5, i))
        assert len(cells) == 4 and all(len(c) == 3 for c in cells)
        assert Counter(v for c in cells for v in c) == Counter({j + 1: d for j, d in enumerate(k)})
    with pytest.raises(DivisibilityError):
        sample_pairing((2, 1, 1, 1), 3, stream(0))


def test_pairing_contains_edge_frequency():
    k = (2, 1, 1, 1, 1)
    draws = 100_000
    hits = sum((1, 2, 3) in sample_pairing(k, 3, stream(2024, i)) for i in range(draws))
    p = Fraction(1, 5)
    se = math.sqrt(float(p * (1 - p)) / draws)
    assert abs(hits / draws - float(p)) <= 3 * se


def test_simple_sampler_preserves_degrees():
    k = (2,) * 9
    for i in range(100):
        H = sample_simple_hypergraph(k, 3, stream(3, i))
        assert degree_sequence_of(H).degrees == k
        assert is_simple(list(H.edges))


def test_simple_sampler_trivial_and_budget():
    assert sample_simple_hypergraph((1, 1, 1), 3, stream(0)).edges == ((1, 2, 3),)
    with pytest.raises(BudgetError) as info:
        sample_simple_hypergraph((2, 2, 2), 3, stream(0), max_rejects=50)
    assert info.value.rejection_rate == 1.0


def test_mc_exact_class():
    est = mc_expected_spanning_hypertrees((2, 1, 1, 1, 1), 3, 500, seed=1)
    assert est.mean == 1 and est.stderr == 0 and not est.degenerate
    assert 0 <= est.rejection_rate < 1


def test_mc_degenerate_single_sample():
    est = mc_expected_spanning_hypertrees((2,) * 9, 3, 1, seed=4)
    assert est.degenerate and est.stderr == 0 and est.samples == 1


def test_mc_determinism_and_worker_independence():
    a = mc_expected_spanning_hypertrees((2,) * 9, 3, 300, seed=99)
    b = mc_expected_spanning_hypertrees((2,) * 9, 3, 300, seed=99)
    c = mc_expected_spanning_hypertrees((2,) * 9, 3, 300, seed=99, workers=3)
    assert a == b == c
    assert a.to_json()["seed"] == "99"


@pytest.mark.slow
def test_mc_unbiased_over_runs():
    exact = float(exact_expected_spanning_hypertrees((2,) * 9, 3).expectation)
    errs, ses = [], []
    for run in range(20):
        est = mc_expected_spanning_hypertrees((2,) * 9, 3, 10_000, seed=1000 + run)
        errs.append(est.mean - exact)
        ses.append(est.stderr)
    # the mean error of 20 runs has standard error about stderr / sqrt(20)
    assert abs(np.mean(errs)) <= 3 * np.mean(ses) / math.sqrt(20)


def test_X_sampler_trivial_and_sum():
    assert sample_degree_vector_X((1, 1, 1), 1, stream(0)) == (1, 1, 1)
    k = (3,) * 9
    for i in range(100):
        x = sample_degree_vector_X(k, 4, stream(8, i))
        assert sum(x) == 9 + 3 and all(1 <= xi <= 3 for xi in x)
    X = sample_degree_vectors_X(k, 4, 1000, stream(8))
    assert (X.sum(axis=1) == 12).all()


def test_X_sampler_first_moment():
    X = sample_degree_vectors_X((3, 3), 3, 100_000, stream(17))
    emp = X[:, 0] - 1
    want = float(hypergeom_falling_moment(1, 1, (3, 3), 3))
    assert want == 1
    assert abs(emp.mean() - want) <= 3 * emp.std() / math.sqrt(len(emp))


def test_X_single_and_batch_agree_in_distribution():
    k = (3, 2, 2, 2, 2, 1, 1)
    single = Counter(sample_degree_vector_X(k, 3, stream(40, i)) for i in range(20_000))
    batch = Counter(map(tuple, sample_degree_vectors_X(k, 3, 20_000, stream(41)).tolist()))
    for x in set(single) | set(batch):
        p1, p2 = single[x] / 20_000, batch[x] / 20_000
        assert abs(p1 - p2) <= 5 * math.sqrt((p1 + p2) / 20_000) + 1e-9


def test_empirical_exp_g_regular():
    mean_exp, mean_g = empirical_exp_g((2,) * 9, 3, 1000, stream(0))
    assert mean_g == 1.0 and math.isclose(mean_exp, math.e)


def test_empirical_g_mean_matches_exact():
    k = (3,) * 9
    gs = sample_g_values(k, 3, 100_000, stream(5))
    exact = float(expected_g_exact(k, 3))
    assert abs(gs.mean() - exact) <= 3 * gs.std() / math.sqrt(len(gs))


def test_uniform_hypertree_trivial():
    for i in range(5):
        assert sample_uniform_hypertree(3, 3, stream(0, i)).edges == ((1, 2, 3),)


@pytest.mark.parametrize("two_stage", [False, True])
def test_uniform_hypertree_valid(two_stage):
    for i in range(50):
        T = sample_uniform_hypertree(9, 3, stream(6, i), two_stage=two_stage)
        assert T.m == 4 and is_incidence_forest(9, T.edges)


def test_uniform_hypertree_degree_marginal():
    # fraction of draws where vertex 1 has degree 2, against the class-size ratio
    n, r, draws = 7, 3, 20_000
    xs = [s.x for s in suitable_degree_sequences(unconstrained_host(n), r)]
    total = sum(count_hypertrees_with_degrees(x, r) for x in xs)
    p = sum(count_hypertrees_with_degrees(x, r) for x in xs if x[0] == 2) / total
    hits = sum(degree_sequence_of(sample_uniform_hypertree(n, r, stream(12, i))).degrees[0] == 2
               for i in range(draws))
    assert abs(hits / draws - p) <= 3 * math.sqrt(p * (1 - p) / draws)


def test_uniform_hypertree_budget():
    with pytest.raises(BudgetError):
        sample_uniform_hypertree(9, 3, stream(0), budget=10, two_stage=True)
