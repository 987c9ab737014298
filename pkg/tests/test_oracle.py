"""Brute-force oracle checks against frozen values and a naive enumerator."""

import numpy as np
import pytest

from cfslv.core import GramMatrix
from cfslv.errors import ResourceBudgetError
from cfslv.gram import build_gram_single
from cfslv.oracle import ball_point_estimate, brute_force_slv, certification_radius


def test_identity_gram():
    res = brute_force_slv(GramMatrix(np.eye(3)), 1.5)
    assert res.f_star == 1.0
    assert np.abs(res.a_star.entries).sum() == 1


def test_hand_computed_instance():
    g = GramMatrix(np.array([[3.0, -2.0], [-2.0, 3.0]]))
    res = brute_force_slv(g, np.sqrt(5.0))
    assert res.f_star == 2.0
    assert res.a_star.entries.tolist() == [1, 1]


def test_mimo_instance():
    g = GramMatrix(np.array([[0.6, -0.4], [-0.4, 0.6]]))
    res = brute_force_slv(g, np.sqrt(3.0))
    assert abs(res.f_star - 0.4) <= 1e-15
    assert np.abs(res.a_star.entries).tolist() == [1, 1]


def test_objective_never_exceeds_min_diagonal():
    rng = np.random.default_rng(17)
    for _ in range(20):
        n = int(rng.integers(1, 6))
        m = rng.standard_normal((n, n))
        g = GramMatrix(m @ m.T + np.eye(n))
        res = brute_force_slv(g, 1.0 + float(rng.uniform(0.0, 2.0)))
        assert res.f_star <= float(np.min(np.diag(g.entries))) + 1e-12


def test_matches_naive_ball_enumeration(box_minimum):
    rng = np.random.default_rng(23)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        m = rng.standard_normal((n, n))
        g = GramMatrix(m @ m.T + 0.5 * np.eye(n))
        radius = float(rng.uniform(1.0, 3.5))
        res = brute_force_slv(g, radius)
        naive_f, _ = box_minimum(g.entries, int(np.floor(radius + 1e-9)), radius=radius)
        assert naive_f is not None
        assert abs(res.f_star - naive_f) <= 1e-12 * max(1.0, naive_f)
        assert float(res.a_star.entries @ res.a_star.entries) <= radius * radius + 1e-9


def test_result_is_canonical_and_deterministic():
    rng = np.random.default_rng(29)
    m = rng.standard_normal((4, 4))
    g = GramMatrix(m @ m.T + np.eye(4))
    first = brute_force_slv(g, 2.5)
    second = brute_force_slv(g, 2.5)
    assert first.f_star == second.f_star
    assert np.array_equal(first.a_star.entries, second.a_star.entries)
    assert first.candidates_evaluated == second.candidates_evaluated
    lead = first.a_star.entries[np.flatnonzero(first.a_star.entries)[0]]
    assert lead > 0


def test_candidate_count_small_identity():
    # canonical vectors with norm <= sqrt(2): (0,1), (1,-1), (1,0), (1,1)
    res = brute_force_slv(GramMatrix(np.eye(2)), np.sqrt(2.0))
    assert res.candidates_evaluated == 4


def test_rejects_small_radius():
    with pytest.raises(ValueError):
        brute_force_slv(GramMatrix(np.eye(2)), 0.5)


def test_budget_error_on_huge_search_space():
    g = build_gram_single(np.ones(8), 1.0)
    with pytest.raises(ResourceBudgetError):
        brute_force_slv(g, 200.0, budget=10**6)


def test_ball_estimate_monotone_in_radius():
    lo = ball_point_estimate(4, 2.0)
    hi = ball_point_estimate(4, 4.0)
    assert 0.0 < lo < hi


def test_certification_radius_covers_bound():
    rng = np.random.default_rng(31)
    for _ in range(10):
        n = int(rng.integers(2, 5))
        h = rng.standard_normal(n)
        power = float(rng.uniform(0.2, 10.0))
        g = build_gram_single(h, power)
        f_cap = float(np.min(np.diag(g.entries)))
        radius = certification_radius(g, f_cap)
        lam_min = float(np.linalg.eigvalsh(g.entries)[0])
        # any a with f(a) <= f_cap satisfies |a| <= sqrt(f_cap / lam_min)
        assert radius >= 1.0
        assert radius >= np.sqrt(f_cap / lam_min)
