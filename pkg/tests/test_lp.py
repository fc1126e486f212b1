import itertools

import numpy as np
import pytest
from helpers import planted_theta

from splp.errors import InvalidInput
from splp.evaluation import entrywise_error
from splp.lp import (
    EXACT,
    INFEASIBLE,
    OPTIMAL,
    SPECTRAL,
    UNBOUNDED,
    LpProblem,
    recover_all,
    simplex_core,
    solve_anchor_lp,
)
from splp.mmsb import (
    MmsbParams,
    ThetaMatrix,
    build_probability_matrix,
    make_interaction_matrix,
    sample_adjacency_average,
    sample_theta,
)

GOLDEN_N500_ERROR = 0.057647615172666034


# ---------------------------------------------------------------------------
# Independent oracle: vertex and extreme-ray enumeration for
#   min c.y  s.t.  A y >= b,  y free,  A of full column rank.
# Every vertex lies on r linearly independent active constraints; every
# extreme recession ray lies on r - 1. Enumerating both classifies the LP
# exactly for the small sizes used here.
# ---------------------------------------------------------------------------

def lp_enumeration_oracle(A, b, c, tol=1e-9):
    m, r = A.shape
    best = np.inf
    feasible = False
    for subset in itertools.combinations(range(m), r):
        sub = A[list(subset)]
        if np.linalg.matrix_rank(sub, tol=1e-10) < r:
            continue
        y = np.linalg.solve(sub, b[list(subset)])
        if np.all(A @ y >= b - tol * np.maximum(1.0, np.abs(b))):
            feasible = True
            best = min(best, float(c @ y))
    if not feasible:
        return INFEASIBLE, None
    for subset in itertools.combinations(range(m), r - 1):
        sub = A[list(subset)].reshape(len(subset), r)
        if sub.size:
            u, s, vh = np.linalg.svd(sub)
            null = vh[np.sum(s > 1e-10):]
        else:
            null = np.eye(r)
        if null.shape[0] != 1:
            continue  # not an extreme-ray candidate
        for d in (null[0], -null[0]):
            if np.all(A @ d >= -tol) and c @ d < -tol:
                return UNBOUNDED, None
    return OPTIMAL, best


def draw_well_posed_lp(rng, max_m=8, max_r=3):
    """Random LP whose oracle classification is stable under tolerance
    changes, so solver/oracle comparisons do not sit on a knife edge."""
    while True:
        r = int(rng.integers(1, max_r + 1))
        m = int(rng.integers(r, max_m + 1))
        A = rng.standard_normal((m, r))
        b = rng.standard_normal(m)
        c = rng.standard_normal(r)
        if np.linalg.matrix_rank(A, tol=1e-8) < r:
            continue
        status_tight, val_tight = lp_enumeration_oracle(A, b, c, tol=1e-9)
        status_loose, val_loose = lp_enumeration_oracle(A, b, c, tol=1e-6)
        if status_tight != status_loose:
            continue
        if status_tight == OPTIMAL:
            if abs(val_tight - val_loose) > 1e-7 or abs(val_tight) > 1e4:
                continue
        return A, b, c, status_tight, val_tight


class TestSimplexCore:
    def test_one_dimensional(self):
        sol = simplex_core(np.array([[1.0]]), np.array([1.0]), np.array([1.0]))
        assert sol.status == OPTIMAL
        assert sol.objective == pytest.approx(1.0, abs=1e-12)
        assert sol.y_star[0] == pytest.approx(1.0, abs=1e-12)

    def test_two_variable_active_third_constraint(self):
        A = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        sol = simplex_core(A, np.array([1.0, 1.0, 3.0]), np.array([1.0, 1.0]))
        assert sol.status == OPTIMAL
        assert sol.objective == pytest.approx(3.0, abs=1e-9)

    def test_unbounded(self):
        sol = simplex_core(np.array([[1.0]]), np.array([0.0]), np.array([-1.0]))
        assert sol.status == UNBOUNDED

    def test_infeasible(self):
        # y >= 1 and -y >= 0 cannot both hold
        A = np.array([[1.0], [-1.0]])
        sol = simplex_core(A, np.array([1.0, 0.0]), np.array([1.0]))
        assert sol.status == INFEASIBLE

    def test_fifty_random_feasible_lps_match_oracle(self):
        rng = np.random.default_rng(2718)
        checked = 0
        while checked < 50:
            A, b, c, status, value = draw_well_posed_lp(rng)
            if status != OPTIMAL:
                continue
            sol = simplex_core(A, b, c)
            assert sol.status == OPTIMAL
            assert abs(sol.objective - value) <= 1e-7
            checked += 1

    def test_statuses_match_oracle(self):
        rng = np.random.default_rng(577)
        seen = {OPTIMAL: 0, INFEASIBLE: 0, UNBOUNDED: 0}
        for _ in range(60):
            A, b, c, status, _ = draw_well_posed_lp(rng)
            sol = simplex_core(A, b, c)
            assert sol.status == status
            seen[status] += 1
        assert min(seen.values()) > 0  # all three outcomes exercised

    def test_rank_deficient_unbounded_not_misreported(self):
        # first variable has cost but no constraints (A's first column is
        # zero, so the dual equalities are inconsistent at the first row);
        # the LP is feasible (x = 0, y >= 1 forced) and unbounded in z
        A = np.array(
            [[0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 1.0]]
        )
        b = np.array([-1.0, 0.0, 0.0, 1.0])
        c = np.array([1.0, 0.0, 0.0])
        assert simplex_core(A, b, c).status == UNBOUNDED

    def test_rank_deficient_infeasible(self):
        # same dual inconsistency, but x >= 0 and -x >= 1 clash
        A = np.array([[0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]])
        b = np.array([0.0, 1.0, 0.0])
        c = np.array([1.0, 0.0, 0.0])
        assert simplex_core(A, b, c).status == INFEASIBLE

    def test_rejects_underdetermined(self):
        with pytest.raises(InvalidInput):
            simplex_core(np.ones((1, 2)), np.ones(1), np.ones(2))

    def test_rejects_nan(self):
        with pytest.raises(InvalidInput):
            simplex_core(np.array([[np.nan]]), np.ones(1), np.ones(1))


class TestAnchorLp:
    def test_identity_basis(self):
        sol = solve_anchor_lp(LpProblem(np.eye(2), 0))
        assert sol.status == OPTIMAL
        np.testing.assert_allclose(sol.x_star, [1.0, 0.0], atol=1e-10)
        assert sol.objective == pytest.approx(1.0, abs=1e-9)

    def test_zero_anchor_row_infeasible(self):
        M = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        sol = solve_anchor_lp(LpProblem(M, 0))
        assert sol.status == INFEASIBLE

    def test_planted_pure_node_recovers_exact_column(self):
        # exactly pure anchor: the scaled optimum equals the true column
        rng = np.random.default_rng(5)
        n, k = 40, 3
        theta, pure = planted_theta(rng, n, k, eta=0.0)
        B = make_interaction_matrix("delta_blend", k, delta=0.25)
        # B full rank makes range(P) = range(theta), a valid LP basis
        for j, anchor in enumerate(pure):
            sol = solve_anchor_lp(LpProblem(theta, anchor))
            assert sol.status == OPTIMAL
            recovered = sol.x_star / np.abs(sol.x_star).max()
            assert np.max(np.abs(recovered - theta[:, j])) <= 1e-8

    def test_anchor_constraint_tight_at_optimum(self):
        rng = np.random.default_rng(6)
        theta, pure = planted_theta(rng, 30, 3, eta=0.01)
        for anchor in pure:
            sol = solve_anchor_lp(LpProblem(theta, anchor))
            assert sol.status == OPTIMAL
            assert sol.x_star[anchor] == pytest.approx(1.0, abs=1e-7)

    def test_scale_invariance(self):
        # the LP depends only on the column space of M
        rng = np.random.default_rng(7)
        for _ in range(10):
            M = rng.random((12, 3)) + 0.05
            Q = rng.standard_normal((3, 3))
            while abs(np.linalg.det(Q)) < 0.3:
                Q = rng.standard_normal((3, 3))
            base = solve_anchor_lp(LpProblem(M, 4))
            mixed = solve_anchor_lp(LpProblem(M @ Q, 4))
            assert base.status == mixed.status == OPTIMAL
            assert np.max(np.abs(base.x_star - mixed.x_star)) <= 1e-7

    def test_invalid_anchor_row(self):
        with pytest.raises(InvalidInput):
            LpProblem(np.eye(2), 5)


class TestRecoveryBound:
    @pytest.mark.parametrize("k", [2, 3])
    @pytest.mark.parametrize("eta", [0.005, 0.01, 0.02])
    def test_near_pure_anchor_error_bound(self, k, eta):
        # with anchors within eta of the corners and a balanced column-sum
        # profile, each recovered column is within 4 eta (2 sqrt(2) k + 1)
        # of the true characteristic vector
        bound = 4.0 * eta * (2.0 * np.sqrt(2.0) * k + 1.0)
        for seed in range(20):
            rng = np.random.default_rng([seed, k, int(eta * 1000)])
            n = 60
            theta, pure = planted_theta(rng, n, k, eta=eta)
            c = theta.sum(axis=0)
            ratio = c.min() / c.max()
            assert ratio > 0.5
            assert eta < (ratio - 0.5) / (4.0 * k)  # hypothesis holds
            for j, anchor in enumerate(pure):
                sol = solve_anchor_lp(LpProblem(theta, anchor))
                assert sol.status == OPTIMAL
                recovered = sol.x_star / np.abs(sol.x_star).max()
                assert np.max(np.abs(recovered - theta[:, j])) <= bound


class TestRecoverAll:
    def test_exact_mode_planted(self):
        rng = np.random.default_rng(11)
        n, k = 30, 3
        theta, _ = planted_theta(rng, n, k, eta=0.0)
        B = np.array([[0.9, 0.2, 0.1], [0.2, 0.8, 0.15], [0.1, 0.15, 0.85]])
        P = build_probability_matrix(ThetaMatrix(theta), B)
        result = recover_all(P, k, mode=EXACT)
        assert result.per_column_status == [OPTIMAL] * k
        assert not result.suspect_columns
        assert entrywise_error(result.theta_hat, theta).error <= 1e-7

    def test_spectral_equals_exact_on_noiseless_input(self):
        rng = np.random.default_rng(12)
        theta, _ = planted_theta(rng, 35, 3, eta=0.0)
        B = make_interaction_matrix("delta_blend", 3, delta=0.2)
        P = build_probability_matrix(ThetaMatrix(theta), B)
        exact = recover_all(P, 3, mode=EXACT)
        spectral = recover_all(P, 3, mode=SPECTRAL)
        err = entrywise_error(spectral.theta_hat, exact.theta_hat).error
        assert err <= 1e-6

    def test_golden_default_synthetic(self):
        # pinned end-to-end regression at n=500 with the default protocol
        rng = np.random.default_rng(2024)
        k, n, alpha = 3, 500, 0.5
        B = make_interaction_matrix("diag_random", k, rng=rng)
        params = MmsbParams(n, k, alpha, B)
        theta = sample_theta(params, rng)
        P = build_probability_matrix(theta, B)
        A = sample_adjacency_average(P, 23, rng)  # ceil(sqrt(500))
        result = recover_all(A, k, mode=SPECTRAL, rng=rng)
        error = entrywise_error(result.theta_hat, theta.theta).error
        assert error < 0.5
        assert error == pytest.approx(GOLDEN_N500_ERROR, abs=1e-12)

    def test_rejects_bad_mode(self):
        with pytest.raises(InvalidInput):
            recover_all(np.eye(4), 2, mode="fancy")
