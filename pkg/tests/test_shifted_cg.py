import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from oracles import cg_single_shift, dense_shift_solve, min_eig, random_symmetric
from ssarc import (ContractViolation, NumericalBreakdown, ShiftLadder, SymmetricOperator,
                   solve_all_shifts, verify_residual)
from ssarc.shifted_cg import residual_bound

LADDER = ShiftLadder.geometric()
EPS = np.finfo(float).eps


def rounding_floor(B, g, lam, u):
    """Size of the residual that floating point alone can leave behind."""
    n = len(g)
    return n * EPS * ((np.linalg.norm(B, 2) + lam) * np.linalg.norm(u) + np.linalg.norm(g))


class TestLadder:

    def test_defaults(self):
        lams = LADDER.lambdas
        assert len(LADDER) == 31 and LADDER.m == 30
        assert lams[0] == 1e-5
        assert_allclose(lams[-1], 1e10, rtol=1e-12)
        assert np.all(np.diff(lams) > 0)

    def test_ratio_is_exact_as_constructed(self):
        lams = LADDER.lambdas
        assert all(lams[i + 1] == lams[i] * LADDER.psi for i in range(LADDER.m))

    def test_extended(self):
        ext = LADDER.extended(3)
        assert len(ext) == 34
        assert_allclose(ext.lambdas[:31], LADDER.lambdas)
        assert ext.lambdas[-1] == ext.lambdas[-2] * LADDER.psi

    @pytest.mark.parametrize('kw', [dict(lambda0=0.0), dict(psi=1.0), dict(m=-1)])
    def test_invalid(self, kw):
        with pytest.raises(ContractViolation):
            ShiftLadder.geometric(**kw)


class TestSpecExamples:

    def test_identity_one_step(self):
        out = solve_all_shifts(np.eye(2), [1.0, 0.0], [1.0])
        r = out[0]
        assert r.curvature_ok and r.converged
        assert_allclose(r.u, [-0.5, 0.0], atol=1e-15)
        assert r.residual_norm == 0.0
        assert r.inner_iterations == 1
        assert verify_residual(np.eye(2), [1.0, 0.0], r) == 0.0

    def test_negative_curvature_small_shift(self):
        B = np.diag([-1.0, 1.0])
        assert min_eig(B, 0.5) < 0
        out = solve_all_shifts(B, [1.0, 1.0], [0.5])
        assert not out[0].curvature_ok

    def test_positive_definite_shift(self):
        out = solve_all_shifts(np.diag([-1.0, 1.0]), [1.0, 1.0], [2.0])
        r = out[0]
        assert r.curvature_ok and r.converged
        assert_allclose(r.u, dense_shift_solve(np.diag([-1.0, 1.0]), [1.0, 1.0], 2.0),
                        rtol=1e-12)
        assert_allclose(r.u, [-1.0, -1.0 / 3.0], rtol=1e-12)

    def test_both_shifts_one_pass(self):
        out = solve_all_shifts(np.diag([-1.0, 1.0]), [1.0, 1.0], [0.5, 2.0])
        assert [r.curvature_ok for r in out] == [False, True]
        assert_allclose(out[1].u, [-1.0, -1.0 / 3.0], rtol=1e-12)

    def test_zero_gradient(self, rng):
        B, _ = random_symmetric(rng, 5, 'indefinite')
        out = solve_all_shifts(B, np.zeros(5), LADDER)
        assert len(out) == 31 and out.g_z_norm == 0.0 and out.matvecs == 0
        for r in out:
            assert np.all(r.u == 0.0) and r.residual_norm == 0.0 and r.curvature_ok


class TestOracleAgreement:

    @pytest.mark.parametrize('mode', ['spd', 'indefinite', 'mixed'])
    def test_single_shift_cg_equivalence(self, rng, mode):
        for _ in range(5):
            n = int(rng.integers(2, 25))
            B, _ = random_symmetric(rng, n, mode)
            g = rng.standard_normal(n)
            out = solve_all_shifts(B, g, LADDER)
            for r in out:
                u_ref, ok, conv, _ = cg_single_shift(B, g, r.lam)
                if not r.available:
                    continue
                assert ok and conv
                assert np.linalg.norm(r.u - u_ref) <= 1e-8 * max(np.linalg.norm(u_ref), 1e-300)

    def test_converged_spd_residual_below_bound(self, rng):
        B, _ = random_symmetric(rng, 10, 'spd')
        g = rng.standard_normal(10)
        out = solve_all_shifts(B, g, LADDER)
        for r in out:
            assert r.available
            explicit = verify_residual(B, g, r)
            bound = residual_bound(np.linalg.norm(g), np.linalg.norm(r.u), 0.1, 1.0)
            assert explicit <= bound + rounding_floor(B, g, r.lam, r.u)
            # tracked and explicit residuals agree
            assert abs(explicit - r.residual_norm) <= 1e-8 * r.residual_norm + 1e-12 * max(
                1.0, np.linalg.norm(g))

    def test_cap_hit_result_is_flagged(self, rng):
        B, _ = random_symmetric(rng, 12, 'spd')
        g = rng.standard_normal(12)
        out = solve_all_shifts(B, g, [1e-3], max_inner=2)
        r = out[0]
        assert not r.converged and not r.available
        bound = residual_bound(np.linalg.norm(g), np.linalg.norm(r.u), 0.1, 1.0)
        assert verify_residual(B, g, r) > bound

    def test_operator_input(self, rng):
        B, _ = random_symmetric(rng, 6, 'spd')
        g = rng.standard_normal(6)
        a = solve_all_shifts(B, g, LADDER)
        b = solve_all_shifts(SymmetricOperator(apply=lambda v: B @ v, dim=6), g, LADDER)
        for ra, rb in zip(a, b):
            assert_allclose(ra.u, rb.u, rtol=1e-14, atol=0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 20), st.sampled_from(['spd', 'indefinite', 'mixed']),
       st.integers(0, 2**31), st.floats(-3, 2))
def test_solution_properties(n, mode, seed, log_scale):
    rng = np.random.default_rng(seed)
    B, eigs = random_symmetric(rng, n, mode)
    g = rng.standard_normal(n) * 10.0 ** log_scale
    out = solve_all_shifts(B, g, LADDER)
    flags = [r.curvature_ok for r in out]
    # monotone flags: once true, true for every larger shift
    first = flags.index(True) if True in flags else len(flags)
    assert all(flags[first:])
    for r in out:
        H = B + r.lam * np.eye(n)
        if not r.curvature_ok:
            # soundness: a flag is raised only if the shifted matrix is not PD
            assert eigs[0] + r.lam < 1e-10
            continue
        u = r.u
        assert u @ H @ u >= -1e-10 * (u @ u)
        if not r.converged:
            continue
        res = g + H @ u
        floor = rounding_floor(B, g, r.lam, u)
        # CG residual is orthogonal to the Krylov space holding u
        assert abs(res @ u) <= 1e-8 * np.linalg.norm(res) * np.linalg.norm(u) + floor * np.linalg.norm(u)
        bound = residual_bound(np.linalg.norm(g), np.linalg.norm(u), 0.1, 1.0)
        assert np.linalg.norm(res) <= bound + floor
        direct = dense_shift_solve(B, g, r.lam)
        assert np.linalg.norm(H @ (u - direct)) <= bound + floor


def test_non_finite_gradient():
    with pytest.raises(NumericalBreakdown):
        solve_all_shifts(np.eye(2), [np.nan, 1.0], LADDER)


@pytest.mark.parametrize('kw', [dict(xi=0.0), dict(zeta=0.0), dict(zeta=1.5)])
def test_invalid_accuracy_parameters(kw):
    with pytest.raises(ContractViolation):
        solve_all_shifts(np.eye(2), [1.0, 0.0], LADDER, **kw)


def test_dimension_mismatch():
    with pytest.raises(ContractViolation):
        solve_all_shifts(np.eye(3), [1.0, 0.0], LADDER)


@pytest.mark.filterwarnings('ignore:invalid value:RuntimeWarning')
def test_non_finite_operator():
    B = np.array([[np.inf, 0.0], [0.0, 1.0]])
    with pytest.raises(NumericalBreakdown):
        solve_all_shifts(B, [1.0, 1.0], LADDER)


def test_reorthogonalization_matches(rng):
    B, _ = random_symmetric(rng, 15, 'mixed')
    g = rng.standard_normal(15)
    plain = solve_all_shifts(B, g, LADDER)
    reo = solve_all_shifts(B, g, LADDER, reorthogonalize=True)
    for a, b in zip(plain, reo):
        if a.available and b.available:
            assert np.linalg.norm(a.u - b.u) <= 1e-6 * np.linalg.norm(b.u)


def test_beta_of_monotone_on_exact_solves(rng):
    # fully converged solves: ||u(lam)|| / lam decreases along the ladder
    B, _ = random_symmetric(rng, 8, 'spd')
    g = rng.standard_normal(8)
    out = solve_all_shifts(B, g, LADDER, xi=1e-12)
    ratio = out.u_norms / out.lambdas
    assert np.all(np.diff(ratio) < 0)


def test_shared_basis_cost(rng):
    # one matrix-vector product per Lanczos step, however many shifts
    B, _ = random_symmetric(rng, 10, 'spd')
    out = solve_all_shifts(B, rng.standard_normal(10), LADDER)
    assert out.matvecs == out.lanczos_steps <= 2 * 10 + 10
