import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from ssarc import (ContractViolation, DegenerateModel, EvaluationError, PenaltyState, Problem,
                   acceptance_ratio, compose_step, get_problem, model_value, penalty_value,
                   solve, update_penalty, vertical_step)
from builders import random_state, state_at


class TestPenaltyValue:

    def test_feasible_point(self):
        p = get_problem('HS28')
        xs = p.known_solution
        assert penalty_value(p, xs, 7.0) == pytest.approx(p.eval_f(xs), abs=1e-14)

    def test_pure_feasibility(self):
        p = Problem('F', 1, 1, np.zeros(1), f=lambda x: 0.0, g=lambda x: np.zeros(1),
                    c=lambda x: np.array([3.0]), J=lambda x: np.ones((1, 1)),
                    hess=lambda x, s: np.zeros((1, 1)))
        assert penalty_value(p, p.x0, 2.0) == 6.0

    def test_booth_from_parts(self):
        p = get_problem('BOOTH')
        x = p.x0
        expected = p.f(x) + 1.5 * np.sqrt(np.sum(np.asarray(p.c(x)) ** 2))
        assert penalty_value(p, x, 1.5) == pytest.approx(expected, rel=1e-15)

    def test_non_finite(self):
        p = Problem('NAN', 1, 0, np.zeros(1), f=lambda x: np.nan, g=lambda x: np.zeros(1),
                    c=lambda x: np.zeros(0), J=lambda x: np.zeros((0, 1)),
                    hess=lambda x, s: np.zeros((1, 1)))
        with pytest.raises(EvaluationError):
            penalty_value(p, p.x0, 1.0)


class TestModelValue:

    def test_zero_step_is_merit(self, rng):
        stt = random_state(rng)
        assert model_value(stt, np.zeros(6), 2.5) == stt.f + 2.5 * stt.c_norm

    def test_exact_for_linear_data(self, rng):
        n = 4
        a = rng.standard_normal(n)
        A = rng.standard_normal((2, n))
        b = rng.standard_normal(2)
        p = Problem('LIN', n, 2, np.zeros(n), f=lambda x: float(a @ x), g=lambda x: a,
                    c=lambda x: A @ x - b, J=lambda x: A, hess=lambda x, s: np.zeros((n, n)))
        x = rng.standard_normal(n)
        stt = state_at(p, x)
        for _ in range(5):
            d = rng.standard_normal(n)
            assert_allclose(model_value(stt, d, 3.0), penalty_value(p, x + d, 3.0),
                            rtol=1e-13)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**31), st.floats(1e-3, 1e3), st.floats(0.1, 50.0))
    def test_decomposition_identity(self, seed, beta, mu):
        rng = np.random.default_rng(seed)
        stt = random_state(rng, 6, 2)
        v, alpha = vertical_step(stt.factorization.min_norm_step(stt.c), beta)
        step = compose_step(stt, v, alpha, rng.standard_normal(4))
        lhs = model_value(stt, np.zeros(6), mu) - model_value(stt, step.d, mu)
        rhs = step.dq_H + mu * step.dq_N + step.dq_F
        scale = max(1.0, abs(stt.f) + mu * stt.c_norm, abs(step.dq_H), abs(step.dq_F))
        assert abs(lhs - rhs) <= 1e-10 * scale


class TestUpdatePenalty:

    def test_nonnegative_requirement_keeps_mu(self):
        ps = PenaltyState(mu=1.0)
        assert update_penalty(ps, 2.0, 1.0, 0.5) == 1.0

    def test_plug_in_example(self):
        ps = PenaltyState(mu=1.0, nu=1e-4, tau1=2.0, tau2=1.0)
        mu = update_penalty(ps, -5.0, 0.0, 1.0)
        assert mu == pytest.approx(5.0 / (1 - 1e-4), rel=1e-15)
        assert mu == pytest.approx(5.0005, abs=1e-4)
        assert ps.mu_prev == 1.0

    def test_feasible_iterate(self):
        ps = PenaltyState(mu=3.0)
        assert update_penalty(ps, -100.0, 0.0, 0.0) == 3.0

    def test_minimum_increment(self):
        ps = PenaltyState(mu=4.0)
        # mu_c just above mu: jump to tau1 * mu
        assert update_penalty(ps, -4.1, 0.0, 1.0) == 8.0
        ps = PenaltyState(mu=0.3)
        assert update_penalty(ps, -0.31, 0.0, 1.0) == 1.3

    def test_negative_normal_decrease(self):
        with pytest.raises(ContractViolation):
            update_penalty(PenaltyState(), 0.0, 0.0, -1e-3)

    @pytest.mark.parametrize('kw', [dict(mu=0.0), dict(nu=1.0), dict(tau1=1.0),
                                    dict(tau2=0.0)])
    def test_invalid_state(self, kw):
        with pytest.raises(ContractViolation):
            PenaltyState(**kw)

    def test_overflowing_requirement(self):
        with pytest.raises(DegenerateModel):
            update_penalty(PenaltyState(), 0.0, -1.0, 1e-313)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.01, 100), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3),
           st.one_of(st.just(0.0), st.floats(1e-12, 1e2)))
    def test_sufficient_decrease_after_update(self, mu0, dq_F, dq_H, dq_N):
        ps = PenaltyState(mu=mu0)
        mu = update_penalty(ps, dq_F, dq_H, dq_N)
        assert mu >= mu0
        if mu > mu0:
            assert mu - mu0 >= min((ps.tau1 - 1) * mu0, ps.tau2) - 1e-12
        if dq_N > 0:
            dq = dq_H + mu * dq_N + dq_F
            assert dq >= ps.nu * mu * dq_N - 1e-9 * max(1.0, abs(dq_H), abs(dq_F), mu * dq_N)


class TestAcceptanceRatio:

    def test_perfect_model(self):
        assert acceptance_ratio(5.0, 4.0, 5.0, 4.0) == 1.0

    def test_merit_increase(self):
        assert acceptance_ratio(5.0, 6.0, 5.0, 4.0) < 0

    def test_degenerate(self):
        with pytest.raises(DegenerateModel) as info:
            acceptance_ratio(1.0, 1.0, 1.0, 1.0)
        assert info.value.predicted == 0.0

    def test_non_finite_trial(self):
        assert acceptance_ratio(1.0, np.inf, 1.0, 0.0) == -np.inf

    def test_noise_term(self):
        # a decrease lost in rounding still yields a ratio near one
        assert acceptance_ratio(1.0, 1.0, 1.0, 1.0 - 1e-17, noise=1e-15) == pytest.approx(
            1.0, abs=0.02)

    def test_quadratic_with_linear_constraints_is_exact(self, rng):
        p = get_problem('HS48')
        stt = state_at(p, p.x0 + 0.3)
        v, alpha = vertical_step(stt.factorization.min_norm_step(stt.c), 1.0)
        step = compose_step(stt, v, alpha, rng.standard_normal(stt.Z.dim))
        mu = 2.0
        q0 = model_value(stt, np.zeros(p.n), mu)
        qd = model_value(stt, step.d, mu)
        phi_x = penalty_value(p, stt.x, mu)
        phi_t = penalty_value(p, stt.x + step.d, mu)
        if q0 - qd > 0:
            assert acceptance_ratio(phi_x, phi_t, q0, qd) == pytest.approx(1.0, abs=1e-10)
        # in the solver, actual and predicted decreases differ only by rounding
        rep = solve(p)
        assert rep.converged
        for tr in rep.trace:
            gap = abs((tr.phi_x - tr.phi_trial) - tr.dq)
            assert gap <= 1e-12 * max(1.0, abs(tr.phi_x))
