"""
l2 exact-penalty merit function ``phi(x, mu) = f(x) + mu ||c(x)||`` and
its quadratic model, the penalty update and the acceptance ratio.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DegenerateModel, EvaluationError

__all__ = ['PenaltyState', 'penalty_value', 'model_value', 'update_penalty',
           'acceptance_ratio']


@dataclass
class PenaltyState:
    """Penalty parameter and the constants of its update rule."""
    mu: float = 1.0
    nu: float = 1e-4
    tau1: float = 2.0
    tau2: float = 1.0
    mu_prev: float = None

    def __post_init__(self):
        if not self.mu > 0:
            raise ContractViolation("initial penalty must be positive")
        if not 0 < self.nu < 1:
            raise ContractViolation("nu must lie in (0, 1)")
        if not self.tau1 > 1 or not self.tau2 > 0:
            raise ContractViolation("need tau1 > 1 and tau2 > 0")
        if self.mu_prev is None:
            self.mu_prev = self.mu


def penalty_value(problem, x, mu, f=None, c=None):
    """``f(x) + mu ||c(x)||``; pass ``f``/``c`` to reuse known values."""
    if f is None:
        f = problem.eval_f(x)
    if c is None:
        c = problem.eval_c(x)
    val = float(f) + mu * float(np.linalg.norm(c))
    if not np.isfinite(val):
        raise EvaluationError(f"merit function is not finite at x = {x}")
    return val


def model_value(state, d, mu):
    """Quadratic model ``f + g'd + d'Bd/2 + mu ||c + J d||`` at step ``d``."""
    d = np.asarray(d, dtype=float)
    return (state.f + float(state.g @ d) + 0.5 * float(d @ state.B.apply(d))
            + mu * float(np.linalg.norm(state.c + state.J @ d)))


def update_penalty(ps, dq_F, dq_H, dq_N):
    """Raise ``mu`` until ``dq_H + mu dq_N + dq_F >= nu mu dq_N``.

    The smallest qualifying value is ``-(dq_F + dq_H) / ((1 - nu) dq_N)``.
    If the current ``mu`` is below it, ``mu`` jumps to the largest of that
    value, ``tau1 * mu`` and ``mu + tau2``.  A zero normal decrease (feasible
    iterate) leaves ``mu`` alone.  Updates ``ps`` in place and returns the
    new ``mu``.

    Raises
    ------
    ContractViolation
        If ``dq_N < 0``.
    DegenerateModel
        If the required penalty overflows (``dq_N`` negligible against the
        other decreases).
    """
    if dq_N < 0:
        raise ContractViolation(f"normal model decrease is negative ({dq_N:.3e})")
    ps.mu_prev = ps.mu
    if dq_N == 0:
        return ps.mu
    with np.errstate(over='ignore'):
        mu_c = -(dq_F + dq_H) / ((1.0 - ps.nu) * dq_N)
    if not np.isfinite(mu_c):
        raise DegenerateModel(
            f"penalty requirement is not finite (dq_N = {dq_N:.3e})", predicted=dq_N)
    if ps.mu < mu_c:
        ps.mu = max(mu_c, ps.tau1 * ps.mu, ps.mu + ps.tau2)
    return ps.mu


def acceptance_ratio(phi_x, phi_trial, q0, q_d, guard=1e-16, noise=0.0):
    """Actual over predicted merit decrease.

    Parameters
    ----------
    phi_x, phi_trial : float
        Merit at the current and trial points.
    q0, q_d : float
        Model at the zero step and at the trial step.
    guard : float
        Relative threshold: a predicted decrease at or below
        ``guard * max(1, |phi_x|)`` raises :class:`DegenerateModel`.
    noise : float
        Absolute roundoff allowance added to numerator and denominator,
        so that decreases buried in rounding error give a ratio near one.

    Returns
    -------
    float
    """
    predicted = q0 - q_d
    actual = phi_x - phi_trial
    threshold = guard * max(1.0, abs(phi_x))
    if not np.isfinite(predicted) or predicted + noise <= threshold:
        raise DegenerateModel(
            f"predicted decrease {predicted:.3e} below threshold {threshold:.3e}",
            predicted=predicted, threshold=threshold)
    if not np.isfinite(actual):
        return -np.inf
    return (actual + noise) / (predicted + noise)
