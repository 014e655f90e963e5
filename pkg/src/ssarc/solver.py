"""
Sequential adaptive cubic regularization for equality-constrained problems.

Each outer iteration at ``x_k``

1. factors ``J_k``, estimates multipliers by least squares and forms the
   Lagrangian Hessian ``B_k``;
2. stops if ``max(||Z' g||, ||c||) <= epsilon``;
3. takes the vertical step ``v_k`` (at most ``sqrt(beta_k)`` long) and
   solves the reduced systems ``(Z'BZ + lam_i I) u = -Z'(g + B v)`` for the
   whole shift ladder in one Lanczos pass;
4. tries ``d = v + Z u(lam_j)`` for shifts ``j`` moving up the ladder until
   the merit ratio ``rho`` reaches ``eta1``.

A rejected trial reuses the stored solutions, so no new Krylov work is done
unless the vertical step itself has to shrink.
"""

import math
import time
from dataclasses import asdict, dataclass, field, replace
from typing import List, Optional

import numpy as np

from .errors import (DegenerateModel, EvaluationError, LadderExhausted,
                     NumericalBreakdown, RankDeficient)
from .linalg import JacobianFactorization, reduced_operator
from .merit import PenaltyState, acceptance_ratio, update_penalty
from .shifted_cg import ShiftLadder, solve_all_shifts
from .state import IterateState
from .step import compose_step, vertical_step
from .subproblem import advance_on_failure, select_initial

__all__ = ['SolverConfig', 'SolverReport', 'TrialRecord', 'IterateState',
           'solve', 'kkt_residual', 'STATUSES']

STATUSES = ('Converged', 'LadderExhausted', 'RankDeficient', 'IterationCap',
            'EvaluationError', 'NumericalBreakdown', 'DegenerateModel')

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SolverConfig:
    """Algorithm parameters.

    Defaults: ladder ``lambda0 = 1e-5``, ``psi = 10**0.5``, ``ladder_m = 30``;
    ``gamma1 = 0.1``, ``gamma2 = 5``, ``eta1 = 0.01``, ``eta2 = 0.75``,
    ``nu = 1e-4``, ``tau1 = 2``, ``tau2 = 1``, ``epsilon = 1e-8``.

    ``t`` is the sampling constant of the shift bracket and only enters
    diagnostics; ``None`` means ``psi``.  ``rho_noise`` scales the roundoff
    allowance ``rho_noise * eps * max(1, |phi|)`` added to both sides of the
    acceptance ratio; set it to 0 for the bare ratio.

    With ``beta_reset`` (the default) the reductions of ``beta`` made by
    rejected trials only steer the choice of shift: an accepted step sets
    ``beta_{k+1}`` from the ``beta_k`` the iteration started with.  With
    ``beta_reset=False`` the reduced value carries over to later iterations.
    Increases stop at ``beta_max``.
    """
    beta0: float = 1.0
    eta1: float = 0.01
    eta2: float = 0.75
    gamma1: float = 0.1
    gamma2: float = 5.0
    mu_init: float = 1.0
    nu: float = 1e-4
    tau1: float = 2.0
    tau2: float = 1.0
    theta: float = 0.5
    xi: float = 0.1
    zeta: float = 1.0
    t: Optional[float] = None
    lambda0: float = 1e-5
    psi: float = 10 ** 0.5
    ladder_m: int = 30
    epsilon: float = 1e-8
    max_outer: int = 500
    max_inner: Optional[int] = None
    reorthogonalize: bool = False
    extend_ladder: bool = False
    rho_noise: float = 10.0
    beta_reset: bool = True
    beta_max: float = 1e20
    model_guard: float = 1e-16
    rank_tolerance: Optional[float] = None

    def __post_init__(self):
        checks = [
            (0 < self.beta0 <= self.beta_max, "0 < beta0 <= beta_max"),
            (0 < self.eta1 < self.eta2 < 1, "0 < eta1 < eta2 < 1"),
            (0 < self.gamma1 < 1 < self.gamma2, "0 < gamma1 < 1 < gamma2"),
            (self.mu_init > 0, "mu_init > 0"),
            (0 < self.nu < 1, "0 < nu < 1"),
            (self.tau1 > 1 and self.tau2 > 0, "tau1 > 1 and tau2 > 0"),
            (0 < self.theta <= 1, "0 < theta <= 1"),
            (self.xi > 0 and 0 < self.zeta <= 1, "xi > 0 and 0 < zeta <= 1"),
            (self.t is None or self.t >= 1, "t >= 1"),
            (self.lambda0 > 0 and self.psi > 1 and self.ladder_m >= 0,
             "lambda0 > 0, psi > 1, ladder_m >= 0"),
            (self.epsilon > 0, "epsilon > 0"),
            (self.max_outer >= 0, "max_outer >= 0"),
            (self.rho_noise >= 0, "rho_noise >= 0"),
        ]
        for ok, what in checks:
            if not ok:
                raise ValueError(f"invalid solver configuration: need {what}")

    @property
    def sampling_t(self):
        return self.psi if self.t is None else self.t

    def ladder(self):
        return ShiftLadder.geometric(self.lambda0, self.psi, self.ladder_m)


@dataclass
class TrialRecord:
    """One trial step, accepted or not."""
    iteration: int
    trial: int
    shift_index: int
    lam: float
    beta: float
    beta_next: float
    beta_k: float
    mu: float
    mu_prev: float
    rho: float
    accepted: bool
    c_norm: float
    zg_norm: float
    alpha: float
    v_norm: float
    u_norm: float
    dq_N: float
    dq_N_diff: float
    dq_H: float
    dq_F: float
    dq: float
    phi_x: float
    phi_trial: float
    restarted: bool = False

    def as_dict(self):
        return asdict(self)


@dataclass
class SolverReport:
    status: str
    x: np.ndarray
    nit: int
    nif: int
    nig: int
    res: float
    trace: List[TrialRecord] = field(default_factory=list)
    cpu_time: float = 0.0
    state: Optional[IterateState] = field(default=None, repr=False)
    message: str = ''

    @property
    def converged(self):
        return self.status == 'Converged'


def kkt_residual(p, x):
    """Stationarity ``||g - J' s||`` with fresh least-squares ``s``, and ``||c||``."""
    x = np.asarray(x, dtype=float)
    g = p.eval_g(x)
    c = p.eval_c(x)
    fac = JacobianFactorization(p.eval_J(x))
    s = fac.multipliers(g)
    return float(np.linalg.norm(g - fac.J.T @ s)), float(np.linalg.norm(c))


def _finite(*arrays):
    return all(np.all(np.isfinite(a)) for a in arrays)


def _build_state(p, x, f, g, c, J, beta, mu, cfg):
    fac = JacobianFactorization(J, cfg.rank_tolerance)
    s = fac.multipliers(g)
    B = p.eval_lagrangian_hessian(x, s)
    if not _finite(B.matrix if B.matrix is not None else 0.0):
        raise EvaluationError(f"Lagrangian Hessian is not finite at x = {x}")
    basis = fac.nullspace()
    return IterateState(x=x, f=f, g=g, c=c, J=J, Z=basis, s=s, B=B,
                        zg=basis.Z.T @ g, beta=beta, mu=mu, factorization=fac)


def solve(problem, config=None, x0=None, **overrides):
    """Minimize ``problem.f`` subject to ``problem.c(x) = 0``.

    Parameters
    ----------
    problem : Problem
    config : SolverConfig, optional
    x0 : array_like, optional
        Starting point; defaults to ``problem.x0``.
    **overrides
        Individual :class:`SolverConfig` fields.

    Returns
    -------
    SolverReport
        ``status`` is one of :data:`STATUSES`.  Failures do not raise; the
        report carries the last iterate state and the partial trace.
    """
    cfg = config if config is not None else SolverConfig()
    if overrides:
        cfg = replace(cfg, **overrides)
    t_start = time.process_time()
    ladder = cfg.ladder()
    x = np.array(problem.x0 if x0 is None else x0, dtype=float)

    trace = []
    counts = {'nif': 0, 'nig': 0, 'nit': 0}
    state = None

    def finish(status, message=''):
        res = state.res if state is not None else math.nan
        return SolverReport(status=status, x=x.copy(), nit=counts['nit'], nif=counts['nif'],
                            nig=counts['nig'], res=res, trace=trace,
                            cpu_time=time.process_time() - t_start, state=state,
                            message=message)

    f = problem.eval_f(x)
    c = problem.eval_c(x)
    counts['nif'] += 1
    g = problem.eval_g(x)
    J = problem.eval_J(x)
    counts['nig'] += 1
    if not (_finite(f, c, g, J)):
        return finish('EvaluationError', 'non-finite evaluation at the starting point')

    beta = cfg.beta0
    penalty = PenaltyState(mu=cfg.mu_init, nu=cfg.nu, tau1=cfg.tau1, tau2=cfg.tau2)
    extensions = 0

    while True:
        try:
            state = _build_state(problem, x, f, g, c, J, beta, penalty.mu, cfg)
        except RankDeficient as exc:
            return finish('RankDeficient', str(exc))
        except EvaluationError as exc:
            return finish('EvaluationError', str(exc))
        if state.res <= cfg.epsilon:
            return finish('Converged')
        if counts['nit'] >= cfg.max_outer:
            return finish('IterationCap', f"no convergence in {cfg.max_outer} iterations")

        vc = state.factorization.min_norm_step(c)
        c_norm = state.c_norm
        zg_norm = float(np.linalg.norm(state.zg))
        trial_no = 0
        restarted = False
        accepted = False

        while not accepted:
            # (re)start at x_k with the current beta: new vertical step and shift
            # solves.  A restart acts as a fresh iteration from the reduced beta.
            beta_k = beta
            v, alpha = vertical_step(vc, beta, cfg.theta)
            Bv = state.B.apply(v)
            gz = state.Z.Z.T @ (g + Bv)
            state.gZ_reduced = gz
            state.beta = beta
            Bz = reduced_operator(state.B, state.Z)
            try:
                shifts = solve_all_shifts(Bz, gz, ladder, cfg.xi, cfg.zeta, cfg.max_inner,
                                          cfg.reorthogonalize)
                sel = select_initial(shifts, beta)
            except NumericalBreakdown as exc:
                return finish('NumericalBreakdown', str(exc))
            except LadderExhausted as exc:
                if cfg.extend_ladder and extensions < 10:
                    ladder = ladder.extended(cfg.ladder_m)
                    extensions += 1
                    continue
                return finish('LadderExhausted', str(exc))

            v_norm = float(np.linalg.norm(v))
            trial_beta = beta
            while True:
                j = sel.j
                u = shifts[j].u
                step = compose_step(state, v, alpha, u)
                mu_prev = penalty.mu
                try:
                    mu = update_penalty(penalty, step.dq_F, step.dq_H, step.dq_N)
                except DegenerateModel as exc:
                    return finish('DegenerateModel', str(exc))
                state.mu = mu
                dq = step.total_decrease(mu)
                phi_x = state.f + mu * c_norm

                x_trial = x + step.d
                f_t = problem.eval_f(x_trial)
                c_t = problem.eval_c(x_trial)
                counts['nif'] += 1
                if _finite(f_t, c_t):
                    phi_t = f_t + mu * float(np.linalg.norm(c_t))
                else:
                    phi_t = math.inf
                noise = cfg.rho_noise * _EPS * max(1.0, abs(phi_x))
                try:
                    rho = acceptance_ratio(phi_x, phi_t, phi_x, phi_x - dq,
                                           guard=cfg.model_guard, noise=noise)
                except DegenerateModel as exc:
                    return finish('DegenerateModel', str(exc))

                record = TrialRecord(
                    iteration=counts['nit'], trial=trial_no, shift_index=j,
                    lam=float(sel.lambdas[j]), beta=trial_beta, beta_next=math.nan,
                    beta_k=beta_k,
                    mu=mu, mu_prev=mu_prev, rho=float(rho), accepted=False,
                    c_norm=c_norm, zg_norm=zg_norm, alpha=alpha, v_norm=v_norm,
                    u_norm=float(np.linalg.norm(u)), dq_N=step.dq_N,
                    dq_N_diff=c_norm - float(np.linalg.norm(c + J @ v)),
                    dq_H=step.dq_H, dq_F=step.dq_F, dq=dq, phi_x=phi_x, phi_trial=phi_t,
                    restarted=restarted)
                trace.append(record)
                trial_no += 1
                restarted = False

                if rho >= cfg.eta1:
                    base = beta_k if cfg.beta_reset else trial_beta
                    beta = min(cfg.gamma2 * base, cfg.beta_max) if rho >= cfg.eta2 else base
                    record.accepted = True
                    record.beta_next = beta
                    x, f, c = x_trial, f_t, c_t
                    g = problem.eval_g(x)
                    J = problem.eval_J(x)
                    counts['nig'] += 1
                    counts['nit'] += 1
                    if not _finite(g, J):
                        return finish('EvaluationError', 'non-finite derivatives at accepted point')
                    accepted = True
                    break

                if shifts.g_z_norm == 0.0:
                    # no horizontal freedom: only a shorter vertical step can help
                    beta = cfg.gamma1 * min(trial_beta, v_norm ** 2)
                    record.beta_next = beta
                    restarted = True
                    break
                try:
                    j_new, beta_new = advance_on_failure(sel, trial_beta, cfg.gamma1)
                except LadderExhausted as exc:
                    if cfg.extend_ladder and extensions < 10:
                        ladder = ladder.extended(cfg.ladder_m)
                        extensions += 1
                        beta = cfg.gamma1 * trial_beta
                    elif v_norm > 0:
                        # every stored shift failed: the vertical step must shrink
                        beta = cfg.gamma1 * min(trial_beta, v_norm ** 2)
                    else:
                        return finish('LadderExhausted', str(exc))
                    record.beta_next = beta
                    restarted = True
                    break
                beta = beta_new
                record.beta_next = beta
                sel.j = j_new
                if not cfg.beta_reset:
                    trial_beta = beta
