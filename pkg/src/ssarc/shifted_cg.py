"""
Lanczos-CG for a family of shifted systems ``(B + lam_i I) u = -g``.

One Lanczos process on ``B`` drives every shift at once: the basis vectors
``v_j``, the diagonal ``delta_j = v_j' B v_j`` and the off-diagonal
``mu_{j+1}`` are shared, while each shift carries its own CG scalars
(``gamma``, ``omega``, ``sigma``) and vectors (``u``, ``p``).  A shift stops
when its pivot ``delta_j + lam_i - omega_{j-1} / gamma_{j-1}`` turns
nonpositive (negative curvature) or when the residual satisfies::

    ||g + (B + lam_i I) u|| <= xi * min(||g||, ||u||) ** (1 + zeta)

The residual norm is tracked through ``|sigma_j|``; :func:`verify_residual`
recomputes it explicitly.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .errors import ContractViolation, NumericalBreakdown
from .linalg import SymmetricOperator

__all__ = [
    'ShiftLadder',
    'ShiftSolveResult',
    'ShiftSolveSet',
    'solve_all_shifts',
    'verify_residual',
    'residual_bound',
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ShiftLadder:
    """Geometric grid of shifts ``lam_{i+1} = psi * lam_i``, ``i = 0..m``."""
    lambdas: np.ndarray
    psi: float

    @classmethod
    def geometric(cls, lambda0=1e-5, psi=10 ** 0.5, m=30):
        if not lambda0 > 0:
            raise ContractViolation("lambda0 must be positive")
        if not psi > 1:
            raise ContractViolation("psi must exceed 1")
        if m < 0:
            raise ContractViolation("ladder index m must be nonnegative")
        lams = [float(lambda0)]
        for _ in range(m):
            lams.append(lams[-1] * psi)
        return cls(lambdas=np.array(lams), psi=float(psi))

    @property
    def m(self):
        """Index of the largest shift."""
        return len(self.lambdas) - 1

    def __len__(self):
        return len(self.lambdas)

    def extended(self, extra):
        """Ladder with ``extra`` more entries appended above the top shift."""
        lams = list(self.lambdas)
        for _ in range(extra):
            lams.append(lams[-1] * self.psi)
        return ShiftLadder(lambdas=np.array(lams), psi=self.psi)


@dataclass
class ShiftSolveResult:
    shift_index: int
    lam: float
    u: Optional[np.ndarray]
    residual_norm: float
    curvature_ok: bool
    converged: bool
    inner_iterations: int

    @property
    def available(self):
        """Usable as a subproblem solution: no negative curvature and (10) met."""
        return self.curvature_ok and self.converged


@dataclass
class ShiftSolveSet:
    results: List[ShiftSolveResult]
    g_z_norm: float
    matvecs: int
    lanczos_steps: int = 0
    lambdas: np.ndarray = field(default=None, repr=False)

    def __len__(self):
        return len(self.results)

    def __getitem__(self, i):
        return self.results[i]

    @property
    def u_norms(self):
        return np.array([np.linalg.norm(r.u) if r.u is not None else np.nan
                         for r in self.results])

    @property
    def available(self):
        return np.array([r.available for r in self.results])


def residual_bound(g_norm, u_norm, xi, zeta):
    """Right-hand side of the inexactness test, ``xi * min(|g|, |u|)^(1+zeta)``."""
    return xi * min(g_norm, u_norm) ** (1.0 + zeta)


def solve_all_shifts(Bz, g_z, ladder, xi=0.1, zeta=1.0, max_inner=None,
                     reorthogonalize=False):
    """Solve ``(Bz + lam_i I) u = -g_z`` for every shift of ``ladder``.

    Parameters
    ----------
    Bz : SymmetricOperator or ndarray
        Reduced Hessian.
    g_z : ndarray
        Reduced gradient.
    ladder : ShiftLadder or array_like
        Ascending positive shifts.
    xi, zeta : float
        Accuracy parameters of the residual test, ``xi > 0``, ``0 < zeta <= 1``.
    max_inner : int, optional
        Lanczos step cap; defaults to ``2 * dim + 10``. Shifts still running
        at the cap are returned with ``converged=False``.
    reorthogonalize : bool
        Full reorthogonalization of the Lanczos vectors (diagnostics only).

    Returns
    -------
    ShiftSolveSet

    Notes
    -----
    When shift ``i`` meets a nonpositive pivot, the tridiagonal Lanczos
    matrix plus ``lam_i`` is indefinite, and so is ``Bz + lam_k I`` for all
    ``lam_k <= lam_i`` (Ritz values interlace the spectrum).  Those smaller
    shifts are flagged too, even if they already stopped, which keeps the
    curvature flags monotone along the ladder.
    """
    if not xi > 0:
        raise ContractViolation("xi must be positive")
    if not 0 < zeta <= 1:
        raise ContractViolation("zeta must lie in (0, 1]")
    if not isinstance(Bz, SymmetricOperator):
        Bz = SymmetricOperator.from_matrix(Bz)
    lams = np.asarray(ladder.lambdas if isinstance(ladder, ShiftLadder) else ladder,
                      dtype=float)
    g = np.asarray(g_z, dtype=float)
    dim = g.shape[0]
    if dim != Bz.dim:
        raise ContractViolation(f"operator dimension {Bz.dim} != gradient length {dim}")
    if not np.all(np.isfinite(g)):
        raise NumericalBreakdown("reduced gradient is not finite", step=0)
    k = len(lams)
    g_norm = float(np.linalg.norm(g))

    if g_norm == 0.0:
        results = [ShiftSolveResult(i, float(lams[i]), np.zeros(dim), 0.0, True, True, 0)
                   for i in range(k)]
        return ShiftSolveSet(results, 0.0, 0, 0, lams)

    if max_inner is None:
        max_inner = 2 * dim + 10

    # shared Lanczos state
    mu = g_norm
    v = -g / mu
    v_prev = np.zeros(dim)
    basis = [v] if reorthogonalize else None

    # per-shift CG state
    u = np.zeros((k, dim))
    p = np.tile(-g, (k, 1))
    sigma = np.full(k, mu)
    omega = np.zeros(k)
    gamma = np.ones(k)
    res = np.full(k, g_norm)
    active = np.ones(k, dtype=bool)
    curv_ok = np.ones(k, dtype=bool)
    converged = np.zeros(k, dtype=bool)
    iters = np.zeros(k, dtype=int)

    matvecs = 0
    steps = 0
    while active.any() and steps < max_inner:
        Bv = Bz.apply(v)
        matvecs += 1
        delta = float(v @ Bv)
        w = Bv - delta * v - mu * v_prev
        if reorthogonalize:
            for _ in range(2):
                Vb = np.array(basis)
                w = w - Vb.T @ (Vb @ w)
        mu_next = float(np.linalg.norm(w))
        if not (np.isfinite(delta) and np.isfinite(mu_next)):
            raise NumericalBreakdown(
                f"non-finite Lanczos quantities at step {steps}", step=steps)
        # invariant subspace reached: the next residuals vanish
        if mu_next <= 10 * max(dim, 1) * _EPS * max(np.linalg.norm(Bv), abs(delta), mu):
            mu_next = 0.0
            v_next = np.zeros(dim)
        else:
            v_next = w / mu_next

        idx = np.flatnonzero(active)
        pivot = delta + lams[idx] - omega[idx] / gamma[idx]
        bad = ~(pivot > 0)
        if bad.any():
            top = idx[bad].max()
            # everything at or below the largest failing shift is indefinite
            flagged = lams <= lams[top]
            curv_ok[flagged] = False
            active[flagged] = False
            keep = ~bad & (lams[idx] > lams[top])
            idx, pivot = idx[keep], pivot[keep]

        if idx.size:
            gam = 1.0 / pivot
            om = (mu_next * gam) ** 2
            sig = -mu_next * gam * sigma[idx]
            u[idx] += gam[:, None] * p[idx]
            p[idx] = sig[:, None] * v_next[None, :] + om[:, None] * p[idx]
            gamma[idx], omega[idx], sigma[idx] = gam, om, sig
            res[idx] = np.abs(sig)
            iters[idx] += 1
            if not (np.all(np.isfinite(sig)) and np.all(np.isfinite(u[idx]))):
                i_bad = int(idx[~np.isfinite(sig) | ~np.all(np.isfinite(u[idx]), axis=1)][0])
                raise NumericalBreakdown(
                    f"non-finite CG update for shift {i_bad} at step {steps}",
                    shift_index=i_bad, step=steps)
            u_norm = np.linalg.norm(u[idx], axis=1)
            done = res[idx] <= xi * np.minimum(g_norm, u_norm) ** (1.0 + zeta)
            converged[idx[done]] = True
            active[idx[done]] = False

        v_prev, v, mu = v, v_next, mu_next
        if reorthogonalize and mu_next > 0:
            basis.append(v)
        steps += 1
        if mu_next == 0.0:
            break

    results = [ShiftSolveResult(shift_index=i, lam=float(lams[i]), u=u[i].copy(),
                                residual_norm=float(res[i]), curvature_ok=bool(curv_ok[i]),
                                converged=bool(converged[i]), inner_iterations=int(iters[i]))
               for i in range(k)]
    return ShiftSolveSet(results, g_norm, matvecs, steps, lams)


def verify_residual(Bz, g_z, result):
    """Explicit residual ``||g_z + (Bz + lam I) u||`` of one shift's solution."""
    if result.u is None:
        raise ContractViolation("result carries no solution vector")
    if not isinstance(Bz, SymmetricOperator):
        Bz = SymmetricOperator.from_matrix(Bz)
    u = result.u
    return float(np.linalg.norm(np.asarray(g_z) + Bz.apply(u) + result.lam * u))
