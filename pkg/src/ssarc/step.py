"""
Composite step ``d = v + h``.

The vertical step ``v`` is a scaled minimum-norm solution of the linearized
constraints; its length is capped at ``sqrt(beta)``.  The horizontal step
``h = Z u`` lives in the null space of ``J`` and comes from the reduced
cubic-regularization subproblem.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .linalg import NullspaceBasis

__all__ = ['StepDecomposition', 'vertical_step', 'horizontal_step',
           'model_decreases', 'compose_step']


@dataclass
class StepDecomposition:
    v: np.ndarray
    h: np.ndarray
    d: np.ndarray
    alpha: float
    dq_N: float
    dq_H: float
    dq_F: float

    def total_decrease(self, mu):
        """Model decrease ``dq_H + mu * dq_N + dq_F`` for penalty ``mu``."""
        return self.dq_H + mu * self.dq_N + self.dq_F


def vertical_step(vc, beta, theta=0.5):
    """Scale the minimum-norm constraint step into the admissible range.

    The admissible scalings form the interval
    ``[min(1, theta sqrt(beta)/|vc|), min(1, sqrt(beta)/|vc|)]``; the upper
    end is used, so ``|v| = min(|vc|, sqrt(beta))``.

    Returns
    -------
    v : ndarray
    alpha : float
    """
    if not 0 < theta <= 1:
        raise ContractViolation("theta must lie in (0, 1]")
    if not beta > 0:
        raise ContractViolation("beta must be positive")
    vc = np.asarray(vc, dtype=float)
    vc_norm = np.linalg.norm(vc)
    if vc_norm == 0.0:
        return np.zeros_like(vc), 1.0
    alpha = min(1.0, np.sqrt(beta) / vc_norm)
    return alpha * vc, float(alpha)


def horizontal_step(u, basis):
    Z = basis.Z if isinstance(basis, NullspaceBasis) else np.asarray(basis)
    u = np.asarray(u, dtype=float)
    if Z.shape[1] != u.shape[0]:
        raise ContractViolation(
            f"basis has {Z.shape[1]} columns but u has length {u.shape[0]}")
    return Z @ u


def model_decreases(state, v, alpha, h):
    """Decreases of the normal, horizontal and objective models.

    ``dq_N`` uses the identity ``||c|| - ||c + J v|| = alpha ||c||``, which
    holds because ``J vc = -c``; it avoids the cancellation in the
    difference of norms.
    """
    B = state.B
    Bv = B.apply(v)
    Bh = B.apply(h)
    dq_N = alpha * state.c_norm
    dq_H = -float((state.g + Bv) @ h) - 0.5 * float(h @ Bh)
    dq_F = -float(state.g @ v) - 0.5 * float(v @ Bv)
    return dq_N, dq_H, dq_F


def compose_step(state, v, alpha, u):
    h = horizontal_step(u, state.Z)
    dq_N, dq_H, dq_F = model_decreases(state, v, alpha, h)
    return StepDecomposition(v=v, h=h, d=v + h, alpha=alpha,
                             dq_N=dq_N, dq_H=dq_H, dq_F=dq_F)
