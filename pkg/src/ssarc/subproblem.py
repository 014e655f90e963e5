"""
Choosing a shift from a multi-shift solve.

The exact cubic-regularization step satisfies ``lam = ||u(lam)|| / beta``.
Instead of solving that secular relation, the ladder is sampled: the first
trial uses the shift whose ``beta * lam_i`` is closest to ``||u(lam_i)||``,
and each rejected trial moves up the ladder until the implied
``beta(lam) = ||u(lam)|| / lam`` has dropped by at least ``gamma1``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LadderExhausted

__all__ = ['ShiftSelection', 'select_initial', 'advance_on_failure']


@dataclass
class ShiftSelection:
    i_plus: int
    j: int
    beta_of: np.ndarray
    lambdas: np.ndarray
    u_norms: np.ndarray

    @property
    def m(self):
        return len(self.lambdas) - 1


def _first_usable_index(available):
    # smallest i such that every shift from i to the top is usable
    bad = np.flatnonzero(~available)
    if bad.size == 0:
        return 0
    i_plus = int(bad[-1]) + 1
    if i_plus >= len(available):
        return None
    return i_plus


def select_initial(shifts, beta):
    """Pick the starting shift for the trial loop.

    Parameters
    ----------
    shifts : ShiftSolveSet
    beta : float
        Current regularization parameter.

    Returns
    -------
    ShiftSelection
        ``i_plus`` is the smallest index from which every shift is free of
        negative curvature and converged; ``j`` minimizes
        ``|beta * lam_i - ||u_i|| |`` over ``i_plus <= i <= m`` (ties go to
        the smaller index).

    Raises
    ------
    LadderExhausted
        If the largest shift is itself unusable.
    """
    available = shifts.available
    i_plus = _first_usable_index(available)
    if i_plus is None:
        raise LadderExhausted(
            "negative curvature or unconverged solve at the largest shift "
            f"lambda = {shifts.lambdas[-1]:.3e}")
    lams = np.asarray(shifts.lambdas, dtype=float)
    norms = shifts.u_norms
    beta_of = np.full(len(lams), np.nan)
    beta_of[i_plus:] = norms[i_plus:] / lams[i_plus:]
    gap = np.abs(beta * lams[i_plus:] - norms[i_plus:])
    j = i_plus + int(np.argmin(gap))  # argmin returns the first minimizer
    return ShiftSelection(i_plus=i_plus, j=j, beta_of=beta_of, lambdas=lams, u_norms=norms)


def advance_on_failure(sel, beta_k, gamma1):
    """Move to the next shift after a rejected trial.

    Walks ``j`` upward until ``beta_of[j] <= gamma1 * beta_k``.

    Returns
    -------
    j : int
        New shift index, strictly larger than ``sel.j``.
    beta : float
        ``beta_of[j]``, at most ``gamma1 * beta_k``.

    Raises
    ------
    LadderExhausted
        If no shift above ``sel.j`` qualifies.
    """
    j = sel.j
    beta_next = beta_k
    while beta_next > gamma1 * beta_k:
        if j + 1 > sel.m:
            raise LadderExhausted(
                f"no shift above lambda = {sel.lambdas[sel.j]:.3e} reduces beta "
                f"below {gamma1 * beta_k:.3e}")
        beta_next = sel.beta_of[j + 1]
        j += 1
    return j, float(beta_next)
