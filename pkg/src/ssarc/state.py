"""Per-iterate quantities shared by the step, merit and solver modules."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import JacobianFactorization, NullspaceBasis, SymmetricOperator


@dataclass
class IterateState:
    """Everything known at the current point ``x_k``.

    ``zg`` is ``Z.T @ g`` and feeds the termination test; ``gZ_reduced`` is
    ``Z.T @ (g + B v)`` and feeds the subproblem.  They differ whenever the
    vertical step is nonzero.
    """
    x: np.ndarray
    f: float
    g: np.ndarray
    c: np.ndarray
    J: np.ndarray
    Z: NullspaceBasis
    s: np.ndarray
    B: SymmetricOperator
    zg: np.ndarray
    beta: float
    mu: float
    factorization: Optional[JacobianFactorization] = None
    gZ_reduced: Optional[np.ndarray] = None

    @property
    def c_norm(self):
        return float(np.linalg.norm(self.c))

    @property
    def res(self):
        """Termination measure ``max(||Z' g||, ||c||)``."""
        return max(float(np.linalg.norm(self.zg)), self.c_norm)
