"""
Dense linear algebra around the constraint Jacobian.

Everything here works from one column-pivoted QR factorization of ``J.T``::

    J.T[:, piv] = Q @ R,    Q = [Q1 | Q2]

``Q1`` spans the row space of ``J`` and ``Q2`` its null space, so the
minimum-norm constraint step, the least-squares multipliers and the
null-space basis all fall out of the same factors without ever forming
``J @ J.T``.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .errors import ContractViolation, RankDeficient

__all__ = [
    'JacobianFactorization',
    'NullspaceBasis',
    'SymmetricOperator',
    'factorize',
    'nullspace_basis',
    'min_norm_constraint_step',
    'least_squares_multipliers',
    'reduced_operator',
]


@dataclass(frozen=True)
class SymmetricOperator:
    """Symmetric linear map given by its matrix-vector product.

    ``matrix`` is optional; when present ``apply`` is just ``matrix @ v``
    and :meth:`to_matrix` returns it without probing.
    """
    apply: Callable[[np.ndarray], np.ndarray]
    dim: int
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def from_matrix(cls, A):
        A = np.asarray(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ContractViolation(f"expected a square matrix, got shape {A.shape}")
        return cls(apply=lambda v: A @ v, dim=A.shape[0], matrix=A)

    def __call__(self, v):
        return self.apply(v)

    def to_matrix(self):
        """Dense matrix of the operator (probes with unit vectors if needed)."""
        if self.matrix is not None:
            return self.matrix
        cols = [self.apply(e) for e in np.eye(self.dim)]
        return np.array(cols, dtype=float).reshape(self.dim, self.dim).T


@dataclass(frozen=True)
class NullspaceBasis:
    """Orthonormal basis ``Z`` of the null space of ``J``."""
    Z: np.ndarray
    J: np.ndarray
    rank_tolerance: float

    @property
    def dim(self):
        return self.Z.shape[1]


class JacobianFactorization:
    """Pivoted QR of ``J.T`` with full-row-rank check.

    Parameters
    ----------
    J : array_like, shape (m, n)
        Constraint Jacobian, ``m <= n``.
    rank_tolerance : float, optional
        Diagonal entries of ``R`` with magnitude at or below this value
        count as zero. Defaults to ``max(m, n) * eps * |R[0, 0]|``, the
        pivoted-QR estimate of ``max(m, n) * eps * sigma_max``.

    Raises
    ------
    RankDeficient
        If the detected rank is less than ``m``.
    """

    def __init__(self, J, rank_tolerance=None):
        J = np.atleast_2d(np.asarray(J, dtype=float))
        m, n = J.shape
        if m > n:
            raise ContractViolation(f"more constraints than variables ({m} > {n})")
        self.J = J
        self.m, self.n = m, n
        if m == 0:
            self.Q = np.eye(n)
            self.R = np.zeros((0, 0))
            self.piv = np.zeros(0, dtype=int)
            self.rank_tolerance = 0.0 if rank_tolerance is None else float(rank_tolerance)
            return

        Q, R, piv = scipy.linalg.qr(J.T, mode='full', pivoting=True)
        diag = np.abs(np.diag(R))
        if rank_tolerance is None:
            rank_tolerance = max(m, n) * np.finfo(float).eps * diag[0]
        self.rank_tolerance = float(rank_tolerance)
        rank = int(np.sum(diag > self.rank_tolerance))
        if rank < m or not np.all(np.isfinite(diag)):
            raise RankDeficient(
                f"Jacobian has rank {rank} < m = {m} "
                f"(smallest |R_ii| = {diag.min():.3e}, tolerance {self.rank_tolerance:.3e})",
                rank=rank, smallest=float(diag.min()))
        self.Q = Q
        self.R = R[:m, :m]
        self.piv = piv

    @property
    def Q1(self):
        return self.Q[:, :self.m]

    @property
    def Z(self):
        return self.Q[:, self.m:]

    def nullspace(self):
        return NullspaceBasis(Z=self.Z, J=self.J, rank_tolerance=self.rank_tolerance)

    def min_norm_step(self, c):
        """Minimum-norm ``v`` with ``J v = -c``."""
        c = np.asarray(c, dtype=float)
        if self.m == 0:
            return np.zeros(self.n)
        y = scipy.linalg.solve_triangular(self.R, -c[self.piv], trans='T')
        return self.Q1 @ y

    def multipliers(self, g):
        """``s`` minimizing ``||g - J.T s||``."""
        g = np.asarray(g, dtype=float)
        if self.m == 0:
            return np.zeros(0)
        w = scipy.linalg.solve_triangular(self.R, self.Q1.T @ g)
        s = np.empty(self.m)
        s[self.piv] = w
        return s


def factorize(J, rank_tolerance=None):
    return JacobianFactorization(J, rank_tolerance)


def nullspace_basis(J, rank_tolerance=None):
    """Orthonormal basis for the null space of a full-row-rank ``J``.

    Returns a :class:`NullspaceBasis` whose ``Z`` has ``n - m`` columns.
    Column order and signs depend on the factorization.
    """
    return JacobianFactorization(J, rank_tolerance).nullspace()


def min_norm_constraint_step(J, c, rank_tolerance=None):
    """Minimum-norm solution of the linearized constraints ``J v + c = 0``.

    Equivalent to ``-J.T @ inv(J @ J.T) @ c`` but computed from the QR
    factors of ``J.T``.
    """
    return JacobianFactorization(J, rank_tolerance).min_norm_step(c)


def least_squares_multipliers(J, g, rank_tolerance=None):
    """Lagrange multiplier estimate ``argmin_s ||g - J.T s||``."""
    return JacobianFactorization(J, rank_tolerance).multipliers(g)


def reduced_operator(B, basis):
    """Reduced operator ``Z.T B Z`` on the null space.

    Parameters
    ----------
    B : SymmetricOperator or ndarray
        Operator of dimension ``n``.
    basis : NullspaceBasis or ndarray
        Null-space basis with ``n`` rows.
    """
    if not isinstance(B, SymmetricOperator):
        B = SymmetricOperator.from_matrix(B)
    Z = basis.Z if isinstance(basis, NullspaceBasis) else np.asarray(basis, dtype=float)
    if Z.ndim != 2 or Z.shape[0] != B.dim:
        raise ContractViolation(
            f"operator has dimension {B.dim} but basis has shape {np.shape(Z)}")
    k = Z.shape[1]
    if B.matrix is not None:
        return SymmetricOperator.from_matrix(Z.T @ B.matrix @ Z)
    return SymmetricOperator(apply=lambda u: Z.T @ B.apply(Z @ u), dim=k)
