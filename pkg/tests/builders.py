"""Small constructors for iterate states used across test modules."""

import numpy as np

from ssarc import IterateState, SymmetricOperator
from ssarc.linalg import JacobianFactorization


def state_at(problem, x, beta=1.0, mu=1.0):
    x = np.asarray(x, dtype=float)
    g, c, J = problem.eval_g(x), problem.eval_c(x), problem.eval_J(x)
    fac = JacobianFactorization(J)
    s = fac.multipliers(g)
    basis = fac.nullspace()
    return IterateState(x=x, f=problem.eval_f(x), g=g, c=c, J=J, Z=basis, s=s,
                        B=problem.eval_lagrangian_hessian(x, s), zg=basis.Z.T @ g,
                        beta=beta, mu=mu, factorization=fac)


def random_state(rng, n=6, m=2, beta=1.0):
    J = rng.standard_normal((m, n))
    A = rng.standard_normal((n, n))
    B = A + A.T
    fac = JacobianFactorization(J)
    g = rng.standard_normal(n)
    basis = fac.nullspace()
    return IterateState(x=np.zeros(n), f=0.7, g=g, c=rng.standard_normal(m), J=J, Z=basis,
                        s=fac.multipliers(g), B=SymmetricOperator.from_matrix(B),
                        zg=basis.Z.T @ g, beta=beta, mu=1.0, factorization=fac)
