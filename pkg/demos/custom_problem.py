"""Define a problem by hand and solve it.

Rosenbrock's function restricted to the circle x1^2 + x2^2 = 1.5, with
derivatives checked against finite differences before solving.
"""
import numpy as np

from ssarc import Problem, check_derivatives, kkt_residual, solve


def f(x):
    return float(100 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2)


def g(x):
    return np.array([-400 * x[0] * (x[1] - x[0] ** 2) - 2 * (1 - x[0]),
                     200 * (x[1] - x[0] ** 2)])


def hess(x, s):
    # Hessian of f(x) - s c(x)
    H = np.array([[1200 * x[0] ** 2 - 400 * x[1] + 2, -400 * x[0]],
                  [-400 * x[0], 200.0]])
    return H - s[0] * 2 * np.eye(2)


circle = Problem(
    name='ROSEN-CIRCLE', n=2, m=1, x0=np.array([-1.0, 0.5]),
    f=f, g=g,
    c=lambda x: np.array([x[0] ** 2 + x[1] ** 2 - 1.5]),
    J=lambda x: np.array([[2 * x[0], 2 * x[1]]]),
    hess=hess)

print('derivative check at x0:', check_derivatives(circle, circle.x0))
report = solve(circle)
print(f"{report.status} in {report.nit} iterations, x = {report.x}")
print('KKT residuals:', kkt_residual(circle, report.x))
