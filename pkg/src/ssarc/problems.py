"""
Equality-constrained test problems.

Each problem supplies ``f``, its gradient, the constraints ``c``, their
Jacobian and the Hessian of the Lagrangian ``L(x, s) = f(x) - s' c(x)``,
all coded by hand.  The formulations follow the Hock-Schittkowski,
Boggs-Tolle and CUTEst sources cited in each builder; where the CUTEst
version drops bounds from a Hock-Schittkowski model, so do we.

Use :func:`get_problem` for case-insensitive lookup and
:func:`builtin_collection` for the whole set in registry order.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DerivativeCheckError
from .linalg import SymmetricOperator

__all__ = ['Problem', 'builtin_collection', 'get_problem', 'problem_names',
           'check_derivatives', 'DerivativeReport']

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Problem:
    """``minimize f(x) subject to c(x) = 0``.

    ``hess(x, s)`` returns the dense Hessian of ``f(x) - s' c(x)``.
    ``known_solution`` is test metadata; ``unique_solution`` is False when
    the problem has several minimizers, so distance-to-solution checks
    must be skipped.
    """
    name: str
    n: int
    m: int
    x0: np.ndarray
    f: Callable
    g: Callable
    c: Callable
    J: Callable
    hess: Callable
    known_solution: Optional[np.ndarray] = None
    unique_solution: bool = True
    source: str = field(default='', repr=False)

    def eval_f(self, x):
        return float(self.f(np.asarray(x, dtype=float)))

    def eval_g(self, x):
        return np.asarray(self.g(np.asarray(x, dtype=float)), dtype=float).reshape(self.n)

    def eval_c(self, x):
        return np.asarray(self.c(np.asarray(x, dtype=float)), dtype=float).reshape(self.m)

    def eval_J(self, x):
        return np.asarray(self.J(np.asarray(x, dtype=float)), dtype=float).reshape(self.m, self.n)

    def eval_hess(self, x, s):
        return np.asarray(self.hess(np.asarray(x, dtype=float), np.asarray(s, dtype=float)),
                          dtype=float).reshape(self.n, self.n)

    def eval_lagrangian_hessian(self, x, s):
        return SymmetricOperator.from_matrix(self.eval_hess(x, s))


_REGISTRY = {}


def _register(builder):
    _REGISTRY[builder.__name__.upper()] = builder
    return builder


def _a(*vals):
    return np.array(vals, dtype=float)


def _zero_f(n):
    return dict(f=lambda x: 0.0, g=lambda x: np.zeros(n))


# ---------------------------------------------------------------------------
# Nonlinear systems posed as feasibility problems (f = 0)
# ---------------------------------------------------------------------------

@_register
def booth():
    """CUTEst BOOTH: x1 + 2 x2 = 7, 2 x1 + x2 = 5."""
    A = _a(1, 2, 2, 1).reshape(2, 2)
    return Problem(
        'BOOTH', 2, 2, _a(0, 0), **_zero_f(2),
        c=lambda x: A @ x - _a(7, 5),
        J=lambda x: A,
        hess=lambda x, s: np.zeros((2, 2)),
        known_solution=_a(1, 3),
        source='Booth quadratic as linear equations (CUTEst BOOTH)')


@_register
def himmelba():
    """CUTEst HIMMELBA (Himmelblau problem 25): 0.25 x1 = 5, x2 = 1."""
    A = np.diag([0.25, 1.0])
    return Problem(
        'HIMMELBA', 2, 2, _a(8, 9), **_zero_f(2),
        c=lambda x: A @ x - _a(5, 1),
        J=lambda x: A,
        hess=lambda x, s: np.zeros((2, 2)),
        known_solution=_a(20, 1),
        source='Himmelblau (1972) problem 25, CUTEst HIMMELBA')


@_register
def himmelbc():
    """CUTEst HIMMELBC: x1^2 + x2 = 11, x1 + x2^2 = 7."""
    def c(x):
        return _a(x[0] ** 2 + x[1] - 11, x[0] + x[1] ** 2 - 7)

    def J(x):
        return _a(2 * x[0], 1, 1, 2 * x[1]).reshape(2, 2)

    def hess(x, s):
        return -np.diag([2 * s[0], 2 * s[1]])

    return Problem('HIMMELBC', 2, 2, _a(1, 1), **_zero_f(2), c=c, J=J, hess=hess,
                   known_solution=_a(3, 2), unique_solution=False,
                   source='Himmelblau function as equations (CUTEst HIMMELBC)')


@_register
def rsnbrne():
    """CUTEst RSNBRNE: Rosenbrock residuals 10 (x2 - x1^2) = 0, 1 - x1 = 0."""
    def c(x):
        return _a(10 * (x[1] - x[0] ** 2), 1 - x[0])

    def J(x):
        return _a(-20 * x[0], 10, -1, 0).reshape(2, 2)

    def hess(x, s):
        return _a(20 * s[0], 0, 0, 0).reshape(2, 2)

    return Problem('RSNBRNE', 2, 2, _a(-1.2, 1), **_zero_f(2), c=c, J=J, hess=hess,
                   known_solution=_a(1, 1), source='CUTEst RSNBRNE')


@_register
def sinvalne():
    """CUTEst SINVALNE: sine-valley residuals 10 (x2 - sin x1) = 0, x1 / 2 = 0."""
    def c(x):
        return _a(10 * (x[1] - np.sin(x[0])), 0.5 * x[0])

    def J(x):
        return _a(-10 * np.cos(x[0]), 10, 0.5, 0).reshape(2, 2)

    def hess(x, s):
        return _a(-s[0] * 10 * np.sin(x[0]), 0, 0, 0).reshape(2, 2)

    return Problem('SINVALNE', 2, 2, _a(4.712389, -1.0), **_zero_f(2), c=c, J=J, hess=hess,
                   known_solution=_a(0, 0), source='CUTEst SINVALNE (from SINVALLY)')


# ---------------------------------------------------------------------------
# Two-variable constrained problems
# ---------------------------------------------------------------------------

@_register
def maratos():
    """CUTEst MARATOS: min -x1 + tau (x1^2 + x2^2 - 1) s.t. x1^2 + x2^2 = 1, tau = 1e-6."""
    tau = 1e-6

    def f(x):
        return -x[0] + tau * (x[0] ** 2 + x[1] ** 2 - 1)

    def g(x):
        return _a(-1 + 2 * tau * x[0], 2 * tau * x[1])

    def hess(x, s):
        return (2 * tau - 2 * s[0]) * np.eye(2)

    return Problem('MARATOS', 2, 1, _a(1.1, 0.1), f=f, g=g,
                   c=lambda x: _a(x[0] ** 2 + x[1] ** 2 - 1),
                   J=lambda x: _a(2 * x[0], 2 * x[1]).reshape(1, 2),
                   hess=hess, known_solution=_a(1, 0),
                   source='Maratos (1978), CUTEst MARATOS')


@_register
def hs6():
    """HS6: min (1 - x1)^2 s.t. 10 (x2 - x1^2) = 0."""
    def hess(x, s):
        return _a(2 + 20 * s[0], 0, 0, 0).reshape(2, 2)

    return Problem('HS6', 2, 1, _a(-1.2, 1),
                   f=lambda x: (1 - x[0]) ** 2,
                   g=lambda x: _a(-2 * (1 - x[0]), 0),
                   c=lambda x: _a(10 * (x[1] - x[0] ** 2)),
                   J=lambda x: _a(-20 * x[0], 10).reshape(1, 2),
                   hess=hess, known_solution=_a(1, 1),
                   source='Hock & Schittkowski (1981) problem 6')


@_register
def hs7():
    """HS7: min ln(1 + x1^2) - x2 s.t. (1 + x1^2)^2 + x2^2 = 4."""
    def f(x):
        return np.log1p(x[0] ** 2) - x[1]

    def g(x):
        return _a(2 * x[0] / (1 + x[0] ** 2), -1)

    def hess(x, s):
        t = 1 + x[0] ** 2
        h11 = 2 * (1 - x[0] ** 2) / t ** 2 - s[0] * (4 + 12 * x[0] ** 2)
        return _a(h11, 0, 0, -2 * s[0]).reshape(2, 2)

    return Problem('HS7', 2, 1, _a(2, 2), f=f, g=g,
                   c=lambda x: _a((1 + x[0] ** 2) ** 2 + x[1] ** 2 - 4),
                   J=lambda x: _a(4 * x[0] * (1 + x[0] ** 2), 2 * x[1]).reshape(1, 2),
                   hess=hess, known_solution=_a(0, np.sqrt(3)),
                   source='Hock & Schittkowski (1981) problem 7')


@_register
def hs8():
    """HS8: min -1 s.t. x1^2 + x2^2 = 25, x1 x2 = 9."""
    def hess(x, s):
        return -_a(2 * s[0], s[1], s[1], 2 * s[0]).reshape(2, 2)

    sol = _a(np.sqrt(43) + np.sqrt(7), np.sqrt(43) - np.sqrt(7)) / 2
    return Problem('HS8', 2, 2, _a(2, 1),
                   f=lambda x: -1.0, g=lambda x: np.zeros(2),
                   c=lambda x: _a(x[0] ** 2 + x[1] ** 2 - 25, x[0] * x[1] - 9),
                   J=lambda x: _a(2 * x[0], 2 * x[1], x[1], x[0]).reshape(2, 2),
                   hess=hess, known_solution=sol, unique_solution=False,
                   source='Hock & Schittkowski (1981) problem 8')


@_register
def hs9():
    """HS9: min sin(pi x1 / 12) cos(pi x2 / 16) s.t. 4 x1 - 3 x2 = 0."""
    a, b = np.pi / 12, np.pi / 16

    def f(x):
        return np.sin(a * x[0]) * np.cos(b * x[1])

    def g(x):
        return _a(a * np.cos(a * x[0]) * np.cos(b * x[1]),
                  -b * np.sin(a * x[0]) * np.sin(b * x[1]))

    def hess(x, s):
        s1, c1 = np.sin(a * x[0]), np.cos(a * x[0])
        s2, c2 = np.sin(b * x[1]), np.cos(b * x[1])
        off = -a * b * c1 * s2
        return _a(-a * a * s1 * c2, off, off, -b * b * s1 * c2).reshape(2, 2)

    return Problem('HS9', 2, 1, _a(0, 0), f=f, g=g,
                   c=lambda x: _a(4 * x[0] - 3 * x[1]),
                   J=lambda x: _a(4, -3).reshape(1, 2),
                   hess=hess, known_solution=_a(-3, -4), unique_solution=False,
                   source='Hock & Schittkowski (1981) problem 9')


# ---------------------------------------------------------------------------
# Boggs-Tolle problems
# ---------------------------------------------------------------------------

@_register
def bt1():
    """BT1: min -x1 + 10 (x1^2 + x2^2 - 1) s.t. x1^2 + x2^2 = 1."""
    def hess(x, s):
        return (20 - 2 * s[0]) * np.eye(2)

    return Problem('BT1', 2, 1, _a(0.08, 0.06),
                   f=lambda x: -x[0] + 10 * (x[0] ** 2 + x[1] ** 2 - 1),
                   g=lambda x: _a(-1 + 20 * x[0], 20 * x[1]),
                   c=lambda x: _a(x[0] ** 2 + x[1] ** 2 - 1),
                   J=lambda x: _a(2 * x[0], 2 * x[1]).reshape(1, 2),
                   hess=hess, known_solution=_a(1, 0),
                   source='Boggs & Tolle (1989) problem 1')


def _bt2_f_parts():
    def f(x):
        return (x[0] - 1) ** 2 + (x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 4

    def g(x):
        t = x[1] - x[2]
        return _a(2 * (x[0] - 1) + 2 * (x[0] - x[1]),
                  -2 * (x[0] - x[1]) + 4 * t ** 3,
                  -4 * t ** 3)

    def hf(x):
        q = 12 * (x[1] - x[2]) ** 2
        return _a(4, -2, 0, -2, 2 + q, -q, 0, -q, q).reshape(3, 3)

    return f, g, hf


@_register
def bt2():
    """BT2: min (x1-1)^2 + (x1-x2)^2 + (x2-x3)^4 s.t. x1 (1 + x2^2) + x3^4 = 4 + 3 sqrt(2)."""
    f, g, hf = _bt2_f_parts()

    def c(x):
        return _a(x[0] * (1 + x[1] ** 2) + x[2] ** 4 - 4 - 3 * SQRT2)

    def J(x):
        return _a(1 + x[1] ** 2, 2 * x[0] * x[1], 4 * x[2] ** 3).reshape(1, 3)

    def hess(x, s):
        hc = _a(0, 2 * x[1], 0, 2 * x[1], 2 * x[0], 0, 0, 0, 12 * x[2] ** 2).reshape(3, 3)
        return hf(x) - s[0] * hc

    return Problem('BT2', 3, 1, _a(10, 10, 10), f=f, g=g, c=c, J=J, hess=hess,
                   known_solution=_a(1.1048590197333166, 1.1966741822882572, 1.535262260325326),
                   source='Boggs & Tolle (1989) problem 2')


def _hs51_objective(a=1.0):
    # (a x1 - x2)^2 + (x2 + x3 - 2)^2 + (x4 - 1)^2 + (x5 - 1)^2
    def f(x):
        return ((a * x[0] - x[1]) ** 2 + (x[1] + x[2] - 2) ** 2
                + (x[3] - 1) ** 2 + (x[4] - 1) ** 2)

    def g(x):
        r1 = a * x[0] - x[1]
        r2 = x[1] + x[2] - 2
        return _a(2 * a * r1, -2 * r1 + 2 * r2, 2 * r2, 2 * (x[3] - 1), 2 * (x[4] - 1))

    H = np.array([[2 * a * a, -2 * a, 0, 0, 0],
                  [-2 * a, 4, 2, 0, 0],
                  [0, 2, 2, 0, 0],
                  [0, 0, 0, 2, 0],
                  [0, 0, 0, 0, 2]], dtype=float)
    return f, g, H


def _linear_problem(name, x0, f, g, H, A, b, sol, source, unique=True):
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[1]
    return Problem(name, n, A.shape[0], np.asarray(x0, dtype=float), f=f, g=g,
                   c=lambda x: A @ x - b, J=lambda x: A,
                   hess=lambda x, s: H, known_solution=np.asarray(sol, dtype=float),
                   unique_solution=unique, source=source)


_HS51_A = [[1, 3, 0, 0, 0], [0, 0, 1, 1, -2], [0, 1, 0, 0, -1]]


@_register
def bt3():
    """BT3 (HS53 without bounds): HS51 objective, x1 + 3 x2 = 0, x3 + x4 - 2 x5 = 0, x2 = x5."""
    f, g, H = _hs51_objective()
    sol = _a(-33, 11, 27, -5, 11) / 43
    return _linear_problem('BT3', np.full(5, 20.0), f, g, H, _HS51_A, np.zeros(3), sol,
                           'Boggs & Tolle (1989) problem 3; HS53 without bounds')


@_register
def bt4():
    """BT4: min x1 - x2 + x2^3 s.t. |x|^2 = 25, x1 + x2 + x3 = 1."""
    def hess(x, s):
        return np.diag([0.0, 6 * x[1], 0.0]) - 2 * s[0] * np.eye(3)

    return Problem('BT4', 3, 2, _a(3.1494, 1.4523, -3.6017),
                   f=lambda x: x[0] - x[1] + x[1] ** 3,
                   g=lambda x: _a(1, -1 + 3 * x[1] ** 2, 0),
                   c=lambda x: _a(x @ x - 25, x.sum() - 1),
                   J=lambda x: np.vstack([2 * x, np.ones(3)]),
                   hess=hess,
                   known_solution=_a(2.284496601170847, -3.7208932557588126, 2.4363966545879654),
                   unique_solution=False,
                   source='Boggs & Tolle (1989) problem 4')


@_register
def bt5():
    """BT5 (HS63 without bounds): min 1000 - x1^2 - 2 x2^2 - x3^2 - x1 x2 - x1 x3."""
    Hf = -np.array([[2, 1, 1], [1, 4, 0], [1, 0, 2]], dtype=float)

    def hess(x, s):
        return Hf - 2 * s[1] * np.eye(3)

    return Problem('BT5', 3, 2, _a(2, 2, 2),
                   f=lambda x: 1000 - x[0] ** 2 - 2 * x[1] ** 2 - x[2] ** 2
                   - x[0] * x[1] - x[0] * x[2],
                   g=lambda x: Hf @ x,
                   c=lambda x: _a(8 * x[0] + 14 * x[1] + 7 * x[2] - 56, x @ x - 25),
                   J=lambda x: np.vstack([_a(8, 14, 7), 2 * x]),
                   hess=hess,
                   known_solution=_a(3.5121213418747197, 0.2169879415152233, 3.552171154827017),
                   unique_solution=False,
                   source='Boggs & Tolle (1989) problem 5; HS63 without bounds')


@_register
def bt6():
    """BT6 (HS77): (x1-1)^2 + (x1-x2)^2 + (x3-1)^2 + (x4-1)^4 + (x5-1)^6, two nonlinear equalities."""
    def f(x):
        return ((x[0] - 1) ** 2 + (x[0] - x[1]) ** 2 + (x[2] - 1) ** 2
                + (x[3] - 1) ** 4 + (x[4] - 1) ** 6)

    def g(x):
        return _a(2 * (x[0] - 1) + 2 * (x[0] - x[1]), -2 * (x[0] - x[1]), 2 * (x[2] - 1),
                  4 * (x[3] - 1) ** 3, 6 * (x[4] - 1) ** 5)

    def c(x):
        return _a(x[0] ** 2 * x[3] + np.sin(x[3] - x[4]) - 2 * SQRT2,
                  x[1] + x[2] ** 4 * x[3] ** 2 - 8 - SQRT2)

    def J(x):
        cs = np.cos(x[3] - x[4])
        return np.array([[2 * x[0] * x[3], 0, 0, x[0] ** 2 + cs, -cs],
                         [0, 1, 4 * x[2] ** 3 * x[3] ** 2, 2 * x[2] ** 4 * x[3], 0]])

    def hess(x, s):
        H = np.zeros((5, 5))
        H[0, 0], H[0, 1], H[1, 0], H[1, 1] = 4, -2, -2, 2
        H[2, 2] = 2
        H[3, 3] = 12 * (x[3] - 1) ** 2
        H[4, 4] = 30 * (x[4] - 1) ** 4
        sn = np.sin(x[3] - x[4])
        # first constraint
        H[0, 0] -= s[0] * 2 * x[3]
        H[0, 3] -= s[0] * 2 * x[0]
        H[3, 0] -= s[0] * 2 * x[0]
        H[3, 3] -= s[0] * -sn
        H[3, 4] -= s[0] * sn
        H[4, 3] -= s[0] * sn
        H[4, 4] -= s[0] * -sn
        # second constraint
        H[2, 2] -= s[1] * 12 * x[2] ** 2 * x[3] ** 2
        H[2, 3] -= s[1] * 8 * x[2] ** 3 * x[3]
        H[3, 2] -= s[1] * 8 * x[2] ** 3 * x[3]
        H[3, 3] -= s[1] * 2 * x[2] ** 4
        return H

    return Problem('BT6', 5, 2, np.full(5, 2.0), f=f, g=g, c=c, J=J, hess=hess,
                   known_solution=_a(1.1661721897092985, 1.1821113888027044, 1.3802570431454597,
                                     1.5060362736230457, 0.6109201960430908),
                   source='Boggs & Tolle (1989) problem 6; HS77')


@_register
def bt9():
    """BT9 (HS39): min -x1 s.t. x2 - x1^3 - x3^2 = 0, x1^2 - x2 - x4^2 = 0."""
    def hess(x, s):
        return np.diag([6 * x[0] * s[0] - 2 * s[1], 0.0, 2 * s[0], 2 * s[1]])

    return Problem('BT9', 4, 2, np.full(4, 2.0),
                   f=lambda x: -x[0], g=lambda x: _a(-1, 0, 0, 0),
                   c=lambda x: _a(x[1] - x[0] ** 3 - x[2] ** 2, x[0] ** 2 - x[1] - x[3] ** 2),
                   J=lambda x: np.array([[-3 * x[0] ** 2, 1, -2 * x[2], 0],
                                         [2 * x[0], -1, 0, -2 * x[3]]]),
                   hess=hess, known_solution=_a(1, 1, 0, 0),
                   source='Boggs & Tolle (1989) problem 9; HS39')


def _hs79_objective():
    def f(x):
        return ((x[0] - 1) ** 2 + (x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 2
                + (x[2] - x[3]) ** 4 + (x[3] - x[4]) ** 4)

    def g(x):
        t3, t4 = x[2] - x[3], x[3] - x[4]
        return _a(2 * (x[0] - 1) + 2 * (x[0] - x[1]),
                  -2 * (x[0] - x[1]) + 2 * (x[1] - x[2]),
                  -2 * (x[1] - x[2]) + 4 * t3 ** 3,
                  -4 * t3 ** 3 + 4 * t4 ** 3,
                  -4 * t4 ** 3)

    def hf(x):
        a = 12 * (x[2] - x[3]) ** 2
        b = 12 * (x[3] - x[4]) ** 2
        return np.array([[4, -2, 0, 0, 0],
                         [-2, 4, -2, 0, 0],
                         [0, -2, 2 + a, -a, 0],
                         [0, 0, -a, a + b, -b],
                         [0, 0, 0, -b, b]], dtype=float)

    return f, g, hf


def _hs79_family(name, k1, x0, sol, source):
    # c1 = x1 + x2^2 + x3^3 - k1, c2 = x2 - x3^2 + x4 + 2 - 2 sqrt(2), c3 = x1 x5 - 2
    f, g, hf = _hs79_objective()

    def c(x):
        return _a(x[0] + x[1] ** 2 + x[2] ** 3 - k1,
                  x[1] - x[2] ** 2 + x[3] + 2 - 2 * SQRT2,
                  x[0] * x[4] - 2)

    def J(x):
        return np.array([[1, 2 * x[1], 3 * x[2] ** 2, 0, 0],
                         [0, 1, -2 * x[2], 1, 0],
                         [x[4], 0, 0, 0, x[0]]], dtype=float)

    def hess(x, s):
        H = hf(x)
        H[1, 1] -= 2 * s[0]
        H[2, 2] -= 6 * x[2] * s[0] - 2 * s[1]
        H[0, 4] -= s[2]
        H[4, 0] -= s[2]
        return H

    return Problem(name, 5, 3, np.asarray(x0, dtype=float), f=f, g=g, c=c, J=J, hess=hess,
                   known_solution=np.asarray(sol, dtype=float), source=source)


@_register
def bt11():
    """BT11: HS79 objective with x1 + x2^2 + x3^3 = -2 + 3 sqrt(2)."""
    return _hs79_family('BT11', -2 + 3 * SQRT2, np.full(5, 2.0),
                        _a(1.1187604290816309, 0.5698839021349988, 0.9279743927350796,
                           1.1196796961832314, 1.7876928321837067),
                        'Boggs & Tolle (1989) problem 11 (CUTEst BT11)')


@_register
def bt12():
    """BT12: min 0.01 x1^2 + x2^2 with slack-squared equalities."""
    def c(x):
        return _a(x[0] * x[1] - x[2] ** 2 - 25,
                  x[0] ** 2 + x[1] ** 2 - x[3] ** 2 - 25,
                  x[0] - x[4] ** 2 - 2)

    def J(x):
        return np.array([[x[1], x[0], -2 * x[2], 0, 0],
                         [2 * x[0], 2 * x[1], 0, -2 * x[3], 0],
                         [1, 0, 0, 0, -2 * x[4]]], dtype=float)

    def hess(x, s):
        H = np.diag([0.02, 2.0, 0.0, 0.0, 0.0])
        H[0, 1] -= s[0]
        H[1, 0] -= s[0]
        H[2, 2] += 2 * s[0]
        H[0, 0] -= 2 * s[1]
        H[1, 1] -= 2 * s[1]
        H[3, 3] += 2 * s[1]
        H[4, 4] += 2 * s[2]
        return H

    x1 = np.sqrt(250.0)
    return Problem('BT12', 5, 3, _a(15, -2, 0, 1, 0),
                   f=lambda x: 0.01 * x[0] ** 2 + x[1] ** 2,
                   g=lambda x: _a(0.02 * x[0], 2 * x[1], 0, 0, 0),
                   c=c, J=J, hess=hess,
                   known_solution=_a(x1, np.sqrt(2.5), 0, np.sqrt(227.5), np.sqrt(x1 - 2)),
                   unique_solution=False,
                   source='Boggs & Tolle (1989) problem 12')


# ---------------------------------------------------------------------------
# Hock-Schittkowski problems
# ---------------------------------------------------------------------------

@_register
def hs26():
    """HS26: min (x1-x2)^2 + (x2-x3)^4 s.t. (1 + x2^2) x1 + x3^4 = 3."""
    def f(x):
        return (x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 4

    def g(x):
        t = x[1] - x[2]
        return _a(2 * (x[0] - x[1]), -2 * (x[0] - x[1]) + 4 * t ** 3, -4 * t ** 3)

    def hess(x, s):
        q = 12 * (x[1] - x[2]) ** 2
        H = _a(2, -2, 0, -2, 2 + q, -q, 0, -q, q).reshape(3, 3)
        hc = _a(0, 2 * x[1], 0, 2 * x[1], 2 * x[0], 0, 0, 0, 12 * x[2] ** 2).reshape(3, 3)
        return H - s[0] * hc

    return Problem('HS26', 3, 1, _a(-2.6, 2, 2), f=f, g=g,
                   c=lambda x: _a((1 + x[1] ** 2) * x[0] + x[2] ** 4 - 3),
                   J=lambda x: _a(1 + x[1] ** 2, 2 * x[0] * x[1], 4 * x[2] ** 3).reshape(1, 3),
                   hess=hess, known_solution=_a(1, 1, 1), unique_solution=False,
                   source='Hock & Schittkowski (1981) problem 26')


@_register
def hs27():
    """HS27: min 0.01 (x1-1)^2 + (x2 - x1^2)^2 s.t. x1 + x3^2 + 1 = 0."""
    def f(x):
        return 0.01 * (x[0] - 1) ** 2 + (x[1] - x[0] ** 2) ** 2

    def g(x):
        r = x[1] - x[0] ** 2
        return _a(0.02 * (x[0] - 1) - 4 * x[0] * r, 2 * r, 0)

    def hess(x, s):
        return np.array([[0.02 - 4 * x[1] + 12 * x[0] ** 2, -4 * x[0], 0],
                         [-4 * x[0], 2, 0],
                         [0, 0, -2 * s[0]]])

    return Problem('HS27', 3, 1, _a(2, 2, 2), f=f, g=g,
                   c=lambda x: _a(x[0] + x[2] ** 2 + 1),
                   J=lambda x: _a(1, 0, 2 * x[2]).reshape(1, 3),
                   hess=hess, known_solution=_a(-1, 1, 0),
                   source='Hock & Schittkowski (1981) problem 27')


@_register
def hs28():
    """HS28: min (x1+x2)^2 + (x2+x3)^2 s.t. x1 + 2 x2 + 3 x3 = 1."""
    H = np.array([[2, 2, 0], [2, 4, 2], [0, 2, 2]], dtype=float)
    return _linear_problem('HS28', _a(-4, 1, 1),
                           lambda x: (x[0] + x[1]) ** 2 + (x[1] + x[2]) ** 2,
                           lambda x: H @ x, H, [[1, 2, 3]], [1], _a(0.5, -0.5, 0.5),
                           'Hock & Schittkowski (1981) problem 28')


@_register
def hs40():
    """HS40: min -x1 x2 x3 x4 s.t. x1^3 + x2^2 = 1, x1^2 x4 = x3, x4^2 = x2."""
    def g(x):
        return -_a(x[1] * x[2] * x[3], x[0] * x[2] * x[3], x[0] * x[1] * x[3], x[0] * x[1] * x[2])

    def hess(x, s):
        H = np.zeros((4, 4))
        for i in range(4):
            for j in range(4):
                if i != j:
                    H[i, j] = -np.prod([x[k] for k in range(4) if k not in (i, j)])
        H[0, 0] -= s[0] * 6 * x[0]
        H[1, 1] -= s[0] * 2
        H[0, 0] -= s[1] * 2 * x[3]
        H[0, 3] -= s[1] * 2 * x[0]
        H[3, 0] -= s[1] * 2 * x[0]
        H[3, 3] -= s[2] * 2
        return H

    sol = _a(2 ** (-1 / 3), 2 ** (-1 / 2), 2 ** (-11 / 12), 2 ** (-1 / 4))
    return Problem('HS40', 4, 3, np.full(4, 0.8),
                   f=lambda x: -x[0] * x[1] * x[2] * x[3], g=g,
                   c=lambda x: _a(x[0] ** 3 + x[1] ** 2 - 1, x[0] ** 2 * x[3] - x[2],
                                  x[3] ** 2 - x[1]),
                   J=lambda x: np.array([[3 * x[0] ** 2, 2 * x[1], 0, 0],
                                         [2 * x[0] * x[3], 0, -1, x[0] ** 2],
                                         [0, -1, 0, 2 * x[3]]]),
                   hess=hess, known_solution=sol, unique_solution=False,
                   source='Hock & Schittkowski (1981) problem 40')


@_register
def hs42():
    """HS42: min sum (x_i - i)^2 s.t. x1 = 2, x3^2 + x4^2 = 2."""
    t = _a(1, 2, 3, 4)

    def hess(x, s):
        return 2 * np.eye(4) - 2 * s[1] * np.diag([0, 0, 1, 1])

    return Problem('HS42', 4, 2, np.ones(4),
                   f=lambda x: float(np.sum((x - t) ** 2)),
                   g=lambda x: 2 * (x - t),
                   c=lambda x: _a(x[0] - 2, x[2] ** 2 + x[3] ** 2 - 2),
                   J=lambda x: np.array([[1, 0, 0, 0], [0, 0, 2 * x[2], 2 * x[3]]], dtype=float),
                   hess=hess, known_solution=_a(2, 2, 0.6 * SQRT2, 0.8 * SQRT2),
                   source='Hock & Schittkowski (1981) problem 42')


@_register
def hs48():
    """HS48: min (x1-1)^2 + (x2-x3)^2 + (x4-x5)^2 s.t. sum x = 5, x3 - 2 (x4 + x5) = -3."""
    H = np.zeros((5, 5))
    H[0, 0] = 2
    H[1:3, 1:3] = [[2, -2], [-2, 2]]
    H[3:5, 3:5] = [[2, -2], [-2, 2]]

    def f(x):
        return (x[0] - 1) ** 2 + (x[1] - x[2]) ** 2 + (x[3] - x[4]) ** 2

    def g(x):
        return H @ x - _a(2, 0, 0, 0, 0)

    return _linear_problem('HS48', _a(3, 5, -3, 2, -2), f, g, H,
                           [[1, 1, 1, 1, 1], [0, 0, 1, -2, -2]], [5, -3], np.ones(5),
                           'Hock & Schittkowski (1981) problem 48')


@_register
def hs51():
    """HS51: HS51 objective, x1 + 3 x2 = 4, x3 + x4 - 2 x5 = 0, x2 = x5."""
    f, g, H = _hs51_objective()
    return _linear_problem('HS51', _a(2.5, 0.5, 2, -1, 0.5), f, g, H, _HS51_A, [4, 0, 0],
                           np.ones(5), 'Hock & Schittkowski (1981) problem 51')


@_register
def hs52():
    """HS52: (4 x1 - x2)^2 + (x2 + x3 - 2)^2 + (x4-1)^2 + (x5-1)^2 under the HS53 constraints."""
    f, g, H = _hs51_objective(a=4.0)
    sol = _a(-33, 11, 180, -158, 11) / 349
    return _linear_problem('HS52', np.full(5, 2.0), f, g, H, _HS51_A, np.zeros(3), sol,
                           'Hock & Schittkowski (1981) problem 52')


@_register
def hs78():
    """HS78: min x1 x2 x3 x4 x5 s.t. |x|^2 = 10, x2 x3 = 5 x4 x5, x1^3 + x2^3 = -1."""
    def g(x):
        return _a(*[np.prod(np.delete(x, i)) for i in range(5)])

    def hess(x, s):
        H = np.zeros((5, 5))
        for i in range(5):
            for j in range(5):
                if i != j:
                    H[i, j] = np.prod(np.delete(x, [i, j]))
        H -= 2 * s[0] * np.eye(5)
        H[1, 2] -= s[1]
        H[2, 1] -= s[1]
        H[3, 4] += 5 * s[1]
        H[4, 3] += 5 * s[1]
        H[0, 0] -= 6 * x[0] * s[2]
        H[1, 1] -= 6 * x[1] * s[2]
        return H

    return Problem('HS78', 5, 3, _a(-2, 1.5, 2, -1, -1),
                   f=lambda x: float(np.prod(x)), g=g,
                   c=lambda x: _a(x @ x - 10, x[1] * x[2] - 5 * x[3] * x[4],
                                  x[0] ** 3 + x[1] ** 3 + 1),
                   J=lambda x: np.array([2 * x,
                                         [0, x[2], x[1], -5 * x[4], -5 * x[3]],
                                         [3 * x[0] ** 2, 3 * x[1] ** 2, 0, 0, 0]], dtype=float),
                   hess=hess,
                   known_solution=_a(-1.7171435703943823, 1.5957096901835544, 1.8272457529271944,
                                     -0.7636430781841304, -0.7636430781841302),
                   unique_solution=False,
                   source='Hock & Schittkowski (1981) problem 78')


@_register
def hs79():
    """HS79: HS79 objective with x1 + x2^2 + x3^3 = 2 + 3 sqrt(2)."""
    return _hs79_family('HS79', 2 + 3 * SQRT2, np.full(5, 2.0),
                        _a(1.1911274563110514, 1.3626031649617423, 1.4728179315120877,
                           1.635016619167993, 1.6790814361664075),
                        'Hock & Schittkowski (1981) problem 79')


@_register
def byrdsphr():
    """BYRDSPHR: min -x1 - x2 - x3 on the intersection of two spheres of radius 3."""
    def hess(x, s):
        return -2 * (s[0] + s[1]) * np.eye(3)

    r = np.sqrt(4.375)
    return Problem('BYRDSPHR', 3, 2, _a(5, 0.0001, -0.0001),
                   f=lambda x: -float(np.sum(x)), g=lambda x: -np.ones(3),
                   c=lambda x: _a(x @ x - 9, (x[0] - 1) ** 2 + x[1] ** 2 + x[2] ** 2 - 9),
                   J=lambda x: np.array([2 * x, [2 * (x[0] - 1), 2 * x[1], 2 * x[2]]]),
                   hess=hess, known_solution=_a(0.5, r, r),
                   source='Byrd (1985) two-sphere problem, CUTEst BYRDSPHR')


@_register
def genhs28():
    """GENHS28 with n = 10: sum (x_i + x_{i+1})^2 s.t. x_i + 2 x_{i+1} + 3 x_{i+2} = 1."""
    n = 10
    D = np.zeros((n - 1, n))
    for i in range(n - 1):
        D[i, i] = D[i, i + 1] = 1.0
    H = 2 * D.T @ D
    A = np.zeros((n - 2, n))
    for i in range(n - 2):
        A[i, i:i + 3] = [1, 2, 3]
    b = np.ones(n - 2)
    x0 = np.ones(n)
    x0[0] = -4.0
    K = np.block([[H, A.T], [A, np.zeros((n - 2, n - 2))]])
    sol = np.linalg.solve(K, np.concatenate([np.zeros(n), b]))[:n]
    return _linear_problem('GENHS28', x0, lambda x: float(np.sum((D @ x) ** 2)),
                           lambda x: H @ x, H, A, b, sol,
                           'CUTEst GENHS28, generalization of HS28')


def problem_names():
    return list(_REGISTRY)


def get_problem(name):
    """Case-insensitive registry lookup; raises ``KeyError`` for unknown names."""
    key = name.upper()
    if key not in _REGISTRY:
        raise KeyError(f"unknown problem {name!r}")
    return _REGISTRY[key]()


def builtin_collection():
    return [build() for build in _REGISTRY.values()]


@dataclass
class DerivativeReport:
    """Max relative errors of the analytic derivatives against central differences."""
    gradient: float
    jacobian: float
    hessian: float

    @property
    def worst(self):
        return max(self.gradient, self.jacobian, self.hessian)


def _rel_err(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a))))


def check_derivatives(p, x, h=1e-6, s=None):
    """Compare analytic derivatives with central differences at ``x``.

    The Lagrangian Hessian is checked against differences of
    ``g - J' s``; ``s`` defaults to ``linspace(0.5, 1.5, m)``.

    Raises
    ------
    DerivativeCheckError
        If any probe evaluation is not finite.
    ValueError
        If ``h`` is not positive.
    """
    if not h > 0:
        raise ValueError("step size must be positive")
    x = np.asarray(x, dtype=float)
    n, m = p.n, p.m
    if s is None:
        s = np.linspace(0.5, 1.5, m) if m > 1 else np.full(m, 0.5)

    def probe(fun, y):
        val = np.asarray(fun(y), dtype=float)
        if not np.all(np.isfinite(val)):
            raise DerivativeCheckError(f"{p.name}: non-finite evaluation at {y}")
        return val

    def lag_grad(y):
        return p.eval_g(y) - p.eval_J(y).T @ s

    g_fd = np.zeros(n)
    J_fd = np.zeros((m, n))
    H_fd = np.zeros((n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        g_fd[i] = (probe(p.eval_f, x + e) - probe(p.eval_f, x - e)) / (2 * h)
        J_fd[:, i] = (probe(p.eval_c, x + e) - probe(p.eval_c, x - e)) / (2 * h)
        H_fd[:, i] = (probe(lag_grad, x + e) - probe(lag_grad, x - e)) / (2 * h)
    return DerivativeReport(
        gradient=_rel_err(probe(p.eval_g, x), g_fd),
        jacobian=_rel_err(probe(p.eval_J, x), J_fd),
        hessian=_rel_err(probe(lambda y: p.eval_hess(y, s), x), H_fd))
