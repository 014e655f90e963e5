"""Solve one built-in problem and check the answer independently.

    python demos/quickstart.py [NAME]
"""
import sys

import numpy as np

from ssarc import get_problem, kkt_residual, solve

name = sys.argv[1] if len(sys.argv) > 1 else 'HS6'
problem = get_problem(name)
report = solve(problem)

print(f"{problem.name}: n={problem.n}, m={problem.m}, start {problem.x0}")
print(f"status {report.status} after {report.nit} iterations "
      f"({report.nif} function / {report.nig} gradient evaluations)")
print(f"x* = {report.x}")
print(f"Res = max(|Z'g|, |c|) = {report.res:.3e}")

stationarity, feasibility = kkt_residual(problem, report.x)
print(f"independent check: |g - J's| = {stationarity:.3e}, |c| = {feasibility:.3e}")
if problem.known_solution is not None:
    print(f"distance to the reference solution: "
          f"{np.linalg.norm(report.x - problem.known_solution):.3e}")
