"""Walk through the trial-by-trial trace of one solve.

Shows how the regularization weight beta, the chosen shift, the penalty
mu and the ratio rho evolve, and where trials are rejected.

    python demos/trace_inspection.py [NAME]
"""
import sys

from ssarc import get_problem, solve

name = sys.argv[1] if len(sys.argv) > 1 else 'BT1'
report = solve(get_problem(name))
print(f"{name}: {report.status}, NIT {report.nit}, {len(report.trace)} trials\n")
print(f"{'it':>3}{'try':>4}{'beta':>10}{'lambda':>10}{'mu':>9}{'rho':>10}"
      f"{'|c|':>10}{'|Z g|':>10}  outcome")
for tr in report.trace:
    outcome = 'accept' if tr.accepted else 'reject'
    if tr.restarted:
        outcome += ' (fresh shift solve)'
    print(f"{tr.iteration:>3}{tr.trial:>4}{tr.beta:>10.2e}{tr.lam:>10.2e}{tr.mu:>9.3g}"
          f"{tr.rho:>10.3g}{tr.c_norm:>10.2e}{tr.zg_norm:>10.2e}  {outcome}")
