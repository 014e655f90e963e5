"""One Lanczos pass, many shifts.

Builds an indefinite reduced Hessian, solves (B + lam I) u = -g for the
whole default ladder at once and shows which shifts see negative
curvature, how the step length falls as the shift grows, and which shift
the selection rule picks for a few values of beta.
"""
import numpy as np

from ssarc import ShiftLadder, select_initial, solve_all_shifts

rng = np.random.default_rng(3)
Q, _ = np.linalg.qr(rng.standard_normal((12, 12)))
eigs = np.linspace(-0.5, 20.0, 12)
B = (Q * eigs) @ Q.T
g = rng.standard_normal(12)

ladder = ShiftLadder.geometric()
shifts = solve_all_shifts(B, g, ladder)
print(f"smallest eigenvalue {eigs[0]:+.2f}; {shifts.matvecs} products for {len(ladder)} shifts\n")
print(f"{'i':>3} {'lambda':>10} {'ok':>4} {'|u|':>11} {'|u|/lambda':>11} {'inner':>6}")
for r in shifts:
    nrm = np.linalg.norm(r.u)
    print(f"{r.shift_index:>3} {r.lam:>10.2e} {'yes' if r.curvature_ok else 'no':>4} "
          f"{nrm:>11.3e} {nrm / r.lam:>11.3e} {r.inner_iterations:>6}")

print()
for beta in (1e-2, 1.0, 1e2):
    sel = select_initial(shifts, beta)
    print(f"beta = {beta:g}: first usable shift i+ = {sel.i_plus}, "
          f"chosen j = {sel.j} (lambda = {sel.lambdas[sel.j]:.2e})")
