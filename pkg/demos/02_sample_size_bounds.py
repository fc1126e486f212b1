"""
How large must the graph be?
----------------------------

The recovery guarantee kicks in once n exceeds
log(p / k) / log I_{1-eps}(alpha, (k-1) alpha), where I is the
regularized incomplete beta function (the CDF of a Dirichlet marginal)
and eps must sit below two closed-form constants driven by
w = 8 kappa sqrt(alpha k + 1). This script prints those constants for a
few parameter settings and shows how the minimum n explodes as the
interaction matrix becomes ill-conditioned.
"""

from splp import compute_bounds_from_kappa, reg_incomplete_beta

print("I_x(1,1) is the identity:", reg_incomplete_beta(0.37, 1.0, 1.0))
print()

print(f"{'k':>3} {'alpha':>6} {'kappa':>6} {'w':>9} {'eps1':>10} {'eps2':>10} {'min_n':>14}")
for k, alpha, kappa in [
    (2, 1.0, 1.0),
    (3, 0.5, 1.0),
    (3, 0.5, 2.0),
    (4, 0.5, 2.0),
    (3, 1.0, 5.0),
]:
    b = compute_bounds_from_kappa(k, alpha, kappa, p=0.1)
    min_n = "unsatisfiable" if b.min_n is None else f"{b.min_n:.4g}"
    print(
        f"{k:>3} {alpha:>6} {kappa:>6} {b.w:>9.3f} "
        f"{b.epsilon1:>10.3e} {b.epsilon2:>10.3e} {min_n:>14}"
    )

print()
print("the calculator also evaluates user-chosen epsilon values, e.g. the")
print("closed-form uniform case I_{0.99}(1,1) = 0.99:")
b = compute_bounds_from_kappa(2, 1.0, 1.0, p=0.1, epsilon=0.01)
print(f"  k=2, alpha=1, kappa=1, eps=0.01, p=0.1  ->  min_n = {b.min_n}")
