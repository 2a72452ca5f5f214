"""Walk through the invariants of a map from a surface to the plane.

Run from the repository root:  python3 demos/plane_curve_walkthrough.py
"""

from germlab import GermProblem, PolyRing, analyze, parse_poly
from germlab.invariants import discriminant_equation, singular_locus_ideal

R = PolyRing(["x", "y", "z"])
phi = [parse_poly("x^3+y^3+z^4", R)]                      # X is a surface in C^3
f = [parse_poly("x+y-z", R), parse_poly("2*x-y-z", R)]    # a linear projection to C^2
P = GermProblem(R, phi, f)

# the critical locus S of f on X, cut out by phi and the jacobian determinant
print("S is cut out by:", *singular_locus_ideal(P).generators, sep="\n  ")

# the discriminant Delta = f(S) is a plane curve in (u, v)
g = discriminant_equation(P)
print("discriminant has", len(g.as_dict()), "terms, degree", g.total_degree())

rep = analyze(P, seed=1)
for k, v in rep.values().items():
    print(f"{k:>12} = {v}")

# the numbers are tied together; every check below is an exact integer identity
print("c + d       =", rep.c + rep.d, " (mu_Delta - mu_S)/2 =", (rep.mu_Delta - rep.mu_S) // 2)
print("c + mu_X    =", rep.c + rep.mu_X, " mu_S + m - 2 =", rep.mu_S + rep.m - 2)
print("checks:", rep.identity_checks)

# the cusp map of the plane for comparison: one cusp, no double folds
R2 = PolyRing(["x", "y"])
cusp = analyze(GermProblem(R2, [], [parse_poly("x", R2), parse_poly("y^3+x*y", R2)]), seed=1)
print("cusp map: c =", cusp.c, "d =", cusp.d, "mu_Delta =", cusp.mu_Delta)
