"""Closed-form invariants from weights and degrees, checked against the general engine."""

from germlab import GermProblem, PolyRing, parse_poly
from germlab.weighted import mu_delta_single_b, wh_cross_validate, wh_invariants, wh_signature

# cusp map (x, y^3 + xy): weights (2, 1), degrees (2, 3)
sig = wh_signature((2, 1), (2, 3))
print(sig)
print(wh_invariants(sig).as_dict())

# with a single factor B in the denominator the cusp would get mu_Delta = 4;
# its discriminant 4u^3 + 27v^2 has Milnor number 2
print("single-B variant:", mu_delta_single_b(sig))

# the A1 cone and a projection, both ways
R = PolyRing(["x", "y", "z"])
P = GermProblem(
    R, [parse_poly("x^2+y^2+z^2", R)], [parse_poly("x", R), parse_poly("y", R)],
    weights=(1, 1, 1), phi_degrees=(2,), f_degrees=(1, 1),
)
cv = wh_cross_validate(P, seed=3)
for k in cv.closed_form:
    print(f"{k:>9}  closed form {cv.closed_form[k]}  engine {cv.engine[k]}")

# a larger signature: weights (1, 2, 3), f degrees (6, 6), one equation of degree 6
print(wh_invariants(wh_signature((1, 2, 3), (6, 6), (6,))).as_dict())
