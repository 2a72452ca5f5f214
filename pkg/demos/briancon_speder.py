"""The Briancon-Speder family: Whitney equisingular, yet the cusp count jumps.

X_t = {x^6 + y^6 + z^3 + t x^4 z = 0} under one generic linear projection.
Takes about a minute.
"""

from fractions import Fraction

from germlab import FamilyProblem, PolyRing, family_profile, parse_poly
from germlab.family import GENERIC, sampling_adequacy

R = PolyRing(["x", "y", "z", "t"])
F = FamilyProblem(R, "t", [parse_poly("x^6+y^6+z^3+t*x^4*z", R)], GENERIC, [Fraction(k) for k in (0, 1, 2, -1)])

prof = family_profile(F, seed=20240101, trials=1)
print("projection:", *prof.projection)

cols = ("mu_X", "m1_X", "mu_S", "mu_Delta", "c", "d")
print("t".rjust(4), *(k.rjust(9) for k in cols))
for r in prof.records:
    print(str(r.t).rjust(4), *(str(getattr(r, k)).rjust(9) for k in cols))

# mu_X and m1_X stay put (Whitney), c does not (so not Zariski)
print(prof.verdicts)
for w in sampling_adequacy(F, prof):
    print("note:", w)
