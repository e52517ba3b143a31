# Exact E-Courant structures from admissible pairs, and B-field trivialization.

from courant_kit import ecourant as ec
from courant_kit import sampling as sm
from courant_kit import twist as tw

b = sm.bfield(sm.rng(11), 2)
p = tw.pair_from_b(b)
rep = tw.admissible_check(p)
print("admissible:", rep.ok)

s = tw.build_exact(p)
print("axioms hold:", ec.verify_axioms(s).ok, " exact:", tw.exactness_check(s))

t = tw.trivialize(p.theta)
print("trivializing B-field found:", t.exists)
print("e^b brings it back to omni:", tw.apply_bfield(s, t.b) == ec.omni(2))

lhs, rhs, rank = tw.hat_image(2)
print("hat image: dims %d = %d, rank %d" % (lhs.dim, rhs.dim, rank))
