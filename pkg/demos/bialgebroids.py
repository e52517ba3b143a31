# E-Lie bialgebroids, their doubles, and Manin decomposition.

from courant_kit import bialgebroid as bg
from courant_kit import ecourant as ec
from courant_kit import exactlin as el
from courant_kit import pointfiber as pf

# The canonical pair (gl(V), jet) doubles to the omni-Lie algebra.
p = bg.canonical_pair(2)
print(bg.check_bialgebroid(p).failed() or "canonical pair is a bialgebroid")
print("double == omni(2):", bg.double(p) == ec.omni(2))

# Going back: split omni(2) along gl and V.
A, V = ec.omni_split(2)
q = bg.manin_decompose(ec.omni(2), A, V)
print("manin pair is a bialgebroid:", bg.check_bialgebroid(q).ok)

# A Lie bracket on V gives a pi-type pair whose induced bracket is the original.
pi = bg.pi_from_lie(pf.so3())
print("pi(so3) bialgebroid:", bg.check_bialgebroid(pi).ok)
print("induced bracket is so(3):", el.equal(bg.induced_E_bracket(pi).bracket, pf.so3()))

# Maurer-Cartan: the graph of H is Dirac exactly when H is Lie.
c3 = bg.canonical_pair(3)
for name, H in [("so3", pf.so3()), ("non_jacobi", pf.non_jacobi())]:
    mc = bg.maurer_cartan(c3, H)
    print("%-10s MC holds=%s witness=%r" % (name, mc.holds, mc.witness))
