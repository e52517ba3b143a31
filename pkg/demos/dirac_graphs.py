# Graphs of skew brackets inside omni(V): Dirac exactly when Jacobi holds.

from courant_kit import ecourant as ec
from courant_kit.dirac import graph_of_bracket, induced_lie, is_dirac
from courant_kit import pointfiber as pf

s = ec.omni(3)
for name, mu in [("so3", pf.so3()), ("heisenberg", pf.heisenberg()), ("non_jacobi", pf.non_jacobi())]:
    r = is_dirac(s, graph_of_bracket(mu))
    print("%-11s dirac=%-5s closure witness %r" % (name, r.dirac, r.closure_witness))

# The induced bracket on a Dirac structure is a Lie algebra.
lie = induced_lie(s, graph_of_bracket(pf.so3()))
print("induced algebra is Lie:", lie.ok, " dim", lie.algebra.dim)

# gl(V) itself and the jet part V are both Dirac.
A, V = ec.omni_split(3)
print("gl Dirac:", is_dirac(s, A).dirac, " V Dirac:", is_dirac(s, V).dirac)
