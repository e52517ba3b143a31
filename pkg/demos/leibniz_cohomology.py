# Leibniz cohomology of gl(2) with jet coefficients and with E coefficients.

from courant_kit import leibniz as lb
from courant_kit import oracles
from courant_kit import pointfiber as pf
from courant_kit import sampling as sm
from courant_kit import exactlin as el

g = pf.gl_algebra(2)
jet, E = pf.jet_module(2), pf.e_module(2)
assert lb.check_leibniz(g).ok and lb.check_rep(g, jet).ok

print("HL^k(gl2; jet):", [lb.cohomology_dim(g, jet, k) for k in range(3)])
print("HL^k(gl2; E):  ", [lb.cohomology_dim(g, E, k) for k in range(3)])

# d o d = 0 on a random 1-cochain
c = sm.cochain(sm.rng(3), g.dim, 1, jet.module_dim)
assert el.is_zero(lb.coboundary(g, jet, lb.coboundary(g, jet, c)))

# The brute-force oracle shares no code with the main path.
br, left, right = oracles.gl_data(2)
print("oracle:        ", [oracles.leibniz_cohomology_dim(br, left, right, k) for k in range(3)])
