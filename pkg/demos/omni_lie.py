# The omni-Lie algebra gl(V) + V, written out with exact rationals.

from courant_kit import ecourant as ec
from courant_kit import exactlin as el

n = 2
s = ec.omni(n)
print("kDim =", s.k_dim, " eDim =", s.e_dim)

report = ec.verify_axioms(s)
for name, status in report.statuses.items():
    print("%-12s %s" % (name, "ok" if status.passed else "fails at %r" % (status.witness,)))
assert report.ok

# The bracket of two gl elements is the commutator.
I = el.identity(s.k_dim)
print("[E01, E10] =", [el.fstr(v) for v in s.br(I[1], I[2])])

# Constrained cochains vanish in degree 2, so the complex is trivially exact.
print("constrained H^0..2:", ec.constrained_cohomology(n, 2))

# Any invertible phi induces an automorphism of the omni structure.
phi = el.array([[1, "1/2"], [0, 3]])
F = ec.omni_automorphism(n, phi)
assert ec.check_automorphism(s, F, phi).ok
