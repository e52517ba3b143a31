"""Exact point-fiber E-Courant algebra: omni-Lie algebras, Leibniz cohomology,
Dirac structures, B-field twists and E-Lie bialgebroids over Q."""

from . import exactlin, leibniz, pointfiber, ecourant, dirac, twist, bialgebroid
from .ecourant import omni, verify_axioms
from .exactlin import Subspace

__version__ = "0.1.0"
