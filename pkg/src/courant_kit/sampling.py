"""Seeded random exact data.

All randomness goes through ``random.Random(seed)`` (Mersenne Twister), so a
seed fixes every sample.  Entries are p/q with p in [-9, 9] and q in {1, 2, 3}.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import exactlin as el
from . import pointfiber as pf


def rng(seed) -> random.Random:
    return random.Random(seed)


def rational(r: random.Random) -> Fraction:
    return Fraction(r.randint(-9, 9), r.choice((1, 2, 3)))


def tensor(r: random.Random, *shape) -> np.ndarray:
    t = el.zeros(*shape)
    flat = t.reshape(-1)
    for i in range(flat.size):
        flat[i] = rational(r)
    return t


def skew_bracket(r: random.Random, n: int) -> np.ndarray:
    mu = el.zeros(n, n, n)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                v = rational(r)
                mu[i, j, k] = v
                mu[j, i, k] = -v
    return mu


def invertible(r: random.Random, n: int) -> np.ndarray:
    while True:
        g = tensor(r, n, n)
        if pf.is_invertible(g):
            return g


CORPUS3 = {
    "abelian": lambda: pf.abelian(3),
    "heisenberg": pf.heisenberg,
    "so3": pf.so3,
    "sl2": pf.sl2,
    "non_jacobi": pf.non_jacobi,
}


def corpus_conjugate(r: random.Random) -> tuple:
    """A random change of basis applied to a random 3-dimensional corpus bracket."""
    name = r.choice(sorted(CORPUS3))
    return name, pf.conjugate_bracket(CORPUS3[name](), invertible(r, 3))


def mixed_bracket(r: random.Random, n: int, i: int) -> np.ndarray:
    """Even draws are raw skew tensors (almost never Jacobi); odd draws at
    n = 3 are conjugated corpus brackets, so both outcomes occur."""
    if n == 3 and i % 2:
        return corpus_conjugate(r)[1]
    return skew_bracket(r, n)


def bfield(r: random.Random, n: int) -> np.ndarray:
    return tensor(r, n * n, n)


def cochain(r: random.Random, dim: int, k: int, m: int) -> np.ndarray:
    return tensor(r, *((dim,) * k + (m,)))
