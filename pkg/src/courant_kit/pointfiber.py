"""The point-fiber dictionary.

Over a point the bundle E is a vector space V = Q^n, the operator bundle is
gl(V), the jet bundle is V again, the jet differential is the identity and
the base tangent bundle vanishes.  Every other module gets these objects
from here.

gl(V) basis: E_ab at index a*n + b, acting by E_ab e_c = delta_bc e_a.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exactlin as el
from .leibniz import LeibnizAlgebra, LeibnizRep


def gl_rank(d: int):
    """n with n*n == d, or None."""
    n = math.isqrt(d)
    return n if n * n == d else None


@lru_cache(maxsize=None)
def gl_bracket(n: int) -> np.ndarray:
    N = n * n
    c = el.zeros(N, N, N)
    for a in range(n):
        for b in range(n):
            for cc in range(n):
                for d in range(n):
                    i, j = a * n + b, cc * n + d
                    if b == cc:
                        c[i, j, a * n + d] += 1
                    if d == a:
                        c[i, j, cc * n + b] -= 1
    return el.readonly(c)


def gl_algebra(n: int) -> LeibnizAlgebra:
    return LeibnizAlgebra(n * n, gl_bracket(n), "gl(%d)" % n)


@lru_cache(maxsize=None)
def gl_action(n: int) -> np.ndarray:
    """act[i, c, d]: coefficient of e_d in E_i e_c."""
    t = el.zeros(n * n, n, n)
    for a in range(n):
        for b in range(n):
            t[a * n + b, b, a] = el.ONE
    return el.readonly(t)


def to_matrix(x, n: int) -> np.ndarray:
    """gl(V) coordinate vector -> column-convention n x n matrix."""
    return el.canonical(np.asarray(x, dtype=object).reshape(n, n))


def from_matrix(A) -> np.ndarray:
    return el.canonical(np.asarray(A, dtype=object).reshape(-1))


def identity_element(n: int) -> np.ndarray:
    return from_matrix(el.identity(n))


def act(x, u, n: int) -> np.ndarray:
    """A u for A in gl(V) (coordinates), u in V."""
    return el.canonical(to_matrix(x, n).dot(el.canonical(u)))


# ---------------------------------------------------------------------------
# jets

@lru_cache(maxsize=None)
def jet_pairing(n: int) -> np.ndarray:
    """pair[c, i, e]: e-th coefficient of <u_c, E_i>_E, i.e. of E_i u_c."""
    return el.readonly(np.transpose(gl_action(n), (1, 0, 2)))


def jet_embedding(n: int) -> np.ndarray:
    """Row-convention map V -> Hom(gl(V), V), u -> (D -> D u), flattened."""
    return el.canonical(jet_pairing(n).reshape(n, n * n * n))


def jet_constraints(n: int) -> np.ndarray:
    """Linear constraints cutting the jet space out of Hom(gl(V), V).

    A map nu is stored as nu[i, e]; the constraint is nu(D) = D nu(1).
    """
    N = n * n
    one = identity_element(n)
    act_t = gl_action(n)
    rows = []
    for i in range(N):
        for e in range(n):
            r = el.zeros(N, n)
            r[i, e] += 1
            # - (D_i nu(1))_e = - sum_c act[i, c, e] * sum_j one[j] nu[j, c]
            for c in range(n):
                if act_t[i, c, e] != 0:
                    for j in range(N):
                        if one[j] != 0:
                            r[j, c] -= act_t[i, c, e] * one[j]
            rows.append(r.reshape(-1))
    return el.canonical(np.array(rows, dtype=object).reshape(len(rows), N * n))


def jet_space(n: int) -> el.Subspace:
    return el.Subspace.kernel(jet_constraints(n))


def jet_projection(nu, n: int) -> np.ndarray:
    """p(nu) = nu(1)."""
    nu = el.canonical(nu).reshape(n * n, n)
    return el.canonical(identity_element(n).dot(nu))


def d_jet(n: int) -> np.ndarray:
    """The jet differential V -> V; the identity at a point."""
    return el.identity(n)


@lru_cache(maxsize=None)
def jet_lie_derivative(n: int) -> np.ndarray:
    """L[i, c, d]: coefficient of u_d in the Lie derivative of u_c along E_i.

    Solved from <L_D mu, D'> = D <mu, D'> - <mu, [D, D']>.
    """
    N = n * n
    emb = jet_embedding(n)                       # (n, N*n)
    pair = jet_pairing(n)
    act_t = gl_action(n)
    br = gl_bracket(n)
    out = el.zeros(N, n, n)
    for i in range(N):
        rhs = el.zeros(n, N, n)                  # for each c: a map D' -> V
        for c in range(n):
            # D_i <u_c, D'>: first slot pairs to E, then act by D_i
            t1 = el.tensordot(pair[c], act_t[i], axes=([1], [0]))      # (D', e)
            t2 = el.tensordot(br[i], pair[c], axes=([1], [0]))         # (D', e) via [D_i, D']
            rhs[c] = t1 - t2
        sol = el.solve(emb.T, rhs.reshape(n, N * n).T)
        if sol.particular is None:
            raise ArithmeticError("Lie derivative of a jet left the jet space")
        out[i] = sol.particular.T
    return el.readonly(out)


def e_module(n: int) -> LeibnizRep:
    """gl(V) acting on E = V: left A u, right -A u."""
    a = gl_action(n)
    return LeibnizRep(n, a, -np.transpose(a, (1, 0, 2)), "E")


def jet_module(n: int) -> LeibnizRep:
    """gl(V) acting on the jets: left by Lie derivative, right by
    [mu, r] = -L_r mu + d<mu, r>_E, evaluated rather than assumed."""
    L = jet_lie_derivative(n)
    pair = jet_pairing(n)                                     # (c, i, e)
    dmat = d_jet(n)
    right = -np.transpose(L, (1, 0, 2)) + el.tensordot(pair, dmat, axes=([2], [0]))
    return LeibnizRep(n, L, el.canonical(right), "JE")


# ---------------------------------------------------------------------------
# automorphisms of V

def column_matrix(phi) -> np.ndarray:
    """Row-convention map tensor -> column operator."""
    return el.canonical(np.asarray(phi, dtype=object)).T


def invert(M) -> np.ndarray:
    M = el.canonical(M)
    n = M.shape[0]
    sol = el.solve(M, el.identity(n))
    if sol.particular is None or sol.kernel.dim:
        raise np.linalg.LinAlgError("singular matrix")
    return sol.particular


def is_invertible(M) -> bool:
    M = el.canonical(M)
    return M.shape[0] == M.shape[1] and el.rank(M) == M.shape[0]


def adjoint_map(phi) -> np.ndarray:
    """Row-convention N x N matrix of A -> Phi A Phi^-1 on gl(V).

    ``phi`` is the row-convention tensor of Phi (phi[c, d] = coeff of e_d in Phi e_c).
    """
    P = column_matrix(phi)
    Pinv = invert(P)
    n = P.shape[0]
    N = n * n
    out = el.zeros(N, N)
    for i in range(N):
        E = el.zeros(n, n)
        E[i // n, i % n] = el.ONE
        out[i] = from_matrix(P.dot(E).dot(Pinv))
    return out


# ---------------------------------------------------------------------------
# small Lie algebra corpus on V = Q^n (bracket tensors mu[i, j, k])

def _skew_from(n, entries):
    mu = el.zeros(n, n, n)
    for (i, j), vec in entries.items():
        for k, v in enumerate(vec):
            mu[i, j, k] = Fraction(v)
            mu[j, i, k] = -Fraction(v)
    return mu


def abelian(n: int) -> np.ndarray:
    return el.zeros(n, n, n)


def heisenberg() -> np.ndarray:
    return _skew_from(3, {(0, 1): (0, 0, 1)})


def so3() -> np.ndarray:
    return _skew_from(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (2, 0): (0, 1, 0)})


def sl2() -> np.ndarray:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return _skew_from(3, {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)})


def non_jacobi() -> np.ndarray:
    """[e1,e2] = e3, [e1,e3] = e3, [e2,e3] = e1; Jacobiator(e1,e2,e3) = -e1."""
    return _skew_from(3, {(0, 1): (0, 0, 1), (0, 2): (0, 0, 1), (1, 2): (1, 0, 0)})


def two_dim_nonabelian() -> np.ndarray:
    return _skew_from(2, {(0, 1): (0, 1)})


def sl2_in_gl2() -> np.ndarray:
    """sl(2) basis h, e, f as gl(2) coordinate rows."""
    return el.array([[1, 0, 0, -1], [0, 1, 0, 0], [0, 0, 1, 0]])


def sl2_action() -> np.ndarray:
    """Standard sl(2) action on Q^2 in the act[i, c, d] convention."""
    emb = sl2_in_gl2()
    return el.canonical(el.tensordot(emb, gl_action(2), axes=([1], [0])))


def conjugate_bracket(mu, g) -> np.ndarray:
    """Transport a bracket along a change of basis (row convention g)."""
    mu = el.canonical(mu)
    g = el.canonical(g)
    gi = invert(g)
    return el.canonical(el.einsum("ia,jb,abc,ck->ijk", g, g, mu, gi))
