"""Dirac structures: perpendiculars, the L = L-perp and closure tests, induced
Lie algebras, and graphs of brackets inside the omni-Lie algebra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactlin as el
from .ecourant import ECourantStructure, zero_anchor
from .leibniz import LeibnizAlgebra, LeibnizRep, check_leibniz


class NotDirac(ValueError):
    pass


class NotAGraph(ValueError):
    pass


class NotSkew(ValueError):
    pass


def _pairing_of(s):
    return s.pairing if isinstance(s, ECourantStructure) else el.canonical(s)


def perp(s, L: el.Subspace) -> el.Subspace:
    """{x : <x, l>_E = 0 for all l in L}.  ``s`` may be a structure or a bare pairing tensor."""
    P = _pairing_of(s)
    K = P.shape[0]
    if L.ambient != K:
        raise el.ShapeError("subspace lives in Q^%d, structure has dim %d" % (L.ambient, K))
    if L.dim == 0:
        return el.Subspace.full(K)
    # rows (l, e), columns x
    M = el.einsum("lj,xje->lex", L.basis, P).reshape(L.dim * P.shape[2], K)
    return el.Subspace.kernel(M)


@dataclass
class DiracReport:
    isotropic: bool
    self_perp: bool
    closed: bool
    isotropic_witness: tuple | None = None
    perp_dim: int = 0
    closure_witness: tuple | None = None

    @property
    def dirac(self) -> bool:
        return self.isotropic and self.self_perp and self.closed

    def __bool__(self):
        return self.dirac


def is_dirac(s: ECourantStructure, L: el.Subspace, generators=None) -> DiracReport:
    """Check isotropy, L = L-perp and closure.

    Closure is tested on pairs of ``generators`` (default: the RREF basis of L);
    the witness is the lexicographically first failing pair of indices.
    """
    Lp = perp(s, L)
    B = L.basis if generators is None else el.canonical(generators)
    iso_w = None
    if L.dim:
        G = el.einsum("ai,bj,ije->abe", L.basis, L.basis, s.pairing)
        w = el.first_nonzero(G)
        iso_w = None if w is None else w[:2]
    close_w = None
    if B.shape[0]:
        br = el.einsum("ai,bj,ijl->abl", B, B, s.bracket)
        ann = L.annihilator().basis                              # rows r with r.x = 0 on L
        if ann.shape[0]:
            test = el.einsum("abl,rl->abr", br, ann)
            w = el.first_nonzero(test)
            close_w = None if w is None else w[:2]
    return DiracReport(iso_w is None, Lp == L, close_w is None, iso_w, Lp.dim, close_w)


@dataclass
class InducedLie:
    algebra: LeibnizAlgebra
    rep: np.ndarray          # act[i, c, d] on E
    basis: np.ndarray
    skew: bool
    jacobi: bool
    rep_ok: bool

    @property
    def ok(self):
        return self.skew and self.jacobi and self.rep_ok


def _coords(L: el.Subspace, basis, vectors):
    """Coordinates of each vector in the given basis of L."""
    sol = el.solve(basis.T, el.canonical(vectors).T)
    if sol.particular is None:
        raise ArithmeticError("vector outside the subspace")
    return sol.particular.T


def induced_lie(s: ECourantStructure, L: el.Subspace, basis=None) -> InducedLie:
    """Restrict bracket and anchor to a Dirac structure and check the result."""
    if not is_dirac(s, L).dirac:
        raise NotDirac("subspace is not a Dirac structure")
    B = L.basis if basis is None else el.canonical(basis)
    if B.shape[0] != L.dim or el.Subspace.span(B, L.ambient) != L:
        raise el.ShapeError("given basis does not span L")
    d = B.shape[0]
    brv = el.einsum("ai,bj,ijl->abl", B, B, s.bracket).reshape(d * d, s.k_dim)
    c = _coords(L, B, brv).reshape(d, d, d)
    alg = LeibnizAlgebra(d, c)
    act = el.einsum("ai,icd->acd", B, s.anchor)
    skew = alg.is_skew()
    jac = check_leibniz(alg).ok
    L_ops = np.transpose(act, (0, 2, 1))
    rep_ok = True
    for a in range(d):
        for b in range(d):
            lab = el.tensordot(c[a, b], L_ops, ([0], [0]))
            if not el.equal(lab, L_ops[a].dot(L_ops[b]) - L_ops[b].dot(L_ops[a])):
                rep_ok = False
    return InducedLie(alg, act, B, skew, jac, rep_ok)


# ---------------------------------------------------------------------------
# graphs in the omni-Lie algebra

def graph_basis(mu) -> np.ndarray:
    """Rows ad_{e_i} + e_i of the graph of a bracket on V."""
    mu = el.canonical(mu)
    n = mu.shape[0]
    if mu.shape != (n, n, n):
        raise el.ShapeError("bracket must have shape (n, n, n)")
    if not el.equal(mu, -np.transpose(mu, (1, 0, 2))):
        raise NotSkew("bracket is not skew-symmetric")
    N = n * n
    rows = el.zeros(n, N + n)
    for i in range(n):
        for a in range(n):
            for b in range(n):
                rows[i, a * n + b] = mu[i, b, a]        # (ad_i)_{ab} = e_a-coefficient of [e_i, e_b]
        rows[i, N + i] = el.ONE
    return rows


def graph_of_bracket(mu) -> el.Subspace:
    B = graph_basis(mu)
    return el.Subspace.span(B, B.shape[1])


def bracket_from_graph(s: ECourantStructure, L: el.Subspace) -> np.ndarray:
    """Inverse of :func:`graph_of_bracket` inside omni(n)."""
    n = s.e_dim
    N = n * n
    if s.k_dim != N + n or L.ambient != N + n:
        raise el.ShapeError("expected a subspace of gl(V) + V")
    proj = L.basis[:, N:] if L.dim else el.zeros(0, n)
    if L.dim != n or el.rank(proj) != n:
        raise NotAGraph("projection to V is not bijective (dim %d, rank %d)"
                        % (L.dim, el.rank(proj) if L.dim else 0))
    lifts = _coords(L, proj, el.identity(n)).dot(L.basis)        # rows: A_i + e_i
    mu = el.zeros(n, n, n)
    for i in range(n):
        A = lifts[i, :N].reshape(n, n)
        for j in range(n):
            for a in range(n):
                mu[i, j, a] = A[a, j]
    mu = el.canonical(mu)
    if not el.equal(mu, -np.transpose(mu, (1, 0, 2))):
        raise NotAGraph("L is the graph of a non-skew map")
    return mu


def isotropic_counterexample() -> ECourantStructure:
    """Q^3, E = Q, <e1,e3> = <e2,e2> = 1, zero bracket and anchor."""
    P = el.zeros(3, 3, 1)
    P[0, 2, 0] = P[2, 0, 0] = P[1, 1, 0] = el.ONE
    return zero_anchor(LeibnizAlgebra(3, el.zeros(3, 3, 3)), P, "isotropic counterexample")
