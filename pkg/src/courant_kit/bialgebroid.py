"""E-dual pairs, E-Lie bialgebroids, doubles and Manin triples.

An E-dual pair is two Lie algebras A (dim a) and B (dim b) with

    pairing[i, p, e]  e-component of <X_i, xi_p>_E
    rho_a[i, c, d]    d-component of rho_A(X_i) u_c
    rho_b[p, c, d]    d-component of rho_B(xi_p) u_c

B is identified with its image in Hom(A, E) and A with its image in
Hom(B, E).  Every B-side operation is the A-side one applied to the
swapped pair.

Cochains on A are dense tensors of shape (a,)*k + (n,); a single
element of Hom(A, E) has shape (a, n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exactlin as el
from . import pointfiber as pf
from .dirac import induced_lie, is_dirac
from .ecourant import ECourantStructure, HALF, ce_coboundary_general
from .leibniz import LeibnizAlgebra, leibniz_residual


class NotInSubspace(ArithmeticError):
    """A computed element of Hom(A, E) does not lie in B (or vice versa)."""


class NotBialgebroid(ValueError):
    def __init__(self, report):
        super().__init__("pair is not an E-Lie bialgebroid: %s" % ", ".join(report.failed()))
        self.report = report


class NotTransverse(ValueError):
    pass


class NotLie(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotConstrained(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EDualPair:
    A: LeibnizAlgebra
    B: LeibnizAlgebra
    e_dim: int
    pairing: np.ndarray
    rho_a: np.ndarray
    rho_b: np.ndarray
    name: str = ""

    def __post_init__(self):
        a, b, n = self.A.dim, self.B.dim, self.e_dim
        want = {"pairing": (a, b, n), "rho_a": (a, n, n), "rho_b": (b, n, n)}
        for attr, shape in want.items():
            t = el.readonly(np.asarray(getattr(self, attr), dtype=object))
            if t.shape != shape:
                raise el.ShapeError("%s must have shape %r, got %r" % (attr, shape, t.shape))
            object.__setattr__(self, attr, t)

    @property
    def a(self):
        return self.A.dim

    @property
    def b(self):
        return self.B.dim

    def swap(self) -> "EDualPair":
        return EDualPair(self.B, self.A, self.e_dim, np.transpose(self.pairing, (1, 0, 2)),
                         self.rho_b, self.rho_a, self.name)

    @cached_property
    def emb_b(self):
        """Rows: xi_p as an element of Hom(A, E), flattened (a*n)."""
        return el.canonical(np.transpose(self.pairing, (1, 0, 2)).reshape(self.b, self.a * self.e_dim))

    @cached_property
    def b_space(self) -> el.Subspace:
        return el.Subspace.span(self.emb_b, self.a * self.e_dim)

    def to_B(self, phi) -> np.ndarray:
        """Coordinates in B of an element of Hom(A, E) (shape (a, n))."""
        phi = el.canonical(phi).reshape(-1)
        sol = el.solve(self.emb_b.T, phi)
        if sol.particular is None:
            raise NotInSubspace("element of Hom(A,E) is not in B")
        return sol.particular

    def to_A(self, psi) -> np.ndarray:
        return self.swap().to_B(psi)

    def as_hom_b(self, xi):
        """B coordinates -> Hom(A, E) element of shape (a, n)."""
        return el.canonical(el.canonical(xi).dot(self.emb_b).reshape(self.a, self.e_dim))

    def as_hom_a(self, x):
        return self.swap().as_hom_b(x)

    def pair(self, x, xi):
        return el.einsum("i,p,ipe->e", el.canonical(x), el.canonical(xi), self.pairing)

    def __eq__(self, other):
        if not isinstance(other, EDualPair):
            return NotImplemented
        return (self.A == other.A and self.B == other.B and self.e_dim == other.e_dim
                and el.equal(self.pairing, other.pairing)
                and el.equal(self.rho_a, other.rho_a) and el.equal(self.rho_b, other.rho_b))

    def __hash__(self):
        return id(self)


@dataclass
class PairValidity:
    a_lie: bool
    b_lie: bool
    a_injective: bool
    b_injective: bool
    rho_a_rep: bool
    rho_b_rep: bool

    @property
    def ok(self):
        return all(vars(self).values())


def _is_lie(alg):
    return alg.is_skew() and el.is_zero(leibniz_residual(alg))


def _is_rep(alg, act):
    L = np.transpose(act, (0, 2, 1))
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = el.tensordot(alg.bracket[i, j], L, ([0], [0]))
            if not el.equal(lhs, L[i].dot(L[j]) - L[j].dot(L[i])):
                return False
    return True


def validate(p: EDualPair) -> PairValidity:
    return PairValidity(
        _is_lie(p.A), _is_lie(p.B),
        el.rank(p.pairing.reshape(p.a, -1)) == p.a,
        el.rank(np.transpose(p.pairing, (1, 0, 2)).reshape(p.b, -1)) == p.b,
        _is_rep(p.A, p.rho_a), _is_rep(p.B, p.rho_b))


# ---------------------------------------------------------------------------
# coboundaries

def dA_E(p: EDualPair, u) -> np.ndarray:
    """(d^A u)(X) = rho_A(X) u, as an element of Hom(A, E)."""
    return el.einsum("c,icd->id", el.canonical(u), p.rho_a)


def dB_E(p, u):
    return dA_E(p.swap(), u)


def dA(p: EDualPair, mu) -> np.ndarray:
    """Chevalley-Eilenberg coboundary on Hom(wedge^k A, E) with rho_A.

    A 1-D input is an element of E; the result is then d^A u.
    """
    mu = el.canonical(mu)
    if mu.ndim == 1:
        return dA_E(p, mu)
    return ce_coboundary_general(p.A.bracket, p.rho_a, mu)


def dB(p, mu):
    return dA(p.swap(), mu)


def constrained_hom(p: EDualPair, side: str, k: int) -> el.Subspace:
    """Hom(wedge^k A, E)_B (side 'A') or Hom(wedge^k B, E)_A (side 'B').

    Wedge coordinates; every slice mu(x_1, ..., x_{k-1}, .) must lie in the
    other algebra.
    """
    if side == "B":
        return constrained_hom(p.swap(), "A", k)
    if side != "A":
        raise ValueError("side must be 'A' or 'B'")
    a, n = p.a, p.e_dim
    if k == 0:
        return el.Subspace.full(n)
    ann = p.b_space.annihilator().basis                  # rows killing B
    wb = el.wedge_basis(a, k)
    dimw = len(wb) * n
    if dimw == 0:
        return el.Subspace.zero(0)
    if ann.shape[0] == 0:
        return el.Subspace.full(dimw)
    W = []
    for t in range(dimw):
        x = el.zeros(dimw)
        x[t] = el.ONE
        W.append(el.wedge_to_alternating(x, a, k, n).reshape(-1))
    W = el.canonical(np.array(W, dtype=object).reshape(dimw, -1))
    pre = a ** (k - 1)
    cons = el.tensordot(W.reshape(dimw, pre, a * n), ann, ([2], [1]))
    cons = np.transpose(cons, (1, 2, 0)).reshape(-1, dimw)
    return el.Subspace.kernel(cons)


def in_constrained(p, side, mu) -> bool:
    mu = el.canonical(mu)
    k = mu.ndim - 1
    dim = p.a if side == "A" else p.b
    return constrained_hom(p, side, k).contains(el.alternating_to_wedge(mu, dim, k))


# ---------------------------------------------------------------------------
# Lie derivatives

def lie_form(p: EDualPair, x, mu) -> np.ndarray:
    """First flavor on Hom(tensor^k A, E):
    (L_X mu)(Y..) = rho_A(X) mu(Y..) - sum mu(.., [X, Y_i], ..)."""
    x = el.canonical(x)
    mu = el.canonical(mu)
    k = mu.ndim - 1
    rx = el.einsum("i,icd->cd", x, p.rho_a)
    out = el.tensordot(mu, rx, ([k], [0]))
    adx = el.einsum("i,ijl->jl", x, p.A.bracket)       # Y_j -> [X, Y_j]
    for s in range(k):
        t = el.tensordot(adx, mu, ([1], [s]))            # (j, other slots...)
        perm = list(range(1, s + 1)) + [0] + list(range(s + 1, k + 1))
        out = out - np.transpose(t, perm)
    return el.canonical(out)


def lie_on_B(p: EDualPair, x, xi) -> np.ndarray:
    """L_X xi in B: the first flavor applied to xi in Hom(A, E), then pulled back to B."""
    return p.to_B(lie_form(p, x, p.as_hom_b(xi)))


def lie_on_A(p: EDualPair, xi, x) -> np.ndarray:
    """L_xi X in A, for xi in B."""
    return lie_on_B(p.swap(), xi, x)


def lie_matrix(p: EDualPair, x) -> np.ndarray:
    """Row-convention matrix of xi -> L_X xi on B."""
    return el.canonical(np.array([lie_on_B(p, x, e) for e in el.identity(p.b)],
                                 dtype=object).reshape(p.b, p.b))


def lie_form_dual(p: EDualPair, x, Xi) -> np.ndarray:
    """Second flavor on Hom(tensor^k B, E):
    (L_X Xi)(xi..) = rho_A(X) Xi(xi..) - sum Xi(.., L_X xi_i, ..)."""
    x = el.canonical(x)
    Xi = el.canonical(Xi)
    k = Xi.ndim - 1
    rx = el.einsum("i,icd->cd", x, p.rho_a)
    out = el.tensordot(Xi, rx, ([k], [0]))
    LX = lie_matrix(p, x)
    for s in range(k):
        t = el.tensordot(LX, Xi, ([1], [s]))
        perm = list(range(1, s + 1)) + [0] + list(range(s + 1, k + 1))
        out = out - np.transpose(t, perm)
    return el.canonical(out)


def lie_derivative(p: EDualPair, x, target, kind: str):
    """Dispatch: kind in {'A', 'B', 'formA', 'formB'}."""
    if kind == "A":
        return p.A.br(x, target)
    if kind == "B":
        return lie_on_B(p, x, target)
    if kind == "formA":
        return lie_form(p, x, target)
    if kind == "formB":
        return lie_form_dual(p, x, target)
    raise ValueError("unsupported target kind %r" % kind)


def contract_first(x, mu):
    """i_X mu: contraction of the first slot."""
    return el.tensordot(el.canonical(x), el.canonical(mu), ([0], [0]))


# ---------------------------------------------------------------------------
# bialgebroid conditions

@dataclass
class Status:
    passed: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class BialgReport:
    statuses: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(s.passed for s in self.statuses.values())

    def __bool__(self):
        return self.ok

    def failed(self):
        return [k for k, s in self.statuses.items() if not s.passed]

    def __getitem__(self, key):
        return self.statuses[key]


def _invariance(p: EDualPair) -> Status:
    n = p.e_dim
    for c in range(n):
        if not p.b_space.contains(dA_E(p, el.identity(n)[c]).reshape(-1)):
            return Status(False, ("dE", c), "d^A u not in B")
    if p.a >= 2:
        C2 = constrained_hom(p, "A", 2)
        for q in range(p.b):
            w = el.alternating_to_wedge(dA(p, p.as_hom_b(el.identity(p.b)[q])), p.a, 2)
            if not C2.contains(w):
                return Status(False, ("dB", q), "d^A xi not constrained")
    return Status(True)


def check_bialgebroid(p: EDualPair) -> BialgReport:
    rep = BialgReport()
    v = validate(p)
    rep.statuses["pair"] = Status(v.ok, None, "" if v.ok else repr(v))
    rep.statuses["invarianceA"] = _invariance(p)
    rep.statuses["invarianceB"] = _invariance(p.swap())
    if not (v.ok and rep["invarianceA"].passed and rep["invarianceB"].passed):
        for c in ("cond1", "cond2", "cond3"):
            rep.statuses[c] = Status(False, None, "not evaluated: pair is not invariant")
        return rep
    a, n = p.a, p.e_dim
    IA, IE = el.identity(a), el.identity(n)
    q = p.swap()
    # (1) d^B [X,Y] = L_X d^B Y - L_Y d^B X
    dBX = [dB(p, p.as_hom_a(IA[i])) for i in range(a)]
    w1 = None
    for i in range(a):
        for j in range(a):
            lhs = dB(p, p.as_hom_a(p.A.br(IA[i], IA[j])))
            rhs = lie_form_dual(p, IA[i], dBX[j]) - lie_form_dual(p, IA[j], dBX[i])
            if not el.equal(lhs, rhs):
                w1 = (i, j)
                break
        if w1:
            break
    rep.statuses["cond1"] = Status(w1 is None, w1)
    # (2) L_{d^A u} X = - L_{d^B u} X
    w2 = None
    for c in range(n):
        dAu = p.to_B(dA_E(p, IE[c]))
        dBu = p.to_A(dB_E(p, IE[c]))
        for i in range(a):
            if not el.equal(lie_on_A(p, dAu, IA[i]), -p.A.br(dBu, IA[i])):
                w2 = (c, i)
                break
        if w2:
            break
    rep.statuses["cond2"] = Status(w2 is None, w2)
    # (3) rho_B(d^A u) = - rho_A(d^B u)
    w3 = None
    for c in range(n):
        dAu = p.to_B(dA_E(p, IE[c]))
        dBu = p.to_A(dB_E(p, IE[c]))
        lhs = el.einsum("p,pcd->cd", dAu, p.rho_b)
        rhs = el.einsum("i,icd->cd", dBu, p.rho_a)
        if not el.equal(lhs, -rhs):
            w3 = (c,)
            break
    rep.statuses["cond3"] = Status(w3 is None, w3)
    return rep


# ---------------------------------------------------------------------------
# the double

def double_bracket(p: EDualPair, x1, xi1, x2, xi2):
    """[X1+xi1, X2+xi2] on A + B, returned as (A-part, B-part)."""
    A = (p.A.br(x1, x2) + lie_on_A(p, xi1, x2) - lie_on_A(p, xi2, x1)
         + p.to_A(dB_E(p, p.pair(x1, xi2))))
    B = (p.B.br(xi1, xi2) + lie_on_B(p, x1, xi2) - lie_on_B(p, x2, xi1)
         + p.to_B(dA_E(p, p.pair(x2, xi1))))
    return el.canonical(A), el.canonical(B)


def double(p: EDualPair, require=True) -> ECourantStructure:
    """The E-Courant structure on A + B (A coordinates first)."""
    if require:
        rep = check_bialgebroid(p)
        if not rep.ok:
            raise NotBialgebroid(rep)
    a, b, n = p.a, p.b, p.e_dim
    K = a + b
    P = el.zeros(K, K, n)
    P[:a, a:] = HALF * p.pairing
    P[a:, :a] = HALF * np.transpose(p.pairing, (1, 0, 2))
    C = el.zeros(K, K, K)
    I = el.identity(K)
    for i in range(K):
        for j in range(K):
            xa, xb = I[i, :a], I[i, a:]
            ya, yb = I[j, :a], I[j, a:]
            ca, cb = double_bracket(p, xa, xb, ya, yb)
            C[i, j, :a] = ca
            C[i, j, a:] = cb
    R = el.zeros(K, n, n)
    R[:a] = p.rho_a
    R[a:] = p.rho_b
    return ECourantStructure(K, n, P, el.canonical(C), R, "double")


def split_subspaces(p: EDualPair):
    K = p.a + p.b
    I = el.identity(K)
    return el.Subspace.span(I[:p.a], K), el.Subspace.span(I[p.a:], K)


def double_jacobi_residual(p: EDualPair) -> np.ndarray:
    """J + (J1 + c.p.) + J2 on all basis triples of A + B.

    Every term is pushed into Hom(B,E) + Hom(A,E) so that no membership is
    assumed.  Shape (K, K, K, b*n + a*n).
    """
    a, b, n = p.a, p.b, p.e_dim
    K = a + b
    q = p.swap()
    I = el.identity(K)
    s = double(p, require=False)
    width = b * n + a * n

    def embed(va, vb):
        return el.canonical(np.concatenate([p.as_hom_a(va).reshape(-1), p.as_hom_b(vb).reshape(-1)]))

    def split(v):
        return v[:a], v[a:]

    def br(u, v):
        return s.br(u, v)

    def J1(e1, e2, e3):
        X1, x1 = split(e1)
        X2, x2 = split(e2)
        X3, x3 = split(e3)
        # i_{X3}(d^A[xi1,xi2] - L_{xi1} d^A xi2 + L_{xi2} d^A xi1): an element of Hom(A, E)
        dA1, dA2 = dA(p, p.as_hom_b(x1)), dA(p, p.as_hom_b(x2))
        t = (dA(p, p.as_hom_b(p.B.br(x1, x2))) - lie_form_dual(q, x1, dA2) + lie_form_dual(q, x2, dA1))
        partB = contract_first(X3, t)
        dB1, dB2 = dB(p, p.as_hom_a(X1)), dB(p, p.as_hom_a(X2))
        t = (dB(p, p.as_hom_a(p.A.br(X1, X2))) - lie_form_dual(p, X1, dB2) + lie_form_dual(p, X2, dB1))
        partA = contract_first(x3, t)
        return el.canonical(np.concatenate([partA.reshape(-1), partB.reshape(-1)]))

    def J2(e1, e2, e3):
        X1, x1 = split(e1)
        X2, x2 = split(e2)
        X3, x3 = split(e3)
        out = el.zeros(b)
        for xs, xo, X in ((x2, x3, X1), (x3, x2, X1), (x3, x1, X2)):
            w = p.pair(X, xs)
            out = out + lie_on_B(p, p.to_A(dB_E(p, w)), xo) + p.B.br(p.to_B(dA_E(p, w)), xo)
        return embed(el.zeros(a), out)

    res = el.zeros(K, K, K, width)
    for i in range(K):
        for j in range(K):
            for k in range(K):
                e1, e2, e3 = I[i], I[j], I[k]
                J = br(e1, br(e2, e3)) - br(br(e1, e2), e3) - br(e2, br(e1, e3))
                tot = embed(*split(J))
                tot = tot + J1(e1, e2, e3) + J1(e2, e3, e1) + J1(e3, e1, e2)
                tot = tot + J2(e1, e2, e3)
                res[i, j, k] = tot
    return el.canonical(res)


def anchor_compat_residual(p: EDualPair) -> np.ndarray:
    """[rho_B xi, rho_A X]u - rho_A(L_xi X)u + rho_B(L_X xi)u - rho_B(d^A<xi,X>)u
    - <L_{d^B u} xi + [d^A u, xi], X>, over basis (X, xi, u)."""
    a, b, n = p.a, p.b, p.e_dim
    IA, IB, IE = el.identity(a), el.identity(b), el.identity(n)
    colA = np.transpose(p.rho_a, (0, 2, 1))
    colB = np.transpose(p.rho_b, (0, 2, 1))
    opA = lambda x: el.einsum("i,icd->cd", x, colA)
    opB = lambda xi: el.einsum("p,pcd->cd", xi, colB)
    res = el.zeros(a, b, n, n)
    for i in range(a):
        for q in range(b):
            X, xi = IA[i], IB[q]
            M = opB(xi).dot(opA(X)) - opA(X).dot(opB(xi))
            M = M - opA(lie_on_A(p, xi, X)) + opB(lie_on_B(p, X, xi))
            M = M - opB(p.to_B(dA_E(p, p.pair(X, xi))))
            for c in range(n):
                u = IE[c]
                dBu = p.to_A(dB_E(p, u))
                dAu = p.to_B(dA_E(p, u))
                inner = lie_on_B(p, dBu, xi) + p.B.br(dAu, xi)
                res[i, q, c] = el.canonical(M.dot(u) - p.pair(X, inner))
    return el.canonical(res)


# ---------------------------------------------------------------------------
# Manin triples

def manin_decompose(s: ECourantStructure, A: el.Subspace, B: el.Subspace,
                    basis_a=None, basis_b=None) -> EDualPair:
    """Split a structure along two transverse Dirac structures."""
    if A.ambient != s.k_dim or B.ambient != s.k_dim:
        raise el.ShapeError("subspaces do not live in the structure")
    if (A & B).dim or (A + B).dim != s.k_dim:
        raise NotTransverse("A and B are not complementary (dim A∩B = %d, dim A+B = %d)"
                            % ((A & B).dim, (A + B).dim))
    la = induced_lie(s, A, basis_a)
    lb = induced_lie(s, B, basis_b)
    pairing = el.canonical(2 * el.einsum("ix,py,xye->ipe", la.basis, lb.basis, s.pairing))
    return EDualPair(la.algebra, lb.algebra, s.e_dim, pairing, la.rep, lb.rep, "manin")


# ---------------------------------------------------------------------------
# induced bracket on E and the pi construction

@dataclass
class EBracket:
    bracket: np.ndarray
    skew: bool
    jacobi: bool

    @property
    def ok(self):
        return self.skew and self.jacobi


def induced_E_bracket(p: EDualPair, require=True) -> EBracket:
    """[u, v]_E = <d^A u, d^B v>_E."""
    if require:
        rep = check_bialgebroid(p)
        if not rep.ok:
            raise NotBialgebroid(rep)
    n = p.e_dim
    IE = el.identity(n)
    dAs = [p.to_B(dA_E(p, IE[c])) for c in range(n)]
    dBs = [p.to_A(dB_E(p, IE[c])) for c in range(n)]
    br = el.zeros(n, n, n)
    for u in range(n):
        for v in range(n):
            br[u, v] = p.pair(dBs[v], dAs[u])
    br = el.canonical(br)
    alg = LeibnizAlgebra(n, br)
    return EBracket(br, alg.is_skew(), el.is_zero(leibniz_residual(alg)))


def canonical_pair(n: int) -> EDualPair:
    """(gl(V), V): identity action, zero anchor and zero bracket on V."""
    act = pf.gl_action(n)
    return EDualPair(pf.gl_algebra(n), LeibnizAlgebra(n, el.zeros(n, n, n)), n,
                     act, act, el.zeros(n, n, n), "canonical(%d)" % n)


def _jacobi_witness(mu):
    alg = LeibnizAlgebra(mu.shape[0], mu)
    w = el.first_nonzero(leibniz_residual(alg))
    return None if w is None else w[:3]


def pi_from_lie(mu) -> EDualPair:
    """The bialgebroid on (gl(V), V) induced by a Lie bracket mu on V.

    pi(u) = ad_u, rho_B = pi, and the bracket on V is
    [u, v]_pi = L_{pi u} v - L_{pi v} u - d<pi u, v>.
    """
    mu = el.canonical(mu)
    n = mu.shape[0]
    if not el.equal(mu, -np.transpose(mu, (1, 0, 2))):
        raise NotLie("bracket is not skew-symmetric")
    w = _jacobi_witness(mu)
    if w is not None:
        raise NotLie("bracket fails the Jacobi identity", w)
    base = canonical_pair(n)
    br = el.zeros(n, n, n)
    I = el.identity(n)
    for u in range(n):
        for v in range(n):
            br[u, v] = lambda_bracket(base, mu, I[u], I[v])
    rho_b = el.zeros(n, n, n)
    for u in range(n):
        rho_b[u] = pi_matrix(mu, u).T                        # row convention of ad_u
    return EDualPair(base.A, LeibnizAlgebra(n, el.canonical(br)), n, base.pairing,
                     base.rho_a, rho_b, "pi")


def pi_matrix(mu, u):
    """Column-convention matrix of ad_{e_u} = mu(e_u, .)."""
    mu = el.canonical(mu)
    return el.canonical(mu[u].T)


# ---------------------------------------------------------------------------
# Schouten calculus on Hom(wedge^2 B, E)_A

def sharp(p: EDualPair, H, xi) -> np.ndarray:
    """H_sharp(xi) = H(xi, .) as an element of A."""
    return p.to_A(el.tensordot(el.canonical(xi), el.canonical(H), ([0], [0])))


def _require_constrained(p, H):
    H = el.canonical(H)
    if H.shape != (p.b, p.b, p.e_dim):
        raise el.ShapeError("expected shape (b, b, n)")
    if not el.equal(H, -np.transpose(H, (1, 0, 2))):
        raise NotConstrained("H is not alternating")
    if not in_constrained(p, "B", H):
        raise NotConstrained("H is not in Hom(wedge^2 B, E)_A")
    return H


def schouten(p: EDualPair, H, K) -> np.ndarray:
    """[H,K](x1,x2,x3) = <L_{K x1} x2, H x3> + <L_{H x1} x2, K x3> + c.p."""
    H = _require_constrained(p, H)
    K = _require_constrained(p, K)
    b = p.b
    I = el.identity(b)
    Hs = [sharp(p, H, I[q]) for q in range(b)]
    Ks = [sharp(p, K, I[q]) for q in range(b)]
    LK = [lie_matrix(p, Ks[q]) for q in range(b)]     # LK[q][r] = L_{K xi_q} xi_r
    LH = [lie_matrix(p, Hs[q]) for q in range(b)]
    out = el.zeros(b, b, b, p.e_dim)
    for i in range(b):
        for j in range(b):
            for k in range(b):
                tot = el.zeros(p.e_dim)
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    tot = tot + p.pair(Hs[z], LK[x][y]) + p.pair(Ks[z], LH[x][y])
                out[i, j, k] = tot
    out = el.canonical(out)
    if not in_constrained(p, "B", out):
        raise NotConstrained("[H,K] left Hom(wedge^3 B, E)_A")
    return out


def schouten_e(p: EDualPair, u, Xk):
    """[u, X^k] = (-1)^(k+1) i_{d^A u} X^k for u in E and X^k in Hom(wedge^k B, E)_A."""
    Xk = el.canonical(Xk)
    k = Xk.ndim - 1
    sign = 1 if k % 2 else -1
    return el.canonical(sign * contract_first(p.to_B(dA_E(p, u)), Xk))


def schouten_x(p: EDualPair, x, Xk):
    """[X, X^k] = L_X X^k."""
    return lie_form_dual(p, x, Xk)


def sharp_bracket_residual(p: EDualPair, H) -> np.ndarray:
    """[H xi, H eta] - H[xi, eta]_H - 1/2 [H,H](xi, eta) in A, on all basis pairs."""
    H = _require_constrained(p, H)
    b = p.b
    I = el.identity(b)
    HH = schouten(p, H, H)
    out = el.zeros(b, b, p.a)
    for i in range(b):
        for j in range(b):
            lhs = p.A.br(sharp(p, H, I[i]), sharp(p, H, I[j]))
            rhs = sharp(p, H, lambda_bracket(p, H, I[i], I[j])) + HALF * p.to_A(HH[i, j])
            out[i, j] = lhs - rhs
    return el.canonical(out)


def lambda_bracket(p: EDualPair, Lam, xi, eta) -> np.ndarray:
    """[xi, eta]_Lambda = L_{Lam xi} eta - L_{Lam eta} xi - d^A Lam(xi, eta), in B."""
    Lam = el.canonical(Lam)
    xi, eta = el.canonical(xi), el.canonical(eta)
    lx, le = sharp(p, Lam, xi), sharp(p, Lam, eta)
    val = el.einsum("p,q,pqe->e", xi, eta, Lam)
    return el.canonical(lie_on_B(p, lx, eta) - lie_on_B(p, le, xi) - p.to_B(dA_E(p, val)))


@dataclass
class PropBReport:
    cond1: bool
    cond2: bool
    lie: bool | None
    rep: bool | None
    witness1: tuple | None = None
    witness2: tuple | None = None
    bracket: np.ndarray | None = None

    @property
    def ok(self):
        return self.cond1 and self.cond2 and bool(self.lie) and bool(self.rep)


def check_prop_B(p: EDualPair, Lam) -> PropBReport:
    """rho_A o [Lam,Lam]_sharp = 0 and L_X [Lam,Lam] = 0; when both hold, also
    verify that (B, [.,.]_Lam) is a Lie algebra represented by rho_A o Lam_sharp."""
    Lam = _require_constrained(p, Lam)
    b, a, n = p.b, p.a, p.e_dim
    IB, IA = el.identity(b), el.identity(a)
    LL = schouten(p, Lam, Lam)
    w1 = None
    for i in range(b):
        for j in range(b):
            x = p.to_A(el.canonical(LL[i, j]))
            if not el.is_zero(el.einsum("i,icd->cd", x, p.rho_a)):
                w1 = (i, j)
                break
        if w1:
            break
    w2 = None
    for i in range(a):
        if not el.is_zero(lie_form_dual(p, IA[i], LL)):
            w2 = (i,)
            break
    if w1 is not None or w2 is not None:
        return PropBReport(w1 is None, w2 is None, None, None, w1, w2)
    br = el.zeros(b, b, b)
    for i in range(b):
        for j in range(b):
            br[i, j] = lambda_bracket(p, Lam, IB[i], IB[j])
    alg = LeibnizAlgebra(b, el.canonical(br))
    rho = el.canonical(np.array([el.einsum("i,icd->cd", sharp(p, Lam, IB[q]), p.rho_a)
                                 for q in range(b)], dtype=object).reshape(b, n, n))
    return PropBReport(True, True, _is_lie(alg), _is_rep(alg, rho), None, None, alg.bracket)


# ---------------------------------------------------------------------------
# Maurer-Cartan

def graph_generators(p: EDualPair, H) -> np.ndarray:
    """Rows H xi_q + xi_q in A + B."""
    H = el.canonical(H)
    b, a = p.b, p.a
    rows = el.zeros(b, a + b)
    for q in range(b):
        rows[q, :a] = sharp(p, H, el.identity(b)[q])
        rows[q, a + q] = el.ONE
    return rows


def graph(p: EDualPair, H) -> el.Subspace:
    G = graph_generators(p, H)
    return el.Subspace.span(G, G.shape[1])


@dataclass
class MCResult:
    holds: bool
    residual: np.ndarray
    witness: tuple | None

    def __bool__(self):
        return self.holds


def maurer_cartan(p: EDualPair, H) -> MCResult:
    """d^B H + 1/2 [H, H] on all basis triples of B."""
    H = _require_constrained(p, H)
    res = el.canonical(dB(p, H) + HALF * schouten(p, H, H))
    w = el.first_nonzero(res)
    return MCResult(w is None, res, None if w is None else w[:3])


def jacobiator_of(mu) -> np.ndarray:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]] for a skew bracket."""
    mu = el.canonical(mu)
    t = el.einsum("jkl,ilm->ijkm", mu, mu)
    return el.canonical(t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3)))
