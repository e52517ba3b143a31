"""E-Courant structures over a point.

A structure is four tensors on a based space K and a based space E:

    pairing[i, j, e]  -- e-component of <k_i, k_j>_E
    bracket[i, j, l]  -- l-component of [[k_i, k_j]]
    anchor[i, c, d]   -- d-component of rho(k_i) e_c

Linear maps K -> K and E -> E are stored row-wise as well: F[i, j] is the
j-component of F(k_i), so applying F to a coordinate vector is ``x @ F``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from . import exactlin as el
from . import pointfiber as pf
from .leibniz import LeibnizAlgebra, check_leibniz, leibniz_residual

HALF = Fraction(1, 2)

AXIOMS = ("symmetry", "nondegeneracy", "leibniz", "EC1", "EC2", "EC3", "EC4", "EC5")


class Unsolvable(ArithmeticError):
    """rho_star has no solution for the given E-vector."""


class NotFaithful(ValueError):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class DegenerateRep(ValueError):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class SingularMap(ValueError):
    pass


class NotAlternating(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ECourantStructure:
    k_dim: int
    e_dim: int
    pairing: np.ndarray
    bracket: np.ndarray
    anchor: np.ndarray
    name: str = ""

    def __post_init__(self):
        K, E = self.k_dim, self.e_dim
        shapes = {"pairing": (K, K, E), "bracket": (K, K, K), "anchor": (K, E, E)}
        for attr, shape in shapes.items():
            t = el.readonly(np.asarray(getattr(self, attr), dtype=object))
            if t.shape != shape:
                raise el.ShapeError("%s must have shape %r, got %r" % (attr, shape, t.shape))
            object.__setattr__(self, attr, t)

    def pair(self, x, y):
        return el.canonical(el.einsum("i,j,ije->e", el.canonical(x), el.canonical(y), self.pairing))

    def br(self, x, y):
        return el.canonical(el.einsum("i,j,ijl->l", el.canonical(x), el.canonical(y), self.bracket))

    def rho(self, x):
        """Column-convention matrix of rho(x)."""
        return el.canonical(el.tensordot(el.canonical(x), self.anchor, axes=(0, 0)).T)

    def leibniz_algebra(self) -> LeibnizAlgebra:
        return LeibnizAlgebra(self.k_dim, self.bracket)

    def __eq__(self, other):
        if not isinstance(other, ECourantStructure):
            return NotImplemented
        return (self.k_dim == other.k_dim and self.e_dim == other.e_dim
                and el.equal(self.pairing, other.pairing)
                and el.equal(self.bracket, other.bracket)
                and el.equal(self.anchor, other.anchor))

    def __hash__(self):
        return hash((self.k_dim, self.e_dim, tuple(self.bracket.reshape(-1))))


@dataclass
class AxiomStatus:
    passed: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class AxiomReport:
    statuses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s.passed for s in self.statuses.values())

    def __bool__(self):
        return self.ok

    def failed(self):
        return [k for k, s in self.statuses.items() if not s.passed]

    def __getitem__(self, key):
        return self.statuses[key]


# ---------------------------------------------------------------------------
# rho_star

def _rho_star_system(s):
    # rows (x, e), columns i: P[i, x, e]
    return el.canonical(np.transpose(s.pairing, (1, 2, 0)).reshape(s.k_dim * s.e_dim, s.k_dim))


def rho_star(s: ECourantStructure, u) -> np.ndarray:
    """The W with P(W, X) = 1/2 rho(X) u for every X."""
    u = el.canonical(u).reshape(-1)
    if u.shape[0] != s.e_dim:
        raise el.ShapeError("E-vector of length %d, expected %d" % (u.shape[0], s.e_dim))
    rhs = HALF * el.tensordot(u, s.anchor, axes=([0], [1])).reshape(-1)
    sol = el.solve(_rho_star_system(s), rhs)
    if sol.particular is None:
        raise Unsolvable("rho_star(%s) does not exist (rank %d < %d)"
                         % ([el.fstr(x) for x in u], sol.rank_a, sol.rank_ab))
    return sol.particular


def rho_star_matrix(s: ECourantStructure) -> np.ndarray:
    """Row-convention E -> K matrix of rho_star (raises Unsolvable)."""
    return el.canonical(np.array([rho_star(s, e) for e in el.identity(s.e_dim)],
                                 dtype=object).reshape(s.e_dim, s.k_dim))


def rho_star_image(s: ECourantStructure) -> el.Subspace:
    return el.Subspace.span(rho_star_matrix(s), s.k_dim)


# ---------------------------------------------------------------------------
# verification

def is_nondegenerate(pairing) -> bool:
    P = el.canonical(pairing)
    K = P.shape[0]
    return el.rank(P.reshape(K, -1)) == K


def verify_axioms(s: ECourantStructure) -> AxiomReport:
    K, E = s.k_dim, s.e_dim
    P, C, R = s.pairing, s.bracket, s.anchor
    rep = AxiomReport()

    asym = el.canonical(P - np.transpose(P, (1, 0, 2)))
    w = el.first_nonzero(asym)
    rep.statuses["symmetry"] = AxiomStatus(w is None, None if w is None else w[:2])

    M = P.reshape(K, K * E)
    ker = el.Subspace.kernel(M.T)
    rep.statuses["nondegeneracy"] = AxiomStatus(
        ker.dim == 0, None if ker.dim == 0 else tuple(ker.basis[0]),
        "" if ker.dim == 0 else "pairing kernel has dimension %d" % ker.dim)

    w = el.first_nonzero(leibniz_residual(LeibnizAlgebra(K, C)))
    rep.statuses["leibniz"] = AxiomStatus(w is None, None if w is None else w[:3])

    # EC1: rho[[x,y]] = [rho x, rho y]  (row-convention operators compose reversed)
    lhs = el.tensordot(C, R, axes=([2], [0]))                     # (x, y, c, d)
    rhs = el.einsum("ycm,xmd->xycd", R, R) - el.einsum("xcm,ymd->xycd", R, R)
    w = el.first_nonzero(el.canonical(lhs - rhs))
    rep.statuses["EC1"] = AxiomStatus(w is None, None if w is None else w[:2])

    # EC4 (needed by EC2 and EC5)
    rs_rows = []
    ec4_fail = None
    for c in range(E):
        try:
            rs_rows.append(rho_star(s, el.identity(E)[c]))
        except Unsolvable:
            ec4_fail = (c,)
            break
    rep.statuses["EC4"] = AxiomStatus(ec4_fail is None, ec4_fail)

    if ec4_fail is None:
        RS = el.canonical(np.array(rs_rows, dtype=object).reshape(E, K))
        witness = None
        samples = [(i,) for i in range(K)] + list(combinations(range(K), 2))
        for t in samples:
            x = el.zeros(K)
            for i in t:
                x[i] += 1
            lhs2 = s.br(x, x)
            rhs2 = s.pair(x, x).dot(RS)
            if not el.equal(lhs2, rhs2):
                witness = t
                break
        rep.statuses["EC2"] = AxiomStatus(witness is None, witness)
        ec5 = el.tensordot(RS, R, axes=([1], [0]))               # (u, c, d)
        w = el.first_nonzero(ec5)
        rep.statuses["EC5"] = AxiomStatus(w is None, None if w is None else w[:1])
    else:
        rep.statuses["EC2"] = AxiomStatus(False, ec4_fail, "rho_star undefined")
        rep.statuses["EC5"] = AxiomStatus(False, ec4_fail, "rho_star undefined")

    # EC3: rho(x) P(y,z) = P([[x,y]],z) + P(y,[[x,z]])
    lhs3 = el.einsum("yzc,xcd->xyzd", P, R)
    r1 = el.einsum("xya,azd->xyzd", C, P)
    r2 = el.einsum("xza,yad->xyzd", C, P)
    w = el.first_nonzero(el.canonical(lhs3 - r1 - r2))
    rep.statuses["EC3"] = AxiomStatus(w is None, None if w is None else w[:3])

    rep.statuses = {k: rep.statuses[k] for k in AXIOMS}
    return rep


def ec2_residual(s: ECourantStructure, x) -> np.ndarray:
    """[[x,x]] - rho_star(P(x,x)) for an arbitrary vector x."""
    return el.canonical(s.br(x, x) - s.pair(x, x).dot(rho_star_matrix(s)))


# ---------------------------------------------------------------------------
# constructors

def _check_rep_of(lie: LeibnizAlgebra, action):
    L = np.transpose(action, (0, 2, 1))
    for a, b in product(range(lie.dim), repeat=2):
        lab = el.tensordot(lie.bracket[a, b], L, axes=(0, 0))
        if not el.equal(lab, L[a].dot(L[b]) - L[b].dot(L[a])):
            raise ValueError("action is not a representation: fails on basis pair %r" % ((a, b),))


def hemisemidirect(lie: LeibnizAlgebra, action, name="") -> ECourantStructure:
    """g + V with <A+u,B+v> = 1/2(Av + Bu), [[A+u,B+v]] = [A,B] + Av, rho = action."""
    action = el.canonical(action)
    g = lie.dim
    if action.ndim != 3 or action.shape[0] != g or action.shape[1] != action.shape[2]:
        raise el.ShapeError("action must have shape (dim g, n, n)")
    n = action.shape[1]
    if not lie.is_skew() or not check_leibniz(lie).ok:
        raise ValueError("hemisemidirect needs a Lie algebra")
    _check_rep_of(lie, action)
    ker = el.Subspace.kernel(action.reshape(g, n * n).T)
    if ker.dim:
        raise NotFaithful("action is not faithful", tuple(ker.basis[0]))
    ker = el.Subspace.kernel(np.transpose(action, (1, 0, 2)).reshape(n, g * n).T)
    if ker.dim:
        raise DegenerateRep("action is degenerate", tuple(ker.basis[0]))
    K = g + n
    P = el.zeros(K, K, n)
    C = el.zeros(K, K, K)
    R = el.zeros(K, n, n)
    C[:g, :g, :g] = lie.bracket
    for i in range(g):
        for c in range(n):
            for d in range(n):
                a = action[i, c, d]
                if a != 0:
                    C[i, g + c, g + d] += a
                    P[i, g + c, d] += HALF * a
                    P[g + c, i, d] += HALF * a
    R[:g] = action
    return ECourantStructure(K, n, P, C, R, name)


def omni(n: int) -> ECourantStructure:
    """The omni-Lie algebra gl(V) + V with dim V = n."""
    if n < 1:
        raise ValueError("n must be positive")
    return hemisemidirect(pf.gl_algebra(n), pf.gl_action(n), "omni(%d)" % n)


def zero_anchor(lie: LeibnizAlgebra, pairing, name="") -> ECourantStructure:
    """A Lie algebra with an invariant E-valued pairing and zero anchor."""
    pairing = el.canonical(pairing)
    e = pairing.shape[2]
    return ECourantStructure(lie.dim, e, pairing, lie.bracket, el.zeros(lie.dim, e, e), name)


def omni_split(n: int):
    """Subspaces gl(V)+0 and 0+V of omni(n)."""
    N = n * n
    I = el.identity(N + n)
    return el.Subspace.span(I[:N], N + n), el.Subspace.span(I[N:], N + n)


# ---------------------------------------------------------------------------
# morphisms

def _inv(M, what):
    try:
        return pf.invert(M)
    except np.linalg.LinAlgError:
        raise SingularMap("%s is singular" % what) from None


@dataclass
class MorphismReport:
    orthogonal: AxiomStatus
    bracket: AxiomStatus
    anchor: AxiomStatus

    @property
    def ok(self):
        return self.orthogonal.passed and self.bracket.passed and self.anchor.passed

    def __bool__(self):
        return self.ok


def check_isomorphism(s1: ECourantStructure, s2: ECourantStructure, F, phi) -> MorphismReport:
    """Conditions for (F, Phi): s1 -> s2 to be an isomorphism.

    (1) P2(FX, FY) = Phi P1(X, Y); (2) F[[X,Y]]1 = [[FX,FY]]2; (3) rho2(FX) = Phi rho1(X) Phi^-1.
    """
    F = el.canonical(F)
    phi = el.canonical(phi)
    if F.shape != (s1.k_dim, s2.k_dim) or phi.shape != (s1.e_dim, s2.e_dim):
        raise el.ShapeError("morphism shapes do not match the structures")
    _inv(F, "F")
    _inv(phi, "Phi")
    lhs = el.einsum("xa,yb,abe->xye", F, F, s2.pairing)
    rhs = el.tensordot(s1.pairing, phi, axes=([2], [0]))
    w1 = el.first_nonzero(el.canonical(lhs - rhs))
    lhs = el.tensordot(s1.bracket, F, axes=([2], [0]))
    rhs = el.einsum("xa,yb,abl->xyl", F, F, s2.bracket)
    w2 = el.first_nonzero(el.canonical(lhs - rhs))
    # row convention: rho(x) acts as u -> u @ R[x]; Phi rho Phi^-1 becomes phi^-1 R phi
    phinv = _inv(phi, "Phi")
    lhs = el.tensordot(F, s2.anchor, axes=([1], [0]))
    rhs = el.einsum("ca,xab,bd->xcd", phinv, s1.anchor, phi)
    w3 = el.first_nonzero(el.canonical(lhs - rhs))
    st = lambda w, k: AxiomStatus(w is None, None if w is None else w[:k])
    return MorphismReport(st(w1, 2), st(w2, 2), st(w3, 1))


def check_automorphism(s: ECourantStructure, F, phi) -> MorphismReport:
    return check_isomorphism(s, s, F, phi)


def transport(s: ECourantStructure, F, phi, name="") -> ECourantStructure:
    """Push s forward along (F, Phi) so that (F, Phi) becomes an isomorphism."""
    F = el.canonical(F)
    phi = el.canonical(phi)
    Fi = _inv(F, "F")
    phinv = _inv(phi, "Phi")
    P = el.einsum("xa,yb,abc,ce->xye", Fi, Fi, s.pairing, phi)
    C = el.einsum("xa,yb,abl,lm->xym", Fi, Fi, s.bracket, F)
    R = el.einsum("xa,cp,apq,qd->xcd", Fi, phinv, s.anchor, phi)
    return ECourantStructure(s.k_dim, s.e_dim, el.canonical(P), el.canonical(C),
                             el.canonical(R), name)


def omni_automorphism(n: int, phi) -> np.ndarray:
    """F = Ad_Phi + Phi on gl(V) + V (row convention)."""
    phi = el.canonical(phi)
    N = n * n
    F = el.zeros(N + n, N + n)
    F[:N, :N] = pf.adjoint_map(phi)
    F[N:, N:] = phi
    return F


# ---------------------------------------------------------------------------
# left center

def left_center(s: ECourantStructure) -> el.Subspace:
    """{Z : [[Z, Y]] = 0 for all Y}."""
    K = s.k_dim
    M = np.transpose(s.bracket, (1, 2, 0)).reshape(K * K, K)
    return el.Subspace.kernel(M)


# ---------------------------------------------------------------------------
# the constrained complex on gl(V) with values in V

def _dense_basis(N, n, k):
    """Matrix whose rows are the dense alternating tensors of the wedge basis."""
    dim = len(el.wedge_basis(N, k)) * n
    rows = []
    for t in range(dim):
        x = el.zeros(dim)
        x[t] = el.ONE
        rows.append(el.wedge_to_alternating(x, N, k, n).reshape(-1))
    if not rows:
        return el.zeros(0, N ** k * n)
    return el.canonical(np.array(rows, dtype=object).reshape(dim, N ** k * n))


def constrained_cochain_space(n: int, k: int) -> el.Subspace:
    """Hom(wedge^k gl(V), V) restricted to maps whose last slot is a jet.

    Ambient coordinates are wedge coordinates (lexicographic tuples, then
    the V index).  k = 0 gives V itself.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    N = n * n
    if k == 0:
        return el.Subspace.full(n)
    jc = pf.jet_constraints(n)                                   # (N*n, N*n)
    W = _dense_basis(N, n, k)
    if W.shape[0] == 0:
        return el.Subspace.zero(0)
    pre = N ** (k - 1)
    # the jet condition applied to the last slot, slice by slice
    cons = el.tensordot(W.reshape(W.shape[0], pre, N * n), jc, ([2], [1]))
    cons = np.transpose(cons, (1, 2, 0)).reshape(-1, W.shape[0])
    return el.Subspace.kernel(cons)


def ce_coboundary_general(bracket, action, mu) -> np.ndarray:
    """Chevalley-Eilenberg coboundary of an alternating dense cochain.

    bracket: (g, g, g); action: act[i, c, d]; mu: (g,)*k + (m,).
    """
    bracket = el.canonical(bracket)
    action = el.canonical(action)
    mu = el.canonical(mu)
    k = mu.ndim - 1
    g, m = bracket.shape[0], action.shape[1]
    if k >= 2 and not el.is_alternating(mu):
        raise NotAlternating("cochain is not alternating")
    out = el.zeros((g,) * (k + 1) + (m,))
    for p in range(k + 1):
        t = el.tensordot(action, mu, axes=([1], [k]))            # (g_p, d, rest)
        perm = []
        for pos in range(k + 1):
            perm.append(0 if pos == p else 2 + (pos if pos < p else pos - 1))
        perm.append(1)
        out = out + (-1) ** p * np.transpose(t, perm)
    for p in range(k + 1):
        for q in range(p + 1, k + 1):
            t = el.tensordot(bracket, mu, axes=([2], [0]))      # (g_p, g_q, rest..., d)
            src = {p: 0, q: 1}
            ax = 2
            for pos in range(k + 1):
                if pos in (p, q):
                    continue
                src[pos] = ax
                ax += 1
            perm = [src[pos] for pos in range(k + 1)] + [ax]
            out = out + (-1) ** (p + q) * np.transpose(t, perm)
    return el.canonical(out)


def ce_coboundary(n: int, k: int, mu) -> np.ndarray:
    """The jet differential on Hom(wedge^k gl(V), V), with gl(V) acting on V."""
    mu = el.canonical(mu)
    N = n * n
    if mu.shape != (N,) * k + (n,):
        raise el.ShapeError("cochain must have shape %r" % ((N,) * k + (n,),))
    return ce_coboundary_general(pf.gl_bracket(n), pf.gl_action(n), mu)


def ce_coboundary_matrix(n: int, k: int) -> np.ndarray:
    """Row-convention matrix of d from wedge coordinates in degree k to k+1."""
    N = n * n
    W = _dense_basis(N, n, k) if k else el.identity(n)
    out = []
    for row in W:
        mu = row.reshape((N,) * k + (n,))
        out.append(el.alternating_to_wedge(ce_coboundary(n, k, mu), N, k + 1))
    return el.canonical(np.array(out, dtype=object).reshape(W.shape[0], -1))


def constrained_cohomology(n: int, max_k: int = 2, method: str = "both"):
    """dims of H^k of the constrained complex, k = 0..max_k.

    H^k = dim C^k - rank(d on C^k) - rank(d on C^{k-1}); also checks that d
    maps each C^k into C^{k+1}.
    """
    spaces = [constrained_cochain_space(n, k) for k in range(max_k + 2)]
    ranks = []
    for k in range(max_k + 1):
        C = spaces[k]
        if C.dim == 0:
            ranks.append(0)
            continue
        img = el.tensordot(C.basis, ce_coboundary_matrix(n, k), ([1], [0]))
        if not spaces[k + 1].contains(el.Subspace.span(img, spaces[k + 1].ambient)):
            raise ArithmeticError("d leaves the constrained complex in degree %d" % k)
        ranks.append(el.rank(img, method))
    return [spaces[k].dim - ranks[k] - (ranks[k - 1] if k else 0) for k in range(max_k + 1)]
