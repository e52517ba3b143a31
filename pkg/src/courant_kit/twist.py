"""B-field transformations, twisted omni-Lie structures and admissible pairs.

Tensors on gl(V) = D and V = J over a point:

    b[i, c]          b: D -> J
    omega[i, j, e]   symmetric D x D -> E
    theta[i, j, c]   D (x) D -> J  (not necessarily skew)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import exactlin as el
from . import pointfiber as pf
from .ecourant import (ECourantStructure, HALF, omni, rho_star_image, transport,
                       constrained_cochain_space, ce_coboundary)
from .leibniz import coboundary, coboundary_matrix, hat, unvec, vec


class NotAdmissible(ValueError):
    def __init__(self, condition, witness):
        super().__init__("condition %s fails at %r" % (condition, witness))
        self.condition = condition
        self.witness = witness


class NotACocycle(ValueError):
    pass


class NotConstrained(ValueError):
    pass


def _n_of(s: ECourantStructure):
    n = s.e_dim
    if s.k_dim != n * n + n:
        raise el.ShapeError("structure is not of the form gl(V) + V")
    return n


def _n_from_b(b):
    b = el.canonical(b)
    n = b.shape[1]
    if b.shape != (n * n, n):
        raise el.ShapeError("b must have shape (n^2, n)")
    return n


def bfield_matrix(b) -> np.ndarray:
    """Row-convention matrix of e^b: d + mu -> d + mu + b(d)."""
    b = el.canonical(b)
    n = _n_from_b(b)
    N = n * n
    F = el.identity(N + n)
    F[:N, N:] = b
    return F


def is_skew_bfield(b) -> bool:
    """Is <b(d), r>_E = -<b(r), d>_E on all basis pairs?"""
    n = _n_from_b(b)
    form = el.einsum("dc,cre->dre", el.canonical(b), pf.jet_pairing(n))
    return el.equal(form, -np.transpose(form, (1, 0, 2)))


def apply_bfield(s: ECourantStructure, b) -> ECourantStructure:
    """Transport s along e^b (pairing, bracket and anchor all conjugated)."""
    n = _n_of(s)
    if _n_from_b(b) != n:
        raise el.ShapeError("b does not match the structure")
    return transport(s, bfield_matrix(b), el.identity(n), s.name)


def skew_bfield_space(n: int) -> el.Subspace:
    """Skew b (as 2-cochains via the pairing) that are also constrained.

    Returned inside the ambient Hom(D, J) of dimension n^3.  Over a point
    this is the zero space.
    """
    N = n * n
    pair = pf.jet_pairing(n)
    rows = []
    for d in range(N):
        for r in range(N):
            for e in range(n):
                row = el.zeros(N, n)
                for c in range(n):
                    row[d, c] += pair[c, r, e]
                    row[r, c] += pair[c, d, e]
                rows.append(row.reshape(-1))
    return el.Subspace.kernel(np.array(rows, dtype=object).reshape(len(rows), N * n))


# ---------------------------------------------------------------------------
# cocycles

def partial_b(b) -> np.ndarray:
    """Leibniz coboundary of a J-valued 1-cochain."""
    n = _n_from_b(b)
    return coboundary(pf.gl_algebra(n), pf.jet_module(n), b)


def cocycle_residual(theta) -> np.ndarray:
    """The seven-term expression whose vanishing says theta is a 2-cocycle.

    L_d T(r,t) - L_r T(d,t) + L_t T(d,r) - d<t, T(d,r)>
        + T(d,[r,t]) - T(r,[d,t]) - T([d,r],t)
    """
    theta = el.canonical(theta)
    n = theta.shape[2]
    Lie = pf.jet_lie_derivative(n)              # (i, c, e)
    pair = pf.jet_pairing(n)                    # (c, t, e)
    dj = pf.d_jet(n)
    br = pf.gl_bracket(n)
    t1 = el.einsum("rtc,dce->drte", theta, Lie)
    t2 = el.einsum("dtc,rce->drte", theta, Lie)
    t3 = el.einsum("drc,tce->drte", theta, Lie)
    t4 = el.einsum("drc,ctf,fe->drte", theta, pair, dj)
    t5 = el.einsum("rts,dse->drte", br, theta)
    t6 = el.einsum("dts,rse->drte", br, theta)
    t7 = el.einsum("drs,ste->drte", br, theta)
    return el.canonical(t1 - t2 + t3 - t4 + t5 - t6 - t7)


@dataclass
class CocycleResult:
    cocycle: bool
    residual: np.ndarray
    witness: tuple | None

    def __bool__(self):
        return self.cocycle


def cocycle_check(theta) -> CocycleResult:
    res = cocycle_residual(theta)
    w = el.first_nonzero(res)
    return CocycleResult(w is None, res, None if w is None else w[:3])


# ---------------------------------------------------------------------------
# admissible pairs

@dataclass(frozen=True, eq=False)
class AdmissiblePair:
    omega: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        om = el.readonly(np.asarray(self.omega, dtype=object))
        th = el.readonly(np.asarray(self.theta, dtype=object))
        n = th.shape[-1]
        if th.shape != (n * n, n * n, n) or om.shape != th.shape:
            raise el.ShapeError("omega and theta must both have shape (n^2, n^2, n)")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "theta", th)

    @property
    def n(self):
        return self.theta.shape[-1]


@dataclass
class AdmissibleReport:
    symmetric: bool
    cond1: bool
    cond2: bool
    cond3: bool
    witnesses: dict

    @property
    def ok(self):
        return self.symmetric and self.cond1 and self.cond2 and self.cond3

    def __bool__(self):
        return self.ok

    def first_failure(self):
        for name in ("symmetric", "cond1", "cond2", "cond3"):
            if not getattr(self, name):
                return name, self.witnesses.get(name)
        return None


def _probe_vectors(N):
    """Basis vectors and pairwise sums, tagged by the index tuple."""
    out = []
    for t in [(i,) for i in range(N)] + list(combinations(range(N), 2)):
        x = el.zeros(N)
        for i in t:
            x[i] += 1
        out.append((t, x))
    return out


def admissible_check(p: AdmissiblePair) -> AdmissibleReport:
    om, th = p.omega, p.theta
    n = p.n
    N = n * n
    wit = {}
    w = el.first_nonzero(el.canonical(om - np.transpose(om, (1, 0, 2))))
    sym = w is None
    if not sym:
        wit["symmetric"] = w[:2]
    cc = cocycle_check(th)
    if not cc:
        wit["cond1"] = cc.witness
    dj = pf.d_jet(n)
    probes = _probe_vectors(N)
    # condition 2: theta(d,d) = d(omega(d,d))
    c2 = True
    for t, x in probes:
        lhs = el.einsum("i,j,ijc->c", x, x, th)
        rhs = el.einsum("i,j,ije,ec->c", x, x, om, dj)
        if not el.equal(lhs, rhs):
            c2 = False
            wit["cond2"] = t
            break
    # condition 3: 1/2 d omega(r,r) = 1/2 r theta(d,r) + omega([d,r], r)
    act = pf.gl_action(n)
    br = pf.gl_bracket(n)
    c3 = True
    for t, r in probes:
        orr = el.einsum("i,j,ije->e", r, r, om)                          # omega(r, r)
        lhs = HALF * el.einsum("e,def->df", orr, act)                     # for each basis d
        thr = el.einsum("dic,i->dc", th, r)                               # theta(d, r)
        rt = el.einsum("i,ice->ce", r, act)                               # r acting on V
        rhs = HALF * el.einsum("dc,ce->de", thr, rt)
        drr = el.einsum("dis,i->ds", br, r)                               # [d, r]
        rhs = rhs + el.einsum("ds,j,sje->de", drr, r, om)
        diff = el.first_nonzero(el.canonical(lhs - rhs))
        if diff is not None:
            c3 = False
            wit["cond3"] = (diff[0], t)
            break
    return AdmissibleReport(sym, cc.cocycle, c2, c3, wit)


def omega_b(b) -> np.ndarray:
    """1/2 (<b(d), r>_E + <b(r), d>_E)."""
    n = _n_from_b(b)
    form = el.einsum("dc,cre->dre", el.canonical(b), pf.jet_pairing(n))
    return el.canonical(HALF * (form + np.transpose(form, (1, 0, 2))))


def pair_from_b(b) -> AdmissiblePair:
    return AdmissiblePair(omega_b(b), partial_b(b))


def _standard_tensors(n):
    s = omni(n)
    return s.pairing, s.bracket, s.anchor


def build_exact(p: AdmissiblePair, check=True) -> ECourantStructure:
    """The exact structure on gl(V) + V determined by an admissible pair."""
    if check:
        rep = admissible_check(p)
        if not rep.ok:
            raise NotAdmissible(*rep.first_failure())
    n = p.n
    N = n * n
    P, C, R = (t.copy() for t in _standard_tensors(n))
    P[:N, :N, :] = P[:N, :N, :] + p.omega
    C[:N, :N, N:] = C[:N, :N, N:] + p.theta
    s = ECourantStructure(N + n, n, el.canonical(P), el.canonical(C), R, "exact")
    if check and not exactness_check(s):
        raise ArithmeticError("built structure is not exact")
    return s


def exactness_check(s: ECourantStructure) -> bool:
    """0 -> J --rho*--> K --rho--> gl(E) -> 0 is exact."""
    n = s.e_dim
    R = s.anchor.reshape(s.k_dim, n * n)
    if el.rank(R, "both") != n * n:
        return False
    try:
        img = rho_star_image(s)
    except ArithmeticError:
        return False
    return img.dim == n and el.Subspace.kernel(R.T) == img


@dataclass
class Trivialization:
    b: np.ndarray | None
    kernel: el.Subspace
    rank_a: int
    rank_ab: int

    @property
    def exists(self):
        return self.b is not None


def trivialize(theta) -> Trivialization:
    """Solve partial b = theta; the returned b has all free coordinates zero."""
    theta = el.canonical(theta)
    if not cocycle_check(theta):
        raise NotACocycle("theta is not a 2-cocycle")
    n = theta.shape[2]
    g, mod = pf.gl_algebra(n), pf.jet_module(n)
    M = coboundary_matrix(g, mod, 1)
    sol = el.solve(M, vec(theta))
    b = None if sol.particular is None else unvec(sol.particular, g, mod, 1)
    return Trivialization(b, sol.kernel, sol.rank_a, sol.rank_ab)


# ---------------------------------------------------------------------------
# twisted omni-Lie algebras

def cyclic_symmetry_check(theta):
    """<T(d,r), t> = <T(r,t), d> = <T(t,d), r> on all basis triples.

    Returns (ok, witness).
    """
    theta = el.canonical(theta)
    n = theta.shape[2]
    pair = pf.jet_pairing(n)
    f = el.einsum("drc,cte->drte", theta, pair)
    g = np.transpose(f, (2, 0, 1, 3))            # g[d,r,t] = f[r,t,d]
    h = np.transpose(f, (1, 2, 0, 3))            # h[d,r,t] = f[t,d,r]
    w = el.first_nonzero(el.canonical(f - g))
    if w is None:
        w = el.first_nonzero(el.canonical(f - h))
    return w is None, None if w is None else w[:3]


def twisted_omni(theta3) -> ECourantStructure:
    """Twist omni(n) by a constrained closed alternating 3-cochain on gl(V).

    The jet Theta(d, r, .) is added to the bracket of d and r.
    """
    theta3 = el.canonical(theta3)
    n = theta3.shape[-1]
    N = n * n
    if theta3.shape != (N, N, N, n):
        raise el.ShapeError("expected shape (n^2, n^2, n^2, n)")
    if not el.is_alternating(theta3):
        raise NotConstrained("cochain is not alternating")
    w = el.alternating_to_wedge(theta3, N, 3)
    if not constrained_cochain_space(n, 3).contains(w):
        raise NotConstrained("cochain does not take jet values in its last slot")
    if not el.is_zero(ce_coboundary(n, 3, theta3)):
        raise NotConstrained("cochain is not closed")
    s = omni(n)
    C = s.bracket.copy()
    one = pf.identity_element(n)
    jets = el.einsum("drtc,t->drc", theta3, one)          # p(nu) = nu(1)
    C[:N, :N, N:] = C[:N, :N, N:] + jets
    return ECourantStructure(s.k_dim, n, s.pairing, el.canonical(C), s.anchor, "twisted omni(%d)" % n)


def hat_image(n: int):
    """Both sides of the hat image as subspaces of E-valued 3-cochains.

    Returns (hat(Z^2 with jet coefficients), Z^3 with E coefficients
    intersected with image(hat), rank of hat).
    """
    g = pf.gl_algebra(n)
    jm, em = pf.jet_module(n), pf.e_module(n)
    N = n * n
    H = el.zeros(N * N * n, N ** 3 * n)
    basis = el.identity(N * N * n)
    for t in range(N * N * n):
        H[t] = vec(hat(g, unvec(basis[t], g, jm, 2)))
    Z2 = el.Subspace.kernel(coboundary_matrix(g, jm, 2))
    image = el.Subspace.span(H, N ** 3 * n)
    lhs = el.Subspace.span(Z2.basis.dot(H) if Z2.dim else el.zeros(0, N ** 3 * n), N ** 3 * n)
    Z3 = el.Subspace.kernel(coboundary_matrix(g, em, 3))
    return lhs, Z3 & image, el.rank(H, "both")
