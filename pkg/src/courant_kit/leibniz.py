"""Leibniz algebras, their representations, and Leibniz cohomology.

Conventions
-----------
bracket[i, j, k]  : coefficient of g_k in [g_i, g_j]
left[i, c, d]     : coefficient of v_d in l_{g_i}(v_c)
right[c, i, d]    : coefficient of v_d in r_{g_i}(v_c) = [v_c, g_i]

A degree-k cochain is a dense tensor of shape (dim,)*k + (moduleDim,);
it is *not* wedge-reduced.  Vectorisation is C-order flattening.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import exactlin as el

DEFAULT_MAX_DEGREE = 3
DEFAULT_MAX_DIM = 16


class DimensionCapExceeded(ValueError):
    pass


class WrongModule(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    dim: int
    bracket: np.ndarray
    name: str = ""

    def __post_init__(self):
        b = el.readonly(np.asarray(self.bracket, dtype=object))
        if b.shape != (self.dim,) * 3:
            raise el.ShapeError("bracket must have shape %r, got %r" % ((self.dim,) * 3, b.shape))
        object.__setattr__(self, "bracket", b)

    def br(self, x, y):
        x = el.canonical(x)
        y = el.canonical(y)
        return el.canonical(el.einsum("i,j,ijk->k", x, y, self.bracket))

    def ad(self, i):
        """Row-convention matrix of ad_{g_i}: g_j -> [g_i, g_j]."""
        return self.bracket[i]

    def is_skew(self) -> bool:
        return el.equal(self.bracket, -np.transpose(self.bracket, (1, 0, 2)))

    def __eq__(self, other):
        return isinstance(other, LeibnizAlgebra) and el.equal(self.bracket, other.bracket)

    def __hash__(self):
        return hash(tuple(self.bracket.reshape(-1)))


@dataclass(frozen=True, eq=False)
class LeibnizRep:
    module_dim: int
    left: np.ndarray
    right: np.ndarray
    name: str = ""

    def __post_init__(self):
        left = el.readonly(np.asarray(self.left, dtype=object))
        right = el.readonly(np.asarray(self.right, dtype=object))
        m = self.module_dim
        if left.ndim != 3 or left.shape[1:] != (m, m):
            raise el.ShapeError("left action must have shape (dim, m, m)")
        if right.ndim != 3 or right.shape[0] != m or right.shape[2] != m:
            raise el.ShapeError("right action must have shape (m, dim, m)")
        if left.shape[0] != right.shape[1]:
            raise el.ShapeError("left and right actions disagree on the algebra dimension")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def algebra_dim(self):
        return self.left.shape[0]

    def __eq__(self, other):
        return (isinstance(other, LeibnizRep) and el.equal(self.left, other.left)
                and el.equal(self.right, other.right))

    def __hash__(self):
        return hash((tuple(self.left.reshape(-1)), tuple(self.right.reshape(-1))))


@dataclass
class Report:
    """List of violations; ``ok`` iff empty.  Each violation is (label, indices)."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def first(self):
        return self.violations[0] if self.violations else None


def trivial_rep(dim: int, m: int) -> LeibnizRep:
    return LeibnizRep(m, el.zeros(dim, m, m), el.zeros(m, dim, m), "trivial")


def adjoint_rep(alg: LeibnizAlgebra) -> LeibnizRep:
    """The algebra acting on itself by left and right multiplication."""
    c = alg.bracket
    return LeibnizRep(alg.dim, c, c, "adjoint")


# ---------------------------------------------------------------------------
# identities

def leibniz_residual(alg: LeibnizAlgebra) -> np.ndarray:
    """[g1,[g2,g3]] - [[g1,g2],g3] - [g2,[g1,g3]] as a (dim,)*4 tensor."""
    c = alg.bracket
    lhs = el.einsum("jkl,ilm->ijkm", c, c)
    t1 = el.einsum("ijl,lkm->ijkm", c, c)
    t2 = el.einsum("ikl,jlm->ijkm", c, c)
    return el.canonical(lhs - t1 - t2)


def check_leibniz(alg: LeibnizAlgebra) -> Report:
    res = leibniz_residual(alg)
    rep = Report()
    for idx in np.ndindex(*res.shape[:3]):
        if not el.is_zero(res[idx]):
            rep.violations.append(("leibniz", tuple(int(i) for i in idx)))
    return rep


def _column_ops(t):
    """Stack of column-convention operators: op[i] = t[i].T."""
    return np.transpose(t, (0, 2, 1))


def check_rep(alg: LeibnizAlgebra, rep: LeibnizRep) -> Report:
    if rep.algebra_dim != alg.dim:
        raise el.ShapeError("representation is for a %d-dimensional algebra" % rep.algebra_dim)
    L = _column_ops(rep.left)                       # L[i] = l_{g_i}
    R = np.transpose(rep.right, (1, 2, 0))          # R[i] = r_{g_i} as column operator
    c = alg.bracket
    out = Report()
    n = alg.dim
    for a in range(n):
        for b in range(n):
            lab = el.tensordot(c[a, b], L, axes=(0, 0))
            rab = el.tensordot(c[a, b], R, axes=(0, 0))
            if not el.equal(lab, L[a].dot(L[b]) - L[b].dot(L[a])):
                out.violations.append(("left_bracket", (a, b)))
            if not el.equal(rab, L[a].dot(R[b]) - R[b].dot(L[a])):
                out.violations.append(("right_bracket", (a, b)))
            if not el.is_zero(R[b].dot(L[a]) + R[b].dot(R[a])):
                out.violations.append(("right_left", (a, b)))
    return out


# ---------------------------------------------------------------------------
# coboundary, tensor path

def _check_cochain(alg, rep, c):
    c = el.canonical(c)
    k = c.ndim - 1
    if c.shape != (alg.dim,) * k + (rep.module_dim,):
        raise el.ShapeError("cochain shape %r does not fit algebra dim %d, module dim %d"
                            % (c.shape, alg.dim, rep.module_dim))
    return c, k


def coboundary(alg: LeibnizAlgebra, rep: LeibnizRep, c) -> np.ndarray:
    """Leibniz coboundary of a dense degree-k cochain (k = c.ndim - 1)."""
    c, k = _check_cochain(alg, rep, c)
    n, m = alg.dim, rep.module_dim
    out = el.zeros((n,) * (k + 1) + (m,))
    # left actions, i = 1..k
    for p in range(k):
        t = el.tensordot(rep.left, c, axes=([1], [k]))     # (g_p, d, rest...)
        perm = []
        for pos in range(k + 1):
            if pos == p:
                perm.append(0)
            else:
                perm.append(2 + (pos if pos < p else pos - 1))
        perm.append(1)
        out = out + (-1) ** p * np.transpose(t, perm)
    # right action of the last argument
    out = out + (-1) ** (k + 1) * el.tensordot(c, rep.right, axes=([k], [0]))
    # bracket substitutions
    for p in range(k + 1):
        for q in range(p + 1, k + 1):
            t = el.tensordot(alg.bracket, c, axes=([2], [q - 1]))
            # t axes: 0 -> p, 1 -> q, then c slots t != q-1 (orig positions), then d
            src = {p: 0, q: 1}
            ax = 2
            for s in range(k):
                if s == q - 1:
                    continue
                src[s if s < p else s + 1] = ax
                ax += 1
            perm = [src[pos] for pos in range(k + 1)] + [ax]
            out = out + (-1) ** (p + 1) * np.transpose(t, perm)
    return el.canonical(out)


# ---------------------------------------------------------------------------
# coboundary, index path

def _check_caps(alg, k, max_degree, max_dim):
    if max_degree is not None and k > max_degree:
        raise DimensionCapExceeded("degree %d exceeds the cap %d" % (k, max_degree))
    if max_dim is not None and alg.dim > max_dim:
        raise DimensionCapExceeded("algebra dimension %d exceeds the cap %d" % (alg.dim, max_dim))


def coboundary_matrix(alg: LeibnizAlgebra, rep: LeibnizRep, k: int,
                      max_degree=DEFAULT_MAX_DEGREE, max_dim=DEFAULT_MAX_DIM) -> np.ndarray:
    """Matrix M with M @ vec(c) = vec(coboundary(c)) for degree-k cochains.

    Built column by column from the basis cochains using index arithmetic,
    independently of :func:`coboundary`.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    _check_caps(alg, k, max_degree, max_dim)
    n, m = alg.dim, rep.module_dim
    rows, cols = m * n ** (k + 1), m * n ** k
    M = el.zeros(rows, cols)
    c = alg.bracket
    nz_br = [(x, y, s, c[x, y, s]) for x, y, s in product(range(n), repeat=3) if c[x, y, s] != 0]
    nz_left = [(x, w, d, rep.left[x, w, d]) for x, w, d in product(range(n), range(m), range(m))
               if rep.left[x, w, d] != 0]
    nz_right = [(w, y, d, rep.right[w, y, d]) for w, y, d in product(range(m), range(n), range(m))
                if rep.right[w, y, d] != 0]

    def row(g, d):
        r = 0
        for gi in g:
            r = r * n + gi
        return r * m + d

    col = 0
    for J in product(range(n), repeat=k):
        for w in range(m):
            for p in range(k):
                sgn = (-1) ** p
                for x, w2, d, v in nz_left:
                    if w2 == w:
                        g = J[:p] + (x,) + J[p:]
                        M[row(g, d), col] += sgn * v
            sgn = (-1) ** (k + 1)
            for w2, y, d, v in nz_right:
                if w2 == w:
                    M[row(J + (y,), d), col] += sgn * v
            for p in range(k + 1):
                for q in range(p + 1, k + 1):
                    sgn = (-1) ** (p + 1)
                    target = J[q - 1]
                    rest = J[:q - 1] + J[q:]
                    for x, y, s, v in nz_br:
                        if s != target:
                            continue
                        g = list(rest)
                        g.insert(p, x)
                        g.insert(q, y)
                        M[row(tuple(g), w), col] += sgn * v
            col += 1
    return el.canonical(M)


def vec(c) -> np.ndarray:
    return el.canonical(np.asarray(c, dtype=object).reshape(-1))


def unvec(x, alg: LeibnizAlgebra, rep: LeibnizRep, k: int) -> np.ndarray:
    return el.canonical(np.asarray(x, dtype=object).reshape((alg.dim,) * k + (rep.module_dim,)))


def cocycles(alg, rep, k, **caps) -> el.Subspace:
    """Z^k as a subspace of the vectorised degree-k cochains."""
    return el.Subspace.kernel(coboundary_matrix(alg, rep, k, **caps))


def coboundaries(alg, rep, k, **caps) -> el.Subspace:
    """B^k as a subspace of the vectorised degree-k cochains."""
    dim_k = rep.module_dim * alg.dim ** k
    if k == 0:
        return el.Subspace.zero(dim_k)
    M = coboundary_matrix(alg, rep, k - 1, **caps)
    return el.Subspace.span(M.T, dim_k)


def cohomology_dim(alg: LeibnizAlgebra, rep: LeibnizRep, k: int, method="both",
                   max_degree=DEFAULT_MAX_DEGREE, max_dim=DEFAULT_MAX_DIM) -> int:
    """dim HL^k = dim ker d_k - rank d_{k-1}; ranks cross-checked when method='both'."""
    caps = dict(max_degree=max_degree, max_dim=max_dim)
    _check_caps(alg, k, max_degree, max_dim)
    Mk = coboundary_matrix(alg, rep, k, **caps)
    kernel = Mk.shape[1] - el.rank(Mk, method)
    image = 0
    if k > 0:
        image = el.rank(coboundary_matrix(alg, rep, k - 1, **caps), method)
    return kernel - image


# ---------------------------------------------------------------------------
# the hat map

def hat(alg: LeibnizAlgebra, theta, pairing=None) -> np.ndarray:
    """Turn a jet-valued 2-cochain into an E-valued 3-cochain.

    ``pairing[c, i, e]`` is the e-th coefficient of <u_c, g_i>_E.  Without an
    explicit pairing the algebra must be gl(V) and the point-fiber jet pairing
    is used.
    """
    theta = el.canonical(theta)
    if theta.ndim != 3 or theta.shape[:2] != (alg.dim, alg.dim):
        raise el.ShapeError("hat expects a 2-cochain")
    if pairing is None:
        from . import pointfiber as pf
        n = pf.gl_rank(alg.dim)
        if n is None or theta.shape[2] != n or alg != pf.gl_algebra(n):
            raise WrongModule("default pairing needs gl(V) with jet coefficients")
        pairing = pf.jet_pairing(n)
    pairing = el.canonical(pairing)
    if pairing.shape[0] != theta.shape[2] or pairing.shape[1] != alg.dim:
        raise WrongModule("pairing does not match the coefficient module")
    return el.canonical(el.einsum("drc,cte->drte", theta, pairing))
