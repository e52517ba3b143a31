"""
Exact rational linear and multilinear algebra.

Everything here works on numpy ``object`` arrays whose entries are
``fractions.Fraction``.  Two independent elimination strategies are
provided: plain Gauss-Jordan over the rationals and fraction-free
Bareiss elimination over the integers.  Callers that need a rank can ask
for both and compare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from functools import reduce

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)


class ShapeError(ValueError):
    pass


class EliminationMismatch(AssertionError):
    """Raised when the Gauss and Bareiss backends disagree."""


# ---------------------------------------------------------------------------
# scalars and arrays

def frac(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            p, q = int(p), int(q)
            if q == 0:
                raise ZeroDivisionError("zero denominator in %r" % x)
            return Fraction(p, q)
        return Fraction(int(s))
    raise TypeError("cannot convert %r to an exact rational" % (x,))


def fstr(x) -> str:
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def array(data, shape=None) -> np.ndarray:
    """Exact object array from nested lists / arrays."""
    a = np.array(data, dtype=object)
    if shape is not None:
        a = a.reshape(shape)
    out = np.empty(a.shape, dtype=object)
    flat_in = a.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.size):
        flat_out[i] = frac(flat_in[i])
    return out


def zeros(*shape) -> np.ndarray:
    if len(shape) == 1 and isinstance(shape[0], tuple):
        shape = shape[0]
    a = np.empty(shape, dtype=object)
    a.fill(ZERO)
    return a


def identity(n: int) -> np.ndarray:
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = ONE
    return a


def is_zero(a) -> bool:
    a = np.asarray(a, dtype=object)
    return all(x == 0 for x in a.reshape(-1))


def equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.reshape(-1), b.reshape(-1)))


def first_nonzero(a):
    """Lexicographically first index of a nonzero entry, or None."""
    a = np.asarray(a, dtype=object)
    for idx in np.ndindex(*a.shape):
        if a[idx] != 0:
            return tuple(int(i) for i in idx)
    return None


def canonical(a) -> np.ndarray:
    """Normalise entries to Fraction (numpy arithmetic can yield ints)."""
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    fo, fa = out.reshape(-1), a.reshape(-1)
    for i in range(fa.size):
        fo[i] = frac(fa[i])
    return out


def readonly(a: np.ndarray) -> np.ndarray:
    a = canonical(a)
    a.setflags(write=False)
    return a


# ---------------------------------------------------------------------------
# Gauss-Jordan over Q

def rref(m):
    """Reduced row echelon form.

    Returns ``(R, pivots, rank)`` where ``R`` has the same shape as ``m``
    and ``pivots`` is the tuple of pivot columns.
    """
    a = canonical(m)
    if a.ndim != 2:
        raise ShapeError("rref expects a matrix, got shape %r" % (a.shape,))
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = None
        for i in range(r, rows):
            if a[i, c] != 0:
                p = i
                break
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = a[r, c]
        if piv != 1:
            a[r, c:] = a[r, c:] / piv
        col = a[:, c].copy()
        col[r] = ZERO
        nz = [i for i in range(rows) if col[i] != 0]
        if nz:
            a[nz, c:] = a[nz, c:] - np.outer(col[nz], a[r, c:])
        pivots.append(c)
        r += 1
    return canonical(a), tuple(pivots), r


# ---------------------------------------------------------------------------
# fraction-free Bareiss over Z

def _integer_rows(m):
    a = canonical(m)
    rows, cols = a.shape
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        den = reduce(math.lcm, (x.denominator for x in a[i]), 1)
        for j in range(cols):
            out[i, j] = (a[i, j] * den).numerator
    return out


def bareiss(m):
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(R, pivots, rank)`` with ``R`` the reduced row echelon form,
    recovered at the end by dividing each pivot row by its pivot.  All
    intermediate work is in Python integers with exact divisions.
    """
    a = _integer_rows(m)
    rows, cols = a.shape
    prev = 1
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = None
        for i in range(r, rows):
            if a[i, c] != 0:
                p = i
                break
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = a[r, c]
        for i in range(rows):
            if i == r:
                continue
            num = a[i] * piv - a[r] * a[i, c]
            for j in range(cols):
                q, rem = divmod(num[j], prev)
                if rem:
                    raise EliminationMismatch("inexact Bareiss division")
                num[j] = q
            a[i] = num
        prev = piv
        pivots.append(c)
        r += 1
    out = zeros(rows, cols)
    for i in range(r):
        piv = a[i, pivots[i]]
        for j in range(cols):
            out[i, j] = Fraction(a[i, j], piv)
    return out, tuple(pivots), r


def prune_rows(m):
    """Drop zero rows and exact duplicates (row space is unchanged)."""
    m = np.asarray(m, dtype=object)
    if m.ndim != 2 or m.shape[0] == 0:
        return m
    seen = set()
    keep = []
    for i in range(m.shape[0]):
        key = tuple(m[i])
        if key in seen or all(x == 0 for x in key):
            continue
        seen.add(key)
        keep.append(i)
    if len(keep) == m.shape[0]:
        return m
    if not keep:
        return zeros(0, m.shape[1])
    return m[keep]


def rank(m, method="gauss") -> int:
    m = prune_rows(canonical(m))
    if m.size == 0:
        return 0
    if method == "gauss":
        return rref(m)[2]
    if method == "bareiss":
        return bareiss(m)[2]
    if method == "both":
        r1 = rref(m)[2]
        r2 = bareiss(m)[2]
        if r1 != r2:
            raise EliminationMismatch("Gauss rank %d != Bareiss rank %d" % (r1, r2))
        return r1
    raise ValueError("unknown elimination method %r" % method)


# ---------------------------------------------------------------------------
# subspaces

def _basis_from_rows(rows_array, ambient):
    if rows_array.size == 0:
        return zeros(0, ambient)
    R, _, r = rref(rows_array)
    return R[:r]


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of Q^ambient, stored by its unique RREF basis."""

    ambient: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=object)
        if b.size == 0:
            b = zeros(0, self.ambient)
        else:
            b = b.reshape(-1, self.ambient)
        object.__setattr__(self, "basis", readonly(b))

    @classmethod
    def span(cls, vectors, ambient=None):
        vs = np.asarray(vectors, dtype=object)
        if ambient is None:
            if vs.ndim != 2:
                raise ShapeError("ambient dimension needed for an empty span")
            ambient = vs.shape[1]
        if vs.size == 0:
            return cls(ambient, zeros(0, ambient))
        vs = canonical(vs).reshape(-1, ambient)
        return cls(ambient, _basis_from_rows(vs, ambient))

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, zeros(0, ambient))

    @classmethod
    def full(cls, ambient):
        return cls(ambient, identity(ambient))

    @classmethod
    def kernel(cls, m, ambient=None):
        """Solutions x of m @ x = 0."""
        m = prune_rows(canonical(m))
        if m.ndim != 2 or m.shape[0] == 0:
            n = m.shape[1] if m.ndim == 2 else ambient
            return cls.full(n)
        R, pivots, r = rref(m)
        n = m.shape[1]
        free = [j for j in range(n) if j not in pivots]
        vecs = []
        for f in free:
            v = zeros(n)
            v[f] = ONE
            for i, pc in enumerate(pivots):
                v[pc] = -R[i, f]
            vecs.append(v)
        if not vecs:
            return cls.zero(n)
        return cls.span(np.array(vecs, dtype=object).reshape(len(vecs), n), n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def _check(self, other):
        if self.ambient != other.ambient:
            raise ShapeError("ambient mismatch: %d vs %d" % (self.ambient, other.ambient))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.ambient, tuple(self.basis.reshape(-1))))

    def __repr__(self):
        rows = ["[" + " ".join(fstr(x) for x in row) + "]" for row in self.basis]
        return "Subspace(%d, dim=%d, %s)" % (self.ambient, self.dim, ", ".join(rows))

    def __add__(self, other):
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient)

    def annihilator(self):
        """Row vectors r with r . x = 0 for all x in self."""
        if self.dim == 0:
            return Subspace.full(self.ambient)
        return Subspace.kernel(self.basis)

    def intersect(self, other):
        self._check(other)
        a, b = self.annihilator(), other.annihilator()
        cons = np.vstack([a.basis, b.basis])
        if cons.shape[0] == 0:
            return Subspace.full(self.ambient)
        return Subspace.kernel(cons)

    __and__ = intersect

    def contains(self, x) -> bool:
        if isinstance(x, Subspace):
            self._check(x)
            return all(self.contains(v) for v in x.basis)
        v = canonical(x).reshape(-1)
        if v.shape[0] != self.ambient:
            raise ShapeError("vector of length %d in ambient %d" % (v.shape[0], self.ambient))
        if is_zero(v):
            return True
        if self.dim == 0:
            return False
        return rank(np.vstack([self.basis, v[None, :]])) == self.dim

    __contains__ = contains

    def coordinates(self, x):
        """Coefficients c with c @ basis == x, or None if x is not in self."""
        v = canonical(x).reshape(-1)
        sol = solve(self.basis.T, v)
        if sol.particular is None:
            return None
        return sol.particular

    def image(self, m):
        """Image of the subspace under the row-convention map x -> x @ m."""
        m = canonical(m)
        if self.dim == 0:
            return Subspace.zero(m.shape[1])
        return Subspace.span(self.basis.dot(m), m.shape[1])


# ---------------------------------------------------------------------------
# linear systems

@dataclass(frozen=True)
class Solution:
    particular: np.ndarray | None
    kernel: Subspace
    rank_a: int
    rank_ab: int

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def solve(a, b):
    """Solve ``a @ x = b`` exactly.

    ``b`` may be a vector or a matrix with one column per right-hand side.
    The particular solution sets every free variable to zero, which makes it
    the canonical representative of the affine solution set.  When the
    system is inconsistent ``particular`` is None and ``rank_a < rank_ab``
    certifies it.
    """
    a = canonical(a)
    b = canonical(b)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise ShapeError("solve: a has shape %r, b has shape %r" % (a.shape, b.shape))
    m, n = a.shape
    aug = np.hstack([a, b]) if m else zeros(0, n + b.shape[1])
    R, pivots, r_ab = rref(aug) if m else (aug, (), 0)
    a_piv = [p for p in pivots if p < n]
    r_a = len(a_piv)
    kern = Subspace.kernel(a) if m else Subspace.full(n)
    if r_a < r_ab:
        return Solution(None, kern, r_a, r_ab)
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(a_piv):
        x[pc] = R[i, n:]
    if vec:
        x = x.reshape(-1)
    return Solution(canonical(x), kern, r_a, r_ab)


# ---------------------------------------------------------------------------
# multilinear helpers

def wedge_basis(n: int, k: int):
    """Strictly increasing k-tuples from range(n), in lexicographic order."""
    return list(combinations(range(n), k))


def perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def contract(t, slot: int, v):
    """Contract tensor slot ``slot`` with vector ``v`` (arity drops by one)."""
    t = np.asarray(t, dtype=object)
    if not 0 <= slot < t.ndim:
        raise ShapeError("slot %d out of range for arity %d" % (slot, t.ndim))
    v = canonical(v).reshape(-1)
    if t.shape[slot] != v.shape[0]:
        raise ShapeError("slot %d has size %d, vector has %d" % (slot, t.shape[slot], v.shape[0]))
    return canonical(np.tensordot(t, v, axes=([slot], [0])))


def antisymmetrize(t, slots=None):
    """Average of signed permutations over the given slots.

    Idempotent; symmetric inputs go to zero.
    """
    t = canonical(t)
    if slots is None:
        slots = list(range(t.ndim - 1))
    slots = list(slots)
    k = len(slots)
    if k < 2:
        return t
    out = zeros(t.shape)
    count = 0
    for p in permutations(range(k)):
        axes = list(range(t.ndim))
        for i, s in enumerate(slots):
            axes[s] = slots[p[i]]
        out = out + perm_sign(p) * np.transpose(t, axes)
        count += 1
    return canonical(out / count)


def is_alternating(t, slots=None) -> bool:
    t = canonical(t)
    if slots is None:
        slots = list(range(t.ndim - 1))
    for i in range(len(slots) - 1):
        axes = list(range(t.ndim))
        axes[slots[i]], axes[slots[i + 1]] = axes[slots[i + 1]], axes[slots[i]]
        if not equal(t, -np.transpose(t, axes)):
            return False
    return True


def alternating_to_wedge(t, dim: int, k: int):
    """Dense alternating (dim,)*k + (m,) tensor -> flat wedge coordinates."""
    t = np.asarray(t, dtype=object)
    m = t.shape[-1]
    out = []
    for I in wedge_basis(dim, k):
        for w in range(m):
            out.append(t[I + (w,)])
    return canonical(np.array(out, dtype=object).reshape(-1))


def wedge_to_alternating(x, dim: int, k: int, m: int):
    """Inverse of :func:`alternating_to_wedge`."""
    x = canonical(x).reshape(-1)
    t = zeros((dim,) * k + (m,))
    perms = [(p, perm_sign(p)) for p in permutations(range(k))]
    for idx, I in enumerate(wedge_basis(dim, k)):
        for w in range(m):
            v = x[idx * m + w]
            if v == 0:
                continue
            for p, s in perms:
                t[tuple(I[p[i]] for i in range(k)) + (w,)] = v if s > 0 else -v
    return t


def enumerate_indices(shape):
    """All index tuples of a tensor shape in C order."""
    return [tuple(int(i) for i in idx) for idx in np.ndindex(*shape)]


# ---------------------------------------------------------------------------
# sparse exact contraction

def nonzeros(t):
    """Dict index-tuple -> value of the nonzero entries."""
    t = np.asarray(t, dtype=object)
    if t.ndim == 0:
        return {(): t[()]} if t[()] != 0 else {}
    mask = np.asarray(t != 0, dtype=bool)
    idx = np.argwhere(mask)
    vals = t[mask]
    return {tuple(int(i) for i in row): v for row, v in zip(idx, vals)}


def _join(a, la, b, lb, keep):
    """Multiply two sparse operands, summing labels not in ``keep``."""
    shared = [x for x in dict.fromkeys(la) if x in lb]
    b_pos = {x: lb.index(x) for x in shared}
    a_pos = {x: la.index(x) for x in shared}
    out_labels = [x for x in dict.fromkeys(la + lb) if x in keep]
    grouped = {}
    for idx, v in b.items():
        grouped.setdefault(tuple(idx[b_pos[x]] for x in shared), []).append((idx, v))
    src = []
    for x in out_labels:
        src.append((0, la.index(x)) if x in la else (1, lb.index(x)))
    out = {}
    for ia, va in a.items():
        for ib, vb in grouped.get(tuple(ia[a_pos[x]] for x in shared), ()):
            key = tuple(ia[p] if w == 0 else ib[p] for w, p in src)
            out[key] = out.get(key, 0) + va * vb
    return out, out_labels


def _diag(t, labels):
    """Restrict an operand with repeated labels to its diagonal."""
    if len(set(labels)) == len(labels):
        return t, list(labels)
    first = {}
    for i, x in enumerate(labels):
        first.setdefault(x, i)
    uniq = list(dict.fromkeys(labels))
    out = {}
    for idx, v in t.items():
        if all(idx[i] == idx[first[x]] for i, x in enumerate(labels)):
            out[tuple(idx[first[x]] for x in uniq)] = v
    return out, uniq


def einsum(subscripts: str, *operands):
    """Exact ``numpy.einsum`` replacement that only touches nonzero entries.

    Explicit output labels are required.  Operands are contracted left to
    right; a label is summed as soon as no later operand or the output needs it.
    """
    lhs, out = subscripts.replace(" ", "").split("->")
    in_labels = lhs.split(",")
    if len(in_labels) != len(operands):
        raise ShapeError("einsum subscripts expects %d operands" % len(in_labels))
    sizes = {}
    sparse = []
    for labels, op in zip(in_labels, operands):
        op = np.asarray(op, dtype=object)
        if op.ndim != len(labels):
            raise ShapeError("operand rank %d does not match labels %r" % (op.ndim, labels))
        for x, s in zip(labels, op.shape):
            if sizes.setdefault(x, s) != s:
                raise ShapeError("label %r has inconsistent sizes" % x)
        sparse.append(_diag(nonzeros(op), list(labels)))
    acc, acc_labels = sparse[0]
    for i in range(1, len(sparse)):
        later = set(out)
        for _, lab in sparse[i + 1:]:
            later |= set(lab)
        b, lb = sparse[i]
        acc, acc_labels = _join(acc, acc_labels, b, lb, later)
    if len(sparse) == 1:
        acc, acc_labels = _join(acc, acc_labels, {(): 1}, [], set(out))
    result = zeros(tuple(sizes[x] for x in out)) if out else zeros(())
    perm = [acc_labels.index(x) for x in out]
    for idx, v in acc.items():
        key = tuple(idx[p] for p in perm)
        result[key] = frac(result[key] + v) if out else frac(result[()] + v)
    return result


_LABELS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def tensordot(a, b, axes):
    """Sparse exact ``numpy.tensordot`` with explicit axis lists."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    ax_a, ax_b = axes
    if isinstance(ax_a, int):
        ax_a, ax_b = [ax_a], [ax_b]
    la = list(_LABELS[:a.ndim])
    lb = list(_LABELS[a.ndim:a.ndim + b.ndim])
    for i, j in zip(ax_a, ax_b):
        lb[j] = la[i]
    out = [x for i, x in enumerate(la) if i not in ax_a] + [x for j, x in enumerate(lb) if j not in ax_b]
    return einsum("%s,%s->%s" % ("".join(la), "".join(lb), "".join(out)), a, b)
