from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from courant_kit import exactlin as el
from courant_kit import oracles

small = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_frac_parsing():
    assert el.frac("3/6") == F(1, 2)
    assert el.frac(" -4 ") == F(-4)
    assert el.frac(7) == F(7)
    with pytest.raises(ZeroDivisionError):
        el.frac("1/0")
    with pytest.raises(ValueError):
        el.frac("x")
    assert el.fstr(F(4, 2)) == "2"
    assert el.fstr(F(-1, 3)) == "-1/3"


def test_rref_known():
    R, piv, r = el.rref(el.array([[2, 4, 6], [1, 2, 4], [0, 0, 0]]))
    assert r == 2 and piv == (0, 2)
    assert el.equal(R, el.array([[1, 2, 0], [0, 0, 1], [0, 0, 0]]))


def test_rank_hilbert_like():
    H = el.array([[F(1, i + j + 1) for j in range(4)] for i in range(4)])
    assert el.rank(H, "both") == 4
    assert el.rank(el.zeros(3, 3), "both") == 0


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_backends_and_oracle_agree(rows):
    m = el.array(rows)
    r = el.rank(m, "both")
    assert r == oracles.integer_rank([list(row) for row in rows])


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_kernel_is_annihilated(rows):
    m = el.array(rows)
    K = el.Subspace.kernel(m)
    assert K.dim == m.shape[1] - el.rank(m)
    for v in K.basis:
        assert el.is_zero(m.dot(v))


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_consistent_systems(rows, coeffs):
    a = el.array(rows)
    x0 = el.array(coeffs[: a.shape[1]] + [0] * max(0, a.shape[1] - len(coeffs)))
    b = a.dot(x0)
    sol = el.solve(a, b)
    assert sol.solvable and el.equal(a.dot(sol.particular), b)
    assert sol.rank_a == sol.rank_ab


def test_solve_inconsistent():
    sol = el.solve(el.array([[1, 1], [2, 2]]), el.array([1, 3]))
    assert sol.particular is None and sol.rank_a < sol.rank_ab


def test_free_variables_are_zero():
    sol = el.solve(el.array([[1, 1, 1]]), el.array([3]))
    assert el.equal(sol.particular, el.array([3, 0, 0]))


def test_subspace_canonical_equality():
    a = el.Subspace.span(el.array([[1, 2, 3], [0, 1, 1]]))
    b = el.Subspace.span(el.array([[1, 3, 4], [2, 5, 7]]))
    assert a == b and hash(a) == hash(b)
    assert el.array([1, 4, 5]) in a
    assert el.array([0, 0, 1]) not in a


def test_subspace_lattice():
    x = el.Subspace.span(el.array([[1, 0, 0], [0, 1, 0]]))
    y = el.Subspace.span(el.array([[0, 1, 0], [0, 0, 1]]))
    assert (x & y) == el.Subspace.span(el.array([[0, 1, 0]]))
    assert (x + y) == el.Subspace.full(3)
    assert x.annihilator() == el.Subspace.span(el.array([[0, 0, 1]]))
    assert el.Subspace.zero(3).annihilator() == el.Subspace.full(3)
    assert el.equal(x.coordinates(el.array([2, 3, 0])), el.array([2, 3]))
    assert x.coordinates(el.array([0, 0, 1])) is None


def test_empty_ambient():
    z = el.Subspace.zero(0)
    assert z.dim == 0 and z == el.Subspace.full(0)


def test_wedge_round_trip():
    rng = np.random.default_rng(0)
    x = el.array([int(v) for v in rng.integers(-3, 4, size=len(el.wedge_basis(4, 2)) * 2)])
    t = el.wedge_to_alternating(x, 4, 2, 2)
    assert el.is_alternating(t, (0, 1))
    assert el.equal(el.alternating_to_wedge(t, 4, 2), x)
    assert el.wedge_basis(3, 2) == [(0, 1), (0, 2), (1, 2)]
    assert el.perm_sign((1, 0, 2)) == -1 and el.perm_sign((1, 2, 0)) == 1


def test_sparse_einsum_matches_dense():
    rng = np.random.default_rng(1)
    a = el.array(rng.integers(-2, 3, size=(3, 4, 2)).tolist())
    b = el.array(rng.integers(-2, 3, size=(4, 2, 5)).tolist())
    dense = np.einsum("ijk,jkl->il", a, b)
    assert el.equal(el.einsum("ijk,jkl->il", a, b), dense)
    assert el.equal(el.tensordot(a, b, ([1, 2], [0, 1])), dense)
    c = el.array(rng.integers(-2, 3, size=(3, 2, 3)).tolist())
    assert el.equal(el.einsum("iji->j", c), np.einsum("iji->j", c))


def test_einsum_trace_and_outer():
    t = el.array([[1, 2], [3, 4]])
    assert el.einsum("ii->", t) == 5
    assert el.equal(el.einsum("i,j->ij", el.array([1, 2]), el.array([3, 5])),
                    el.array([[3, 5], [6, 10]]))


def test_bareiss_exact_division():
    R, piv, r = el.bareiss(el.array([[F(1, 2), F(1, 3)], [F(1, 4), F(1, 6)]]))
    assert r == 1
