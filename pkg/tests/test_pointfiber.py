from fractions import Fraction as F

import numpy as np
import pytest

from courant_kit import exactlin as el
from courant_kit import oracles
from courant_kit import pointfiber as pf
from courant_kit import sampling as sm


def test_gl_bracket_is_commutator():
    n = 3
    r = sm.rng(2)
    for _ in range(5):
        x, y = sm.tensor(r, n * n), sm.tensor(r, n * n)
        X, Y = pf.to_matrix(x, n), pf.to_matrix(y, n)
        br = el.einsum("i,j,ijk->k", x, y, pf.gl_bracket(n))
        assert el.equal(pf.to_matrix(br, n), X.dot(Y) - Y.dot(X))


def test_gl_matches_oracle_data():
    br, left, right = oracles.gl_data(2)
    assert el.equal(pf.gl_bracket(2), el.array(br))
    assert el.equal(pf.jet_module(2).left, el.array(left))
    assert el.equal(pf.jet_module(2).right, el.array(right))


def test_action_convention():
    # E_01 e_1 = e_0
    assert pf.gl_action(2)[1, 1, 0] == 1
    assert el.equal(pf.act(el.array([0, 1, 0, 0]), el.array([0, 1]), 2), el.array([1, 0]))


def test_jet_space_is_image_of_V():
    for n in (1, 2, 3):
        J = pf.jet_space(n)
        assert J.dim == n
        assert J == el.Subspace.span(pf.jet_embedding(n), n * n * n)
        u = el.array(list(range(1, n + 1)))
        assert el.equal(pf.jet_projection(u.dot(pf.jet_embedding(n)), n), u)


def test_jet_lie_derivative_is_the_action():
    for n in (1, 2):
        assert el.equal(pf.jet_lie_derivative(n), pf.gl_action(n))


def test_adjoint_map_conjugates():
    r = sm.rng(4)
    phi = sm.invertible(r, 2)
    A = pf.adjoint_map(phi)
    P = pf.column_matrix(phi)
    x = sm.tensor(r, 4)
    assert el.equal(pf.to_matrix(x.dot(A), 2), P.dot(pf.to_matrix(x, 2)).dot(pf.invert(P)))


def test_invert_singular():
    with pytest.raises(np.linalg.LinAlgError):
        pf.invert(el.array([[1, 2], [2, 4]]))


@pytest.mark.parametrize("name,jacobi", [("abelian", True), ("heisenberg", True), ("so3", True),
                                         ("sl2", True), ("non_jacobi", False)])
def test_corpus_against_oracle(name, jacobi):
    mu = sm.CORPUS3[name]()
    assert oracles.is_jacobi(mu.tolist()) is jacobi


def test_non_jacobi_witness():
    mu = pf.non_jacobi()
    J = oracles.jacobiator(mu.tolist())
    assert J[(0, 1, 2)] == [F(-1), 0, 0]
    assert oracles.first_jacobi_failure(mu.tolist()) == (0, 1, 2)


def test_conjugation_preserves_jacobi():
    r = sm.rng(9)
    for name in sorted(sm.CORPUS3):
        mu = pf.conjugate_bracket(sm.CORPUS3[name](), sm.invertible(r, 3))
        assert oracles.is_jacobi(mu.tolist()) == (name != "non_jacobi")


def test_sl2_embedding():
    emb = pf.sl2_in_gl2()
    h, e, f = (pf.to_matrix(v, 2) for v in emb)
    assert el.equal(h.dot(e) - e.dot(h), 2 * e)
    assert el.equal(e.dot(f) - f.dot(e), h)
