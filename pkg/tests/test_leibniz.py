import pytest

from courant_kit import exactlin as el
from courant_kit import leibniz as lb
from courant_kit import oracles
from courant_kit import pointfiber as pf
from courant_kit import sampling as sm

# HL^2(gl(2); jet coefficients) from the plain-Python oracle, pinned.
HL2_GL2_JET = 0


def test_oracle_pins_hl2_before_main_build():
    br, left, right = oracles.gl_data(2)
    oracle = oracles.leibniz_cohomology_dim(br, left, right, 2)
    assert oracle == HL2_GL2_JET
    assert lb.cohomology_dim(pf.gl_algebra(2), pf.jet_module(2), 2, "both") == oracle


def test_low_degrees_match_oracle():
    br, left, right = oracles.gl_data(2)
    for k in (0, 1):
        assert (lb.cohomology_dim(pf.gl_algebra(2), pf.jet_module(2), k, "both")
                == oracles.leibniz_cohomology_dim(br, left, right, k))


def test_e_coefficients_vanish():
    g, em = pf.gl_algebra(2), pf.e_module(2)
    assert [lb.cohomology_dim(g, em, k, "both") for k in range(3)] == [0, 0, 0]


def test_abelian_trivial():
    # every differential is zero, so HL^k is the whole cochain space
    alg = lb.LeibnizAlgebra(2, el.zeros(2, 2, 2))
    rep = lb.trivial_rep(2, 3)
    assert lb.cohomology_dim(alg, rep, 0) == 3
    assert lb.cohomology_dim(alg, rep, 1) == 2 * 3
    assert lb.cohomology_dim(alg, rep, 2) == 4 * 3


def test_matrix_path_matches_tensor_path_and_oracle():
    r = sm.rng(11)
    g, jm = pf.gl_algebra(2), pf.jet_module(2)
    br, left, right = oracles.gl_data(2)
    for k in range(3):
        M = lb.coboundary_matrix(g, jm, k)
        rows = oracles.leibniz_coboundary_rows(br, left, right, k)
        assert el.equal(M, el.array(rows).reshape(M.shape))
        c = sm.cochain(r, 4, k, 2)
        assert el.equal(lb.vec(lb.coboundary(g, jm, c)), M.dot(lb.vec(c)))


@pytest.mark.parametrize("module", ["E", "JE", "adjoint"])
def test_d_squared_zero(module):
    r = sm.rng(5)
    g = pf.gl_algebra(2)
    rep = {"E": pf.e_module(2), "JE": pf.jet_module(2), "adjoint": lb.adjoint_rep(g)}[module]
    for k in range(3):
        c = sm.cochain(r, g.dim, k, rep.module_dim)
        assert el.is_zero(lb.coboundary(g, rep, lb.coboundary(g, rep, c)))


def test_non_skew_leibniz_algebra():
    c = el.zeros(2, 2, 2)
    c[1, 1, 0] = 1                                   # [e2, e2] = e1
    alg = lb.LeibnizAlgebra(2, c)
    assert lb.check_leibniz(alg).ok and not alg.is_skew()
    rep = lb.adjoint_rep(alg)
    assert lb.check_rep(alg, rep).ok
    for k in range(3):
        x = sm.cochain(sm.rng(k), 2, k, 2)
        assert el.is_zero(lb.coboundary(alg, rep, lb.coboundary(alg, rep, x)))


def test_leibniz_failure_reported():
    mu = pf.non_jacobi()
    rep = lb.check_leibniz(lb.LeibnizAlgebra(3, mu))
    assert not rep.ok and rep.first[0] == "leibniz"


def test_modules_are_representations():
    g = pf.gl_algebra(2)
    assert lb.check_rep(g, pf.e_module(2)).ok
    assert lb.check_rep(g, pf.jet_module(2)).ok
    a = pf.gl_action(2)
    wrong = lb.LeibnizRep(2, a, el.canonical(a.transpose(1, 0, 2)))
    rep = lb.check_rep(g, wrong)
    assert not rep.ok and rep.first == ("right_left", (0, 0))


def test_jet_right_action_vanishes():
    assert el.is_zero(pf.jet_module(3).right)


def test_caps():
    g = pf.gl_algebra(2)
    with pytest.raises(lb.DimensionCapExceeded):
        lb.coboundary_matrix(g, pf.e_module(2), 4)
    with pytest.raises(lb.DimensionCapExceeded):
        lb.coboundary_matrix(g, pf.e_module(2), 1, max_dim=3)


def test_hat_requires_jet_module():
    g = lb.LeibnizAlgebra(3, pf.so3())
    with pytest.raises(lb.WrongModule):
        lb.hat(g, el.zeros(3, 3, 3))


def test_hat_image_subspace_equality():
    from courant_kit.twist import hat_image
    lhs, rhs, rank = hat_image(2)
    assert lhs == rhs
    assert rank == 4 * 4 * 2                         # hat is injective
