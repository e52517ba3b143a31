import numpy as np
import pytest

from courant_kit import ecourant as ec
from courant_kit import exactlin as el
from courant_kit import pointfiber as pf
from courant_kit import sampling as sm
from courant_kit import twist as tw
from courant_kit.leibniz import coboundary


def test_residual_agrees_with_leibniz_coboundary():
    r = sm.rng(12)
    g, jm = pf.gl_algebra(2), pf.jet_module(2)
    for _ in range(5):
        th = sm.tensor(r, 4, 4, 2)
        assert el.equal(tw.cocycle_residual(th), coboundary(g, jm, th))


def test_coboundaries_are_cocycles():
    r = sm.rng(13)
    for n in (1, 2):
        b = sm.bfield(r, n)
        assert tw.cocycle_check(tw.partial_b(b)).cocycle


def test_random_theta_is_not_a_cocycle():
    th = sm.tensor(sm.rng(14), 4, 4, 2)
    res = tw.cocycle_check(th)
    assert not res and res.witness is not None
    with pytest.raises(tw.NotACocycle):
        tw.trivialize(th)


def test_classification_round_trip():
    r = sm.rng(15)
    omni2 = ec.omni(2)
    for _ in range(5):
        b = sm.bfield(r, 2)
        p = tw.pair_from_b(b)
        assert tw.admissible_check(p).ok
        s = tw.build_exact(p)
        assert ec.verify_axioms(s).ok and tw.exactness_check(s)
        t = tw.trivialize(p.theta)
        assert t.exists and t.kernel.dim == 0
        assert el.equal(t.b, b)
        assert tw.apply_bfield(s, t.b) == omni2
        assert tw.apply_bfield(tw.apply_bfield(s, b), -b) == s


def test_zero_pair_is_omni():
    p = tw.AdmissiblePair(el.zeros(4, 4, 2), el.zeros(4, 4, 2))
    assert tw.build_exact(p) == ec.omni(2)


def test_omega_without_theta_fails():
    b = sm.bfield(sm.rng(16), 2)
    p = tw.AdmissiblePair(tw.omega_b(b), el.zeros(4, 4, 2))
    rep = tw.admissible_check(p)
    assert not rep.ok and rep.first_failure()[0] == "cond2"
    with pytest.raises(tw.NotAdmissible) as e:
        tw.build_exact(p)
    assert e.value.condition == "cond2"


def test_asymmetric_omega_rejected():
    om = el.zeros(4, 4, 2)
    om[0, 1, 0] = 1
    rep = tw.admissible_check(tw.AdmissiblePair(om, el.zeros(4, 4, 2)))
    assert not rep.symmetric and rep.first_failure() == ("symmetric", (0, 1))


def test_no_skew_bfields_at_a_point():
    for n in (1, 2, 3):
        assert tw.skew_bfield_space(n).dim == 0


def test_skew_b_gives_zero_omega():
    # the only skew b is zero, so test the symmetrisation on its own
    assert el.is_zero(tw.omega_b(el.zeros(4, 2)))
    assert tw.is_skew_bfield(el.zeros(4, 2))


def test_bfield_matrix_shape():
    F = tw.bfield_matrix(el.array([[1], ]))
    assert el.equal(F, el.array([[1, 1], [0, 1]]))
    with pytest.raises(el.ShapeError):
        tw.bfield_matrix(el.zeros(3, 2))


def test_cyclic_symmetry_generic_failure():
    ok, w = tw.cyclic_symmetry_check(sm.tensor(sm.rng(17), 4, 4, 2))
    assert not ok and w is not None
    assert tw.cyclic_symmetry_check(el.zeros(4, 4, 2)) == (True, None)


def test_twisted_omni_trivial_and_errors():
    assert tw.twisted_omni(el.zeros(4, 4, 4, 2)) == ec.omni(2)
    bad = el.zeros(4, 4, 4, 2)
    bad[0, 1, 2, 0] = 1
    with pytest.raises(tw.NotConstrained):
        tw.twisted_omni(bad)
    alt = el.antisymmetrize(bad, (0, 1, 2))
    with pytest.raises(tw.NotConstrained):
        tw.twisted_omni(alt)
