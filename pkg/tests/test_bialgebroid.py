import numpy as np
import pytest

from courant_kit import bialgebroid as bg
from courant_kit import ecourant as ec
from courant_kit import exactlin as el
from courant_kit import oracles
from courant_kit import pointfiber as pf
from courant_kit import sampling as sm
from courant_kit.dirac import NotDirac, graph_of_bracket, is_dirac
from courant_kit.leibniz import LeibnizAlgebra


def broken_cond1(n=2):
    """Canonical pair with a Lie bracket on V but zero anchor on it."""
    c = bg.canonical_pair(n)
    return bg.EDualPair(c.A, LeibnizAlgebra(n, pf.two_dim_nonabelian()), n,
                        c.pairing, c.rho_a, el.zeros(n, n, n))


def broken_cond3():
    c = bg.canonical_pair(2)
    rb = el.zeros(2, 2, 2)
    rb[0] = el.identity(2)
    return bg.EDualPair(c.A, LeibnizAlgebra(2, el.zeros(2, 2, 2)), 2, c.pairing, c.rho_a, rb)


def so3_on_space():
    """A = so(3) acting on Q^3, B = abelian Q^3, <X, xi> = X xi."""
    act = pf.so3()                                  # ad of so(3) is its action on Q^3
    return bg.EDualPair(LeibnizAlgebra(3, pf.so3()), LeibnizAlgebra(3, el.zeros(3, 3, 3)), 3,
                        act, act, el.zeros(3, 3, 3))


# --- pairs and coboundaries ---------------------------------------------

def test_canonical_pair_valid():
    assert bg.validate(bg.canonical_pair(2)).ok


def test_dA_of_u_is_u():
    p = bg.canonical_pair(2)
    u = el.array([2, -1])
    assert el.equal(p.to_B(bg.dA(p, u)), u)
    assert el.is_zero(bg.dB(p, u))
    assert el.is_zero(bg.dB(p, p.as_hom_a(el.identity(4)[1])))


def test_constrained_hom_examples():
    p = bg.canonical_pair(2)
    assert bg.constrained_hom(p, "A", 2).dim == 0
    full = len(el.wedge_basis(2, 2)) * 2
    assert bg.constrained_hom(p, "B", 2) == el.Subspace.full(full)
    q = so3_on_space()
    assert bg.validate(q).ok
    d = bg.constrained_hom(q, "A", 2).dim
    assert 0 < d < 3 * 3


def test_lie_derivative_flavors():
    p = bg.pi_from_lie(pf.so3())
    I = el.identity(9)
    X, Y = I[1], I[3] + I[5]
    assert el.equal(bg.lie_derivative(p, X, Y, "A"), p.A.br(X, Y))
    # the second flavor on A inside Hom(B, E) is the bracket
    assert el.equal(bg.lie_derivative(p, X, p.as_hom_a(Y), "formB"), p.as_hom_a(p.A.br(X, Y)))
    # the first flavor on B inside Hom(A, E) agrees with lie_on_B
    xi = el.array([1, 2, 0])
    assert el.equal(bg.lie_derivative(p, X, p.as_hom_b(xi), "formA"),
                    p.as_hom_b(bg.lie_derivative(p, X, xi, "B")))
    with pytest.raises(ValueError):
        bg.lie_derivative(p, X, Y, "nope")


def test_cartan_identity():
    p = bg.pi_from_lie(pf.so3())
    r = sm.rng(30)
    for _ in range(3):
        mu = el.wedge_to_alternating(sm.tensor(r, 36 * 3), 9, 2, 3)
        X, Y = sm.tensor(r, 9), sm.tensor(r, 9)
        lhs = bg.contract_first(Y, bg.lie_form(p, X, mu)) - bg.lie_form(p, X, bg.contract_first(Y, mu))
        assert el.equal(lhs, bg.contract_first(p.A.br(Y, X), mu))


def test_central_trivial_element_has_zero_derivative():
    q = so3_on_space()
    mu = sm.tensor(sm.rng(31), 3, 3)
    assert el.is_zero(bg.lie_form(q, el.zeros(3), mu))


# --- the bialgebroid conditions -------------------------------------------

def test_canonical_is_bialgebroid():
    for n in (1, 2, 3):
        assert bg.check_bialgebroid(bg.canonical_pair(n)).ok


def test_pi_sl2_is_bialgebroid():
    p = bg.pi_from_lie(pf.sl2())
    assert bg.check_bialgebroid(p).ok
    assert el.equal(p.B.bracket, pf.sl2())


def test_cond3_violation():
    r = bg.check_bialgebroid(broken_cond3())
    assert not r["cond3"].passed and r["cond3"].witness == (0,)
    assert r["invarianceA"].passed and r["invarianceB"].passed


def test_cond1_violation():
    r = bg.check_bialgebroid(broken_cond1())
    assert not r.ok and r["cond1"].witness == (0, 1)


# --- doubles and Manin triples ----------------------------------------------

def test_double_canonical_is_omni():
    for n in (1, 2, 3):
        assert bg.double(bg.canonical_pair(n)) == ec.omni(n)


def test_double_of_pi_pair():
    mu = pf.so3()
    p = bg.pi_from_lie(mu)
    d = bg.double(p)
    assert ec.verify_axioms(d).ok
    assert is_dirac(d, graph_of_bracket(mu)).dirac


def test_double_with_broken_cond1():
    with pytest.raises(bg.NotBialgebroid):
        bg.double(broken_cond1())
    rep = ec.verify_axioms(bg.double(broken_cond1(), require=False))
    assert not rep["leibniz"].passed


@pytest.mark.parametrize("make", [lambda: bg.canonical_pair(2),
                                  lambda: bg.pi_from_lie(pf.two_dim_nonabelian())])
def test_double_jacobi_on_bialgebroids(make):
    assert el.is_zero(bg.double_jacobi_residual(make()))


def test_double_jacobi_needs_the_conditions():
    # the displayed decomposition is not an identity for arbitrary pairs
    assert not el.is_zero(bg.double_jacobi_residual(broken_cond1()))


@pytest.mark.parametrize("make", [lambda: bg.canonical_pair(2), lambda: bg.pi_from_lie(pf.so3()),
                                  lambda: bg.pi_from_lie(pf.heisenberg())])
def test_anchor_compat(make):
    assert el.is_zero(bg.anchor_compat_residual(make()))


def test_manin_round_trips():
    for p in (bg.canonical_pair(2), bg.pi_from_lie(pf.so3())):
        d = bg.double(p)
        A, B = bg.split_subspaces(p)
        I = el.identity(d.k_dim)
        q = bg.manin_decompose(d, A, B, I[:p.a], I[p.a:])
        assert q == p


def test_manin_omni_gives_canonical():
    for n in (1, 2, 3):
        A, V = ec.omni_split(n)
        p = bg.manin_decompose(ec.omni(n), A, V)
        assert p == bg.canonical_pair(n)
        assert bg.check_bialgebroid(p).ok


def test_manin_graph_and_gl_are_transverse():
    s = ec.omni(3)
    A, _ = ec.omni_split(3)
    p = bg.manin_decompose(s, graph_of_bracket(pf.so3()), A)
    assert bg.check_bialgebroid(p).ok


def test_manin_errors():
    s = ec.omni(3)
    A, V = ec.omni_split(3)
    with pytest.raises(bg.NotTransverse):
        bg.manin_decompose(s, graph_of_bracket(pf.heisenberg()), V)       # meets V in the centre
    with pytest.raises(bg.NotTransverse):
        bg.manin_decompose(s, graph_of_bracket(pf.so3()), V)              # dimensions too small
    with pytest.raises(NotDirac):
        bg.manin_decompose(s, graph_of_bracket(pf.non_jacobi()), A)


# --- induced bracket and pi pairs -------------------------------------------

def test_induced_bracket():
    assert el.is_zero(bg.induced_E_bracket(bg.canonical_pair(2)).bracket)
    for name in ("so3", "heisenberg", "sl2"):
        mu = sm.CORPUS3[name]()
        eb = bg.induced_E_bracket(bg.pi_from_lie(mu))
        assert eb.ok and el.equal(eb.bracket, mu)
        assert oracles.is_jacobi(eb.bracket.tolist())
    with pytest.raises(bg.NotBialgebroid):
        bg.induced_E_bracket(broken_cond3())


def test_pi_from_zero_is_canonical():
    assert bg.pi_from_lie(pf.abelian(2)) == bg.canonical_pair(2)


def test_pi_rejects_non_lie():
    with pytest.raises(bg.NotLie) as e:
        bg.pi_from_lie(pf.non_jacobi())
    assert e.value.witness == oracles.first_jacobi_failure(pf.non_jacobi().tolist())
    with pytest.raises(bg.NotLie):
        bg.pi_from_lie(el.array([[[1]]]))


# --- Schouten calculus ------------------------------------------------------

def test_schouten_basics():
    p = bg.canonical_pair(3)
    r = sm.rng(40)
    H, K = sm.skew_bracket(r, 3), sm.skew_bracket(r, 3)
    assert el.is_zero(bg.schouten(p, H, el.zeros(3, 3, 3)))
    assert el.equal(bg.schouten(p, H, K), bg.schouten(p, K, H))


def test_schouten_of_bracket_is_twice_jacobiator():
    p = bg.canonical_pair(3)
    for name in sorted(sm.CORPUS3):
        mu = sm.CORPUS3[name]()
        HH = bg.schouten(p, mu, mu)
        J = oracles.jacobiator(mu.tolist())
        want = el.array([[[J[(i, j, k)] for k in range(3)] for j in range(3)] for i in range(3)])
        assert el.equal(HH, 2 * want)
        assert el.is_zero(HH) == oracles.is_jacobi(mu.tolist())


def test_sharp_bracket_identity():
    r = sm.rng(41)
    for p in (bg.canonical_pair(3), bg.pi_from_lie(pf.so3())):
        for i in range(3):
            assert el.is_zero(bg.sharp_bracket_residual(p, sm.mixed_bracket(r, 3, i)))


def test_schouten_degree_mixed():
    p = bg.canonical_pair(2)
    H = sm.skew_bracket(sm.rng(42), 2)
    u = el.array([1, 0])
    assert el.equal(bg.schouten_e(p, u, H), -H[0])
    X = el.identity(4)[0]
    assert el.equal(bg.schouten_x(p, X, H), bg.lie_form_dual(p, X, H))


def test_not_constrained():
    q = bg.canonical_pair(2).swap()                 # Hom(wedge^2 gl, V)_V = 0
    H = el.zeros(4, 4, 2)
    H[0, 1, 0], H[1, 0, 0] = 1, -1
    with pytest.raises(bg.NotConstrained):
        bg.schouten(q, H, H)
    with pytest.raises(bg.NotConstrained):
        bg.maurer_cartan(bg.canonical_pair(2), el.array([[[1, 0], [0, 0]], [[0, 0], [0, 0]]]))


def test_lambda_bracket_and_prop_B():
    p = bg.canonical_pair(3)
    zero = bg.check_prop_B(p, el.zeros(3, 3, 3))
    assert zero.ok and el.is_zero(zero.bracket)
    mu = pf.so3()
    rep = bg.check_prop_B(p, mu)
    assert rep.ok and el.equal(rep.bracket, bg.pi_from_lie(mu).B.bracket)
    bad = bg.check_prop_B(p, pf.non_jacobi())
    assert not bad.cond1 and bad.witness1 == (0, 1)


# --- Maurer-Cartan ------------------------------------------------------------

def test_mc_zero():
    p = bg.canonical_pair(2)
    H = el.zeros(2, 2, 2)
    assert bg.maurer_cartan(p, H).holds
    _, B = bg.split_subspaces(p)
    assert bg.graph(p, H) == B
    assert is_dirac(bg.double(p), B).dirac


def test_mc_non_jacobi_witness_matches_closure():
    p = bg.canonical_pair(3)
    H = pf.non_jacobi()
    mc = bg.maurer_cartan(p, H)
    rep = is_dirac(bg.double(p), bg.graph(p, H), bg.graph_generators(p, H))
    assert not mc.holds and not rep.dirac
    assert mc.witness[:2] == rep.closure_witness


def test_mc_agrees_with_dirac_on_random_H():
    r = sm.rng(43)
    for n in (2, 3):
        p = bg.canonical_pair(n)
        d = bg.double(p)
        for i in range(10):
            H = sm.mixed_bracket(r, n, i)
            mc = bg.maurer_cartan(p, H)
            rep = is_dirac(d, bg.graph(p, H), bg.graph_generators(p, H))
            assert mc.holds == rep.dirac
            assert (None if mc.witness is None else mc.witness[:2]) == rep.closure_witness


def test_mc_on_pi_pair():
    p = bg.pi_from_lie(pf.two_dim_nonabelian())
    d = bg.double(p)
    r = sm.rng(44)
    for _ in range(5):
        H = sm.skew_bracket(r, 2)
        assert bg.maurer_cartan(p, H).holds == is_dirac(d, bg.graph(p, H)).dirac
