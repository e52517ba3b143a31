import pytest

from courant_kit import ecourant as ec
from courant_kit import exactlin as el
from courant_kit import oracles
from courant_kit import pointfiber as pf
from courant_kit import sampling as sm
from courant_kit.dirac import (NotAGraph, NotDirac, NotSkew, bracket_from_graph, graph_basis,
                               graph_of_bracket, induced_lie, is_dirac, isotropic_counterexample, perp)


@pytest.mark.parametrize("name", ["abelian", "heisenberg", "so3", "sl2"])
def test_graphs_of_lie_brackets_are_dirac(name):
    mu = sm.CORPUS3[name]()
    s = ec.omni(3)
    L = graph_of_bracket(mu)
    assert is_dirac(s, L).dirac
    ind = induced_lie(s, L, graph_basis(mu))
    assert ind.ok
    assert el.equal(ind.algebra.bracket, mu)


def test_non_jacobi_graph_fails_closure():
    rep = is_dirac(ec.omni(3), graph_of_bracket(pf.non_jacobi()), graph_basis(pf.non_jacobi()))
    assert rep.isotropic and rep.self_perp and not rep.closed
    assert rep.closure_witness == (0, 1)
    with pytest.raises(NotDirac):
        induced_lie(ec.omni(3), graph_of_bracket(pf.non_jacobi()))


def test_random_brackets_agree_with_oracle():
    r = sm.rng(21)
    s = ec.omni(3)
    seen = set()
    for i in range(20):
        mu = sm.mixed_bracket(r, 3, i)
        want = oracles.is_jacobi(mu.tolist())
        seen.add(want)
        assert is_dirac(s, graph_of_bracket(mu)).dirac == want
    assert seen == {True, False}


def test_round_trip():
    s = ec.omni(3)
    for name in ("heisenberg", "so3", "non_jacobi"):
        mu = sm.CORPUS3[name]()
        assert el.equal(bracket_from_graph(s, graph_of_bracket(mu)), mu)


def test_not_a_graph():
    s = ec.omni(2)
    A, V = ec.omni_split(2)
    with pytest.raises(NotAGraph):
        bracket_from_graph(s, A)
    with pytest.raises(NotSkew):
        graph_basis(el.array([[[1, 0], [0, 0]], [[0, 0], [0, 0]]]))


def test_split_summands_are_dirac():
    for n in (2, 3):
        s = ec.omni(n)
        A, V = ec.omni_split(n)
        assert is_dirac(s, A).dirac and is_dirac(s, V).dirac
        assert induced_lie(s, A).ok


def test_isotropic_not_lagrangian():
    s = isotropic_counterexample()
    assert ec.verify_axioms(s).ok
    L = el.Subspace.span(el.array([[1, 0, 0]]))
    rep = is_dirac(s, L)
    assert rep.isotropic and not rep.self_perp and rep.perp_dim == 2
    assert perp(s, L) == el.Subspace.span(el.array([[1, 0, 0], [0, 1, 0]]))


def test_perp_of_zero_is_everything():
    s = ec.omni(1)
    assert perp(s, el.Subspace.zero(2)) == el.Subspace.full(2)
    with pytest.raises(el.ShapeError):
        perp(s, el.Subspace.zero(3))
