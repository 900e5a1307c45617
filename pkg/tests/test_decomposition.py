from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from expdistort.decomposition import (DecompositionContext, SemidirectData, bch, bch_fold,
                                      bernoulli, tri_compose, tri_decompose)
from expdistort.exceptions import InvalidLeviComplement
from expdistort.linalg import Subspace, mat_equal
from expdistort.matrix_group import exp_nilpotent, log_unipotent, relative_distance, sample_elements
from expdistort.scalars import GaussianRational as G

coef = st.integers(-20, 20)


def _ctx(m, name="N", **kw):
    return DecompositionContext(m.algebra, m.rep, m.subgroup(name), m.semidirect, m.levi, **kw)


def test_bernoulli_numbers():
    assert [bernoulli(k) for k in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0,
                                                 Fraction(-1, 30), 0, Fraction(1, 42)]


def test_bch_heisenberg_value(models):
    alg = models("heisenberg3").algebra
    assert bch(alg, (G(2), G(0), G(0)), (G(0), G(3), G(0))) == (G(2), G(3), G(3))


@pytest.mark.parametrize("name", ["heisenberg3", "filiform4", "filiform6"])
@given(data=st.data())
def test_bch_matches_matrix_oracle(models, name, data):
    m = models(name)
    n = m.algebra.dim
    x = tuple(G(c) for c in data.draw(st.lists(coef, min_size=n, max_size=n)))
    y = tuple(G(c) for c in data.draw(st.lists(coef, min_size=n, max_size=n)))
    rep = m.rep
    prod = exp_nilpotent(rep.rho(x)).dot(exp_nilpotent(rep.rho(y)))
    assert rep.preimage(log_unipotent(prod)) == bch(m.algebra, x, y)


@given(data=st.data())
def test_bch_associative(models, data):
    alg = models("filiform5").algebra
    x, y, z = (tuple(G(c) for c in data.draw(st.lists(coef, min_size=5, max_size=5)))
               for _ in range(3))
    assert bch(alg, bch(alg, x, y), z) == bch(alg, x, bch(alg, y, z))
    assert bch_fold(alg, [x, y, z]) == bch(alg, x, bch(alg, y, z))


def test_heisenberg_decomposition_oracle(models):
    m = models("heisenberg3")
    ctx = _ctx(m)
    g = m.rep.element([((1, 0, 0), G(3)), ((0, 1, 0), G(5)), ((0, 0, 1), G(7))])
    assert g.matrix[0, 2] == 22
    t = tri_decompose(g, ctx)
    assert t.exact
    assert tuple(t.eta) == (G(0), G(0), G(29) / 2)
    assert tuple(t.xi) == (G(3), G(5), G(0))


@pytest.mark.parametrize("name,sub", [("heisenberg3", "N"), ("filiform5", "H2"),
                                      ("filiform5", "H3"), ("filiform5", "H4"),
                                      ("filiform5", "E"), ("filiform7", "N")])
def test_round_trip_exact_on_unipotent(models, name, sub):
    m = models(name)
    ctx = _ctx(m, sub)
    for g in sample_elements(m.rep, 4, 80, 1e5):
        t = tri_decompose(g, ctx)
        assert t.exact and tuple(t.eta) in ctx.nprime
        h = tri_compose(t, ctx)
        assert mat_equal(h.matrix, g.matrix)


@pytest.mark.parametrize("name,sub", [("affine2", "N"), ("sixdim", "N"), ("sixdim", "E"),
                                      ("sl2", "N"), ("cplx", "N")])
def test_round_trip_numeric(models, name, sub):
    m = models(name)
    ctx = _ctx(m, sub)
    for g in sample_elements(m.rep, 4, 80, 1e3):
        assert relative_distance(g, tri_compose(tri_decompose(g, ctx), ctx)) <= 1e-9


def test_decomposition_json(models):
    m = models("heisenberg3")
    t = tri_decompose(m.rep.letter((1, 1, 0), G(2)), _ctx(m))
    js = t.to_json()
    assert set(js) >= {"eta", "xi", "l", "exact"}


def test_semidirect_requires_bracket_in_nprime(models):
    m = models("affine2")
    alg = m.algebra
    sd = SemidirectData(Subspace(2, [(0, 1)]), Subspace(2, [(1, 0)]))
    assert sd.validate(alg, m.subgroup("N"))
    with pytest.raises(InvalidLeviComplement):
        SemidirectData(Subspace(2, [(0, 1)]), Subspace(2, [(0, 1)])).validate(alg)


def test_complement_dimensions(models):
    m = models("sixdim")
    ctx = _ctx(m, "E")
    assert ctx.v.dim == ctx.quotient.dim
    assert (ctx.nprime & ctx.v).dim == 0
