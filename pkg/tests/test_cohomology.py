import random

import pytest
from hypothesis import given, strategies as st

from homlie import catalog
from homlie.algebra import HomAlgebra, check_hom_jacobi
from homlie.cohomology import (Cochain, CochainError, CohomologyRefused, circle, coboundary, coboundary_matrix,
                               cocycle_basis, cohomology_dim, cohomology_report, delta2_circle_form, is_equivariant)
from homlie.exactlin import QQ, Matrix
from homlie.filiform import model_ln, mu0_cochain, psi_cochain

from conftest import random_lower


def random_cochain(rng, n, p, F=QQ):
    return Cochain.from_function(F, n, p, lambda s: [F.random(rng, 3) for _ in range(n)])


def random_algebra(rng, n):
    return HomAlgebra.from_brackets(QQ, n, {(i, j): [QQ.random(rng, 3) for _ in range(n)]
                                           for i in range(n) for j in range(i + 1, n)},
                                    [[QQ.random(rng, 3) for _ in range(n)] for _ in range(n)])


def add(*vs):
    return tuple(sum(c) for c in zip(*vs))


def neg(v):
    return tuple(-c for c in v)


def delta2_by_hand(g, phi, x, y, z):
    # written out term by term for 2-cochains on arbitrary vectors
    a = g.twist
    return add(g.bracket(a(x), phi(y, z)), neg(g.bracket(a(y), phi(x, z))), g.bracket(a(z), phi(x, y)),
               neg(phi(g.bracket(x, y), a(z))), phi(g.bracket(x, z), a(y)), neg(phi(g.bracket(y, z), a(x))))


def test_alternation():
    rng = random.Random(0)
    phi = random_cochain(rng, 4, 2)
    u = tuple(QQ.random(rng) for _ in range(4))
    v = tuple(QQ.random(rng) for _ in range(4))
    assert phi(u, u) == (0,) * 4
    assert phi(u, v) == neg(phi(v, u))
    psi = random_cochain(rng, 4, 3)
    assert psi(u, v, u) == (0,) * 4


@given(st.integers(0, 10 ** 6))
def test_degree2_coboundary_matches_hand_formula(seed):
    rng = random.Random(seed)
    g = random_algebra(rng, 3)
    phi = random_cochain(rng, 3, 2)
    d = coboundary(g, phi)
    vecs = [tuple(QQ.random(rng) for _ in range(3)) for _ in range(3)]
    assert d(*vecs) == delta2_by_hand(g, phi, *vecs)


@given(st.integers(0, 10 ** 6))
def test_matrix_and_direct_coboundary_agree(seed):
    rng = random.Random(seed)
    g = random_algebra(rng, 4)
    for p in (1, 2):
        phi = random_cochain(rng, 4, p)
        assert coboundary_matrix(g, p).apply(phi.coords()) == coboundary(g, phi).coords()


@given(st.integers(0, 10 ** 6))
def test_literal_equals_minus_circle(seed):
    rng = random.Random(seed)
    g = random_algebra(rng, 4)
    phi = random_cochain(rng, 4, 2)
    assert coboundary(g, phi) == -delta2_circle_form(g, phi)


@given(st.integers(0, 10 ** 6))
def test_linearity(seed):
    rng = random.Random(seed)
    g = random_algebra(rng, 3)
    a, b = random_cochain(rng, 3, 2), random_cochain(rng, 3, 2)
    c = QQ.random(rng)
    assert coboundary(g, a + b.scale(c)) == coboundary(g, a) + coboundary(g, b).scale(c)
    assert delta2_circle_form(g, a + b) == delta2_circle_form(g, a) + delta2_circle_form(g, b)


def test_zero_and_cocycle_examples():
    g = model_ln(4)
    assert coboundary(g, Cochain.zero(QQ, 5, 2)).is_zero()
    assert coboundary(g, psi_cochain(4, 1, 4)).is_zero()


def test_circle_examples():
    i6 = Matrix.identity(QQ, 6)
    assert circle(i6, mu0_cochain(5), mu0_cochain(5)).is_zero()
    rng = random.Random(1)
    phi = random_cochain(rng, 5, 2)
    a = random_lower(5, rng)
    assert circle(a, Cochain.zero(QQ, 5, 2), phi).is_zero()
    assert circle(Matrix.identity(QQ, 5), psi_cochain(4, 1, 4), psi_cochain(4, 1, 4)).is_zero()


def test_circle_of_bracket_detects_jacobi(cat):
    for g in cat.values():
        mu = Cochain.from_bracket(g)
        assert delta2_circle_form(g, mu) == circle(g.alpha, mu, mu).scale(2)
        assert circle(g.alpha, mu, mu).is_zero() == check_hom_jacobi(g)


@pytest.mark.parametrize("name", ["sl2", "example32", "model_l3", "model_l4"])
def test_delta_squared_zero_for_lie(name):
    g = catalog.load(name)
    for p in (1, 2):
        d1 = coboundary_matrix(g, p)
        d2 = coboundary_matrix(g, p + 1) if len(d1.rows) and p + 1 < g.dim else None
        if d2 is not None:
            assert (d2 @ d1).is_zero()


def test_sl2_rigid():
    # Whitehead: adjoint cohomology of sl2 vanishes in degrees 2 and 3
    g = catalog.load("sl2")
    assert cohomology_dim(g, 2) == 0
    assert cohomology_dim(g, 3) == 0
    assert cohomology_report(g, 1).cocycle_dim == 3  # derivations


def test_cocycle_basis_is_annihilated():
    g = model_ln(3)
    basis = cocycle_basis(g, 2)
    assert len(basis) == cohomology_report(g, 2).cocycle_dim
    for c in basis:
        assert coboundary(g, c).is_zero()


def test_coboundaries_below_cocycles(cat):
    for g in cat.values():
        rep = cohomology_report(g, 2)
        if rep.delta_squared_zero:
            assert rep.coboundary_dim <= rep.cocycle_dim


def test_unsigned_convention_breaks_delta_squared():
    g = model_ln(4)
    rep = cohomology_report(g, 2, convention="unsigned")
    assert not rep.delta_squared_zero
    with pytest.raises(CohomologyRefused):
        cohomology_dim(g, 2, convention="unsigned")


def test_equivariant_flag():
    g = catalog.load("example14")
    rep = cohomology_report(g, 2, equivariant=True)
    assert rep.cochain_dim <= cohomology_report(g, 2).cochain_dim
    for c in cocycle_basis(g, 2, equivariant=True):
        assert is_equivariant(c, g.alpha)


def test_bad_arguments():
    g = model_ln(3)
    with pytest.raises(CochainError):
        cohomology_report(g, 4)
    with pytest.raises(CochainError):
        cohomology_report(g, 2, convention="nope")
    with pytest.raises(CochainError):
        cohomology_report(g, 3, form="circle")
