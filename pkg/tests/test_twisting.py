import random
from fractions import Fraction

import pytest

from homlie import catalog
from homlie.algebra import check_hom_jacobi, is_lie, is_weak_morphism
from homlie.exactlin import QQ, Matrix
from homlie.filiform import model_ln, multiplicative_alpha_matrix
from homlie.series import central_series, is_filiform, is_nilpotent, nilindex
from homlie.twisting import TwistError, beta_twist, nth_derived, parse_variant, untwist, yau_twist


def rows_map(rows):
    n = len(rows)
    return Matrix.of(QQ, [[rows[j][i] for j in range(n)] for i in range(n)])


def first_morphism(a12, a13, a14, a42, a43, a44):
    return rows_map([[0, a12, a13, a14], [0, 0, 0, 0], [0, 0, 0, 0], [0, a42, a43, a44]])


def second_morphism(a11, a12, a13, a14, a33, a42, a43):
    return rows_map([[a11, a12, a13, a14], [0, a11 * a33, 0, 0], [0, a11 * a43, a33, 0],
                     [0, a42, a43, Fraction(a33) / a11]])


@pytest.fixture
def g32():
    return catalog.load("example32")


def test_example32_verdicts(g32):
    rng = random.Random(2)
    for _ in range(20):
        f = first_morphism(*[rng.randint(-3, 3) for _ in range(6)])
        h = yau_twist(g32, f)
        assert is_nilpotent(h) and not is_filiform(h)
        a11, a33 = rng.choice([1, 2, -1, 3]), rng.choice([1, -2, 3])
        f = second_morphism(a11, *[rng.randint(-3, 3) for _ in range(3)], a33,
                            *[rng.randint(-3, 3) for _ in range(2)])
        assert f.det() == a11 * a33 ** 3
        assert is_filiform(yau_twist(g32, f))


def test_example32_simplest_automorphism(g32):
    f = second_morphism(1, 0, 0, 0, 1, 0, 0)
    assert is_weak_morphism(f, g32, g32)
    assert is_filiform(yau_twist(g32, f))


def test_yau_identity_keeps_bracket(g32):
    assert yau_twist(g32, Matrix.identity(QQ, 4)).same_as(g32)


def test_yau_needs_lie_input():
    with pytest.raises(TwistError):
        yau_twist(catalog.load("example4"), Matrix.identity(QQ, 3))


def test_yau_needs_morphism(g32):
    with pytest.raises(TwistError):
        yau_twist(g32, Matrix.of(QQ, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]]))


def test_series_containment_and_equality(cat):
    rng = random.Random(5)
    g = cat["example32"]
    for _ in range(10):
        for f, invertible in ((first_morphism(*[rng.randint(-2, 2) for _ in range(6)]), False),
                              (second_morphism(rng.choice([1, 2]), 1, 0, 2, rng.choice([1, 3]), 1, 1), True)):
            h = yau_twist(g, f)
            c_h, c_g = central_series(h).terms, central_series(g).terms
            for p, t in enumerate(c_h):
                assert t <= c_g[min(p, len(c_g) - 1)]
            assert nilindex(h) <= nilindex(g)
            if invertible:
                assert central_series(h).dims == central_series(g).dims


def test_beta_identity(g32):
    assert beta_twist(g32, Matrix.identity(QQ, 4)).same_as(g32)


def test_beta_with_example32_morphisms(g32):
    h = beta_twist(g32, second_morphism(2, 1, 1, 1, 3, 1, 1))
    assert check_hom_jacobi(h) and is_filiform(h)
    h = beta_twist(g32, first_morphism(1, 2, 1, 3, 1, 2))
    assert is_nilpotent(h) and not is_filiform(h)


def test_derived_orders():
    g = model_ln(2, multiplicative_alpha_matrix("L2", 2, {(0, 0): 1, (1, 1): 1, (1, 0): 1}))
    assert nth_derived(g, 0).same_as(g)
    assert check_hom_jacobi(nth_derived(g, 1))


def test_derived_filiform_with_bijective_twist():
    alpha = multiplicative_alpha_matrix("rho00_nonzero", 4, {(0, 0): 2, (2, 2): 1, (3, 2): 1, (3, 1): 1, (4, 1): 1})
    g = model_ln(4, alpha)
    assert alpha.det() != 0 and is_filiform(g)
    for n in range(4):
        assert is_filiform(nth_derived(g, n))


def test_untwist_round_trip(g32):
    f = second_morphism(2, 1, 1, 1, 3, 1, 1)
    h = untwist(yau_twist(g32, f))
    assert is_lie(h) and h.same_as(g32)


def test_untwist_singular():
    with pytest.raises(TwistError):
        untwist(yau_twist(catalog.load("example32"), first_morphism(1, 1, 1, 1, 1, 1)))


def test_parse_variant():
    assert parse_variant("derived:3") == ("derived", 3)
    with pytest.raises(TwistError):
        parse_variant("derived:x")
    with pytest.raises(TwistError):
        parse_variant("nope")
