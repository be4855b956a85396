import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from homlie.algebra import check_hom_jacobi, check_multiplicative
from homlie.cohomology import coboundary
from homlie.exactlin import QQ, Matrix
from homlie.filiform import (FAMILIES, ModelError, PsiCoefficients, assemble, deformation_check, delta_gate,
                             delta_index_set, model_ln, multiplicative_alpha_matrix, psi_cochain, psi_value)
from homlie.series import is_filiform, nilindex

from conftest import random_lower


def brute_delta(n):
    """Pairs (k, r) with 1 <= k, 2k + 2 <= r <= n, plus ((n-1)/2, n) for odd n >= 5."""
    out = [(k, r) for k in range(1, n + 1) for r in range(1, n + 1) if 2 * k + 2 <= r]
    if n % 2 and n >= 5:
        out.append(((n - 1) // 2, n))
    return sorted(set(out))


def test_model_basics():
    g = model_ln(4)
    assert is_filiform(g) and nilindex(g) == 4
    l2 = model_ln(2)
    assert l2.nonzero_pairs() == [(0, 1, (0, 0, 1))]


@pytest.mark.parametrize("n, expected", [
    (3, []), (4, [(1, 4)]), (5, [(1, 4), (1, 5), (2, 5)]), (6, [(1, 4), (1, 5), (1, 6), (2, 6)]),
    (7, [(1, 4), (1, 5), (1, 6), (1, 7), (2, 6), (2, 7), (3, 7)]),
])
def test_index_sets(n, expected):
    assert delta_index_set(n) == expected == brute_delta(n)


def test_psi_values():
    assert psi_value(4, 1, 4, 1, 2) == (-1, 4)
    assert psi_value(5, 2, 5, 2, 3) == (-1, 5)
    assert psi_value(5, 2, 5, 1, 4) == (1, 5)
    assert psi_value(5, 1, 4, 2, 3) is None


def test_psi_outside_index_set():
    with pytest.raises(ModelError):
        psi_cochain(5, 2, 4)


@pytest.mark.parametrize("n", range(4, 8))
def test_every_psi_is_a_cocycle(n):
    g = model_ln(n)
    for k, r in delta_index_set(n):
        assert coboundary(g, psi_cochain(n, k, r)).is_zero()


def test_alt_sign_fails_on_larger_support():
    g = model_ln(5)
    assert not coboundary(g, psi_cochain(5, 1, 4, alt_sign=True)).is_zero()


def test_assemble_empty_is_model():
    a = random_lower(6, random.Random(0))
    assert assemble(5, PsiCoefficients(5, {}), a).same_as(model_ln(5, a))


def test_mu52_algebra():
    g = assemble(4, PsiCoefficients(4, {(1, 4): 1}))
    assert check_hom_jacobi(g) and is_filiform(g)
    r = deformation_check(g)
    assert r.cocycle_ok and r.jacobi_ok


def test_two_cocycle_sum_n5():
    g = assemble(5, PsiCoefficients(5, {(1, 4): 1, (2, 5): 1}))
    assert check_hom_jacobi(g) and deformation_check(g).verdict


def test_model_residuals_zero():
    r = deformation_check(model_ln(5))
    assert r.cocycle_ok and r.jacobi_ok and r.verdict


def test_diagonal_twist_breaks_cocycle_condition():
    g = assemble(5, PsiCoefficients(5, {(1, 4): 1, (2, 5): 1}), Matrix.diagonal(QQ, [1, 2, 1, 1, 1, 1]))
    r = deformation_check(g)
    assert not r.cocycle_ok and not r.verdict


def test_shifted_diagonal_twist_residual():
    # computed value: psi_{1,4} never involves x_0, so this twist leaves it a solution
    g = assemble(4, PsiCoefficients(4, {(1, 4): 1}), Matrix.diagonal(QQ, [2, 1, 1, 1, 1]))
    assert deformation_check(g).verdict


@given(st.integers(0, 10 ** 6), st.sampled_from([4, 5, 6]))
def test_two_paths_agree(seed, n):
    rng = random.Random(seed)
    coeffs = PsiCoefficients(n, {key: QQ.random(rng, 2) for key in delta_index_set(n)})
    alpha = random_lower(n + 1, rng) if rng.random() < 0.5 else None
    g = assemble(n, coeffs, alpha)
    assert deformation_check(g).verdict == check_hom_jacobi(g)


def test_grid_agreement_n5():
    for vals in product(range(3), repeat=3):
        coeffs = PsiCoefficients(5, dict(zip(delta_index_set(5), vals)))
        g = assemble(5, coeffs)
        assert deformation_check(g).verdict == check_hom_jacobi(g)


def test_family_examples():
    a = multiplicative_alpha_matrix("L2", 2, {(0, 0): 2, (1, 1): 3, (1, 0): 1, (2, 0): 1, (2, 1): 1})
    assert check_multiplicative(model_ln(2, a))
    a = multiplicative_alpha_matrix("rho00_zero", 4, {(i, 0): 1 for i in range(1, 5)} | {(i, 1): 1 for i in range(1, 5)})
    assert check_multiplicative(model_ln(4, a))
    a = multiplicative_alpha_matrix("rho00_nonzero", 5, {(0, 0): 1, (2, 2): 1})
    assert check_multiplicative(model_ln(5, a))


def test_family_errors():
    with pytest.raises(ModelError):
        multiplicative_alpha_matrix("L2", 3, {})
    with pytest.raises(ModelError):
        multiplicative_alpha_matrix("rho00_nonzero", 4, {(0, 0): 0})
    with pytest.raises(ModelError):
        multiplicative_alpha_matrix("nope", 4, {})
    assert len(FAMILIES) == 3


def test_delta_gate_identity():
    for n in range(2, 7):
        for row in delta_gate(n):
            assert row.literal_zero and row.circle_zero and row.agree


def test_delta_gate_general_twist_agrees_up_to_sign():
    rng = random.Random(4)
    for n in (4, 5, 6):
        for row in delta_gate(n, random_lower(n + 1, rng)):
            assert row.agree
