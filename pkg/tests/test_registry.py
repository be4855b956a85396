import random

import pytest
from hypothesis import given, strategies as st

from homlie.algebra import check_hom_jacobi, check_multiplicative
from homlie.exactlin import GF, QQ
from homlie.registry import (RegistryError, SideConditionError, audit, evaluate, expr_names, identity_params,
                             instantiate, lookup, registry, sample_instance, sqrt5, verify_representative)
from homlie.series import is_filiform


def test_counts():
    assert [len(registry(d)) for d in range(3, 8)] == [1, 1, 2, 4, 8]
    assert [len(registry(d, True)) for d in range(3, 7)] == [2, 2, 5, 12]
    with pytest.raises(RegistryError):
        registry(7, True)


def test_dim5_and_dim6_entries():
    assert [r.key for r in registry(5)] == ["mu_5^1", "mu_5^2"]
    assert lookup("mu_5^1").psi == () and lookup("mu_5^2").psi_keys == ((1, 4),)
    last = registry(6)[-1]
    assert last.key == "mu_6^4" and last.psi_keys == ((1, 5),)
    assert all(c == "0" or c.startswith("rho") for row in last.grid for c in row)
    assert registry(7)[5].key == "mu_7^6" and registry(7)[5].psi_keys == ((1, 6),)


def test_evaluate():
    env = {"a": 2, "b": 3}
    assert evaluate("a*b - a/b + a**2", env, QQ) == QQ("28/3")
    assert expr_names("a*b + c") == {"a", "b", "c"}
    with pytest.raises(ZeroDivisionError):
        evaluate("a/(b-3)", env, QQ)
    with pytest.raises(RegistryError):
        evaluate("a**b", env, QQ)
    with pytest.raises(RegistryError):
        evaluate("f(a)", env, QQ)
    with pytest.raises(RegistryError):
        evaluate("zz", env, QQ)


def test_mu52_identity():
    rep = lookup("mu_5^2")
    g = instantiate(rep, identity_params(rep.key))
    assert g.alpha.is_identity() and check_hom_jacobi(g) and is_filiform(g)


def test_beta_must_be_nonzero():
    rep = lookup("mu_7^2")
    params = {p: 1 for p in rep.params}
    params["beta"] = 0
    with pytest.raises((SideConditionError, ZeroDivisionError)):
        instantiate(rep, params)


def test_missing_parameter():
    with pytest.raises(RegistryError, match="missing"):
        instantiate(lookup("mu_5^2"), {})


def test_dim3_multiplicative_example():
    rep = lookup("mu_3^1#1")
    g = instantiate(rep, {"rho00": 2, "rho11": 3, "rho01": 1, "rho02": 1, "rho12": 1})
    assert check_multiplicative(g) and check_hom_jacobi(g)


def test_identity_admission_rechecked():
    for d in range(3, 8):
        for rep in registry(d) + (registry(d, True) if d < 7 else []):
            params = identity_params(rep.key)
            if params is None:
                continue
            v = verify_representative(rep, params, QQ)
            assert instantiate(rep, params).alpha.is_identity()
            assert all(v.values()), rep.key


def test_identity_refusals_have_reasons():
    # zero diagonal entries
    for key in ("mu_7^7", "mu_7^8", "mu_3^1#2"):
        rep = lookup(key)
        assert any(rep.grid[i][i] == "0" for i in range(rep.dim))
        assert identity_params(key) is None
    # mu_7^4: rho00 = rho11 = 1 forces C11 = 1, then entry (3, 2) forces rho12 = 2 != 0
    rep = lookup("mu_7^4")
    assert rep.grid[3][3] == "C11*rho11" and rep.grid[3][2] == "rho00 + C11*rho11 - rho12"
    assert identity_params("mu_7^4") is None


def test_sqrt5_field():
    assert sqrt5(QQ) is None
    s = sqrt5(GF(1009))
    assert s * s == GF(1009)(5)
    assert sqrt5(GF(7)) is None


@given(st.integers(0, 10 ** 6))
def test_samples_satisfy_side_conditions(seed):
    rng = random.Random(seed)
    for key in ("mu_6^3", "mu_7^2", "mu_6^3#2"):
        rep = lookup(key)
        params, g = sample_instance(rep, rng)
        for e in rep.nonzero:
            assert evaluate(e, params, QQ) != 0
        assert g.alpha.is_lower_triangular()


def test_audit_small_is_deterministic():
    a = audit([3, 4], samples=5, seed=1)
    b = audit([3, 4], samples=5, seed=1)
    assert a.as_dict() == b.as_dict()
    assert a.complete
    assert all(r.status == "PASS" for r in a.rows if not r.key.endswith("#2"))
