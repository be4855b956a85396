from homlie.laws import C_NAMES, run_harness, used_constants
from homlie.basis_change import Nu, Sigma, Tau


def test_used_constants():
    assert used_constants(Sigma(1, 2), 5) == ("C10",)
    assert used_constants(Tau(1, 1), 6) == C_NAMES
    assert used_constants(Nu(1, 1), 5) == ()


def test_small_harness_is_complete_and_deterministic():
    a = run_harness(nu_samples=10, law_samples=2, seed=3)
    b = run_harness(nu_samples=10, law_samples=2, seed=3)
    assert a.as_dict() == b.as_dict()
    assert a.nu_ok
    assert a.checked == 2 * 2 * 4
    assert set(a.scan) == {f"n={n}:{f}" for n in (5, 6)
                           for f in ("sigma(.,2)", "sigma(.,3)", "tau(.,1)", "tau(.,2)")}
