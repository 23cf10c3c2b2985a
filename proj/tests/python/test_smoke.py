import numpy as np
import pytest

import prodsys


def test_default_system_joins():
    s = prodsys.System()
    assert s.join("a", "ab") == "ab"
    assert s.join("a", "b") is None
    assert s.leq("a", "a^2")
    assert not s.leq("b", "a")


def test_wick_product_and_expectation():
    s = prodsys.System()
    assert s.wick_mul("i*(a:)", "i(a:)") == "1*i(e:)i*(e:)"
    assert s.wick_mul("i*(a:)", "i(b:)") == "0"
    with pytest.raises(ValueError):
        s.wick_mul("i(q:)", "1")
    assert s.expect("i(a:)i*(b:) + 2 i(a:)i*(a:)") == s.expect("2 i(a:)i*(a:)")


def test_norm_diag_certificate():
    s = prodsys.System()
    out = s.norm_diag("1 - i(a:)i*(a:)")
    assert out["value"] == pytest.approx(1.0)
    assert out["certificate"] == "e"


def test_fock_matrix_matches_shift():
    cfg = {"monoid": {"kind": "total-order", "factors": [{"kind": "integers", "name": "x"}]}, "truncation": {"length": 3}}
    m = prodsys.System(cfg).fock_matrix("i(x:)")
    want = np.zeros((4, 4))
    for k in range(3):
        want[k + 1, k] = 1.0
    assert np.array_equal(m, want)


def test_config_error_is_raised():
    bad = {"monoid": {"kind": "total-order", "factors": [{"kind": "rationals-dense", "dim": 3}]}}
    with pytest.raises(prodsys.ConfigError):
        prodsys.System(bad)


def test_suites_and_demos():
    assert "lemma-1.1" in prodsys.suite_ids()
    rep = prodsys.System().check("join-oracle", seed=3)
    assert rep["passed"] and rep["schema"] == "prodsys-report/1"
    demo = prodsys.run_demo("free-product-kill")
    assert demo["passed"]
    assert prodsys.__version__
