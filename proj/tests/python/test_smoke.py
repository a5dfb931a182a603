import math

import pytest

import uniflow


def test_classify_sl3():
    r = uniflow.classify("sl3")
    assert r["gr"] == 5
    assert r["depths"] == [2, 1, 1, 0]
    assert r["standard"] is False


def test_classify_explicit_basis():
    spec = {
        "basis": [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, -1]]],
        "element": ["1", 0, 0],
    }
    r = uniflow.classify(spec)
    assert r["gr"] == 3
    assert r["standard"] is True


def test_closed_forms():
    assert [uniflow.sl_d_single_block_gr(4, l) for l in (2, 3, 4)] == [7, 19, 34]
    assert uniflow.growth_rate([2, 1, 1, 0]) == 5
    assert uniflow.coefficient_bounds_constant(1) == 2


def test_kak_and_reduce():
    k = uniflow.kak([[1.0, 10.0], [0.0, 1.0]])
    assert k.s == pytest.approx(2.3124, abs=1e-4)
    rep, word = uniflow.reduce([[1.0, 100.0], [0.0, 1.0]])
    assert rep.ravel().tolist() == pytest.approx([1.0, 0.0, 0.0, 1.0])
    assert word[0][1] == -100


def test_flow_helpers():
    assert uniflow.lattice_count(math.sqrt(2)) == 4
    assert uniflow.psi(0.0, 0.05, 3.0) == pytest.approx(3 * math.exp(0.1))
    kappa, lo, hi = uniflow.cusp_kappa(20000, 3)
    assert lo < kappa < hi
    assert 0.8 < kappa < 1.2


def test_run_and_errors():
    code, report, error = uniflow.run("enumerate-sld", d=4)
    assert code == 0 and error == ""
    assert report["suites"][0]["tables"][0]["rows"] == [[2, 7], [3, 19], [4, 34]]
    code, _, error = uniflow.run("verify", suite="nope")
    assert code == 2 and "UnknownSuite" in error
    with pytest.raises(uniflow.UniflowError):
        uniflow.classify("so5")
    with pytest.raises(uniflow.UniflowError):
        uniflow.lattice_count(2e4)
