import math

import pytest

from gsp_pullback import oracles as O
from gsp_pullback.hecke import DivergenceError


def test_selberg_n1_routes():
    assert O.quad_selberg(1, 4).passes(1e-10)
    errs = [O.quad_selberg(1, 3, O.QuadratureConfig(method="truncated", R=R)).rel_error for R in (1e2, 1e3, 1e4)]
    assert errs[0] > errs[1] > errs[2]


def test_selberg_n2_adaptive_and_qmc():
    assert O.quad_selberg(2, 5).passes(1e-8)
    a = O.quad_selberg(2, 6, O.QuadratureConfig(method="montecarlo", seed=3, budget=2e6))
    b = O.quad_selberg(2, 6, O.QuadratureConfig(method="montecarlo", seed=3, budget=2e6))
    assert a.value == b.value
    assert abs(a.value - a.reference) <= a.error_estimate * 2


def test_selberg_domain():
    with pytest.raises(ValueError):
        O.quad_selberg(2, 2.5)
    with pytest.raises(ValueError):
        O.quad_selberg(3, 9)


def test_beta():
    assert O.quad_beta(1, 1).value == pytest.approx(1.0, rel=1e-12)
    assert O.quad_beta(0.5, 0.5).value == pytest.approx(math.pi, rel=1e-10)
    assert O.quad_beta(2, 3).passes(1e-10)
    with pytest.raises(ValueError):
        O.quad_beta(0, 1)


def test_kak_zeta():
    r = O.kak_zeta_n1(4, 0.5)
    assert r.passes(1e-8)
    with pytest.raises(ValueError):
        O.kak_zeta_n1(1, 0.1)


@pytest.mark.parametrize("k, expected", [(2, 4 * math.pi), (3, 2 * math.pi), (5, math.pi)])
def test_measure_routes(k, expected):
    for r in O.measure_consistency_n1(k):
        assert r.value == pytest.approx(expected, rel=1e-8)


def test_neretin():
    assert O.neretin_closed_n1(2, 2, 2) == pytest.approx(math.pi / 4)
    assert O.neretin_n1(3, 2.5, 2).passes(1e-8)
    with pytest.raises(DivergenceError):
        O.neretin_n1(1, 2, 2)


def test_result_json_and_strict_tolerance():
    r = O.quad_beta(2, 3)
    d = r.to_json()
    assert d["name"] == "beta" and "error_bound" in d
    assert not r.passes(0.0)
