import math
from fractions import Fraction

import pytest

from gsp_pullback import arch as A
from gsp_pullback.exact import PiPower, PoleError, ratfun_eval


def test_context_validation():
    ctx = A.ArchContext((10, 10))
    assert ctx.k == 10 and tuple(ctx.lam) == (9, 8)
    with pytest.raises(ValueError):
        A.ArchContext((3, 2))
    with pytest.raises(ValueError):
        A.ArchContext((2, 2))


def test_gamma_n_matches_product_definition():
    for n in (1, 2, 3):
        for z in (Fraction(9, 2), Fraction(11), Fraction(23, 3)):
            direct = Fraction(1)
            for m in range(1, n + 1):
                direct *= math.factorial(m - 1)
                for j in range(1, m + 1):
                    direct /= z - m - 1 + 2 * j
            assert ratfun_eval(A.gamma_n(n), z) == direct
    assert ratfun_eval(A.gamma_n(2), 7) == Fraction(1, 336)


def test_gamma_n_is_selberg_value():
    # n = 1 reduces to 1/z, the value the Selberg oracle reproduces at z = 4
    assert ratfun_eval(A.gamma_n(1), 4) == Fraction(1, 4)


def test_scalar_b_lambda_example():
    v = A.b_lambda_scalar(1, 2, Fraction(1, 2))
    assert v.real_form().pi_power() == PiPower(Fraction(-1, 3), 1)


def test_a_k_known_value():
    ctx = A.ArchContext((10, 10))
    assert A.a_k_value(ctx, 7) == Fraction(1, 2**12 * 16 * 17 * 18)


@pytest.mark.parametrize("kv", [(4,), (5,), (6, 4), (7, 5), (9, 7, 5), (10, 8, 6)])
def test_dual_route_exact_and_float(kv):
    ctx = A.ArchContext(kv)
    assert A.a_k_expression(ctx) == A.b_lambda_general(ctx)
    ck = A.c_k_function(ctx.n, ctx.k)
    for s in (1.25, 2.0, 2.75):
        z = (2 * ctx.n + 1) * s - 0.5
        floated = ck.evaluate_float(s)
        for ell in ctx.lam:
            floated *= A.beta_float(ell, s, ctx.n)
        exact = A.b_lambda_general_at(ctx, Fraction(s).limit_denominator(8))
        assert abs(abs(complex(exact)) - abs(floated)) <= 1e-10 * abs(floated)


def test_constants():
    assert A.alpha_n(1) == PiPower(4, 1)
    assert A.siegel_volume(1) == PiPower(Fraction(1, 3), 1)
    assert A.siegel_volume(2) == PiPower(Fraction(1, 270), 3)
    assert A.factorial_product(3) == 2


def test_critical_points_and_constants():
    assert A.critical_points((10, 10)) == [2, 4, 6, 8]
    assert A.c_krnN((10, 10), 8) == Fraction(15, 1114112)
    assert A.c_krnN((10, 10), 8, 2, {2: 1}) == Fraction(15, 1114112) / 720
    with pytest.raises(A.CriticalRangeError):
        A.c_krnN((10, 10), 7)
    with pytest.raises(A.CriticalRangeError):
        A.c_krnN((10, 10), 10)


def test_pole_reported():
    with pytest.raises(PoleError):
        A.b_lambda_scalar(1, 2, Fraction(-1, 2))
