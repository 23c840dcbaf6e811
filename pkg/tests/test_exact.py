from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsp_pullback.exact import (
    LaurentPolynomial,
    PiPower,
    PoleError,
    Poly1,
    RationalFunction1,
    SingularFactorError,
    TruncatedSeries,
    rational_from_str,
    rational_to_str,
    ratfun_eval,
    series_from_rational_factors,
    to_rational,
)

fracs = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 50))


def test_rational_strings_round_trip():
    assert rational_to_str(Fraction(-3, 6)) == "-1/2"
    assert rational_to_str(5) == "5/1"
    assert rational_from_str("7/14") == Fraction(1, 2)
    assert to_rational("0.25") == Fraction(1, 4)


def test_pi_power_algebra():
    a = PiPower(Fraction(1, 3), 1)
    assert a * PiPower(3, -1) == PiPower(1, 0)
    assert (a / a).is_rational()
    assert PiPower(0, 5) == PiPower(0, 0)
    assert PiPower.from_json(a.to_json()) == a
    assert float(PiPower(2, 1)) == pytest.approx(6.283185307179586)


def test_poly_division_and_gcd():
    z = Poly1.z()
    p = (z - Poly1.const(1)) * (z + Poly1.const(2))
    q = (z - Poly1.const(1)) * (z - Poly1.const(3))
    assert p.gcd(q) == z - Poly1.const(1)
    quo, rem = p.divmod(z + Poly1.const(2))
    assert rem.is_zero() and quo == z - Poly1.const(1)


def test_rational_function_canonical_and_poles():
    f = RationalFunction1.from_factors(den_roots=(0, 1, -1))
    assert ratfun_eval(f, 5) == Fraction(1, 120)
    assert sorted(f.poles()) == [-1, 0, 1]
    with pytest.raises(PoleError):
        ratfun_eval(f, 1)
    g = RationalFunction1(Poly1([1, 1]), Poly1([2, 2]))
    assert g == RationalFunction1(Poly1([1]), Poly1([2]))
    assert g.den.lead() == 1


@settings(max_examples=60, deadline=None)
@given(fracs, fracs, fracs)
def test_rational_function_field_ops(a, b, x):
    f = RationalFunction1.from_factors(num_roots=(a,), den_roots=(b + 200,))
    g = RationalFunction1.from_factors(den_roots=(a - 300,))
    assert ratfun_eval(f * g, x) == ratfun_eval(f, x) * ratfun_eval(g, x)
    assert ratfun_eval(f + g, x) == ratfun_eval(f, x) + ratfun_eval(g, x)


def test_laurent_basics():
    x1 = LaurentPolynomial.var(2, 0)
    x2 = LaurentPolynomial.var(2, 1)
    p = x1 + x1.inverse() + x2 * x2
    assert p.evaluate([2, 3]) == Fraction(2) + Fraction(1, 2) + 9
    assert p.invert_var(1).evaluate([2, Fraction(1, 3)]) == p.evaluate([2, 3])
    assert p.permute([1, 0]).evaluate([3, 2]) == p.evaluate([2, 3])
    with pytest.raises(Exception):
        p.inverse()


@settings(max_examples=40, deadline=None)
@given(st.lists(fracs, min_size=1, max_size=5), st.lists(fracs, min_size=1, max_size=5))
def test_truncated_series_product(a, b):
    D = 8
    sa, sb = TruncatedSeries.from_poly(a, D), TruncatedSeries.from_poly(b, D)
    y = Fraction(1, 3)
    full = sum(ai * y**i for i, ai in enumerate(a)) * sum(bi * y**i for i, bi in enumerate(b))
    assert (sa * sb).evaluate(y) == full


def test_series_from_factors():
    ser = series_from_rational_factors([((1, 2), (1, -4))], 2)
    assert list(ser.coeffs) == [1, 6, 24]
    with pytest.raises(SingularFactorError):
        series_from_rational_factors([((1,), (0, 1))], 3)
