from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsp_pullback import hecke as H
from gsp_pullback.exact import LaurentPolynomial, PoleError


def test_rationality_n1_low_degrees():
    ser = H.rationality_series(1, 3, 2)
    X = LaurentPolynomial.var(1, 0)
    assert ser.coeffs[0] == LaurentPolynomial.const(1, 1)
    assert ser.coeffs[1] == X * 2 + X.inverse() * 2 + LaurentPolynomial.const(1, 1)
    assert ser.coeffs[1].evaluate([2]) == 6
    sym = H.rationality_series(1, 1, None).coeffs[1]
    assert sym.evaluate([2, 5]) == 5 * (1 + 2 + Fraction(1, 2)) - 1


def test_weyl_invariance():
    for n in (1, 2, 3):
        for c in H.rationality_series(n, 3, 3).coeffs:
            assert H.is_weyl_invariant(c, n)


def test_cartan_volumes_two_routes():
    for n in (1, 2, 3):
        for q in (2, 3):
            assert H.cartan_volume_series(n, q, 5).coeffs == H.cartan_volume_product(n, q, 5).coeffs
    assert H.cartan_volume_series(2, 2, 0).coeffs[0] == 1


def test_extra_prefactor_variant_disagrees():
    assert H.cartan_volume_with_extra_prefactor(1, 2, 2).coeffs[1] == 7


def test_brute_force_lattice_counts():
    for p in (2, 3):
        for a in (1, 2):
            assert H.count_cyclic_quotient_sublattices(p, a) == H.hnf_cyclic_quotient_count(p, a)
            assert H.hnf_cyclic_quotient_count(p, a) == p ** (a - 1) * (p + 1)


def test_zeta_examples():
    sd = H.SatakeData(1, 2, (Fraction(1),))
    assert H.unramified_zeta_series(sd, Fraction(3, 2), 0).value == 1
    r = H.unramified_zeta_series(sd, Fraction(3, 2), 30)
    assert r.exact and r.c == Fraction(1, 64)
    assert abs(r.value - H.unramified_zeta_closed(sd, Fraction(3, 2))) <= r.tail_bound
    sd2 = H.SatakeData(2, 2, (Fraction(1), Fraction(1)))
    r2 = H.unramified_zeta_series(sd2, Fraction(2), 20)
    assert abs(r2.value - H.unramified_zeta_closed(sd2, Fraction(2))) <= r2.tail_bound


def test_tail_bound_shrinks():
    sd = H.random_satake_data(2, 3, 4)
    bounds = [H.unramified_zeta_series(sd, Fraction(3, 2), D).tail_bound for D in (4, 8, 16)]
    assert bounds[0] > bounds[1] > bounds[2]


def test_divergence_and_poles():
    sd = H.SatakeData(1, 2, (Fraction(1),))
    with pytest.raises(H.DivergenceError):
        H.unramified_zeta_series(sd, Fraction(-3), 5)
    # chi(varpi) chosen so that 1 - chi q u vanishes at s = 3/2, where u = 2^-6
    bad = H.SatakeData(1, 2, (Fraction(1),), Fraction(32))
    with pytest.raises(PoleError, match="pole of L\\(s"):
        H.unramified_zeta_closed(bad, Fraction(3, 2))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2), st.sampled_from([2, 3, 5]), st.integers(0, 10**6), st.sampled_from([Fraction(3, 2), Fraction(2), Fraction(7, 4)]))
def test_series_matches_closed_form(n, q, seed, s):
    sd = H.random_satake_data(n, q, seed)
    r = H.unramified_zeta_series(sd, s, 24)
    closed = H.unramified_zeta_closed(sd, s)
    assert abs(r.value - closed) <= r.tail_bound + r.rounding_allowance
