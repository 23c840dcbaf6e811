import math
from fractions import Fraction

import pytest

from gsp_pullback import hecke as H
from gsp_pullback import lfactors as L


def test_factorize_and_primes():
    assert L.factorize(360) == {2: 3, 3: 2, 5: 1}
    assert L.primes_up_to(20) == (2, 3, 5, 7, 11, 13, 17, 19)


def test_character_basics():
    chars = L.DirichletCharacter.all_mod(15)
    assert len(chars) == 8
    odd4 = L.DirichletCharacter.from_generator_images(4, [1])
    assert odd4(3) == pytest.approx(-1) and odd4(2) == 0
    assert odd4.parity == 1 and odd4.conductor() == 4 and odd4.is_real
    triv = L.DirichletCharacter.trivial(12)
    assert triv.conductor() == 1 and not triv.is_primitive()
    with pytest.raises(ValueError):
        L.DirichletCharacter.from_generator_images(5, [Fraction(1, 2)])


def test_primitive_count():
    # primitive characters mod N number sum_{d|N} mu(d) phi(N/d)
    assert sum(1 for c in L.primitive_characters(12) if c.N == 12) == 1
    assert sum(1 for c in L.primitive_characters(7) if c.N == 7) == 5


def test_gauss_sums():
    assert abs(L.gauss_sum(L.DirichletCharacter.from_generator_images(4, [1])) - 2j) < 1e-12
    assert abs(L.gauss_sum(L.DirichletCharacter.from_generator_images(5, [2])) - math.sqrt(5)) < 1e-12
    for chi in L.primitive_characters(30):
        assert abs(abs(L.gauss_sum(chi)) ** 2 - chi.N) < 1e-10


def test_lvalues_two_methods():
    for chi in L.DirichletCharacter.all_mod(5):
        e = L.dirichlet_lvalue(chi, 2.0, "euler", 10_000)
        h = L.dirichlet_lvalue(chi, 2.0, "hurwitz")
        assert abs(e.value - h.value) <= e.error_bound + h.error_bound
    beta2 = L.dirichlet_lvalue(L.DirichletCharacter.from_generator_images(4, [1]), 2.0, "hurwitz")
    assert abs(beta2.value - 0.915965594177219) < 1e-13  # Catalan's constant


def test_hurwitz_zeta_reduces_to_riemann():
    v, err = L.hurwitz_zeta(2.0, 1.0)
    assert abs(v - math.pi**2 / 6) <= max(err, 1e-15)


def test_partial_l_omit():
    chi = L.DirichletCharacter.trivial(1)
    full = L.dirichlet_lvalue(chi, 3.0, "hurwitz")
    part = L.partial_l_omit(chi, 3.0, [2], method="hurwitz")
    assert abs(part.value - full.value * (1 - 2**-3)) < 1e-12


def test_local_factors():
    sd = H.SatakeData(1, 5, (Fraction(1),))
    lf = L.standard_lfactor(sd)
    assert lf.degree == 3
    assert lf.evaluate(Fraction(1)) == Fraction(125, 64)
    ab = L.abelian_lfactor(Fraction(-1), 3)
    assert ab.evaluate(Fraction(1)) == Fraction(3, 4)


def test_group_orders():
    assert [L.sp_order_mod(1, p) for p in (2, 3, 5)] == [6, 24, 120]
    assert L.sp_order_mod(2, 2) == L.sp_order_bruteforce(2, 2) == 720
    assert L.sp_order_mod(1, 3, 2) == 24 * 27
    assert L.principal_congruence_volume(1, 2, 1) == Fraction(1, 6)


def test_c_n_assembly():
    table = {p: H.SatakeData(2, p, (Fraction(1), Fraction(1))) for p in L.primes_up_to(50)}
    chi = L.DirichletCharacter.trivial(1)
    res = L.c_n_assembly((10, 10), 8, table, chi, {}, 50)
    assert res.prefactor.coeff == Fraction(15, 1114112)
    assert res.error_bound < 1e-15
    with pytest.raises(H.DivergenceError):
        L.c_n_assembly((10, 10), 2, table, chi, {}, 50)
