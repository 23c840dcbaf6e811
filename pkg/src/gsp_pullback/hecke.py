"""Rationality theorem series, Cartan cell volumes and the unramified zeta
integral (series against closed form).

The generating function is

    (1 - Y) / (1 - q^n Y) * prod_i (1 - q^{2i} Y^2) / ((1 - X_i q^n Y)(1 - X_i^{-1} q^n Y))

whose ``Y^d`` coefficient is the sum of the Satake images of the Cartan
cells ``K diag(w^{e_1}, ..., w^{e_n}, ...) K`` with ``e_1 + ... + e_n = d``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (
    LaurentPolynomial,
    PoleError,
    TruncatedSeries,
    series_from_rational_factors,
    to_rational,
)

__all__ = [
    "SatakeData",
    "DivergenceError",
    "ZetaSeriesResult",
    "rationality_series",
    "rationality_factors",
    "is_weyl_invariant",
    "cartan_volume_series",
    "cartan_volume_product",
    "cartan_volume_with_extra_prefactor",
    "count_cyclic_quotient_sublattices",
    "hnf_cyclic_quotient_count",
    "satake_coefficients",
    "evaluation_parameter",
    "unramified_zeta_series",
    "unramified_zeta_closed",
    "random_satake_data",
]


class DivergenceError(ValueError):
    """Requested evaluation lies outside the region of absolute convergence."""


@dataclass(frozen=True)
class SatakeData:
    n: int
    q: int
    alphas: tuple[Fraction, ...]
    chi_value: Fraction = Fraction(1)

    def __post_init__(self):
        alphas = tuple(to_rational(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "chi_value", to_rational(self.chi_value))
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if len(alphas) != self.n:
            raise ValueError(f"expected {self.n} Satake parameters, got {len(alphas)}")
        if any(a == 0 for a in alphas):
            raise ValueError("Satake parameters must be nonzero")


# ---------------------------------------------------------------------------
# the rationality theorem


def rationality_factors(n: int, q=None):
    """Factor list ``(numerator, denominator)`` over the Laurent ring.

    With ``q=None`` the variable ``q`` is symbolic and occupies slot ``n``.
    """
    nv = n if q is not None else n + 1

    def const(c):
        return LaurentPolynomial.const(nv, c)

    if q is None:
        def qpow(k):
            return LaurentPolynomial.var(nv, n, k)
    else:
        q = to_rational(q)

        def qpow(k):
            return const(q**k)

    one = const(1)
    facs = [([one, -one], [one, -qpow(n)])]
    for i in range(1, n + 1):
        x = LaurentPolynomial.var(nv, i - 1)
        xinv = LaurentPolynomial.var(nv, i - 1, -1)
        facs.append(([one, const(0), -qpow(2 * i)], [one, -(x * qpow(n))]))
        facs.append(([one], [one, -(xinv * qpow(n))]))
    return facs


def rationality_series(n: int, D: int, q=None) -> TruncatedSeries:
    """Expansion of the generating function in ``Y`` to degree ``D``."""
    if D < 0:
        raise ValueError("D must be non-negative")
    return series_from_rational_factors(rationality_factors(n, q), D)


def is_weyl_invariant(p: LaurentPolynomial, n: int) -> bool:
    """Invariance under coordinate permutations and inversions of ``X_1..X_n``."""
    extra = list(range(n, p.nvars))
    for perm in itertools.permutations(range(n)):
        if p.permute(list(perm) + extra) != p:
            return False
    return all(p.invert_var(i) == p for i in range(n))


def cartan_volume_series(n: int, q: int, D: int) -> TruncatedSeries:
    """Volumes of the Cartan cells, summed by total degree.

    Obtained by substituting ``X_i = q^i`` (the Satake parameters of the
    trivial representation) into :func:`rationality_series`.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    ser = rationality_series(n, D, q)
    point = [Fraction(q) ** i for i in range(1, n + 1)]
    return ser.map(lambda c: Fraction(c.evaluate(point)))


def cartan_volume_product(n: int, q: int, D: int) -> TruncatedSeries:
    """``prod_i (1 + q^i Y) / (1 - q^{n+i} Y)``, the simplified form of the substitution."""
    facs = [((1, q**i), (1, -(q ** (n + i)))) for i in range(1, n + 1)]
    return series_from_rational_factors(facs, D)


def cartan_volume_with_extra_prefactor(n: int, q: int, D: int) -> TruncatedSeries:
    """The substituted series times ``(1 - Y)/(1 - q^n Y)``.

    Kept only to document that this variant disagrees with the n = 1 Hecke
    degrees (see the decisions ledger).
    """
    return cartan_volume_product(n, q, D) * series_from_rational_factors([((1, -1), (1, -(q**n)))], D)


# ---------------------------------------------------------------------------
# brute-force cell volume for n = 1


def count_cyclic_quotient_sublattices(p: int, a: int) -> int:
    """Number of subgroups ``M`` of ``(Z/p^a)^2`` with ``(Z/p^a)^2 / M`` cyclic of order ``p^a``.

    These are the lattices ``L`` between ``p^a Z_p^2`` and ``Z_p^2`` with
    ``Z_p^2 / L = Z/p^a``, i.e. the left cosets of ``K`` inside
    ``K diag(p^a, 1) K``.  Enumerates subgroups generated by pairs.
    """
    m = p**a
    elems = [(x, y) for x in range(m) for y in range(m)]
    seen: set[frozenset] = set()
    target = m  # |M| = m^2 / m
    for g1 in elems:
        for g2 in elems:
            sub = frozenset(
                ((i * g1[0] + j * g2[0]) % m, (i * g1[1] + j * g2[1]) % m) for i in range(m) for j in range(m)
            )
            if len(sub) == target:
                seen.add(sub)
    count = 0
    for sub in seen:
        # quotient is cyclic iff it has an element of order m, i.e. some
        # coset representative v with k*v not in M for all 0 < k < m
        if any(all(((k * v[0]) % m, (k * v[1]) % m) not in sub for k in range(1, m)) for v in elems):
            count += 1
    return count


def hnf_cyclic_quotient_count(p: int, a: int) -> int:
    """Same count via Hermite normal forms ``[[p^i, x], [0, p^j]]`` with ``i + j = a``."""
    count = 0
    for i in range(a + 1):
        j = a - i
        for x in range(p**j):
            # cyclic quotient iff the gcd of all entries is 1
            if math.gcd(p**i, x, p**j) == 1:
                count += 1
    return count


# ---------------------------------------------------------------------------
# unramified zeta integral


@dataclass
class ZetaSeriesResult:
    value: object
    tail_bound: object
    exact: bool
    degree: int
    c: object = None
    rounding_allowance: float = 0.0
    coefficients: list = field(default_factory=list, repr=False)


def satake_coefficients(sd: SatakeData, D: int) -> list[Fraction]:
    """``sum_{e_1+...+e_n=d} S(T_e)(alpha)`` for ``d = 0..D`` (exact)."""
    q = Fraction(sd.q)
    facs = [((1, -1), (1, -(q**sd.n)))]
    for i, a in enumerate(sd.alphas, start=1):
        facs.append(((1, 0, -(q ** (2 * i))), (1, -a * q**sd.n)))
        facs.append(((1,), (1, -(q**sd.n) / a)))
    return list(series_from_rational_factors(facs, D).coeffs)


def _majorant_coefficients(sd: SatakeData, D: int) -> list[Fraction]:
    q = Fraction(sd.q)
    facs = [((1, 1), (1, -(q**sd.n)))]
    for i, a in enumerate(sd.alphas, start=1):
        a = abs(a)
        facs.append(((1, 0, q ** (2 * i)), (1, -a * q**sd.n)))
        facs.append(((1,), (1, -(q**sd.n) / a)))
    return list(series_from_rational_factors(facs, D).coeffs)


def _majorant_value(sd: SatakeData, y: Fraction) -> Fraction:
    q = Fraction(sd.q)
    qn = q**sd.n
    val = (1 + y) / (1 - qn * y)
    for i, a in enumerate(sd.alphas, start=1):
        a = abs(a)
        val *= (1 + q ** (2 * i) * y * y) / ((1 - a * qn * y) * (1 - qn * y / a))
    return val


def evaluation_parameter(sd: SatakeData, s):
    """``c = chi(w) q^{-(2n+1)(s+1/2)}``: exact Fraction if the exponent is integral, else float."""
    s = to_rational(s)
    w = (2 * sd.n + 1) * (s + Fraction(1, 2))
    if w.denominator == 1:
        return sd.chi_value * Fraction(sd.q) ** (-int(w)), True
    return float(sd.chi_value) * float(sd.q) ** (-float(w)), False


def _radius(sd: SatakeData) -> Fraction:
    big = max([Fraction(1)] + [max(abs(a), 1 / abs(a)) for a in sd.alphas])
    return 1 / (Fraction(sd.q) ** sd.n * big)


_EPS = 2.0**-52


def unramified_zeta_series(sd: SatakeData, s, D: int = 24) -> ZetaSeriesResult:
    """Partial sum of ``sum_d c^d * (degree-d Satake coefficient)`` with a tail bound."""
    if D < 0:
        raise ValueError("D must be non-negative")
    c, exact = evaluation_parameter(sd, s)
    coeffs = satake_coefficients(sd, D)
    abs_c = abs(c) if exact else Fraction(abs(c))
    if abs_c >= _radius(sd):
        raise DivergenceError(
            f"divergence: |c| = {float(abs_c):.3g} is outside the radius {float(_radius(sd)):.3g}"
        )
    maj = _majorant_coefficients(sd, D)
    partial_maj = sum(m * abs_c**d for d, m in enumerate(maj))
    tail = _majorant_value(sd, abs_c) - partial_maj
    if exact:
        value = sum(a * c**d for d, a in enumerate(coeffs))
        return ZetaSeriesResult(value, tail, True, D, c, 0.0, coeffs)
    value = 0.0
    for a in reversed(coeffs):
        value = value * c + float(a)
    # float Horner plus the rounding of c itself
    allowance = 8 * _EPS * float(sum((d + 2) * m * abs_c**d for d, m in enumerate(maj)))
    return ZetaSeriesResult(value, float(tail), False, D, c, allowance, coeffs)


def unramified_zeta_closed(sd: SatakeData, s):
    """``L((2n+1)s+1/2, pi x chi) / (L((2n+1)(s+1/2), chi) prod_i L((2n+1)(2s+1)-2i, chi^2))``.

    Exact Fraction when ``(2n+1)(s+1/2)`` is an integer, float otherwise.
    """
    c, exact = evaluation_parameter(sd, s)
    if c == 0:
        return Fraction(1) if exact else 1.0
    n = sd.n
    q = Fraction(sd.q) if exact else float(sd.q)
    qn = q**n
    chi = sd.chi_value if exact else float(sd.chi_value)
    u = c / chi  # q^{-(2n+1)(s+1/2)}

    def factor(name, one_minus):
        if one_minus == 0:
            raise PoleError(f"evaluation at pole of {name}")
        return one_minus

    # inverse L-factors (1 - ...); the closed form is their ratio
    num_inv = factor("L(s, chi)", 1 - chi * u)  # L((2n+1)(s+1/2), chi)^{-1}
    for i in range(1, n + 1):
        num_inv *= factor(f"L(s, chi^2) at shift {i}", 1 - chi * chi * q ** (2 * i) * u * u)
    den_inv = factor("L(s, pi x chi) trivial part", 1 - chi * qn * u)
    for a in sd.alphas:
        a = a if exact else float(a)
        den_inv *= factor("L(s, pi x chi) at alpha", 1 - chi * a * qn * u)
        den_inv *= factor("L(s, pi x chi) at alpha^-1", 1 - chi * qn * u / a)
    return num_inv / den_inv


def random_satake_data(n: int, q: int, seed: int, chi_value=1) -> SatakeData:
    """Random rational Satake tuple with numerators and denominators in 1..4."""
    rng = random.Random(seed)
    alphas = tuple(Fraction(rng.choice([-1, 1]) * rng.randint(1, 4), rng.randint(1, 4)) for _ in range(n))
    return SatakeData(n, q, alphas, Fraction(chi_value))
