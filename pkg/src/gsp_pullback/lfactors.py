"""Unramified local L-factors, Dirichlet characters, Gauss sums, truncated
Euler products and principal congruence subgroup volumes.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import mpmath

from . import _kernels
from .exact import Poly1, RationalFunction1, to_rational
from .hecke import DivergenceError, SatakeData

__all__ = [
    "factorize",
    "primes_up_to",
    "unit_group_generators",
    "DirichletCharacter",
    "primitive_characters",
    "LocalLFactor",
    "standard_lfactor",
    "abelian_lfactor",
    "NumericValue",
    "gauss_sum",
    "dirichlet_lvalue",
    "hurwitz_zeta",
    "partial_l_omit",
    "sp_order_mod",
    "sp_order_bruteforce",
    "principal_congruence_volume",
    "CNAssembly",
    "c_n_assembly",
]


# ---------------------------------------------------------------------------
# elementary number theory


def factorize(N: int) -> dict[int, int]:
    if N < 1:
        raise ValueError("N must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= N:
        while N % p == 0:
            out[p] = out.get(p, 0) + 1
            N //= p
        p += 1
    if N > 1:
        out[N] = out.get(N, 0) + 1
    return out


@lru_cache(maxsize=64)
def primes_up_to(P: int) -> tuple[int, ...]:
    if P < 2:
        return ()
    sieve = bytearray([1]) * (P + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(P**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i, v in enumerate(sieve) if v)


def _is_primitive_root(g: int, p: int) -> bool:
    phi = p - 1
    return all(pow(g, phi // f, p) != 1 for f in factorize(phi)) if phi > 1 else True


def unit_group_generators(N: int) -> list[tuple[int, int]]:
    """Generators of ``(Z/N)^x`` as ``(element, order)``, one cyclic factor each.

    Odd prime powers contribute a CRT lift of a primitive root; ``2^e``
    contributes ``-1`` (e >= 2) and ``5`` (e >= 3).
    """
    gens: list[tuple[int, int]] = []
    fac = factorize(N) if N > 1 else {}

    def lift(x: int, pe: int) -> int:
        rest = N // pe
        if rest == 1:
            return x % N
        # x mod pe, 1 mod rest
        return (x * rest * pow(rest, -1, pe) + pe * pow(pe, -1, rest)) % N

    for p, e in sorted(fac.items()):
        pe = p**e
        if p == 2:
            if e >= 2:
                gens.append((lift(-1, pe), 2))
            if e >= 3:
                gens.append((lift(5, pe), 2 ** (e - 2)))
            continue
        g = next(g for g in range(2, p + 1) if _is_primitive_root(g, p) or p == 2)
        if e >= 2 and pow(g, p - 1, p * p) == 1:
            g += p
        gens.append((lift(g, pe), (p - 1) * p ** (e - 1)))
    return gens


# ---------------------------------------------------------------------------
# characters


class DirichletCharacter:
    """Dirichlet character mod ``N`` with values ``exp(2 pi i * angle)``.

    Angles are exact :class:`Fraction` values in ``[0, 1)``.
    """

    def __init__(self, N: int, angles: Mapping[int, Fraction]):
        self.N = int(N)
        self.angles = {a % max(N, 1): Fraction(v) % 1 for a, v in angles.items()}
        self._check()

    @classmethod
    def from_generator_images(cls, N: int, images: Sequence) -> "DirichletCharacter":
        """``images[j]`` is the exponent ``k_j`` with ``chi(g_j) = exp(2 pi i k_j / ord_j)``."""
        gens = unit_group_generators(N)
        if len(images) != len(gens):
            raise ValueError(f"modulus {N} has {len(gens)} generators, got {len(images)} images")
        if any(Fraction(k).denominator != 1 for k in images):
            raise ValueError(f"generator images must be integer exponents, got {list(images)}")
        angles: dict[int, Fraction] = {}
        for exps in itertools.product(*(range(o) for _, o in gens)):
            a = 1 % N if N > 1 else 0
            ang = Fraction(0)
            for (g, o), x, k in zip(gens, exps, images):
                a = (a * pow(g, x, N)) % N if N > 1 else 0
                ang += Fraction(int(k) * x, o)
            angles[a] = ang
        return cls(N, angles)

    @classmethod
    def trivial(cls, N: int = 1) -> "DirichletCharacter":
        return cls.from_generator_images(N, [0] * len(unit_group_generators(N)))

    @classmethod
    def all_mod(cls, N: int) -> list["DirichletCharacter"]:
        gens = unit_group_generators(N)
        return [cls.from_generator_images(N, ks) for ks in itertools.product(*(range(o) for _, o in gens))]

    def _check(self):
        units = [a for a in range(max(self.N, 1)) if math.gcd(a, self.N) == 1]
        if sorted(self.angles) != units:
            raise ValueError("value table must cover exactly the units mod N")
        one = 1 % self.N if self.N > 1 else 0
        if self.angles[one] != 0:
            raise ValueError("chi(1) must be 1")
        for a in units:
            for b in units:
                if self.angles[(a * b) % self.N if self.N > 1 else 0] != (self.angles[a] + self.angles[b]) % 1:
                    raise ValueError("table is not multiplicative")

    def angle(self, a: int) -> Fraction | None:
        """Angle of ``chi(a)``, or ``None`` if ``gcd(a, N) > 1``."""
        if self.N == 1:
            return Fraction(0)
        return self.angles.get(a % self.N)

    def __call__(self, a: int) -> complex:
        ang = self.angle(a)
        if ang is None:
            return 0j
        return _root_of_unity(ang)

    @property
    def parity(self) -> int:
        """0 for even characters, 1 for odd ones."""
        ang = self.angle(-1)
        return 0 if ang == 0 else 1

    def order(self) -> int:
        return math.lcm(*(a.denominator for a in self.angles.values())) if self.angles else 1

    def is_real(self) -> bool:
        return all(a in (0, Fraction(1, 2)) for a in self.angles.values())

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.N != self.N:
            raise ValueError("moduli differ")
        return DirichletCharacter(self.N, {a: self.angles[a] + other.angles[a] for a in self.angles})

    def power(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.N, {a: v * k for a, v in self.angles.items()})

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.N == other.N and self.angles == other.angles

    def __hash__(self):
        return hash((self.N, frozenset(self.angles.items())))

    def conductor(self) -> int:
        N = self.N
        for M in sorted(d for d in range(1, N + 1) if N % d == 0):
            if all(self.angles[a] == 0 for a in self.angles if (a - 1) % M == 0):
                return M
        return N

    def is_primitive(self) -> bool:
        return self.conductor() == self.N

    def __repr__(self):
        return f"DirichletCharacter(N={self.N}, order={self.order()}, parity={self.parity})"


def _root_of_unity(angle: Fraction) -> complex:
    angle = Fraction(angle) % 1
    # exact special cases keep 1, i, -1, -i free of rounding
    special = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if angle in special:
        return special[angle]
    return cmath.exp(2j * math.pi * float(angle))


def primitive_characters(max_conductor: int):
    for N in range(1, max_conductor + 1):
        for chi in DirichletCharacter.all_mod(N):
            if chi.is_primitive():
                yield chi


@dataclass(frozen=True)
class NumericValue:
    value: complex
    error_bound: float

    def to_json(self) -> dict:
        v = complex(self.value)
        return {"re": f"{v.real:.15e}", "im": f"{v.imag:.15e}", "error_bound": f"{self.error_bound:.3e}"}


def gauss_sum(chi: DirichletCharacter) -> complex:
    """``sum_{a mod N, gcd(a,N)=1} chi(a) exp(2 pi i a / N)``."""
    re, im = [], []
    N = chi.N
    for a in range(max(N, 1)):
        ang = chi.angle(a)
        if ang is None:
            continue
        z = _root_of_unity(ang + Fraction(a, max(N, 1)))
        re.append(z.real)
        im.append(z.imag)
    return complex(math.fsum(re), math.fsum(im))


# ---------------------------------------------------------------------------
# local factors


@dataclass(frozen=True)
class LocalLFactor:
    """``1 / denominator(T)`` with ``T = q^{-s}`` and denominator constant term 1."""

    denominator: Poly1
    q: int

    def __post_init__(self):
        if self.denominator.coeffs[:1] != (Fraction(1),):
            raise ValueError("denominator must have constant term 1")

    @property
    def degree(self) -> int:
        return self.denominator.degree

    def as_rational_function(self) -> RationalFunction1:
        return RationalFunction1(1, self.denominator)

    def evaluate(self, s):
        """Exact value when ``s`` is an integer, float otherwise."""
        s_r = Fraction(s) if not isinstance(s, float) else None
        if s_r is not None and s_r.denominator == 1:
            T = Fraction(self.q) ** (-int(s_r))
            d = self.denominator(T)
            if d == 0:
                raise ZeroDivisionError("evaluation at pole of the local factor")
            return 1 / d
        T = float(self.q) ** (-float(s))
        return 1.0 / float(sum(float(c) * T**i for i, c in enumerate(self.denominator.coeffs)))


def standard_lfactor(sd: SatakeData) -> LocalLFactor:
    """Degree 2n+1 standard factor ``1/((1-chi T) prod (1-chi a T)(1-chi a^{-1} T))``."""
    c = sd.chi_value
    den = Poly1((1, -c))
    for a in sd.alphas:
        den = den * Poly1((1, -c * a)) * Poly1((1, -c / a))
    return LocalLFactor(den, sd.q)


def abelian_lfactor(chi_value, q: int) -> LocalLFactor:
    return LocalLFactor(Poly1((1, -to_rational(chi_value))), q)


# ---------------------------------------------------------------------------
# L-values


def _euler_lvalue(chi: DirichletCharacter, s: float, P: int) -> NumericValue:
    if s <= 1:
        raise ValueError("Euler product needs s > 1")
    logv = 0j
    for p in primes_up_to(P):
        c = chi(p)
        if c:
            logv -= cmath.log(1 - c * p ** (-s))
    val = cmath.exp(logv)
    delta = max(P, 1) ** (1 - s) / (s - 1)
    return NumericValue(val, abs(val) * math.expm1(delta))


@lru_cache(maxsize=None)
def _bernoulli_even(j: int) -> Fraction:
    b = mpmath.bernfrac(2 * j)
    return Fraction(int(b[0]), int(b[1]))


def hurwitz_zeta(s: float, x: float, M: int = 20, J: int = 10) -> tuple[float, float]:
    """Euler-Maclaurin ``zeta(s, x)`` for real ``s > 0, s != 1``; returns ``(value, bound)``.

    The summand is completely monotone, so the remainder is bounded by the
    first omitted correction term; twice that is reported.
    """
    if s <= 0 or s == 1:
        raise ValueError("hurwitz_zeta needs real s > 0, s != 1")
    head = math.fsum((k + x) ** (-s) for k in range(M))
    a = M + x
    terms = [a ** (1 - s) / (s - 1), 0.5 * a ** (-s)]
    rising = s  # s (s+1) ... (s + 2j - 2)
    for j in range(1, J + 2):
        t = float(_bernoulli_even(j)) / math.factorial(2 * j) * rising * a ** (-s - 2 * j + 1)
        if j == J + 1:
            return head + math.fsum(terms), 2 * abs(t)
        terms.append(t)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    raise AssertionError("unreachable")


def _hurwitz_lvalue(chi: DirichletCharacter, s: float, M: int) -> NumericValue:
    N = max(chi.N, 1)
    total, bound = 0j, 0.0
    for a in range(1, N + 1):
        c = chi(a)
        if not c:
            continue
        v, b = hurwitz_zeta(s, a / N, M)
        total += c * v
        bound += b
    scale = N ** (-s)
    rounding = 1e-15 * N * abs(total) * scale
    return NumericValue(total * scale, bound * scale + rounding)


def dirichlet_lvalue(chi: DirichletCharacter, s: float, method: str = "euler", P: int = 10_000, M: int = 20) -> NumericValue:
    """``L(s, chi)`` with a certified error bound.

    ``method='euler'`` multiplies the Euler factors for ``p <= P``;
    ``method='hurwitz'`` uses Hurwitz zeta values with ``M`` direct terms.
    """
    s = float(s)
    if method == "euler":
        return _euler_lvalue(chi, s, P)
    if method == "hurwitz":
        return _hurwitz_lvalue(chi, s, M)
    raise ValueError(f"unknown method {method!r}")


def partial_l_omit(chi: DirichletCharacter, s: float, omit: Iterable[int] = (), P: int = 10_000, method: str = "euler", M: int = 20) -> NumericValue:
    """``L(s, chi)`` with the Euler factors at the primes in ``omit`` removed."""
    s = float(s)
    if s <= 1:
        raise ValueError("partial L-values need s > 1")
    full = dirichlet_lvalue(chi, s, method, P, M)
    corr = 1 + 0j
    for p in set(omit):
        corr *= 1 - chi(p) * p ** (-s)
    return NumericValue(full.value * corr, full.error_bound * abs(corr) + 1e-16 * abs(full.value))


# ---------------------------------------------------------------------------
# group orders and volumes


def sp_order_mod(n: int, p: int, m: int = 1) -> int:
    """``|Sp_{2n}(Z/p^m)|``."""
    if m < 1 or n < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if len(factorize(p)) != 1 or factorize(p).get(p) != 1:
        raise ValueError(f"{p} is not prime")
    order = p ** ((m - 1) * n * (2 * n + 1)) * p ** (n * n)
    for i in range(1, n + 1):
        order *= p ** (2 * i) - 1
    return order


def sp_order_bruteforce(n: int, p: int) -> int:
    """Count all ``g`` over F_p with ``g^t J g = J`` (every candidate matrix is tested)."""
    return _kernels.count_symplectic_mod_p(n, p)


def principal_congruence_volume(n: int, p: int, m: int = 1) -> Fraction:
    """Volume of the principal congruence subgroup of level ``p^m`` when Sp_{2n}(Z_p) has volume 1."""
    return Fraction(1, sp_order_mod(n, p, m))


# ---------------------------------------------------------------------------
# assembly of C_N for n = 2


@dataclass
class CNAssembly:
    prefactor: object  # PiPower: (-1)^k pi^{2r+4-2k} c_{k,r,2,N}
    numerator: NumericValue
    denominators: tuple[NumericValue, NumericValue, NumericValue]
    value: complex
    error_bound: float


def c_n_assembly(
    k_vec: Sequence[int],
    r: int,
    satake_table: Mapping[int, SatakeData],
    chi: DirichletCharacter,
    N_factorization: Mapping[int, int],
    P: int,
    theta: float = 0.0,
    den_method: str = "hurwitz",
) -> CNAssembly:
    """Numerically assemble ``C_N(pi, chi, r)`` for n = 2.

    ``satake_table[p]`` must hold the Satake parameters at every prime
    ``p <= P`` not dividing N; the character value at p is taken from
    ``chi``.  ``theta`` bounds ``|alpha^{+-1}| <= p^theta`` for the unseen
    primes ``p > P`` and controls the numerator tail bound.
    """
    from .arch import c_krnN
    from .exact import PiPower

    n = 2
    if r <= 2:
        raise DivergenceError(f"r = {r} is outside the range of absolute convergence (need r >= 3)")
    if r - theta <= 1:
        raise DivergenceError("numerator Euler product does not converge absolutely for this theta")
    k = int(k_vec[0])
    c = c_krnN(k_vec, r, n, N_factorization)
    prefactor = PiPower((-1) ** k * c, 2 * r + 4 - 2 * k)

    bad = set(N_factorization)
    logv = 0j
    for p in primes_up_to(P):
        if p in bad:
            continue
        if p not in satake_table:
            raise KeyError(f"no Satake data supplied for p = {p}")
        sd = satake_table[p]
        if sd.n != n or sd.q != p:
            raise ValueError(f"Satake data for p = {p} has wrong shape")
        x = chi(p) * p ** (-r)
        logv -= cmath.log(1 - x)
        for a in sd.alphas:
            a = float(a)
            logv -= cmath.log(1 - x * a) + cmath.log(1 - x / a)
    num_val = cmath.exp(logv)
    delta = (2 * n + 1) * max(P, 1) ** (1 - (r - theta)) / (r - theta - 1)
    numerator = NumericValue(num_val, abs(num_val) * math.expm1(delta))

    chi2 = chi.power(2)
    dens = (
        partial_l_omit(chi, r + 2, bad, P, den_method),
        partial_l_omit(chi2, 2 * r, bad, P, den_method),
        partial_l_omit(chi2, 2 * r + 2, bad, P, den_method),
    )
    den_prod = dens[0].value * dens[1].value * dens[2].value
    pref = float(prefactor)
    value = pref * numerator.value / den_prod
    # first-order propagation of relative errors, plus a margin for rounding
    rel = numerator.error_bound / abs(numerator.value) + sum(d.error_bound / abs(d.value) for d in dens)
    err = abs(value) * (math.expm1(1.01 * rel) + 1e-14)
    return CNAssembly(prefactor, numerator, dens, value, err)
