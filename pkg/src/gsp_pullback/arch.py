"""Exact archimedean factors: gamma_n, beta ratios, C_k, A_k, B_lambda by two
routes, alpha_n, the Siegel volume and the normalizing constant c_{k,r,n,N}.

The variable ``z`` stands for ``(2n+1)s - 1/2`` and ``t = (z+1)/2 = (n+1/2)s + 1/4``.
Two-power prefactors ``2^{a z + b}`` are carried as the pair ``(a, b)``; the
phase ``i^{nk}`` as an exponent mod 4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import mpmath

from .blattner import HCParameter, KTypeVector, minimal_ktype_to_hc
from .exact import PiPower, PoleError, Poly1, RationalFunction1, ratfun_eval, to_rational
from .lfactors import principal_congruence_volume

__all__ = [
    "ArchContext",
    "ExactConstant",
    "ArchExpression",
    "CkExpression",
    "CriticalRangeError",
    "factorial_product",
    "gamma_n",
    "beta_ratio",
    "beta_float",
    "a_k",
    "a_k_value",
    "a_k_expression",
    "b_lambda_scalar",
    "c_k_function",
    "b_lambda_general",
    "b_lambda_general_at",
    "alpha_n",
    "siegel_volume",
    "critical_points",
    "c_krnN",
]


class CriticalRangeError(ValueError):
    pass


@dataclass(frozen=True)
class ArchContext:
    n: int
    kvec: KTypeVector

    def __init__(self, kvec: Sequence[int], n: int | None = None):
        kv = KTypeVector(kvec)
        n = len(kv) if n is None else n
        if len(kv) != n:
            raise ValueError("k-vector length differs from n")
        if kv[-1] <= n:
            raise ValueError(f"need k_n > n, got k = {tuple(kv)}")
        if len({x % 2 for x in kv}) != 1:
            raise ValueError(f"all k_j must share one parity, got k = {tuple(kv)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "kvec", kv)

    @property
    def k(self) -> int:
        return self.kvec[0]

    @property
    def lam(self) -> HCParameter:
        return minimal_ktype_to_hc(self.kvec)


@dataclass(frozen=True)
class ExactConstant:
    """``i^phase * value * 2^two_exp`` with ``value`` a :class:`PiPower`."""

    value: PiPower
    phase: int = 0
    two_exp: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)
        object.__setattr__(self, "two_exp", to_rational(self.two_exp))

    def real_form(self) -> "ExactConstant":
        """Fold an even phase into the sign of the coefficient."""
        if self.phase % 2:
            return self
        sign = -1 if self.phase == 2 else 1
        return ExactConstant(self.value * sign, 0, self.two_exp)

    def pi_power(self) -> PiPower:
        """Exact value when the phase is real and the two-power integral."""
        rf = self.real_form()
        if rf.phase != 0 or rf.two_exp.denominator != 1:
            raise ValueError("value is not a rational multiple of a power of pi")
        return rf.value * Fraction(2) ** int(rf.two_exp)

    def __complex__(self):
        return (1j) ** self.phase * float(self.value) * 2.0 ** float(self.two_exp)

    def to_json(self) -> dict:
        return {
            "phase_i_power": self.phase,
            "coeff": str(self.value.coeff),
            "pi_exp": self.value.exponent,
            "two_exp": str(self.two_exp),
        }


@dataclass(frozen=True)
class ArchExpression:
    """``i^phase * pi^pi_exp * 2^(a z + b) * rational(z)``."""

    phase: int
    pi_exp: int
    two_power: tuple[Fraction, Fraction]
    rational: RationalFunction1

    def at_z(self, z) -> ExactConstant:
        z = to_rational(z)
        val = ratfun_eval(self.rational, z)
        a, b = self.two_power
        return ExactConstant(PiPower(val, self.pi_exp), self.phase, a * z + b)


def factorial_product(n: int) -> int:
    """``prod_{m=1}^n (m-1)!``."""
    out = 1
    for m in range(1, n + 1):
        out *= math.factorial(m - 1)
    return out


def _z() -> Poly1:
    return Poly1.z()


@lru_cache(maxsize=None)
def gamma_n(n: int) -> RationalFunction1:
    """``prod_{m=1}^n (m-1)! prod_{j=1}^m 1/(z - m - 1 + 2j)``."""
    if n < 1:
        raise ValueError("n must be positive")
    den = Poly1.const(1)
    for m in range(1, n + 1):
        for j in range(1, m + 1):
            den = den * Poly1.linear(1, -m - 1 + 2 * j)
    return RationalFunction1(Poly1.const(factorial_product(n)), den)


def beta_ratio(ell_j: int, k: int, j: int) -> RationalFunction1:
    """``beta(l_j, s) / beta(k - j, s)`` as a rational function of ``t``."""
    kj = ell_j + j
    if (k - kj) % 2 or k < kj:
        raise ValueError(f"parity violation: k - k_j = {k - kj} must be even and non-negative")
    m = (k - kj) // 2
    half = Fraction(ell_j, 2)
    num, den = Poly1.const(1), Poly1.const(1)
    for i in range(m):
        num = num * Poly1.linear(1, -half - m + i)
        den = den * Poly1.linear(1, half + m - 1 - i)
    return RationalFunction1(num, den)


def beta_float(m: int, s: float, n: int) -> float:
    """``beta(m, s) = B(t + m/2, t - m/2)`` via log-gamma (oracle only)."""
    t = (n + 0.5) * s + 0.25
    x, y = t + m / 2, t - m / 2
    if x <= 0 or y <= 0:
        raise ValueError("log-gamma oracle needs positive arguments")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def _a_k_rational(n: int, kvec: tuple[int, ...]) -> RationalFunction1:
    k = kvec[0]
    num, den = Poly1.const(1), Poly1.const(1)
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            den = den * Poly1.linear(1, k - 1 - j + 2 * i)
    for j in range(1, n + 1):
        kj = kvec[j - 1]
        for i in range((k - kj) // 2):
            c = k - 1 - j - 2 * i
            num = num * Poly1.linear(1, -c)
            den = den * Poly1.linear(1, c)
    return RationalFunction1(num, den)


def a_k(ctx: ArchContext) -> tuple[tuple[Fraction, Fraction], RationalFunction1]:
    """Return ``((a, b), R)`` with ``A_k(z) = 2^{a z + b} R(z)``; here ``(a, b) = (-n, n)``."""
    return (Fraction(-ctx.n), Fraction(ctx.n)), _a_k_rational(ctx.n, tuple(ctx.kvec))


def a_k_value(ctx: ArchContext, z) -> Fraction:
    """``A_k(z)`` at an integer ``z`` (exact rational)."""
    z = to_rational(z)
    if z.denominator != 1:
        raise ValueError("A_k is rational only at integer points")
    (a, b), R = a_k(ctx)
    return ratfun_eval(R, z) * Fraction(2) ** int(a * z + b)


def a_k_expression(ctx: ArchContext) -> ArchExpression:
    """``i^{nk} pi^{n(n+1)/2} A_k(z)``."""
    two, R = a_k(ctx)
    return ArchExpression((ctx.n * ctx.k) % 4, ctx.n * (ctx.n + 1) // 2, two, R)


def b_lambda_scalar(n: int, k: int, s) -> ExactConstant:
    """Scalar minimal K-type: ``pi^{n(n+1)/2}/prod (m-1)! i^{nk} 2^{-n(2n+1)s+3n/2} gamma_n((2n+1)s - 1/2 + k)``."""
    if k <= n:
        raise ValueError("need k > n")
    s = to_rational(s)
    arg = (2 * n + 1) * s - Fraction(1, 2) + k
    try:
        g = ratfun_eval(gamma_n(n), arg)
    except PoleError as exc:
        raise PoleError(f"evaluation at pole of gamma_{n} at {arg}") from exc
    coeff = g / factorial_product(n)
    return ExactConstant(PiPower(coeff, n * (n + 1) // 2), n * k, -n * (2 * n + 1) * s + Fraction(3 * n, 2))


@dataclass(frozen=True)
class CkExpression:
    """``C_k(s) = pi^{n(n+1)/2}/prod (m-1)! 2^{-n(z-1)} gamma_n(z+k) / prod_j beta(k-j, s)``.

    The beta values in the denominator are kept symbolic; they cancel only
    against beta values supplied by :meth:`times_betas`.
    """

    n: int
    k: int
    pi_exp: int
    two_power: tuple[Fraction, Fraction]
    rational: RationalFunction1  # gamma_n(z+k)/prod (m-1)!, in z
    beta_denominators: tuple[int, ...]  # the m in beta(m, s)

    def times_betas(self, ells: Sequence[int], phase: int) -> ArchExpression:
        if len(ells) != len(self.beta_denominators):
            raise ValueError("need one beta value per denominator")
        R = self.rational
        for j, (ell, m) in enumerate(zip(ells, self.beta_denominators), start=1):
            assert m == self.k - j
            # t = (z + 1)/2
            R = R * beta_ratio(ell, self.k, j).compose_affine(Fraction(1, 2), Fraction(1, 2))
        return ArchExpression(phase % 4, self.pi_exp, self.two_power, R)

    def evaluate_float(self, s: float) -> float:
        """Numerical value with the beta functions through log-gamma (oracle)."""
        z = (2 * self.n + 1) * s - 0.5
        a, b = self.two_power
        val = math.pi**self.pi_exp * 2.0 ** (float(a) * z + float(b))
        num, den = self.rational.num, self.rational.den
        val *= float(num(Fraction(z))) / float(den(Fraction(z)))
        for m in self.beta_denominators:
            val /= beta_float(m, s, self.n)
        return val


def c_k_function(n: int, k: int) -> CkExpression:
    if k <= n:
        raise ValueError("need k > n")
    R = gamma_n(n).compose_affine(1, k) * Fraction(1, factorial_product(n))
    return CkExpression(
        n,
        k,
        n * (n + 1) // 2,
        (Fraction(-n), Fraction(n)),
        R,
        tuple(k - j for j in range(1, n + 1)),
    )


def b_lambda_general(ctx: ArchContext) -> ArchExpression:
    """``B_lambda = i^{nk} (prod_j beta(l_j, s)) C_k(s)`` after cancelling the betas."""
    lam = ctx.lam
    if any((a - b) % 2 == 0 for a, b in zip(lam, lam[1:])):
        raise ValueError("parity condition fails")
    ck = c_k_function(ctx.n, ctx.k)
    return ck.times_betas(list(lam), ctx.n * ctx.k)


def b_lambda_general_at(ctx: ArchContext, s) -> ExactConstant:
    s = to_rational(s)
    z = (2 * ctx.n + 1) * s - Fraction(1, 2)
    try:
        return b_lambda_general(ctx).at_z(z)
    except PoleError as exc:
        raise PoleError(f"evaluation at pole: s = {s}") from exc


def alpha_n(n: int) -> PiPower:
    """``(4 pi)^{n(n+1)/2} / prod (m-1)!``."""
    if n < 1:
        raise ValueError("n must be positive")
    N = n * (n + 1) // 2
    return PiPower(Fraction(4**N, factorial_product(n)), N)


def _zeta_even(k: int) -> PiPower:
    """``zeta(2k)`` as a rational multiple of ``pi^{2k}``."""
    b = mpmath.bernfrac(2 * k)
    B = Fraction(int(b[0]), int(b[1]))
    return PiPower((-1) ** (k + 1) * B * 2 ** (2 * k) / (2 * math.factorial(2 * k)), 2 * k)


def siegel_volume(n: int) -> PiPower:
    """``2 prod_{k=1}^n pi^{-k} (k-1)! zeta(2k)`` (covolume of Sp_{2n}(Z))."""
    if n < 1:
        raise ValueError("n must be positive")
    out = PiPower(2, 0)
    for k in range(1, n + 1):
        out = out * PiPower(math.factorial(k - 1), -k) * _zeta_even(k)
    return out


def critical_points(kvec: Sequence[int], n: int | None = None) -> list[int]:
    n = len(kvec) if n is None else n
    top = kvec[-1] - n
    return [r for r in range(1, top + 1) if (r - top) % 2 == 0]


def c_krnN(
    kvec: Sequence[int],
    r: int,
    n: int | None = None,
    N_factorization: Mapping[int, int] | None = None,
    volume: PiPower | None = None,
) -> Fraction:
    """``prod_{p | N} vol(Gamma(p^m)) * pi^{n(n+1)/2} / vol * A_k(r - 1)`` (exact rational)."""
    ctx = ArchContext(kvec, n)
    n = ctx.n
    if r not in critical_points(ctx.kvec, n):
        raise CriticalRangeError(
            f"r = {r} is not critical: need 1 <= r <= {ctx.kvec[-1] - n} and r = k_n - n mod 2"
        )
    vol = siegel_volume(n) if volume is None else volume
    const = PiPower(1, n * (n + 1) // 2) / vol
    for p, m in (N_factorization or {}).items():
        const = const * principal_congruence_volume(n, p, m)
    const = const * a_k_value(ctx, r - 1)
    if not const.is_rational():
        raise AssertionError(f"pi-powers failed to cancel: {const}")
    if const.coeff == 0:
        raise AssertionError("constant vanished")
    return const.coeff
