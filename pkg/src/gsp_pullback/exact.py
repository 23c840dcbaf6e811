"""Exact arithmetic used throughout the package.

Rationals are :class:`fractions.Fraction`.  On top of that this module provides

* :class:`PiPower` -- a rational multiple of an integral power of pi,
* :class:`Poly1` / :class:`RationalFunction1` -- univariate polynomials and
  rational functions over Q, kept in canonical form,
* :class:`LaurentPolynomial` -- sparse multivariate Laurent polynomials over Q,
* :class:`TruncatedSeries` -- power series in one variable ``Y`` truncated at
  degree ``D`` whose coefficients live in Q or in a Laurent polynomial ring.

Nothing here touches floating point except the explicit ``float()``
conversions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "ExactRational",
    "to_rational",
    "rational_to_str",
    "rational_from_str",
    "PiPower",
    "Poly1",
    "RationalFunction1",
    "LaurentPolynomial",
    "TruncatedSeries",
    "series_from_rational_factors",
    "ratfun_eval",
    "SingularFactorError",
    "PoleError",
]

ExactRational = Fraction


class SingularFactorError(ZeroDivisionError):
    """A series denominator has a non-invertible constant term."""


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at one of its poles."""


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return rational_from_str(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rational_to_str(x) -> str:
    x = to_rational(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


# ---------------------------------------------------------------------------
# pi powers


@dataclass(frozen=True)
class PiPower:
    """The number ``coeff * pi**exponent`` with ``coeff`` rational."""

    coeff: Fraction
    exponent: int = 0

    def __post_init__(self):
        c = to_rational(self.coeff)
        e = int(self.exponent) if c != 0 else 0
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "exponent", e)

    def __mul__(self, other):
        if isinstance(other, PiPower):
            return PiPower(self.coeff * other.coeff, self.exponent + other.exponent)
        return PiPower(self.coeff * to_rational(other), self.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiPower):
            if other.coeff == 0:
                raise ZeroDivisionError("division by zero PiPower")
            return PiPower(self.coeff / other.coeff, self.exponent - other.exponent)
        return PiPower(self.coeff / to_rational(other), self.exponent)

    def __rtruediv__(self, other):
        return PiPower(to_rational(other), 0) / self

    def __pow__(self, k: int):
        return PiPower(self.coeff**k, self.exponent * k)

    def __neg__(self):
        return PiPower(-self.coeff, self.exponent)

    def is_rational(self) -> bool:
        return self.exponent == 0

    def __float__(self):
        import math

        return float(self.coeff) * math.pi**self.exponent

    def to_json(self) -> dict:
        return {"coeff": rational_to_str(self.coeff), "pi_exp": self.exponent}

    @classmethod
    def from_json(cls, d: Mapping) -> "PiPower":
        return cls(rational_from_str(d["coeff"]), int(d["pi_exp"]))

    def __str__(self):
        if self.exponent == 0:
            return str(self.coeff)
        return f"{self.coeff}*pi^{self.exponent}"


# ---------------------------------------------------------------------------
# univariate polynomials and rational functions


class Poly1:
    """Univariate polynomial over Q; ``coeffs[i]`` multiplies ``z**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def z(cls) -> "Poly1":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly1":
        return cls((c,))

    @classmethod
    def linear(cls, a, b) -> "Poly1":
        """``a*z + b``."""
        return cls((b, a))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Poly1):
            other = Poly1.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly1):
            other = Poly1.const(other)
        return Poly1(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Poly1(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly1) else -to_rational(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            c = to_rational(other)
            return Poly1(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly1()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly1.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Poly1"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1 - dq, -1, -1):
            c = rem[i + dq] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly1(quot), Poly1(rem[:dq] if dq > 0 else [])

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        return self * (1 / self.lead())

    def gcd(self, other: "Poly1") -> "Poly1":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_affine(self, a, b) -> "Poly1":
        """Return ``p(a*z + b)``."""
        lin = Poly1.linear(a, b)
        out = Poly1()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __repr__(self):
        return f"Poly1({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mon and c == 1:
                terms.append(mon)
            elif mon and c == -1:
                terms.append(f"-{mon}")
            else:
                terms.append(f"{c}{'*' + mon if mon else ''}")
        return " + ".join(reversed(terms)).replace("+ -", "- ")


class RationalFunction1:
    """Univariate rational function over Q in canonical form.

    The numerator and denominator are coprime and the denominator is monic,
    so two equal functions compare equal structurally.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly1) else Poly1.const(num)
        den = Poly1.const(1) if den is None else (den if isinstance(den, Poly1) else Poly1.const(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly1(), Poly1.const(1)
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.lead()
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    @classmethod
    def from_factors(cls, num_roots=(), den_roots=(), scale=1) -> "RationalFunction1":
        """``scale * prod(z - a for a in num_roots) / prod(z - b for b in den_roots)``."""
        num = Poly1.const(scale)
        for a in num_roots:
            num = num * Poly1.linear(1, -to_rational(a))
        den = Poly1.const(1)
        for b in den_roots:
            den = den * Poly1.linear(1, -to_rational(b))
        return cls(num, den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction1):
            other = RationalFunction1(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other) -> "RationalFunction1":
        return other if isinstance(other, RationalFunction1) else RationalFunction1(other)

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction1(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction1(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunction1(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction1(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def poles(self) -> list[Fraction]:
        """Rational poles (roots of the denominator found by the rational root test)."""
        return _rational_roots(self.den)

    def __call__(self, x):
        return ratfun_eval(self, x)

    def compose_affine(self, a, b) -> "RationalFunction1":
        return RationalFunction1(self.num.compose_affine(a, b), self.den.compose_affine(a, b))

    def __repr__(self):
        return f"RationalFunction1(({self.num})/({self.den}))"

    __str__ = __repr__


def ratfun_eval(f: RationalFunction1, x) -> Fraction:
    """Exact value ``f(x)``; raises :class:`PoleError` at a pole."""
    x = to_rational(x)
    d = f.den(x)
    if d == 0:
        raise PoleError(f"evaluation at pole z = {x}")
    return Fraction(f.num(x)) / d


def _rational_roots(p: Poly1) -> list[Fraction]:
    if p.degree < 1:
        return []
    from math import lcm

    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    # strip zero roots
    roots: list[Fraction] = []
    while ints and ints[0] == 0:
        ints.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    divs = lambda m: [d for d in range(1, m + 1) if m % d == 0]
    q = Poly1(ints)
    for num in divs(a0):
        for dd in divs(an):
            for cand in (Fraction(num, dd), Fraction(-num, dd)):
                if cand not in roots and q(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# Laurent polynomials


Exponent = tuple[int, ...]


class LaurentPolynomial:
    """Sparse Laurent polynomial in ``nvars`` variables over Q.

    Stored as ``{exponent tuple: coefficient}`` without zero entries.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        t: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = to_rational(c)
                if c != 0:
                    t[tuple(e)] = c
        self.terms = t

    @classmethod
    def const(cls, nvars: int, c=1) -> "LaurentPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "LaurentPolynomial":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return LaurentPolynomial.const(self.nvars, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        o = self._coerce(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPolynomial(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            c = to_rational(other)
            return LaurentPolynomial(self.nvars, {e: c * v for e, v in self.terms.items()})
        o = self._coerce(other)
        t: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.nvars, t)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LaurentPolynomial":
        if not self.is_unit():
            raise SingularFactorError("only monomials are invertible in a Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPolynomial(self.nvars, {tuple(-a for a in e): 1 / c})

    def evaluate(self, point: Sequence):
        """Evaluate at a point; rational inputs give an exact result."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * (x**k)
            total = total + term
        return total

    def substitute(self, values: Mapping[int, object]) -> "LaurentPolynomial":
        """Substitute numbers for some variables, keeping the variable count."""
        t: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, v in values.items():
                if e[i]:
                    c = c * to_rational(v) ** e[i]
                ne[i] = 0
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + c
        return LaurentPolynomial(self.nvars, t)

    def permute(self, perm: Sequence[int]) -> "LaurentPolynomial":
        """Rename variable ``i`` to ``perm[i]``."""
        t = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            t[tuple(ne)] = c
        return LaurentPolynomial(self.nvars, t)

    def invert_var(self, i: int) -> "LaurentPolynomial":
        """Apply ``X_i -> X_i^{-1}``."""
        return LaurentPolynomial(
            self.nvars, {e[:i] + (-e[i],) + e[i + 1 :]: c for e, c in self.terms.items()}
        )

    def to_json(self) -> dict:
        return {",".join(map(str, e)): rational_to_str(c) for e, c in sorted(self.terms.items())}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mon = "*".join(f"X{i + 1}^{k}" if k != 1 else f"X{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# truncated power series


Coeff = Union[Fraction, LaurentPolynomial]


def _zero_like(c):
    return LaurentPolynomial(c.nvars) if isinstance(c, LaurentPolynomial) else Fraction(0)


def _unit_inverse(c):
    if isinstance(c, LaurentPolynomial):
        if not c.is_unit():
            raise SingularFactorError(f"constant term {c!r} is not a unit")
        return c.inverse()
    c = to_rational(c)
    if c == 0:
        raise SingularFactorError("singular factor: zero constant term")
    return 1 / c


class TruncatedSeries:
    """Power series ``c_0 + c_1 Y + ... + c_D Y^D`` (higher terms unknown)."""

    __slots__ = ("D", "coeffs")

    def __init__(self, coeffs: Sequence[Coeff], D: int | None = None):
        cs = list(coeffs)
        if D is None:
            D = len(cs) - 1
        if D < 0:
            raise ValueError("truncation degree must be non-negative")
        zero = _zero_like(cs[0]) if cs else Fraction(0)
        cs = [c if isinstance(c, LaurentPolynomial) else to_rational(c) for c in cs[: D + 1]]
        cs += [zero] * (D + 1 - len(cs))
        self.D = D
        self.coeffs = tuple(cs)

    @classmethod
    def from_poly(cls, coeffs: Sequence[Coeff], D: int) -> "TruncatedSeries":
        return cls(list(coeffs)[: D + 1], D)

    def __getitem__(self, d: int) -> Coeff:
        return self.coeffs[d]

    def __len__(self):
        return self.D + 1

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.D == other.D and self.coeffs == other.coeffs

    def __add__(self, other: "TruncatedSeries"):
        D = min(self.D, other.D)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[: D + 1], other.coeffs[: D + 1])], D)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.D)
        D = min(self.D, other.D)
        a, b = self.coeffs, other.coeffs
        out = []
        for d in range(D + 1):
            acc = _zero_like(a[0])
            for i in range(d + 1):
                if _nonzero(a[i]) and _nonzero(b[d - i]):
                    acc = acc + a[i] * b[d - i]
            out.append(acc)
        return TruncatedSeries(out, D)

    def map(self, f) -> "TruncatedSeries":
        return TruncatedSeries([f(c) for c in self.coeffs], self.D)

    def evaluate(self, y):
        """Partial sum ``sum_d c_d y^d`` (coefficients must be numbers)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __repr__(self):
        return f"TruncatedSeries(D={self.D}, {list(map(str, self.coeffs))})"


def _nonzero(c) -> bool:
    return not c.is_zero() if isinstance(c, LaurentPolynomial) else c != 0


def _expand_quotient(num: Sequence[Coeff], den: Sequence[Coeff], D: int) -> list[Coeff]:
    """Coefficients of ``num/den`` up to ``Y^D`` by long division."""
    if not den:
        raise SingularFactorError("singular factor: empty denominator")
    inv0 = _unit_inverse(den[0])
    zero = _zero_like(den[0])
    out: list[Coeff] = []
    for d in range(D + 1):
        acc = num[d] if d < len(num) else zero
        for i in range(1, min(d, len(den) - 1) + 1):
            if _nonzero(den[i]) and _nonzero(out[d - i]):
                acc = acc - den[i] * out[d - i]
        out.append(acc * inv0 if _nonzero(acc) else zero)
    return out


def series_from_rational_factors(factors: Iterable[Sequence], D: int) -> TruncatedSeries:
    """Expand a product of rational factors in ``Y`` to degree ``D``.

    Each factor is ``(numerator, denominator)`` where both are coefficient
    sequences in increasing powers of ``Y`` over Q or over a Laurent
    polynomial ring.  A third entry (the coefficient ring) is accepted and
    ignored; the ring is inferred from the coefficients.
    """
    if D < 0:
        raise ValueError("truncation degree must be non-negative")
    result: TruncatedSeries | None = None
    for f in factors:
        num, den = f[0], f[1]
        s = TruncatedSeries(_expand_quotient(list(num), list(den), D), D)
        result = s if result is None else result * s
    if result is None:
        return TruncatedSeries([Fraction(1)], D)
    return result
