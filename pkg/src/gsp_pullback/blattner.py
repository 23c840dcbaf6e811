"""Root data for Sp(2n), the Harish-Chandra parameter / minimal K-type
dictionary, the parity condition and the Blattner multiplicity formula.

Weights are given in the basis ``e_1, ..., e_n``.  Since ``rho_c`` is
half-integral for even ``n`` all weights are doubled internally.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels

__all__ = [
    "RootSystemData",
    "root_system",
    "HCParameter",
    "KTypeVector",
    "hc_to_minimal_ktype",
    "minimal_ktype_to_hc",
    "parity_condition",
    "q_count",
    "q_count_naive",
    "blattner_terms",
    "blattner_multiplicity",
    "parity_valid_parameters",
]


@dataclass(frozen=True)
class RootSystemData:
    n: int
    compact_roots: tuple[tuple[int, ...], ...]
    noncompact_roots: tuple[tuple[int, ...], ...]
    rho_c: tuple[Fraction, ...]
    rho_n: tuple[Fraction, ...]

    def weyl_group(self):
        """Compact Weyl group as ``(permutation, sign)`` pairs."""
        return _signed_permutations(self.n)


def _unit(n: int, *idx: int) -> tuple[int, ...]:
    v = [0] * n
    for i in idx:
        v[i] += 1
    return tuple(v)


def _minus(n: int, i: int, j: int) -> tuple[int, ...]:
    v = [0] * n
    v[i], v[j] = 1, -1
    return tuple(v)


@lru_cache(maxsize=None)
def root_system(n: int) -> RootSystemData:
    if n < 1:
        raise ValueError("n must be positive")
    compact = tuple(_minus(n, i, j) for i in range(n) for j in range(i + 1, n))
    noncompact = tuple(_unit(n, i, j) for i in range(n) for j in range(i, n))
    rho_c = tuple(Fraction(n + 1 - 2 * j, 2) for j in range(1, n + 1))
    rho_n = tuple(Fraction(n + 1, 2) for _ in range(n))
    return RootSystemData(n, compact, noncompact, rho_c, rho_n)


@lru_cache(maxsize=None)
def _signed_permutations(n: int):
    out = []
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        out.append((perm, -1 if inv % 2 else 1))
    return tuple(out)


# ---------------------------------------------------------------------------
# parameters


class HCParameter(tuple):
    """Harish-Chandra parameter ``l_1 > l_2 > ... > l_n > 0``."""

    def __new__(cls, ell: Sequence[int]):
        ell = tuple(int(x) for x in ell)
        if not ell:
            raise ValueError("empty Harish-Chandra parameter")
        if ell[-1] <= 0 or any(a <= b for a, b in zip(ell, ell[1:])):
            raise ValueError(f"Harish-Chandra parameter must be strictly decreasing and positive: {ell}")
        return super().__new__(cls, ell)

    @property
    def n(self) -> int:
        return len(self)


class KTypeVector(tuple):
    """Highest weight ``k_1 >= ... >= k_n`` of a K-type."""

    def __new__(cls, k: Sequence[int]):
        k = tuple(int(x) for x in k)
        if not k:
            raise ValueError("empty K-type")
        if any(a < b for a, b in zip(k, k[1:])):
            raise ValueError(f"K-type must be weakly decreasing: {k}")
        return super().__new__(cls, k)

    @property
    def n(self) -> int:
        return len(self)

    @classmethod
    def scalar(cls, k: int, n: int) -> "KTypeVector":
        return cls((k,) * n)


def hc_to_minimal_ktype(lam: Sequence[int]) -> KTypeVector:
    lam = HCParameter(lam)
    return KTypeVector(l + j for j, l in enumerate(lam, start=1))


def minimal_ktype_to_hc(k: Sequence[int]) -> HCParameter:
    k = KTypeVector(k)
    return HCParameter(kj - j for j, kj in enumerate(k, start=1))


def parity_condition(lam: Sequence[int]) -> bool:
    """True iff every consecutive difference ``l_{j-1} - l_j`` is odd."""
    lam = HCParameter(lam)
    ok = all((a - b) % 2 == 1 for a, b in zip(lam, lam[1:]))
    k = hc_to_minimal_ktype(lam)
    assert ok == (len({x % 2 for x in k}) == 1)
    return ok


def parity_valid_parameters(n: int, max_ell1: int):
    """All parity-valid ``lambda`` with ``l_1 <= max_ell1``."""
    for ell in itertools.combinations(range(max_ell1, 0, -1), n):
        if all((a - b) % 2 == 1 for a, b in zip(ell, ell[1:])):
            yield HCParameter(ell)


# ---------------------------------------------------------------------------
# Q-function


_TABLES: dict[int, tuple[tuple[int, ...], np.ndarray]] = {}


def _table_for(n: int, need: Sequence[int]) -> np.ndarray:
    cur = _TABLES.get(n)
    if cur is not None and all(a >= b for a, b in zip(cur[0], need)):
        return cur[1]
    bounds = tuple(max(b, (cur[0][i] if cur else 0), 8) for i, b in enumerate(need))
    tab = _kernels.q_table(n, bounds)
    _TABLES[n] = (bounds, tab)
    return tab


def q_count(mu: Sequence[int], n: int | None = None) -> int:
    """Number of multisets of roots ``e_i + e_j`` (i <= j) summing to ``mu``."""
    mu = tuple(int(x) for x in mu)
    n = len(mu) if n is None else n
    if len(mu) != n:
        raise ValueError("weight has wrong length")
    if any(x < 0 for x in mu) or sum(mu) % 2:
        return 0
    tab = _table_for(n, mu)
    return int(tab[mu])


def q_count_naive(mu: Sequence[int], n: int | None = None) -> int:
    """Direct enumeration of root multiplicities (slow reference)."""
    mu = tuple(int(x) for x in mu)
    n = len(mu) if n is None else n
    if any(x < 0 for x in mu) or sum(mu) % 2:
        return 0
    roots = root_system(n).noncompact_roots

    def rec(idx: int, rest: tuple[int, ...]) -> int:
        if idx == len(roots):
            return int(not any(rest))
        root = roots[idx]
        total = 0
        cur = rest
        while all(x >= 0 for x in cur):
            total += rec(idx + 1, cur)
            cur = tuple(a - b for a, b in zip(cur, root))
        return total

    return rec(0, mu)


# ---------------------------------------------------------------------------
# Blattner formula


def _doubled(v) -> tuple[int, ...]:
    return tuple(int(2 * Fraction(x)) for x in v)


def blattner_terms(lam: Sequence[int], m_vec: Sequence[int]):
    """Yield ``(permutation, sign, mu, Q(mu))`` for every compact Weyl element.

    ``mu`` is ``None`` when the argument is not integral.
    """
    lam = HCParameter(lam)
    m_vec = KTypeVector(m_vec)
    n = lam.n
    if m_vec.n != n:
        raise ValueError("lambda and K-type have different lengths")
    rs = root_system(n)
    top = tuple(2 * m + r for m, r in zip(m_vec, _doubled(rs.rho_c)))
    shift = tuple(2 * l + r for l, r in zip(lam, _doubled(rs.rho_n)))
    for perm, sign in rs.weyl_group():
        arg2 = tuple(top[perm[i]] - shift[i] for i in range(n))
        if any(a % 2 for a in arg2):
            yield perm, sign, None, 0
            continue
        mu = tuple(a // 2 for a in arg2)
        yield perm, sign, mu, q_count(mu, n)


def blattner_multiplicity(lam: Sequence[int], m_vec: Sequence[int]) -> int:
    """Multiplicity of the K-type ``m_vec`` in the discrete series with parameter ``lam``."""
    return sum(sign * q for _, sign, _, q in blattner_terms(lam, m_vec))
