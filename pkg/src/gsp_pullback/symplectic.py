"""Exact symplectic and GSp matrix algebra over Q.

Conventions: ``J_n = [[0, I_n], [-I_n, 0]]`` and ``g`` lies in GSp(2n) when
``g^t J_n g = mu J_n`` for a nonzero rational ``mu`` (the multiplier).
Everything is exact; matrices are small (size at most a dozen or so).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exact import rational_from_str, rational_to_str, to_rational

__all__ = [
    "RatMatrix",
    "NotInGSpError",
    "ZeroMultiplierError",
    "MultiplierMismatchError",
    "NotInSiegelParabolicError",
    "LemmaViolationError",
    "SymplecticMatrix",
    "SiegelFactorization",
    "j_matrix",
    "gsp_multiplier",
    "embed_doubling",
    "alpha_matrix",
    "q_matrix",
    "q_matrix_composed",
    "siegel_factor",
    "levi_element",
    "unipotent_radical_element",
    "coset_conjugate",
    "random_symplectic",
    "random_gsp",
    "random_parabolic_pair",
]


class NotInGSpError(ValueError):
    pass


class ZeroMultiplierError(ValueError):
    pass


class MultiplierMismatchError(ValueError):
    pass


class NotInSiegelParabolicError(ValueError):
    pass


class LemmaViolationError(AssertionError):
    """A conjugate expected in the Siegel parabolic is not block upper triangular."""


# ---------------------------------------------------------------------------
# dense rational matrices


class RatMatrix:
    """Immutable dense matrix with :class:`Fraction` entries."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Sequence[Sequence]):
        rs = tuple(tuple(to_rational(x) for x in r) for r in rows)
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise ValueError("ragged matrix")
        self.rows = rs
        self.nrows = len(rs)
        self.ncols = len(rs[0]) if rs else 0
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple) -> "RatMatrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0]) if rows else 0
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "RatMatrix":
        n = m if n is None else n
        z = Fraction(0)
        return cls._raw(tuple((z,) * n for _ in range(m)))

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        z = Fraction(0)
        return cls._raw(
            tuple(tuple(to_rational(entries[i]) if i == j else z for j in range(n)) for i in range(n))
        )

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RatMatrix"]]) -> "RatMatrix":
        rows = []
        for brow in blocks:
            h = brow[0].nrows
            for i in range(h):
                r: list = []
                for b in brow:
                    if b.nrows != h:
                        raise ValueError("block heights differ")
                    r.extend(b.rows[i])
                rows.append(tuple(r))
        return cls._raw(tuple(rows))

    @classmethod
    def block_diag(cls, *mats: "RatMatrix") -> "RatMatrix":
        n = sum(m.nrows for m in mats)
        out = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for m in mats:
            for i in range(m.nrows):
                for j in range(m.ncols):
                    out[off + i][off + j] = m.rows[i][j]
            off += m.nrows
        return cls._raw(tuple(tuple(r) for r in out))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> "RatMatrix":
        return RatMatrix._raw(tuple(r[c0:c1] for r in self.rows[r0:r1]))

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def transpose(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(zip(*self.rows)) if self.rows else ())

    T = property(transpose)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return RatMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RatMatrix":
        c = to_rational(c)
        return RatMatrix._raw(tuple(tuple(c * a for a in r) for r in self.rows))

    def _integer_form(self):
        den = 1
        for r in self.rows:
            for a in r:
                if a.denominator != 1:
                    den = lcm(den, a.denominator)
        ints = [[(a.numerator * (den // a.denominator)) for a in r] for r in self.rows]
        return ints, den

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # scale both to integer matrices and multiply with Python ints
        a, da = self._integer_form()
        b, db = other._integer_form()
        bt = list(zip(*b))
        den = da * db
        rows = []
        for r in a:
            rows.append(tuple(Fraction(sum(x * y for x, y in zip(r, c) if x), den) for c in bt))
        return RatMatrix._raw(tuple(rows))

    __mul__ = __matmul__

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            p = m[c][c]
            det *= p
            for i in range(c + 1, n):
                f = m[i][c] / p
                if f:
                    mi, mc = m[i], m[c]
                    for j in range(c, n):
                        mi[j] -= f * mc[j]
        return det

    def inverse(self) -> "RatMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            p = m[c][c]
            m[c] = [x / p for x in m[c]]
            for i in range(n):
                if i != c and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return RatMatrix._raw(tuple(tuple(r[n:]) for r in m))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def to_json(self) -> list:
        return [[rational_to_str(a) for a in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        return cls([[rational_from_str(a) for a in r] for r in data])

    def __repr__(self):
        return "RatMatrix([" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "])"


def _as_matrix(g) -> RatMatrix:
    if isinstance(g, SymplecticMatrix):
        return g.matrix
    if isinstance(g, RatMatrix):
        return g
    return RatMatrix(g)


def j_matrix(n: int) -> RatMatrix:
    I, Z = RatMatrix.identity(n), RatMatrix.zeros(n)
    return RatMatrix.block([[Z, I], [-I, Z]])


# ---------------------------------------------------------------------------
# GSp membership


def gsp_multiplier(g, n: int | None = None) -> Fraction:
    """Return ``mu`` with ``g^t J g = mu J``; raise if ``g`` is not in GSp(2n)."""
    m = _as_matrix(g)
    if m.nrows != m.ncols or m.nrows % 2:
        raise NotInGSpError(f"matrix of shape {m.shape} is not 2n x 2n")
    if n is None:
        n = m.nrows // 2
    if m.nrows != 2 * n:
        raise NotInGSpError(f"matrix of shape {m.shape} is not {2 * n} x {2 * n}")
    if n == 0:
        return Fraction(1)
    J = j_matrix(n)
    lhs = m.transpose() @ J @ m
    mu = lhs[0, n]
    if lhs != J.scale(mu):
        raise NotInGSpError("not in GSp: g^t J g is not a multiple of J")
    if mu == 0:
        raise ZeroMultiplierError("zero multiplier (singular matrix)")
    return mu


@dataclass(frozen=True)
class SymplecticMatrix:
    """Element of GSp(2n, Q) with its cached multiplier."""

    matrix: RatMatrix
    multiplier: Fraction
    n: int

    @classmethod
    def from_matrix(cls, m) -> "SymplecticMatrix":
        m = _as_matrix(m)
        mu = gsp_multiplier(m)
        return cls(m, mu, m.nrows // 2)

    @classmethod
    def _trusted(cls, m: RatMatrix, mu) -> "SymplecticMatrix":
        return cls(m, to_rational(mu), m.nrows // 2)

    @classmethod
    def identity(cls, n: int) -> "SymplecticMatrix":
        return cls(RatMatrix.identity(2 * n), Fraction(1), n)

    @classmethod
    def j(cls, n: int) -> "SymplecticMatrix":
        return cls(j_matrix(n), Fraction(1), n)

    @property
    def size(self) -> int:
        return 2 * self.n

    def is_sp(self) -> bool:
        return self.multiplier == 1

    def blocks(self):
        n, m = self.n, self.matrix
        return (m.sub(0, n, 0, n), m.sub(0, n, n, 2 * n), m.sub(n, 2 * n, 0, n), m.sub(n, 2 * n, n, 2 * n))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(self.matrix @ other.matrix, self.multiplier * other.multiplier, self.n)

    __mul__ = __matmul__

    def inverse(self) -> "SymplecticMatrix":
        # g^{-1} = -mu^{-1} J g^t J
        J = j_matrix(self.n)
        inv = (J @ self.matrix.transpose() @ J).scale(-1 / self.multiplier)
        return SymplecticMatrix(inv, 1 / self.multiplier, self.n)

    def __eq__(self, other):
        return isinstance(other, SymplecticMatrix) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def to_json(self) -> dict:
        return {"n": self.n, "multiplier": rational_to_str(self.multiplier), "entries": self.matrix.to_json()}


# ---------------------------------------------------------------------------
# doubling embedding and coset matrices


def embed_doubling(g1, g2) -> SymplecticMatrix:
    """Place ``(g1, g2)`` in GSp(2a+2b) with the sign flips on ``B_1`` and ``C_1``."""
    g1 = g1 if isinstance(g1, SymplecticMatrix) else SymplecticMatrix.from_matrix(g1)
    g2 = g2 if isinstance(g2, SymplecticMatrix) else SymplecticMatrix.from_matrix(g2)
    if g1.multiplier != g2.multiplier:
        raise MultiplierMismatchError(
            f"multiplier mismatch: {g1.multiplier} != {g2.multiplier}"
        )
    a, b = g1.n, g2.n
    A1, B1, C1, D1 = g1.blocks()
    A2, B2, C2, D2 = g2.blocks()
    Zab, Zba = RatMatrix.zeros(a, b), RatMatrix.zeros(b, a)
    m = RatMatrix.block(
        [
            [A1, Zab, -B1, Zab],
            [Zba, A2, Zba, B2],
            [-C1, Zab, D1, Zab],
            [Zba, C2, Zba, D2],
        ]
    )
    return SymplecticMatrix(m, g1.multiplier, a + b)


def _tilde_i(n: int, r: int) -> RatMatrix:
    return RatMatrix.diag([0] * (n - r) + [1] * r)


def _check_r(n: int, r: int):
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (isinstance(r, int) and 0 <= r <= n):
        raise ValueError(f"r out of range: need 0 <= r <= {n}, got {r!r}")


def alpha_matrix(n: int, r: int) -> SymplecticMatrix:
    """The coset representative ``alpha_r`` of size 4n."""
    _check_r(n, r)
    I, Z, It = RatMatrix.identity(n), RatMatrix.zeros(n), _tilde_i(n, r)
    m = RatMatrix.block([[I, Z, Z, Z], [Z, I, Z, Z], [Z, It, I, Z], [It, Z, Z, I]])
    return SymplecticMatrix(m, Fraction(1), 2 * n)


def _padded_j(n: int, r: int) -> SymplecticMatrix:
    """``J_r`` acting on the last r coordinates of each half, identity elsewhere."""
    Ip, It = RatMatrix.identity(n) - _tilde_i(n, r), _tilde_i(n, r)
    return SymplecticMatrix(RatMatrix.block([[Ip, It], [-It, Ip]]), Fraction(1), n)


def q_matrix(n: int, r: int) -> SymplecticMatrix:
    """The matrix ``Q_r`` of size 4n, written out blockwise."""
    _check_r(n, r)
    I, Z = RatMatrix.identity(n), RatMatrix.zeros(n)
    It = _tilde_i(n, r)
    Ip = I - It
    m = RatMatrix.block(
        [
            [I, Z, Z, Z],
            [Z, Ip, Z, It],
            [Z, Z, I, It],
            [It, -It, Z, Ip],
        ]
    )
    return SymplecticMatrix(m, Fraction(1), 2 * n)


def q_matrix_composed(n: int, r: int) -> SymplecticMatrix:
    """``alpha_r`` times the doubling image of ``(I_{2n}, J_r padded)``."""
    return alpha_matrix(n, r) @ embed_doubling(SymplecticMatrix.identity(n), _padded_j(n, r))


# ---------------------------------------------------------------------------
# Siegel parabolic


@dataclass(frozen=True)
class SiegelFactorization:
    """``p = diag(A, v A^{-t}) [[I, X], [0, I]]``."""

    A: RatMatrix
    v: Fraction
    X: RatMatrix

    @property
    def half(self) -> int:
        return self.A.nrows

    def d_value(self) -> Fraction:
        if self.half % 2:
            raise ValueError("d is defined on parabolics of size 4n")
        return self.A.det() / self.v ** (self.half // 2)

    def reassemble(self) -> RatMatrix:
        N = self.half
        I, Z = RatMatrix.identity(N), RatMatrix.zeros(N)
        levi = RatMatrix.block([[self.A, Z], [Z, self.A.transpose().inverse().scale(self.v)]])
        return levi @ RatMatrix.block([[I, self.X], [Z, I]])


def siegel_factor(p) -> tuple[SiegelFactorization, Fraction]:
    """Factor an element of the Siegel parabolic of GSp(4n) and return ``d(p)``."""
    m = _as_matrix(p)
    if m.nrows != m.ncols or m.nrows % 4:
        raise NotInSiegelParabolicError(f"expected a 4n x 4n matrix, got shape {m.shape}")
    N = m.nrows // 2
    if not m.sub(N, 2 * N, 0, N).is_zero():
        raise NotInSiegelParabolicError("not in Siegel parabolic: lower-left block is nonzero")
    A, B, D = m.sub(0, N, 0, N), m.sub(0, N, N, 2 * N), m.sub(N, 2 * N, N, 2 * N)
    if A.det() == 0:
        raise NotInSiegelParabolicError("not in Siegel parabolic: upper-left block is singular")
    DAt = D @ A.transpose()
    v = DAt[0, 0]
    if v == 0 or DAt != RatMatrix.identity(N).scale(v):
        raise NotInSiegelParabolicError("not in Siegel parabolic: D A^t is not scalar")
    X = A.inverse() @ B
    if not X.is_symmetric():
        raise NotInSiegelParabolicError("not in Siegel parabolic: unipotent part not symmetric")
    f = SiegelFactorization(A, v, X)
    return f, f.d_value()


# ---------------------------------------------------------------------------
# random elements


def _random_unimodular(rng: random.Random, n: int, steps: int = 3) -> RatMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    if n and rng.random() < 0.5:
        rows[0] = [-a for a in rows[0]]
    return RatMatrix(rows)


def _random_symmetric(rng: random.Random, n: int, bound: int = 2) -> RatMatrix:
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s[i][j] = s[j][i] = rng.randint(-bound, bound)
    return RatMatrix(s)


def _generator(rng: random.Random, n: int) -> RatMatrix:
    I, Z = RatMatrix.identity(n), RatMatrix.zeros(n)
    kind = rng.randrange(3)
    if kind == 0:
        return j_matrix(n)
    if kind == 1:
        return RatMatrix.block([[I, _random_symmetric(rng, n)], [Z, I]])
    U = _random_unimodular(rng, n)
    return RatMatrix.block([[U, Z], [Z, U.transpose().inverse()]])


def random_symplectic(n: int, seed: int, word_length: int = 6) -> SymplecticMatrix:
    """Deterministic product of ``word_length`` random Sp(2n) generators."""
    if word_length < 0:
        raise ValueError("word_length must be non-negative")
    rng = random.Random(seed)
    m = RatMatrix.identity(2 * n)
    for _ in range(word_length):
        m = m @ _generator(rng, n)
    return SymplecticMatrix(m, Fraction(1), n)


def random_gsp(n: int, seed: int, word_length: int = 6) -> SymplecticMatrix:
    """Random symplectic word times ``diag(I, mu I)`` with a random rational ``mu``."""
    rng = random.Random(seed ^ 0x5F3759DF)
    mu = Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 2, 3]))
    g = random_symplectic(n, seed, word_length)
    sim = SymplecticMatrix(RatMatrix.diag([1] * n + [mu] * n), mu, n)
    return g @ sim


# ---------------------------------------------------------------------------
# conjugation of doubled elements by Q_r


def levi_element(n: int, r: int, g: RatMatrix) -> SymplecticMatrix:
    """``diag(g, I_r, g^{-t}, I_r)`` for ``g`` in GL(n-r)."""
    g = _as_matrix(g)
    if g.nrows != n - r:
        raise ValueError("GL block has wrong size")
    Ir = RatMatrix.identity(r)
    m = RatMatrix.block_diag(g, Ir, g.transpose().inverse(), Ir)
    return SymplecticMatrix(m, Fraction(1), n)


def unipotent_radical_element(n: int, r: int, rng: random.Random, word_length: int = 3) -> SymplecticMatrix:
    """Random word in generators of the unipotent radical of ``P_{2n,r}``."""
    k = n - r
    I, Z = RatMatrix.identity(n), RatMatrix.zeros(n)
    m = RatMatrix.identity(2 * n)
    for _ in range(word_length):
        if rng.random() < 0.5:
            u = [[int(i == j) for j in range(n)] for i in range(n)]
            for i in range(k):
                for j in range(k, n):
                    u[i][j] = rng.randint(-2, 2)
            U = RatMatrix(u)
            gen = RatMatrix.block([[U, Z], [Z, U.transpose().inverse()]])
        else:
            x = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    if i < k:
                        x[i][j] = x[j][i] = rng.randint(-2, 2)
            gen = RatMatrix.block([[I, RatMatrix(x)], [Z, I]])
        m = m @ gen
    return SymplecticMatrix(m, Fraction(1), n)


def _random_gl(rng: random.Random, k: int) -> RatMatrix:
    while True:
        g = RatMatrix([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(k)] for _ in range(k)])
        if g.det() != 0:
            return g


def random_parabolic_pair(n: int, r: int, seed: int):
    """Inputs for case (i): ``(p1, p2, g1, g2)`` with ``p_i = levi(g_i) n_i``."""
    rng = random.Random(seed)
    g1, g2 = _random_gl(rng, n - r), _random_gl(rng, n - r)
    p1 = levi_element(n, r, g1) @ unipotent_radical_element(n, r, rng)
    p2 = levi_element(n, r, g2) @ unipotent_radical_element(n, r, rng)
    return p1, p2, g1, g2


def _in_p2n_r(g: SymplecticMatrix, r: int) -> bool:
    n = g.n
    return g.matrix.sub(n - r, 2 * n, 0, n - r).is_zero()


def _embed_sp2r(n: int, r: int, x1) -> SymplecticMatrix:
    """``(1, x1)``: x1 in Sp(2r) acting on the last r coordinates of each half."""
    x1 = x1 if isinstance(x1, SymplecticMatrix) else SymplecticMatrix.from_matrix(x1)
    if x1.n != r:
        raise ValueError("x1 has wrong size")
    k = n - r
    A, B, C, D = x1.blocks()
    Ik = RatMatrix.identity(k)
    Zk, Zkr, Zrk = RatMatrix.zeros(k), RatMatrix.zeros(k, r), RatMatrix.zeros(r, k)
    m = RatMatrix.block(
        [
            [Ik, Zkr, Zk, Zkr],
            [Zrk, A, Zrk, B],
            [Zk, Zkr, Ik, Zkr],
            [Zrk, C, Zrk, D],
        ]
    )
    return SymplecticMatrix(m, x1.multiplier, n)


CASES = ("levi-pair", "sp2r-diagonal", "full-diagonal")


def coset_conjugate(n: int, r: int, case: str, inputs) -> tuple[SymplecticMatrix, Fraction]:
    """Conjugate by ``Q_r`` and return ``(X, d(X))``, checking the expected d-value.

    ``inputs`` per case:

    * ``levi-pair``: ``(p1, p2, g1, g2)`` with ``p_i = diag(g_i, I_r, g_i^{-t}, I_r) n_i``
    * ``sp2r-diagonal``: ``x1`` in Sp(2r)
    * ``full-diagonal``: ``g`` in GSp(2n); here ``r`` must equal ``n``
    """
    _check_r(n, r)
    if case == "levi-pair":
        if r >= n:
            raise ValueError("case levi-pair needs r < n")
        p1, p2, g1, g2 = inputs
        for p in (p1, p2):
            if not _in_p2n_r(p, r):
                raise ValueError("input is not in P_{2n,r}")
        inner = embed_doubling(p1, p2)
        expected = _as_matrix(g1).det() * _as_matrix(g2).det()
    elif case == "sp2r-diagonal":
        if r >= n:
            raise ValueError("case sp2r-diagonal needs r < n")
        x = _embed_sp2r(n, r, inputs)
        if not x.is_sp():
            raise ValueError("x1 must lie in Sp(2r)")
        inner = embed_doubling(x, x)
        expected = Fraction(1)
    elif case == "full-diagonal":
        if r != n:
            raise ValueError("case full-diagonal needs r = n")
        g = inputs if isinstance(inputs, SymplecticMatrix) else SymplecticMatrix.from_matrix(inputs)
        inner = embed_doubling(g, g)
        expected = Fraction(1)
    else:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    Q = q_matrix(n, r)
    X = Q @ inner @ Q.inverse()
    try:
        _, d = siegel_factor(X)
    except NotInSiegelParabolicError as exc:
        raise LemmaViolationError(f"lemma violation: conjugate not in P_4n ({exc})") from exc
    if d != expected:
        raise LemmaViolationError(f"lemma violation: d = {d}, expected {expected}")
    return X, d
