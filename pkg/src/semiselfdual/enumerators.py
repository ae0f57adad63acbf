"""Exact weight enumerators, truncated power series, and the Gleason-type
decomposition of the anti-invariant polynomial B = A - D.

Everything is exact (``int`` / ``Fraction``).  Substitutions that would
involve 1/sqrt(2) are applied to homogeneous polynomials as
``2^(-N) P(x+y, x-y)``, so no irrational scalars appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence, Union

from .codes import LinearCode, shadow
from .errors import CodeError, NotInInvariantModule
from .gf2core import DEFAULT_CAP

Number = Union[int, Fraction]


# --- integer polynomial helpers (coefficient lists, low degree first) ---------

def poly_mul(a: Sequence[Number], b: Sequence[Number]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_pow(a: Sequence[Number], e: int) -> list:
    out: list = [1]
    base = list(a)
    while e:
        if e & 1:
            out = poly_mul(out, base)
        e >>= 1
        if e:
            base = poly_mul(base, base)
    return out


def _pad(a: Sequence[Number], length: int) -> list:
    a = list(a)
    if len(a) > length:
        if any(a[length:]):
            raise ValueError("polynomial longer than requested length")
        return a[:length]
    return a + [0] * (length - len(a))


# --- weight enumerators ---------------------------------------------------------

@dataclass(frozen=True)
class WeightEnumerator:
    """``sum_w coeffs[w] x^(n-w) y^w``."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != self.n + 1:
            cs = tuple(_pad(cs, self.n + 1))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_counts(cls, counts: Sequence[Number]) -> "WeightEnumerator":
        return cls(len(counts) - 1, tuple(counts))

    def __getitem__(self, w: int) -> Fraction:
        return self.coeffs[w] if 0 <= w <= self.n else Fraction(0)

    def _check(self, other: "WeightEnumerator") -> None:
        if self.n != other.n:
            raise ValueError(f"degree mismatch: {self.n} != {other.n}")

    def __add__(self, other: "WeightEnumerator") -> "WeightEnumerator":
        self._check(other)
        return WeightEnumerator(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "WeightEnumerator") -> "WeightEnumerator":
        self._check(other)
        return WeightEnumerator(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, s: Number) -> "WeightEnumerator":
        return WeightEnumerator(self.n, tuple(c * s for c in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "WeightEnumerator":
        return self * -1

    def evaluate(self, x: Number = 1, y: Number = 1) -> Fraction:
        return sum((c * Fraction(x) ** (self.n - w) * Fraction(y) ** w for w, c in enumerate(self.coeffs)), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def support(self) -> list[int]:
        return [w for w, c in enumerate(self.coeffs) if c]

    def low_order(self) -> int:
        """Smallest positive weight with a nonzero coefficient (n+1 if none)."""
        return next((w for w in range(1, self.n + 1) if self.coeffs[w]), self.n + 1)

    def as_dict(self) -> dict[int, Fraction]:
        return {w: c for w, c in enumerate(self.coeffs) if c}

    def to_str(self, homogeneous: bool = False) -> str:
        terms = []
        for w, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = []
            if homogeneous and self.n - w:
                mono.append("x" if self.n - w == 1 else f"x^{self.n - w}")
            if w:
                mono.append("y" if w == 1 else f"y^{w}")
            m = "*".join(mono)
            mag = abs(c)
            if m:
                body = m if mag == 1 else f"{mag}*{m}"
            else:
                body = str(mag)
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()


def enumerate_weights(C: LinearCode, cap: int = DEFAULT_CAP, threads: int = 1) -> WeightEnumerator:
    return WeightEnumerator.from_counts(C.weight_distribution(cap=cap, threads=threads))


@lru_cache(maxsize=64)
def krawtchouk_table(n: int) -> tuple[tuple[int, ...], ...]:
    """``K[j][w]``: coefficient of x^(n-j) y^j in (x+y)^(n-w) (x-y)^w."""
    rows = []
    for j in range(n + 1):
        rows.append(tuple(
            sum((-1) ** s * comb(w, s) * comb(n - w, j - s) for s in range(max(0, j - n + w), min(w, j) + 1))
            for w in range(n + 1)
        ))
    return tuple(rows)


def macwilliams(W: WeightEnumerator, dim: int) -> WeightEnumerator:
    """``2^(-dim) W(x+y, x-y)``: the dual enumerator of a dim-dimensional code."""
    K = krawtchouk_table(W.n)
    scale = Fraction(1, 2 ** dim) if dim >= 0 else Fraction(2 ** -dim)
    return WeightEnumerator(W.n, tuple(scale * sum(K[j][w] * c for w, c in enumerate(W.coeffs) if c) for j in range(W.n + 1)))


def _require_semi(D: LinearCode) -> None:
    if not D.is_semi_self_dual():
        raise CodeError("code is not semi self-dual")


def build_B(D: LinearCode, cap: int = DEFAULT_CAP) -> WeightEnumerator:
    """``A - D`` where A = W_D and D = (1/2) W_{D^perp}."""
    _require_semi(D)
    A = enumerate_weights(D, cap=cap)
    return A - macwilliams(A, D.k) * Fraction(1, 2)


def shadow_F(D: LinearCode, cap: int = DEFAULT_CAP) -> WeightEnumerator:
    """Enumerator of the shadow words of weight congruent to N-2 mod 4."""
    _require_semi(D)
    if D.is_doubly_even():
        raise CodeError("shadow_F needs a code that is not doubly-even")
    N = D.n // 2
    wd = shadow(D).weight_distribution(cap=cap)
    return WeightEnumerator(D.n, tuple(c if w % 4 == (N - 2) % 4 else 0 for w, c in enumerate(wd)))


# --- truncated power series -------------------------------------------------------

class TruncatedSeries:
    """Power series in one variable, exact modulo ``Y^order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Number], order: int):
        cs = list(coeffs)[:order]
        self.coeffs = cs + [0] * (order - len(cs))
        self.order = order

    @classmethod
    def poly(cls, coeffs: Iterable[Number], order: int) -> "TruncatedSeries":
        return cls(coeffs, order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i]

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.coeffs}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return self.coeffs[:m] == other.coeffs[:m]

    def _o(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = self._o(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:m], other.coeffs[:m])], m)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = self._o(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs[:m], other.coeffs[:m])], m)

    def scale(self, s: Number) -> "TruncatedSeries":
        return TruncatedSeries([c * s for c in self.coeffs], self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = self._o(other)
        out: list = [0] * m
        a, b = self.coeffs, other.coeffs
        for i in range(m):
            if a[i]:
                ai = a[i]
                for j in range(m - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(out, m)

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = Fraction(1, 1) / c0 if not (c0 in (1, -1)) else c0
        out: list = [inv0]
        for n in range(1, self.order):
            s = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out.append(-s * inv0)
        return TruncatedSeries(out, self.order)

    def __pow__(self, e: int) -> "TruncatedSeries":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = TruncatedSeries.one(self.order)
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``Y^k`` (k >= 0)."""
        return TruncatedSeries([0] * k + self.coeffs, self.order)

    def compose(self, g: "TruncatedSeries") -> "TruncatedSeries":
        """``self(g(Y))`` for g with zero constant term."""
        if g.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        m = self._o(g)
        out = TruncatedSeries([0], m)
        power = TruncatedSeries.one(m)
        for c in self.coeffs[:m]:
            if c:
                out = out + power.scale(c)
            power = power * g
        return out


def power_expansion(f: TruncatedSeries, g: TruncatedSeries, count: int) -> list:
    """Coefficients c_0..c_{count-1} with ``f = sum c_i g^i`` (g of valuation 1).

    Solved as a triangular system; requires the Y-coefficient of g to be 1.
    """
    if g[0] or g[1] != 1:
        raise ValueError("g must be Y + O(Y^2)")
    rem = f
    gp = TruncatedSeries.one(f.order)
    out = []
    for i in range(count):
        c = rem[i]
        out.append(c)
        rem = rem - gp.scale(c)
        gp = gp * g
    return out


# --- coefficient formulas -------------------------------------------------------

def alpha(i: int, N: int) -> int:
    """Coefficient of Y^i in ``(1-Y^2)^(-2i-1) (1+Y)^(2+6i-N)``."""
    if i < 0:
        raise ValueError("index must be non-negative")
    order = i + 1
    s = (TruncatedSeries.poly([1, 0, -1], order) ** (-2 * i - 1)) * (TruncatedSeries.poly([1, 1], order) ** (2 + 6 * i - N))
    c = s[i]
    return int(c)


def alpha_by_buermann(i: int, N: int) -> list:
    """alpha_0..alpha_i from expanding ``f = sum alpha_j g^j`` directly, with
    ``f = (1-6Y+Y^2)^(-1) (1+Y)^(2-N)`` and ``g = Y (1-Y)^2 (1+Y)^(-4)``."""
    order = i + 2
    one_plus = TruncatedSeries.poly([1, 1], order)
    f = TruncatedSeries.poly([1, -6, 1], order).inverse() * one_plus ** (2 - N)
    g = TruncatedSeries.poly([0, 1, -2, 1], order) * one_plus ** -4
    return power_expansion(f, g, i + 1)


def alpha_by_buermann_check(i: int, N: int) -> bool:
    return alpha_by_buermann(i, N)[i] == alpha(i, N)


def gleason_top(N: int) -> int:
    """Largest index of the decomposition, floor((N-2)/4)."""
    return (N - 2) // 4


def gamma(h: int, k: int, N: int) -> int:
    if k > h:
        raise ValueError(f"gamma needs k <= h (got k={k}, h={h})")
    L = gleason_top(N)
    if k < 0 or h > L:
        raise ValueError(f"indices out of range 0 <= k <= h <= {L}")
    return comb(2 * L - h - k, h - k)


def gamma_by_series(h: int, k: int, N: int) -> int:
    """Coefficient of g^h in ``Z^k (1+Z)^(-1) (1-Z)^(-2L)``, ``g = Z (1-Z)^(-2)``."""
    L = gleason_top(N)
    order = h + 2
    one_minus = TruncatedSeries.poly([1, -1], order)
    f = TruncatedSeries.poly([1, 1], order).inverse() * one_minus ** (-2 * L)
    g = TruncatedSeries.poly([0, 1], order) * one_minus ** -2
    return int(power_expansion(f.shift(k), g, h + 1)[h])


def binom_parity(mu: int) -> bool:
    """True when binom(5mu-1, mu-1) is odd."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    carry_free = (mu - 1) & (4 * mu) == 0
    a, b = 5 * mu - 1, mu - 1
    lucas = a & b == b
    exact = comb(a, b) % 2 == 1
    if not carry_free == lucas == exact:
        raise AssertionError(f"parity tests disagree at mu={mu}")
    return carry_free


# --- Gleason-type decomposition ----------------------------------------------------

@lru_cache(maxsize=256)
def gleason_basis(N: int, i: int) -> tuple[int, ...]:
    """Y-coefficients of ``(1-6Y+Y^2)(1+Y)^(N-2-4i) Y^i (1-Y)^(2i)`` (Y = y^2)."""
    p = poly_mul(poly_mul([1, -6, 1], poly_pow([1, 1], N - 2 - 4 * i)), [0] * i + poly_pow([1, -2, 1], i))
    return tuple(_pad(p, N + 1))


@lru_cache(maxsize=256)
def invariant_basis(N: int, j: int) -> tuple[int, ...]:
    """Y-coefficients of ``(1+Y)^(N-4j) Y^j (1-Y)^(2j)``."""
    p = poly_mul(poly_pow([1, 1], N - 4 * j), [0] * j + poly_pow([1, -2, 1], j))
    return tuple(_pad(p, N + 1))


def eps_from_e(e: Sequence[Number], N: int) -> tuple[Fraction, ...]:
    return tuple((-1) ** i * Fraction(2) ** (N - 1 - 6 * i) * Fraction(x) for i, x in enumerate(e))


def e_from_eps(eps: Sequence[Number], N: int) -> tuple[Fraction, ...]:
    return tuple((-1) ** i * Fraction(x) / Fraction(2) ** (N - 1 - 6 * i) for i, x in enumerate(eps))


@dataclass(frozen=True)
class GleasonDecomposition:
    N: int
    e: tuple[Fraction, ...]
    eps: tuple[Fraction, ...]
    forced_prefix: int = 0

    @classmethod
    def from_eps(cls, N: int, eps: Sequence[Number], forced_prefix: int = 0) -> "GleasonDecomposition":
        eps = tuple(Fraction(x) for x in eps)
        return cls(N, e_from_eps(eps, N), eps, forced_prefix)

    def reconstruct_B(self) -> WeightEnumerator:
        Y = [Fraction(0)] * (self.N + 1)
        for i, ei in enumerate(self.e):
            if ei:
                for j, c in enumerate(gleason_basis(self.N, i)):
                    Y[j] += ei * c
        return _from_Y(Y, self.N)

    def eps_nonnegative_integers(self) -> bool:
        return all(x >= 0 and x.denominator == 1 for x in self.eps)


def _to_Y(W: WeightEnumerator) -> list[Fraction]:
    if W.n % 2:
        raise ValueError("odd degree")
    if any(W.coeffs[w] for w in range(1, W.n + 1, 2)):
        raise ValueError("polynomial has odd powers of y")
    return [W.coeffs[2 * j] for j in range(W.n // 2 + 1)]


def _from_Y(Y: Sequence[Number], N: int) -> WeightEnumerator:
    coeffs = [Fraction(0)] * (2 * N + 1)
    for j, c in enumerate(Y):
        coeffs[2 * j] = Fraction(c)
    return WeightEnumerator(2 * N, tuple(coeffs))


def gleason_decompose(B: WeightEnumerator) -> GleasonDecomposition:
    if B.n % 2 or B.n < 4:
        raise ValueError("B must have even degree 2N >= 4")
    N = B.n // 2
    rem = _to_Y(B)
    e = []
    for i in range(gleason_top(N) + 1):
        c = rem[i]
        e.append(c)
        if c:
            for j, b in enumerate(gleason_basis(N, i)):
                rem[j] -= c * b
    if any(rem):
        bad = next(j for j, c in enumerate(rem) if c)
        raise NotInInvariantModule(f"nonzero residual {rem[bad]} at y^{2 * bad}")
    return GleasonDecomposition(N, tuple(e), eps_from_e(e, N))


def F_from_decomposition(dec: GleasonDecomposition) -> WeightEnumerator:
    """``F(1,y) = (1+y^4) sum eps_i y^(N-2-4i) (1-y^4)^(2i)``, as a degree-2N enumerator."""
    N = dec.N
    out = [Fraction(0)] * (2 * N + 1)
    for i, ei in enumerate(dec.eps):
        if not ei:
            continue
        shift = N - 2 - 4 * i
        if shift < 0:
            raise ValueError(f"eps[{i}] = {ei} gives a negative power of y")
        term = poly_mul([1, 0, 0, 0, 1], [0] * shift + _spread4(poly_pow([1, -1], 2 * i)))
        for j, c in enumerate(term):
            if c:
                out[j] += ei * c
    return WeightEnumerator(2 * N, tuple(out))


def _spread4(p: Sequence[Number]) -> list:
    """Substitute y^4 for the variable."""
    out: list = [0] * (4 * (len(p) - 1) + 1)
    for i, c in enumerate(p):
        out[4 * i] = c
    return out
