"""Dual-distance bounds for semi self-dual codes and their enumerator
certificates.

The certificate prover assumes a dual distance of ``2d`` and uses the
fact that this forces ``e_i = alpha_i(N) / 2`` for every ``i < d``.  A
forced ``eps_i`` that is negative or fractional (or a nonzero forced
``e_i`` beyond the last index of the decomposition) rules the assumption
out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .codes import LinearCode, self_dual_shadow
from .enumerators import (
    F_from_decomposition,
    GleasonDecomposition,
    WeightEnumerator,
    _from_Y,
    alpha,
    binom_parity,
    gleason_top,
    invariant_basis,
    macwilliams,
)
from .errors import CodeError, VerificationError
from .gf2core import DEFAULT_CAP

SIGN_BRANCH = tuple(range(0, 15, 2))


def _check_even(n: int) -> None:
    if n % 2:
        raise ValueError(f"length {n} is odd; semi self-dual codes have even length")
    if n < 4:
        raise ValueError(f"length {n} too small (need n >= 4)")


@dataclass(frozen=True)
class Certificate:
    """An enumerator obstruction at ``index`` under the assumption that the
    dual distance is at least ``2 * half_distance``."""

    n: int
    index: int
    half_distance: int
    alpha: int
    eps: Optional[Fraction]
    kind: str  # "negative", "non-integral" or "nonvanishing"

    @property
    def N(self) -> int:
        return self.n // 2

    def verify(self) -> bool:
        a = alpha(self.index, self.N)
        if a != self.alpha or self.index >= self.half_distance:
            return False
        if self.kind == "nonvanishing":
            return self.index > gleason_top(self.N) and a != 0
        eps = forced_eps(self.index, self.N)
        if eps != self.eps:
            return False
        if self.kind == "negative":
            return eps < 0
        if self.kind == "non-integral":
            return eps.denominator != 1
        return False

    def describe(self) -> str:
        i, N = self.index, self.N
        if self.kind == "nonvanishing":
            return (f"alpha_{i}({N}) = {self.alpha} != 0 but the decomposition stops at "
                    f"index {gleason_top(N)}")
        what = "negative" if self.kind == "negative" else "not an integer"
        return f"eps_{i} = {self.eps} is {what} (alpha_{i}({N}) = {self.alpha})"


@dataclass(frozen=True)
class BoundReport:
    n: int
    case: str
    bound: int
    certificate: Optional[Certificate] = None


def forced_eps(i: int, N: int) -> Fraction:
    """eps_i when e_i is forced to alpha_i(N)/2."""
    return (-1) ** i * Fraction(2) ** (N - 1 - 6 * i) * Fraction(alpha(i, N), 2)


def obstruction(i: int, N: int, half_distance: int) -> Optional[Certificate]:
    """Certificate at index i, or None if the forced value is admissible."""
    a = alpha(i, N)
    if i > gleason_top(N):
        if a:
            return Certificate(2 * N, i, half_distance, a, None, "nonvanishing")
        return None
    eps = forced_eps(i, N)
    if eps < 0:
        return Certificate(2 * N, i, half_distance, a, eps, "negative")
    if eps.denominator != 1:
        return Certificate(2 * N, i, half_distance, a, eps, "non-integral")
    return None


def theorem_bound(n: int, doubly_even: bool = False) -> BoundReport:
    _check_even(n)
    if doubly_even and n % 4:
        raise ValueError(f"no doubly-even code contains the all-ones vector of length {n}")
    mu, r = divmod(n, 24)
    if r <= 14:
        if r == 0 and doubly_even:
            return BoundReport(n, "n = 24mu, doubly-even", 4 * mu)
        if r == 0 and binom_parity(mu):
            return BoundReport(n, f"n = 24mu, binom({5 * mu - 1},{mu - 1}) odd", 4 * mu)
        return BoundReport(n, f"n = {r} mod 24", 4 * mu + 2)
    if r <= 20:
        return BoundReport(n, f"n = {r} mod 24", 4 * mu + 4)
    return BoundReport(n, "n = 22 mod 24", 4 * mu + 6)


def doubly_even_bound(n: int) -> int:
    if n % 4 or n < 4:
        raise ValueError(f"doubly-even semi self-dual codes need 4 | n (got {n})")
    b = (8 + n) // 6
    return b - b % 2


_RAINS = {0: 4, 4: 2, 8: 4, 12: 2, 16: 4, 20: 4}


def rains_bound(n: int) -> int:
    if n % 4 or n < 4:
        raise ValueError(f"the comparison table covers n divisible by 4 (got {n})")
    mu, r = divmod(n, 24)
    return 4 * mu + _RAINS[r]


def selfdual_bound(n: int) -> int:
    if n % 2:
        raise ValueError(f"length {n} is odd")
    mu, r = divmod(n, 24)
    return 4 * mu + (6 if r == 22 else 4)


def prove_bound(n: int) -> BoundReport:
    """Re-derive the bound for non-doubly-even codes with a certificate."""
    claimed = theorem_bound(n, doubly_even=False)
    if n % 24 not in SIGN_BRANCH:
        return BoundReport(n, claimed.case + "; no enumerator obstruction at this length", selfdual_bound(n))
    N = n // 2
    d = claimed.bound // 2 + 1
    for i in range(d):
        cert = obstruction(i, N, d)
        if cert is not None:
            return BoundReport(n, claimed.case, claimed.bound, cert)
    raise VerificationError(f"no enumerator obstruction found for n={n} at dual distance {2 * d}")


class Coverage(NamedTuple):
    covered: int
    total: int
    fraction: Fraction


def coverage_report(limit_m: int = 153) -> Coverage:
    """Count m <= limit_m with m odd or m = 2mu and binom(5mu-1, mu-1) odd."""
    if limit_m < 1:
        raise ValueError("limit_m must be >= 1")
    covered = sum(1 for m in range(1, limit_m + 1) if m % 2 or binom_parity(m // 2))
    return Coverage(covered, limit_m, Fraction(covered, limit_m))


def shadow_inequality_sides(F: LinearCode, cap: int = DEFAULT_CAP) -> tuple[Fraction, Fraction]:
    """``(2 d(F) + d(S(F)), 4 + n/2)`` for a self-dual F that is not doubly-even."""
    if not F.is_self_dual():
        raise CodeError("F must be self-dual")
    if F.is_doubly_even():
        raise CodeError("F is doubly-even; its doubly-even subcode has index 1")
    S = self_dual_shadow(F)
    lhs = 2 * F.min_distance(cap=cap) + S.min_weight(cap=cap)
    return Fraction(lhs), 4 + Fraction(F.n, 2)


def shadow_exception(n: int, d: int) -> bool:
    """The one case where ``2 d + s`` reaches ``8 + n/2``: n = 22 mod 24 and d = 4mu + 6."""
    return n % 24 == 22 and d == 4 * (n // 24) + 6


def shadow_inequality_check(F: LinearCode, cap: int = DEFAULT_CAP, strict: bool = False) -> bool:
    """``2 d(F) + d(S(F)) <= 4 + n/2``, relaxed to ``8 + n/2`` in the exceptional
    case of :func:`shadow_exception` unless ``strict`` is set."""
    lhs, rhs = shadow_inequality_sides(F, cap=cap)
    if not strict and shadow_exception(F.n, F.min_distance(cap=cap)):
        rhs += 4
    return lhs <= rhs


# --- putative enumerators at lengths 24mu with binom(5mu-1, mu-1) even ----------------

@dataclass(frozen=True)
class FeasibilitySolution:
    n: int
    d: int
    eps_free: tuple[int, ...]
    decomposition: GleasonDecomposition
    F_poly: WeightEnumerator
    B: WeightEnumerator
    F_ok: bool
    B_prefix_ok: bool
    W_D: Optional[WeightEnumerator] = None
    W_dual: Optional[WeightEnumerator] = None
    W_shadow: Optional[WeightEnumerator] = None
    flags: dict = field(default_factory=dict)


def _invariant_part(N: int, d: int) -> Optional[list[Fraction]]:
    """Y-coefficients of the invariant with ``3/2 + O(Y^d)`` and free coefficients zero.

    This is ``W_D + (1/2) W_{D^perp}`` for a code whose nonzero weights in D
    and D^perp are all at least 2d.
    """
    J = N // 4
    if d > J + 1:
        return None
    target = [Fraction(3, 2)] + [Fraction(0)] * (d - 1)
    cur = [Fraction(0)] * (N + 1)
    for j in range(d):
        c = target[j] - cur[j]
        if c:
            for t, b in enumerate(invariant_basis(N, j)):
                cur[t] += c * b
    return cur


def _complete(B: WeightEnumerator, inv: list[Fraction], N: int):
    I = _from_Y(inv, N)
    A = (I + B) * Fraction(1, 2)
    W_dual = I - B
    A0 = WeightEnumerator(A.n, tuple(c if w % 4 == 0 else 0 for w, c in enumerate(A.coeffs)))
    W_shadow = macwilliams(A0, N - 2) - W_dual
    return A, W_dual, W_shadow


def _ok(W: Optional[WeightEnumerator]) -> Optional[bool]:
    return None if W is None else (W.is_integral() and W.is_nonnegative())


def feasibility_search(n: int, d: int, range_cap: int = 64, complete: bool = True) -> list[FeasibilitySolution]:
    """Free eps tuples (indices d..) in [0, range_cap] giving a non-negative F.

    The first d coefficients e_i are forced to alpha_i(N)/2, so every
    returned B satisfies ``B(1,y) = 1/2 + O(y^(2d))``.  Output is sorted
    lexicographically by the free tuple.
    """
    if n % 24 or n < 24:
        raise ValueError(f"feasibility search runs at lengths 24mu (got {n})")
    mu = n // 24
    if binom_parity(mu):
        raise ValueError(
            f"binom({5 * mu - 1},{mu - 1}) is odd: prove_bound({n}) already rules out "
            f"dual distance {4 * mu + 2}"
        )
    if d < 1 or range_cap < 0:
        raise ValueError("need d >= 1 and range_cap >= 0")
    N = n // 2
    L = gleason_top(N)

    forced: list[Fraction] = []
    for i in range(d):
        if obstruction(i, N, d) is not None:
            return []
        if i <= L:
            forced.append(forced_eps(i, N))
    n_free = max(0, L + 1 - d)

    def F_of(eps) -> WeightEnumerator:
        return F_from_decomposition(GleasonDecomposition.from_eps(N, eps))

    fixed = [int(c) for c in F_of(forced + [0] * n_free).coeffs]
    cols = []
    for m in range(n_free):
        unit = [0] * n_free
        unit[m] = 1
        cols.append([int(c) for c in F_of([0] * len(forced) + unit).coeffs])
    live = [j for j in range(2 * N + 1) if fixed[j] or any(c[j] for c in cols)]

    candidates = list(_screen(fixed, cols, live, n_free, range_cap))

    inv = _invariant_part(N, d) if complete else None
    out = []
    for free in candidates:
        dec = GleasonDecomposition.from_eps(N, forced + list(free), forced_prefix=len(forced))
        Fp = F_from_decomposition(dec)
        if not (Fp.is_integral() and Fp.is_nonnegative()):
            continue
        B = dec.reconstruct_B()
        prefix_ok = B.coeffs[0] == Fraction(1, 2) and not any(B.coeffs[1:2 * d])
        W_D = W_dual = W_shadow = None
        if inv is not None:
            W_D, W_dual, W_shadow = _complete(B, inv, N)
        flags = {
            "F_nonneg_integral": True,
            "B_prefix": prefix_ok,
            "W_D_nonneg_integral": _ok(W_D),
            "W_dual_nonneg_integral": _ok(W_dual),
            "W_shadow_nonneg_integral": _ok(W_shadow),
        }
        out.append(FeasibilitySolution(n, d, tuple(free), dec, Fp, B, True, prefix_ok, W_D, W_dual, W_shadow, flags))
    return out


_CLAMP = 1 << 62


def _screen(fixed, cols, live, n_free, cap):
    """Yield free tuples (lexicographic) for which fixed + sum t_m cols[m] >= 0 on ``live``."""
    if n_free == 0:
        if all(fixed[j] >= 0 for j in live):
            yield ()
        return
    M = np.array([[c[j] for j in live] for c in cols], dtype=object)
    big = max((abs(int(x)) for x in M.flat), default=0) * cap * n_free
    if big >= 1 << 61:
        for free in itertools.product(range(cap + 1), repeat=n_free):
            if all(fixed[j] + sum(t * c[j] for t, c in zip(free, cols)) >= 0 for j in live):
                yield free
        return
    M = M.astype(np.int64)
    base = np.array([max(-_CLAMP, min(_CLAMP, fixed[j])) for j in live], dtype=np.int64)
    inner = min(n_free, 3)
    outer = n_free - inner
    axis = np.arange(cap + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * inner), indexing="ij"), axis=-1).reshape(-1, inner)
    inner_vals = grid @ M[outer:]
    for head in itertools.product(range(cap + 1), repeat=outer):
        shift = base + (np.array(head, dtype=np.int64) @ M[:outer] if outer else 0)
        ok = np.all(inner_vals + shift >= 0, axis=1)
        for row in grid[ok]:
            yield tuple(head) + tuple(int(x) for x in row)
