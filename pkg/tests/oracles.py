"""Slow, independent reference implementations used by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import sympy as sp


def span_brute(rows):
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        w = 0
        for c, r in zip(coeffs, rows):
            if c:
                w ^= r
        out.add(w)
    return out


def dual_brute(n, rows):
    return {x for x in range(1 << n) if all(bin(x & r).count("1") % 2 == 0 for r in rows)}


def weights(words, n):
    wd = [0] * (n + 1)
    for w in words:
        wd[bin(w).count("1")] += 1
    return wd


def rank_brute(rows):
    size = len(span_brute(rows))
    return size.bit_length() - 1


def macwilliams_direct(counts, n, dim):
    """Expand 2^-dim sum A_w (x+y)^(n-w) (x-y)^w with sympy."""
    x, y = sp.symbols("x y")
    expr = sum(c * (x + y) ** (n - w) * (x - y) ** w for w, c in enumerate(counts))
    poly = sp.Poly(sp.expand(expr.subs(x, 1)), y)
    out = [Fraction(0)] * (n + 1)
    for (e,), c in poly.terms():
        out[e] = Fraction(int(c), 2 ** dim)
    return out


def series_coeff(expr, var, i):
    return sp.series(expr, var, 0, i + 1).removeO().coeff(var, i)


def alpha_sympy(i, N):
    Y = sp.Symbol("Y")
    return int(series_coeff((1 - Y**2) ** (-2 * i - 1) * (1 + Y) ** (2 + 6 * i - N), Y, i))


def gamma_sympy(h, k, N):
    """Coefficient of g^h after substituting Z(g), the inverse of g = Z/(1-Z)^2."""
    L = (N - 2) // 4
    g = sp.Symbol("g")
    Z = (1 + 2 * g - sp.sqrt(1 + 4 * g)) / (2 * g)
    expr = Z**k * (1 + Z) ** -1 * (1 - Z) ** (-2 * L)
    return int(sp.nsimplify(series_coeff(expr, g, h)))


def binom_odd(mu):
    return comb(5 * mu - 1, mu - 1) % 2 == 1
