from fractions import Fraction as Fr
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import alpha_sympy, binom_odd
from semiselfdual.bounds import (
    Certificate,
    coverage_report,
    doubly_even_bound,
    feasibility_search,
    forced_eps,
    obstruction,
    prove_bound,
    rains_bound,
    selfdual_bound,
    shadow_inequality_check,
    shadow_inequality_sides,
    theorem_bound,
)
from semiselfdual.codes import LinearCode, extended_qr_code
from semiselfdual.errors import CodeError


def reference_bound(n, doubly_even=False):
    """Case table written out independently of the implementation."""
    mu, r = n // 24, n % 24
    if r == 22:
        return 4 * mu + 6
    if r in (16, 18, 20):
        return 4 * mu + 4
    if r == 0 and (doubly_even or binom_odd(mu)):
        return 4 * mu
    return 4 * mu + 2


def test_theorem_bound_examples():
    assert theorem_bound(22).bound == 6
    assert theorem_bound(16).bound == 4
    assert theorem_bound(24, doubly_even=True).bound == 4
    assert theorem_bound(48).bound == 8
    assert theorem_bound(120).bound == 22  # mu = 5, binomial even


def test_theorem_bound_errors():
    with pytest.raises(ValueError):
        theorem_bound(7)
    with pytest.raises(ValueError):
        theorem_bound(2)
    with pytest.raises(ValueError):
        theorem_bound(22, doubly_even=True)


def test_theorem_bound_table():
    for n in range(4, 500, 2):
        assert theorem_bound(n).bound == reference_bound(n)
        assert theorem_bound(n).bound % 2 == 0
        if n % 4 == 0:
            assert theorem_bound(n, True).bound == reference_bound(n, True)


def test_auxiliary_bound_examples():
    assert doubly_even_bound(24) == 4
    assert doubly_even_bound(16) == 4
    assert doubly_even_bound(40) == 8
    assert rains_bound(24) == 8 and rains_bound(28) == 6 and rains_bound(32) == 8
    assert selfdual_bound(22) == 6 and selfdual_bound(24) == 8 and selfdual_bound(72) == 16


def test_bounds_within_envelope():
    for n in range(4, 3673, 2):
        assert theorem_bound(n).bound <= selfdual_bound(n)


def test_doubly_even_vs_rains():
    for n in range(24, 2000, 4):
        de, ra = doubly_even_bound(n), rains_bound(n)
        assert de <= ra
        if n % 24 in (0, 8):
            assert de < ra
        if n % 24 == 0:
            assert theorem_bound(n, True).bound == de


@pytest.mark.parametrize("n,i,eps,kind", [
    (12, 1, Fr(-1, 2), "negative"),
    (24, 2, Fr(3, 2), "non-integral"),
    (72, 6, Fr(546, 4), "non-integral"),
])
def test_prove_bound_examples(n, i, eps, kind):
    rep = prove_bound(n)
    assert rep.bound == theorem_bound(n).bound
    c = rep.certificate
    assert (c.index, c.eps, c.kind) == (i, eps, kind)
    assert c.verify()
    assert c.alpha == alpha_sympy(i, n // 2)


def test_certificate_tamper_detected():
    c = prove_bound(24).certificate
    bad = Certificate(c.n, c.index, c.half_distance, c.alpha + 1, c.eps, c.kind)
    assert not bad.verify()
    bad = Certificate(c.n, c.index, c.half_distance, c.alpha, c.eps, "negative")
    assert not bad.verify()


def test_prove_bound_matches_theorem_small():
    for n in range(4, 121, 2):
        if n % 24 <= 14:
            rep = prove_bound(n)
            assert rep.bound == theorem_bound(n).bound
            assert rep.certificate is not None and rep.certificate.verify()
        else:
            assert prove_bound(n).certificate is None


def test_forced_eps_definition():
    for N in (2, 3, 6, 11, 12, 17, 24, 36):
        for i in range(0, N // 4 + 1):
            assert forced_eps(i, N) == (-1) ** i * Fr(2) ** (N - 1 - 6 * i) * Fr(alpha_sympy(i, N), 2)


def test_obstruction_none_for_admissible():
    # forced eps_0 = 2^(N-2) is a positive integer
    assert obstruction(0, 30, 5) is None


def test_coverage_examples():
    cov = coverage_report(153)
    assert 0.70 <= float(cov.fraction) <= 0.74
    assert cov.covered == sum(1 for m in range(1, 154) if m % 2 or binom_odd(m // 2))
    assert coverage_report(1)[:2] == (1, 1)
    assert coverage_report(2)[:2] == (2, 2)
    with pytest.raises(ValueError):
        coverage_report(0)


def test_shadow_inequality_examples():
    assert shadow_inequality_sides(LinearCode.from_strings(["11"])) == (5, 5)
    F = LinearCode.from_strings(["1111", "1100"])
    # shadow = even-weight words outside F = {1010, 0101, 1001, 0110}
    from oracles import dual_brute
    shadow_words = dual_brute(4, [0b1111]) - {0, 0b1111, 0b0011, 0b1100}
    assert min(bin(w).count("1") for w in shadow_words) == 2
    assert shadow_inequality_sides(F) == (6, 6)
    assert shadow_inequality_check(F)
    with pytest.raises(CodeError):
        shadow_inequality_check(extended_qr_code(7))


def test_feasibility_examples():
    sols = feasibility_search(120, 11, 64)
    assert sols
    for s in sols:
        assert s.F_ok and s.B_prefix_ok
        assert s.F_poly.is_integral() and s.F_poly.is_nonnegative()
        assert s.B.coeffs[0] == Fr(1, 2) and not any(s.B.coeffs[1:22])
        assert all(0 <= t <= 64 for t in s.eps_free)
    assert [s.eps_free for s in sols] == sorted(s.eps_free for s in sols)
    with pytest.raises(ValueError):
        feasibility_search(24, 3)
    assert feasibility_search(120, 12, 64) == []


def test_feasibility_small_cap_matches_brute():
    """Every free tuple with entries <= 3 is screened exactly."""
    import itertools

    from semiselfdual.enumerators import F_from_decomposition, GleasonDecomposition

    got = {s.eps_free for s in feasibility_search(120, 11, 3, complete=False)}
    N = 60
    forced = [forced_eps(i, N) for i in range(11)]
    expect = set()
    for free in itertools.product(range(4), repeat=4):
        F = F_from_decomposition(GleasonDecomposition.from_eps(N, forced + list(free)))
        if F.is_nonnegative():
            expect.add(free)
    assert got == expect


@given(st.integers(1, 40))
def test_alpha_integrality_mechanism(mu):
    """eps_(2mu) at n = 24mu is an integer exactly when the binomial is even."""
    N = 12 * mu
    eps = forced_eps(2 * mu, N)
    assert (eps.denominator != 1) == binom_odd(mu)
    assert eps == 6 * comb(5 * mu - 1, mu - 1) * Fr(2) ** (N - 1 - 12 * mu) / 2


def test_shadow_exception_at_22():
    from semiselfdual.bounds import shadow_exception
    from semiselfdual.explorer import SearchConfig, sharpness_search

    visited = []
    r = sharpness_search(SearchConfig(22), on_code=visited.append)
    F = visited[-1]
    assert r.best_dual_distance == 6 and F.min_distance() == 6
    assert shadow_exception(22, 6) and not shadow_exception(22, 4) and not shadow_exception(20, 6)
    lhs, rhs = shadow_inequality_sides(F)
    assert (lhs, rhs) == (19, 15)
    assert not shadow_inequality_check(F, strict=True)
    assert shadow_inequality_check(F)
