from fractions import Fraction as Fr
from math import comb

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import alpha_sympy, gamma_sympy, macwilliams_direct
from semiselfdual.codes import LinearCode, extended_qr_code
from semiselfdual.enumerators import (
    F_from_decomposition,
    GleasonDecomposition,
    TruncatedSeries,
    WeightEnumerator,
    alpha,
    alpha_by_buermann_check,
    binom_parity,
    build_B,
    enumerate_weights,
    gamma,
    gamma_by_series,
    gleason_basis,
    gleason_decompose,
    gleason_top,
    macwilliams,
    power_expansion,
    shadow_F,
)
from semiselfdual.errors import CodeError, NotInInvariantModule
from strategies import codes as code_st
from test_codes import semi_self_dual_codes

D4 = LinearCode.from_strings(["1111"])
D6 = LinearCode.from_strings(["111111", "110000"])


def W(*coeffs):
    return WeightEnumerator.from_counts(coeffs)


def in_y(ycoeffs):
    out = []
    for c in ycoeffs:
        out += [c, 0]
    return W(*out[:-1])


def test_enumerate_examples():
    assert enumerate_weights(D4) == W(1, 0, 0, 0, 1)
    assert enumerate_weights(D6) == W(1, 0, 1, 0, 1, 0, 1)
    golay = enumerate_weights(extended_qr_code(23))
    assert golay.as_dict() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_macwilliams_examples():
    assert macwilliams(W(1, 0, 1), 1) == W(1, 0, 1)
    assert macwilliams(W(1, 0, 0, 0, 1), 1) == W(1, 0, 6, 0, 1)
    assert macwilliams(W(1, 0, 1, 0, 1, 0, 1), 2) == W(1, 0, 7, 0, 7, 0, 1)
    assert macwilliams(enumerate_weights(D6), 2) == enumerate_weights(D6.dual)


def test_build_B_examples():
    assert build_B(D4) == W(Fr(1, 2), 0, -3, 0, Fr(1, 2))
    assert build_B(D6) == W(Fr(1, 2), 0, Fr(-5, 2), 0, Fr(-5, 2), 0, Fr(1, 2))
    with pytest.raises(CodeError):
        build_B(LinearCode.from_strings(["11"]))


def test_gleason_examples():
    d4 = gleason_decompose(build_B(D4))
    assert d4.e == (Fr(1, 2),) and d4.eps == (1,)
    d6 = gleason_decompose(build_B(D6))
    assert d6.e == (Fr(1, 2),) and d6.eps == (2,)
    # (x^4 - 6x^2y^2 + y^4)(x^2 + y^2)^2, N = 4
    basis = W(1, 0, -4, 0, -10, 0, -4, 0, 1)
    assert gleason_basis(4, 0) == (1, -4, -10, -4, 1)
    assert gleason_decompose(basis).e == (1,)
    # N = 6 has two basis elements; the first alone gives e = [1, 0]
    assert gleason_decompose(in_y(gleason_basis(6, 0))).e == (1, 0)


def test_gleason_rejects_non_member():
    with pytest.raises(NotInInvariantModule):
        gleason_decompose(W(1, 0, 0, 0, 0, 0, 0))


def test_shadow_F_examples():
    assert shadow_F(D6).to_str() == "2*y + 2*y^5"
    assert F_from_decomposition(GleasonDecomposition.from_eps(3, [2])) == shadow_F(D6)
    with pytest.raises(CodeError):
        shadow_F(LinearCode.from_strings(["11"]))
    with pytest.raises(CodeError):
        shadow_F(D4)  # doubly-even


def test_F_from_decomposition_examples():
    assert F_from_decomposition(GleasonDecomposition.from_eps(3, [2])).to_str() == "2*y + 2*y^5"
    assert F_from_decomposition(GleasonDecomposition.from_eps(2, [1])).to_str() == "1 + y^4"
    assert not any(F_from_decomposition(GleasonDecomposition.from_eps(10, [0, 0, 0])).coeffs)


def test_alpha_examples():
    for N in range(2, 30):
        assert alpha(0, N) == 1
    assert alpha(2, 12) == 6
    assert alpha(1, 6) == 2
    for i, N in [(2, 12), (0, 8), (3, 20)]:
        assert alpha_by_buermann_check(i, N)


@pytest.mark.parametrize("i,N", [(i, N) for N in (2, 7, 12, 19, 30) for i in range(0, 6)])
def test_alpha_matches_sympy(i, N):
    assert alpha(i, N) == alpha_sympy(i, N)


def test_gamma_examples():
    for N in (6, 14, 30):
        for h in range(gleason_top(N) + 1):
            assert gamma(h, h, N) == 1
    assert gamma(1, 0, 6) == 1
    assert gamma(2, 0, 14) == 6
    with pytest.raises(ValueError):
        gamma(0, 1, 10)


@pytest.mark.parametrize("h,k,N", [(1, 0, 6), (2, 0, 14), (3, 1, 20), (4, 2, 22), (5, 0, 26)])
def test_gamma_matches_sympy(h, k, N):
    assert gamma(h, k, N) == gamma_sympy(h, k, N) == gamma_by_series(h, k, N)


def test_binom_parity_examples():
    assert binom_parity(1) and binom_parity(2) and not binom_parity(5)
    with pytest.raises(ValueError):
        binom_parity(0)


def test_series_arithmetic():
    s = TruncatedSeries.poly([1, 1], 6)
    inv = s.inverse()
    assert list(inv.coeffs) == [1, -1, 1, -1, 1, -1]
    assert (s * inv) == TruncatedSeries.one(6)
    assert (s ** -2)[3] == -4
    g = TruncatedSeries.poly([0, 1, 1], 6)
    f = TruncatedSeries.poly([1, 2, 3], 6)
    coeffs = power_expansion(f, g, 6)
    acc = TruncatedSeries.poly([0], 6)
    gp = TruncatedSeries.one(6)
    for c in coeffs:
        acc = acc + gp.scale(c)
        gp = gp * g
    assert acc == f


# --- properties -------------------------------------------------------------------

@given(code_st(max_n=14))
def test_macwilliams_involution(C):
    A = enumerate_weights(C)
    assert A.evaluate() == 2 ** C.k
    B = macwilliams(A, C.k)
    assert B == enumerate_weights(C.dual)
    assert macwilliams(B, C.dual.k) == A


@given(code_st(max_n=9, max_rows=4))
def test_macwilliams_matches_sympy(C):
    A = enumerate_weights(C)
    assert list(macwilliams(A, C.k).coeffs) == macwilliams_direct(list(A.coeffs), C.n, C.k)


@given(semi_self_dual_codes(max_half=7))
def test_identity_suite(D):
    assume(not D.is_doubly_even())
    B = build_B(D)
    dec = gleason_decompose(B)
    assert dec.reconstruct_B() == B
    assert shadow_F(D) == F_from_decomposition(dec)
    assert dec.eps_nonnegative_integers()


@given(st.integers(2, 30), st.data())
def test_decompose_reconstruct_roundtrip(N, data):
    L = gleason_top(N)
    e = data.draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=8),
                           min_size=L + 1, max_size=L + 1))
    dec = GleasonDecomposition(N, tuple(e), ())
    back = gleason_decompose(dec.reconstruct_B())
    assert back.e == tuple(e)


def test_gleason_basis_shape():
    for N in range(2, 20):
        for i in range(gleason_top(N) + 1):
            b = gleason_basis(N, i)
            assert len(b) == N + 1
            assert all(c == 0 for c in b[:i]) and b[i] == 1


def test_alpha_identity_small():
    for mu in range(1, 6):
        assert alpha(2 * mu, 12 * mu) == 6 * comb(5 * mu - 1, mu - 1)
