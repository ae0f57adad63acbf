"""Hypothesis strategies for small codes."""

from hypothesis import strategies as st

from semiselfdual.codes import LinearCode


@st.composite
def codes(draw, min_n=1, max_n=12, max_rows=8):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=max_rows))
    return LinearCode(n, rows)


@st.composite
def vectors(draw, n):
    return draw(st.integers(0, (1 << n) - 1))
