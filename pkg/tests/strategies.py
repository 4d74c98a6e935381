"""Hypothesis strategies for small structures."""
from hypothesis import strategies as st

from catale import smallgen

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def categories(draw, max_objects=3, max_set_size=3):
    seed = draw(seeds)
    return next(smallgen.random_categories(1, seed, max_objects=max_objects,
                                           max_set_size=max_set_size))


@st.composite
def psgs(draw, n=4):
    seed = draw(seeds)
    return next(smallgen.random_psgs(1, seed, n=n))


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))
