from hypothesis import settings, strategies as st

from crosssperner.lattice_core import Family

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def fam(n, *sets):
    return Family.from_sets(n, sets)


@st.composite
def families(draw, min_n=1, max_n=5, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << (1 << n)) - 1))
    return Family(n, bits)


@st.composite
def family_pairs(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    return draw(families(n=n)), draw(families(n=n))
