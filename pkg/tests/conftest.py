import pytest
from hypothesis import settings, strategies as st

from heisenberg_homology.heisenberg_core import GroupRingElement, HeisenbergElement, SurfaceParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

TORUS = SurfaceParams(1, 1)
SURFACES = [SurfaceParams(g, m) for g in range(3) for m in range(1, 4)]


@st.composite
def elements(draw, params=None, bound=4):
    params = params or draw(st.sampled_from(SURFACES))
    k = draw(st.integers(-bound, bound))
    x = draw(st.lists(st.integers(-bound, bound), min_size=params.rank, max_size=params.rank))
    return HeisenbergElement(k, tuple(x), params)


@st.composite
def ring_elements(draw, params, max_terms=3):
    out = GroupRingElement.zero(params)
    for _ in range(draw(st.integers(0, max_terms))):
        h = draw(elements(params, bound=2))
        out = out + GroupRingElement.monomial(h, draw(st.integers(-3, 3)))
    return out


@pytest.fixture
def torus():
    return TORUS
