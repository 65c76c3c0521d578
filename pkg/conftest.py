"""Shared hypothesis strategies and settings for the toolkit tests."""

from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graph_core import Graph

settings.register_profile(
    "toolkit",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("toolkit")


@st.composite
def small_graphs(draw, min_order=2, max_order=10):
    order = draw(st.integers(min_order, max_order))
    pairs = list(combinations(range(order), 2))
    if not pairs:
        return Graph.from_edges(order, [])
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph.from_edges(order, chosen)
