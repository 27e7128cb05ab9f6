import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import integrity_by_enumeration
from vimc.errors import CapacityError, InvalidVertexError
from vimc.graph import Graph, joined_stars, max_component_size
from vimc.integrity import Separator, verify_separator, vertex_integrity_exact
from vimc.testkit import brute_vertex_cover, random_graph, rng_for


@pytest.mark.parametrize(
    "g, k, s",
    [
        (joined_stars(3), 3, (0, 4)),
        (Graph.empty(5), 1, ()),
        (Graph.complete(5), 5, ()),
        (Graph.path(4), 3, (1,)),
        (Graph(0), 0, ()),
        (Graph.cycle(6), 4, (0, 3)),
    ],
)
def test_fixed_cases(g, k, s):
    sep = vertex_integrity_exact(g)
    assert (sep.k, sep.s) == (k, s)
    assert sep.max_component_size == max_component_size(g, s)
    assert verify_separator(g, s, k)
    if k:
        assert not verify_separator(g, s, k - 1)


def test_capacity_limit():
    with pytest.raises(CapacityError):
        vertex_integrity_exact(Graph.path(10), limit=9)


def test_verify_separator_checks_ids():
    with pytest.raises(InvalidVertexError):
        verify_separator(Graph.path(3), [3], 3)


def test_json_shape():
    assert Separator((1,), 3, 2).to_json() == {"separator": [1], "integrity": 3, "max_component_size": 2}


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 8))
def test_matches_enumeration(seed, n):
    g = random_graph(rng_for(seed), n, rng_for(seed, "p").random())
    sep = vertex_integrity_exact(g)
    assert sep.k == integrity_by_enumeration(g)
    assert len(sep.s) + max_component_size(g, sep.s) == sep.k


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 12))
def test_bounded_by_vertex_cover(seed, n):
    g = random_graph(rng_for(seed), n, 0.4)
    assert vertex_integrity_exact(g).k <= brute_vertex_cover(g) + 1
