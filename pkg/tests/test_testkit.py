import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vimc.errors import CapacityError
from vimc.eval import check_sentence
from vimc.graph import Graph, components_after_removal
from vimc.integrity import verify_separator
from vimc.kernel import component_signature, kernelize
from vimc.logic import ExistsVertex, NotEqual, Adjacent, conj, quantifier_profile
from vimc.testkit import (
    GeneratorParams,
    all_labelled_graphs,
    brute_clique,
    brute_three_color,
    brute_vertex_cover,
    graphs_up_to_isomorphism,
    is_proper_coloring,
    random_formula,
    random_graph,
    random_graph_with_separator,
    rng_for,
)


def clique_sentence(q):
    xs = range(1, q + 1)
    body = conj(*[Adjacent(a, b) for a, b in itertools.combinations(xs, 2)],
                *[NotEqual(a, b) for a, b in itertools.combinations(xs, 2)])
    for x in reversed(xs):
        body = ExistsVertex(x, body)
    return body


def test_clique_examples():
    assert brute_clique(Graph.complete(4), 4)
    assert not brute_clique(Graph.cycle(5), 3)
    assert brute_clique(Graph.empty(3), 1) and brute_clique(Graph(0), 0)
    assert not brute_clique(Graph.complete(3), 4)


def test_three_colour_examples():
    assert brute_three_color(Graph.complete(4)) is None
    col = brute_three_color(Graph.cycle(5))
    assert col is not None and is_proper_coloring(Graph.cycle(5), col)
    assert brute_three_color(Graph.empty(4)) == {v: 1 for v in range(4)}


@pytest.mark.parametrize("g, vc", [(Graph.complete(3), 2), (Graph.path(3), 1), (Graph.path(4), 2), (Graph(0), 0)])
def test_vertex_cover_examples(g, vc):
    assert brute_vertex_cover(g) == vc


def test_oracle_limits():
    with pytest.raises(CapacityError):
        brute_clique(Graph.empty(21), 2)
    with pytest.raises(CapacityError):
        brute_three_color(Graph.empty(21))
    with pytest.raises(CapacityError):
        brute_vertex_cover(Graph.empty(15))


def test_three_colour_exhaustive_small():
    for g in all_labelled_graphs(4):
        colourable = any(
            is_proper_coloring(g, dict(enumerate(c))) for c in itertools.product((1, 2, 3), repeat=4)
        )
        assert (brute_three_color(g) is not None) == colourable


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 8), st.integers(2, 4))
def test_clique_oracle_matches_fo_sentence(seed, n, q):
    g = random_graph(rng_for(seed), n, 0.6)
    assert brute_clique(g, q) == check_sentence(g, clique_sentence(q))


def test_atlas_counts():
    assert [len(graphs_up_to_isomorphism(n)) for n in range(7)] == [1, 1, 2, 4, 11, 34, 156]


def test_pool_of_one_gives_one_signature():
    g, sep = random_graph_with_separator(GeneratorParams(5, 40, 2, 3, 1, copies=10))
    comps = components_after_removal(g, sep.s)
    assert len(comps) == 10
    assert len({component_signature(g, sep.s, c) for c in comps}) == 1


def test_single_copies_make_kernel_identity():
    g, sep = random_graph_with_separator(GeneratorParams(9, 40, 3, 2, 10, copies=1))
    k, rep = kernelize(g, sep.s, quantifier_profile(random_formula(GeneratorParams(9, 40, 3, 2, 10))))
    assert rep.removed_vertices == 0 and k == g


def test_generator_is_deterministic():
    p = GeneratorParams(1234, 16, 2, 3, 3, (2, 1, 5))
    assert random_graph_with_separator(p) == random_graph_with_separator(p)
    assert random_formula(p) == random_formula(p)
    assert random_graph_with_separator(p)[0] != random_graph_with_separator(GeneratorParams(1235, 16, 2, 3, 3))[0]


@pytest.mark.parametrize(
    "p",
    [GeneratorParams(0, 3, 5, 1, 1), GeneratorParams(0, 10, 1, 0, 1), GeneratorParams(0, 10, 1, 1, 0),
     GeneratorParams(0, 5, 1, 1, 3, copies=2)],
)
def test_inconsistent_params(p):
    with pytest.raises(ValueError):
        random_graph_with_separator(p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 3), st.integers(1, 3), st.integers(1, 4), st.integers(4, 18))
def test_planted_separator_holds(seed, s, c, pool, n):
    g, sep = random_graph_with_separator(GeneratorParams(seed, max(n, s), s, c, pool))
    assert len(sep.s) == s and sep.max_component_size <= c
    assert verify_separator(g, sep.s, sep.k)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3), st.integers(0, 2), st.integers(0, 6))
def test_formula_within_profile(seed, q1, q2, depth):
    f = random_formula(GeneratorParams(seed, 5, 0, 1, 1, (q1, q2, depth)))
    p = quantifier_profile(f)
    assert p.q1 <= q1 and p.q2 <= q2
    if q2 == 0:
        assert p.q2 == 0


def test_formula_needs_vertex_quantifier():
    with pytest.raises(ValueError):
        random_formula(GeneratorParams(0, 5, 0, 1, 1, (0, 2, 3)))
