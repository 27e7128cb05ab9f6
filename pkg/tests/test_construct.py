import functools
import itertools

import pytest

from vimc.construct import (
    ROLES,
    block_parameter,
    build_h,
    census,
    code_bit,
    hub_neighbourhood,
    phi_adj,
    phi_clique,
    phi_leaf_at_least,
    phi_role,
    phi_three_col,
    phi_wy,
    property2_holds,
    three_col_matrix,
    witness_check_three_col,
)
from vimc.eval import Environment
from vimc.graph import Graph
from vimc.logic import ExistsSet, free_variables, parse_formula, print_formula, quantifier_profile
from vimc.logic.ast import ExistsVertex
from vimc.testkit import brute_clique, graphs_up_to_isomorphism, random_graph, rng_for


@functools.lru_cache(maxsize=None)
def h_of(g):
    return build_h(g)


def leaves_of(h, v):
    return sum(1 for w in h.graph.adjacency[v] if h.graph.degree(w) == 1)


@pytest.mark.parametrize("n, k", [(2, 1), (3, 2), (4, 2), (5, 2), (16, 2), (17, 3), (512, 3), (513, 4)])
def test_block_parameter(n, k):
    assert block_parameter(n) == k
    assert 2 ** (k * k) >= n


def test_needs_two_vertices():
    with pytest.raises(ValueError):
        build_h(Graph(1))


def test_code_bits_read_i_minus_one_lsb_first():
    # 46 = 101110 in binary; blocks of three from the low end: 110, 101, 000
    bits = [[code_bit(47, b, g, 3) for g in (1, 2, 3)] for b in (1, 2, 3)]
    assert bits == [[False, True, True], [True, False, True], [False, False, False]]


def test_n5_census():
    g = Graph.cycle(5)
    h = build_h(g)
    m = h.meta
    assert m.k == 2 and len(m.s_vertices) == 4
    roles = [m.role(v) for v in range(h.graph.n)]
    assert roles.count("W") == 10
    assert h.graph.n == h.expected_order() == 5 * 4 + 5 * (7 * 2 + 5) + 4
    for j in m.edge_numbering:
        gadget = [m.y_vertices[(j, b, p)] for b in (1, 2) for p in (1, 2)] + [m.y_centers[j]]
        assert len(gadget) == 5
        assert sum(leaves_of(h, v) for v in gadget) == 14
    info = census(h)
    assert info["max_component_size"] == 7 * 2 + 5
    assert info["bound_verified"]
    assert info["integrity_bound"] == 4 + 19


def test_leaf_counts_match_roles():
    h = build_h(Graph.path(4))
    want = {"S": 0, "W": 1, "Y1": 2, "Y2": 3, "center": 4}
    for v, r in h.meta.roles.items():
        if r != "leaf":
            assert leaves_of(h, v) == want[r]
        else:
            assert h.graph.degree(v) == 1


def test_hub_wiring():
    h = build_h(Graph.complete(5))
    m = h.meta
    s = m.s_vertices
    for (i, beta), w in m.w_vertices.items():
        expect = {s[beta - 1]} | {s[m.k + g - 1] for g in range(1, m.k + 1) if code_bit(i, beta, g, m.k)}
        assert hub_neighbourhood(h, w) == expect
    for j, (i1, i2) in m.edge_numbering.items():
        for beta in range(1, m.k + 1):
            assert hub_neighbourhood(h, m.y_vertices[(j, beta, 1)]) == hub_neighbourhood(h, m.w_vertices[(i1, beta)])
            assert hub_neighbourhood(h, m.y_vertices[(j, beta, 2)]) == hub_neighbourhood(h, m.w_vertices[(i2, beta)])


def test_edge_numbering_is_lexicographic():
    h = build_h(Graph(4, [(2, 3), (0, 3), (0, 1)]))
    assert h.meta.edge_numbering == {1: (1, 2), 2: (1, 4), 3: (3, 4)}


@pytest.mark.parametrize("n", range(2, 7))
def test_property2_all_sizes(n):
    for g in graphs_up_to_isomorphism(n)[:40]:
        assert property2_holds(build_h(g))


def test_phi2_shape():
    f = phi_leaf_at_least(2)
    assert print_formula(f.body) == (
        "exists x2. exists x3. forall x4. x2 ~ x1 & x3 ~ x1 & x2 != x3 & (x4 = x1 | !(x4 ~ x2) & !(x4 ~ x3))"
    )
    with pytest.raises(ValueError):
        phi_leaf_at_least(5)


def test_leaf_formulas_on_examples():
    h = build_h(Graph.path(3))
    ev = h.evaluator()
    m = h.meta
    assert not ev.check(phi_leaf_at_least(1), Environment({1: m.s_vertices[0]}))
    w = m.w_vertices[(1, 1)]
    assert ev.check(phi_leaf_at_least(1), Environment({1: w}))
    assert not ev.check(phi_leaf_at_least(2), Environment({1: w}))
    assert ev.check(phi_leaf_at_least(4), Environment({1: m.y_centers[1]}))


GRAPHS_SMALL = [g for n in range(2, 5) for g in graphs_up_to_isomorphism(n)]


@pytest.mark.parametrize("g", GRAPHS_SMALL, ids=repr)
def test_role_tables(g):
    h = h_of(g)
    ev = h.evaluator()
    for role in ROLES:
        table = ev.table(phi_role(role))
        assert table == [h.meta.role(v) == role for v in range(h.graph.n)]


@pytest.mark.parametrize("g", GRAPHS_SMALL, ids=repr)
def test_adjacency_table(g):
    h = h_of(g)
    ev = h.evaluator()
    f = phi_adj()
    ws = sorted(h.meta.w_vertices.items())
    for ((i, _), a), ((i2, _), b) in itertools.product(ws, ws):
        assert ev.check(f, Environment({1: a, 2: b})) == g.has_edge(i - 1, i2 - 1)
    leaf = next(iter(h.meta.leaf_owner))
    assert not ev.check(f, Environment({1: leaf, 2: leaf}))


def test_wy_pairs():
    g = Graph(4, [(0, 1), (2, 3)])
    h = h_of(g)
    ev = h.evaluator()
    m = h.meta
    f = phi_wy()
    for (i, _), w in m.w_vertices.items():
        for (j, _, part), y in m.y_vertices.items():
            endpoint = m.edge_numbering[j][part - 1]
            assert ev.check(f, Environment({1: w, 2: y})) == (i == endpoint)
    assert not ev.check(f, Environment({1: m.s_vertices[0], 2: m.y_vertices[(1, 1, 1)]}))


@pytest.mark.parametrize(
    "g, q, expected",
    [(Graph.complete(3), 3, True), (Graph.path(3), 3, False), (Graph.cycle(5), 2, True), (Graph.empty(3), 2, False)],
    ids=["K3", "P3", "C5", "E3"],
)
def test_clique_sentence(g, q, expected):
    h = h_of(g)
    assert h.evaluator().check(phi_clique(q)) is expected
    assert brute_clique(g, q) is expected


def test_clique_needs_q2():
    with pytest.raises(ValueError):
        phi_clique(1)


def _count(f, kind):
    total = 0
    stack = [f]
    while stack:
        x = stack.pop()
        total += isinstance(x, kind)
        stack.extend(getattr(x, a) for a in ("body", "left", "right") if hasattr(x, a))
    return total


def test_regression_profiles():
    from vimc.logic import desugar

    c3, col = phi_clique(3), phi_three_col()
    # independent count over the desugared trees
    assert _count(desugar(c3), ExistsVertex) == 201
    assert _count(desugar(col), ExistsVertex) == 545
    assert _count(desugar(col), ExistsSet) == 3
    assert quantifier_profile(c3) == quantifier_profile(c3).__class__(201, 0)
    assert (quantifier_profile(col).q1, quantifier_profile(col).q2) == (545, 3)


def test_formulas_round_trip():
    for f in (phi_clique(3), phi_three_col(), phi_adj(), phi_wy()):
        assert parse_formula(print_formula(f)) == f
    assert free_variables(three_col_matrix()) == (set(), {1, 2, 3})
    assert free_variables(phi_adj()) == ({1, 2}, set())


def test_role_builder_rejects_unknown():
    with pytest.raises(ValueError):
        phi_role("Z")


@pytest.mark.parametrize(
    "g, col, expected",
    [
        (Graph.complete(3), {0: 1, 1: 2, 2: 3}, True),
        (Graph.complete(3), {0: 1, 1: 1, 2: 3}, False),
        (Graph.empty(3), {0: 1, 1: 1, 2: 1}, True),
        (Graph.path(3), {0: 3, 1: 1, 2: 3}, True),
        (Graph.path(3), {0: 3, 1: 3, 2: 1}, False),
    ],
)
def test_witness_check(g, col, expected):
    assert witness_check_three_col(h_of(g), col) is expected


def test_witness_check_needs_total_coloring():
    with pytest.raises(ValueError):
        witness_check_three_col(h_of(Graph.complete(3)), {0: 1, 1: 2})


@pytest.mark.parametrize("seed", range(3))
def test_random_n6(seed):
    g = random_graph(rng_for(seed, "n6"), 6)
    h = build_h(g)
    assert property2_holds(h)
    assert census(h)["bound_verified"]
