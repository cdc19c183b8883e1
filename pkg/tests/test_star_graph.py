import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nkstar.oracle.search import undirected_diameter
from nkstar.star_graph import (
    GraphParams,
    all_labels,
    arm,
    check_label,
    clique_neighbors,
    edge_list,
    extend,
    head,
    left_half,
    neighbors,
    parity,
    rank,
    right_half,
    star_neighbors,
    tail_end,
    undirected_diameter_formula,
    unrank,
)
from nkstar.permutation import Parity

S53 = GraphParams(5, 3)


def _small_params(max_nodes):
    out = []
    for n in range(2, 60):
        for k in range(1, n):
            p = GraphParams(n, k)
            if p.num_nodes <= max_nodes:
                out.append(p)
    return out


@st.composite
def graph_and_label(draw, max_n=9):
    n = draw(st.integers(3, max_n))
    k = draw(st.integers(1, n - 1))
    label = draw(st.permutations(range(1, n + 1)))[:k]
    return GraphParams(n, k), tuple(label)


def test_params_validation():
    with pytest.raises(ValueError):
        GraphParams(5, 5)
    with pytest.raises(ValueError):
        GraphParams(5, 0)
    with pytest.raises(TypeError):
        GraphParams(5.0, 3)
    assert not GraphParams(5, 4).orientable
    assert not GraphParams(5, 2).orientable
    with pytest.raises(ValueError):
        GraphParams(5, 4).require_orientable()
    assert GraphParams(10, 5).left_positions == (2, 3)
    assert GraphParams(10, 5).right_positions == (4, 5)


def test_label_partitions():
    u = (7, 2, 3, 4, 5)
    assert head(u) == 7
    assert arm(u) == (2, 3, 4, 5)
    assert left_half(u) == (2, 3)
    assert right_half(u) == (4, 5)
    assert tail_end(u, 10) == (1, 6, 8, 9, 10)
    assert extend(u, 10) == (7, 2, 3, 4, 5, 1, 6, 8, 9, 10)
    assert parity(u, 10) is Parity.EVEN


@pytest.mark.parametrize("bad", [(1, 2), (1, 2, 2), (0, 1, 2), (1, 2, 6)])
def test_check_label_rejects(bad):
    with pytest.raises(ValueError):
        check_label(bad, S53)


def test_rank_examples():
    assert rank((1, 2, 3), S53) == 0
    assert rank((5, 4, 3), S53) == 59
    assert unrank(0, S53) == (1, 2, 3)
    assert unrank(59, S53) == (5, 4, 3)
    with pytest.raises(ValueError):
        unrank(60, S53)
    with pytest.raises(ValueError):
        rank((1, 1, 2), S53)


@pytest.mark.parametrize("params", [S53, GraphParams(6, 4), GraphParams(7, 2), GraphParams(6, 5)])
def test_rank_is_bijective_and_ordered(params):
    labels = list(all_labels(params))
    assert len(labels) == params.num_nodes == math.perm(params.n, params.k)
    assert [rank(u, params) for u in labels] == list(range(params.num_nodes))
    assert [unrank(i, params) for i in range(params.num_nodes)] == labels


@given(graph_and_label())
def test_rank_round_trip(case):
    params, u = case
    assert unrank(rank(u, params), params) == u


def test_star_neighbors_example():
    assert star_neighbors((7, 2, 3, 4, 5)) == [
        (2, (2, 7, 3, 4, 5)),
        (3, (3, 2, 7, 4, 5)),
        (4, (4, 2, 3, 7, 5)),
        (5, (5, 2, 3, 4, 7)),
    ]


@given(graph_and_label())
def test_star_neighbors_are_involutions(case):
    _, u = case
    nbrs = star_neighbors(u)
    assert len(nbrs) == len(u) - 1
    for i, v in nbrs:
        diff = [p for p in range(len(u)) if u[p] != v[p]]
        assert diff == [0, i - 1]
        assert dict(star_neighbors(v))[i] == u


def test_clique_neighbors_example():
    params = GraphParams(10, 5)
    got = clique_neighbors((7, 2, 3, 4, 5), params)
    assert [v[0] for v in got] == [1, 6, 8, 9, 10]
    assert all(v[1:] == (2, 3, 4, 5) for v in got)


def test_clique_membership_is_equivalence():
    for u in all_labels(S53):
        group = set(clique_neighbors(u, S53)) | {u}
        for v in clique_neighbors(u, S53):
            assert set(clique_neighbors(v, S53)) | {v} == group


@pytest.mark.parametrize("params", [S53, GraphParams(6, 3), GraphParams(6, 4), GraphParams(7, 4), GraphParams(7, 3)])
def test_degree_and_clique_partition(params):
    cliques = set()
    for u in all_labels(params):
        nb = neighbors(u, params)
        assert len(nb) == len(set(nb)) == params.n - 1
        assert u not in nb
        assert len(clique_neighbors(u, params)) == params.n - params.k
        cliques.add(frozenset(clique_neighbors(u, params)) | {u})
    assert len(cliques) == math.factorial(params.n) // math.factorial(params.n - params.k + 1)
    assert all(len(c) == params.n - params.k + 1 for c in cliques)


@pytest.mark.parametrize("params", [S53, GraphParams(6, 3), GraphParams(6, 4)])
def test_star_components_count(params):
    # Closure under star edges: one class per symbol set.
    seen, classes = set(), 0
    for u in all_labels(params):
        if u in seen:
            continue
        classes += 1
        stack = [u]
        seen.add(u)
        while stack:
            x = stack.pop()
            for _, y in star_neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    assert classes == math.comb(params.n, params.k)


def test_edge_list_is_sorted_and_complete():
    edges = edge_list(S53)
    assert edges == sorted(edges)
    assert all(u < v for u, v, _ in edges)
    assert len(edges) == S53.num_nodes * (S53.n - 1) // 2
    assert edges[0] == ((1, 2, 3), (2, 1, 3), "star")


def test_diameter_formula_examples():
    assert undirected_diameter_formula(GraphParams(10, 5)) == 9
    assert undirected_diameter_formula(S53) == 5
    assert undirected_diameter_formula(GraphParams(6, 4)) == 6


# k = 1 gives the complete graph K_n; capped at n < 60 to keep the sweep short.
@pytest.mark.parametrize("params", _small_params(2520), ids=lambda p: f"{p.n},{p.k}")
def test_undirected_bfs_diameter_matches_formula(params):
    d, (u, v) = undirected_diameter(params)
    assert d == undirected_diameter_formula(params)
    assert u != v
