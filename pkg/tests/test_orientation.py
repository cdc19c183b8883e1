import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nkstar.orientation import (
    Arc,
    all_cliques,
    audit_clique,
    clique_arc,
    clique_shortest_path,
    direction_of_clique_edge,
    direction_of_star_edge,
    oriented_clique,
    out_neighbors,
    shortest_head_path,
)
from nkstar.permutation import Parity
from nkstar.star_graph import GraphParams, all_labels, clique_neighbors, edge_list, star_neighbors

S10_5 = GraphParams(10, 5)
U = (7, 2, 3, 4, 5)
E, O = Parity.EVEN, Parity.ODD


@st.composite
def orientable_label(draw):
    n = draw(st.integers(5, 10))
    k = draw(st.integers(3, n - 2))
    return GraphParams(n, k), tuple(draw(st.permutations(range(1, n + 1)))[:k])


def _flip(q, a, b):
    """Copy of ``q`` with the arc a -> b reversed (negative control)."""
    succ = {x: set(ys) for x, ys in q.successors.items()}
    succ[a].discard(b)
    succ[b].add(a)
    bad = dataclasses.replace(q)
    bad.__dict__["successors"] = {x: tuple(sorted(ys)) for x, ys in succ.items()}
    return bad


def test_star_direction_examples():
    assert direction_of_star_edge(U, 2, S10_5) == Arc(U, (2, 7, 3, 4, 5), "star", 2)
    assert direction_of_star_edge(U, 4, S10_5) == Arc((4, 2, 3, 7, 5), U, "star", 4)
    with pytest.raises(ValueError):
        direction_of_star_edge(U, 6, S10_5)
    with pytest.raises(ValueError):
        direction_of_star_edge((1, 2), 2, GraphParams(5, 2))


def test_clique_direction_examples():
    assert direction_of_clique_edge((9, 2, 3, 4, 5), U, S10_5).src == (9, 2, 3, 4, 5)
    assert direction_of_clique_edge((10, 2, 3, 4, 5), (1, 2, 3, 4, 5), S10_5).src == (1, 2, 3, 4, 5)
    assert direction_of_clique_edge((8, 2, 3, 4, 5), U, S10_5).src == U
    with pytest.raises(ValueError):
        direction_of_clique_edge(U, (7, 2, 3, 4, 6), S10_5)


def test_clique_arc_rule():
    assert clique_arc(9, E, 7, E) and not clique_arc(7, E, 9, E)
    assert clique_arc(1, E, 10, O) and not clique_arc(10, O, 1, E)


@pytest.mark.parametrize("nk", [(5, 3), (6, 3), (6, 4)])
def test_direction_rule_consistent_from_both_endpoints(nk):
    params = GraphParams(*nk)
    for u in all_labels(params):
        for i, v in star_neighbors(u):
            assert direction_of_star_edge(u, i, params) == direction_of_star_edge(v, i, params)
        for v in clique_neighbors(u, params):
            assert direction_of_clique_edge(u, v, params) == direction_of_clique_edge(v, u, params)


@given(orientable_label())
def test_out_plus_in_degree_is_n_minus_1(case):
    params, u = case
    outs = out_neighbors(u, params)
    ins = [v for _, v in star_neighbors(u) if u in {a.dst for a in out_neighbors(v, params)}]
    ins += [v for v in clique_neighbors(u, params) if u in {a.dst for a in out_neighbors(v, params)}]
    assert len(outs) + len(ins) == params.n - 1
    assert all(a.src == u for a in outs)


def test_out_neighbors_reference_node():
    arcs = out_neighbors(U, S10_5)
    assert {a.dst[0] for a in arcs if a.kind == "clique"} == {1, 8, 10}
    assert {a.position for a in arcs if a.kind == "star"} == {2, 3}
    assert len([a for a in arcs if a.kind == "clique"]) >= (10 - 5) // 2


def test_orientation_covers_each_edge_once():
    params = GraphParams(5, 3)
    arcs = [(a.src, a.dst) for u in all_labels(params) for a in out_neighbors(u, params)]
    undirected = [tuple(sorted(a)) for a in arcs]
    assert len(undirected) == len(set(undirected))
    assert sorted(undirected) == sorted((u, v) for u, v, _ in edge_list(params))


def test_oriented_clique_reference_node():
    q = oriented_clique(U, S10_5)
    assert q.heads == (1, 6, 7, 8, 9, 10)
    assert q.parities == (E, O, E, O, E, O)
    assert q.n_even == q.n_odd == 3
    assert q.member(9) == (9, 2, 3, 4, 5)
    assert q.parity_of(8) is O
    with pytest.raises(ValueError):
        q.member(2)


def test_clique_out_degree_exhaustive_s63():
    params = GraphParams(6, 3)
    for q in all_cliques(params):
        assert all(len(q.successors[j]) >= (6 - 3) // 2 for j in q.heads)


def test_clique_paths_reference_node():
    assert clique_shortest_path(U, 7, 10, S10_5) == (7, 10)
    assert clique_shortest_path(U, 7, 9, S10_5) == (7, 8, 9)
    # The arc 1 -> 10 exists, so the shortest path is a single hop.
    assert clique_shortest_path(U, 1, 10, S10_5) == (1, 10)
    # Closing the 4-cycle through the (jmin, jmax) arc takes three hops.
    assert clique_shortest_path(U, 10, 1, S10_5) == (10, 6, 7, 1)


def test_clique_path_errors_and_avoid():
    q = oriented_clique(U, S10_5)
    with pytest.raises(ValueError):
        clique_shortest_path(q, 7, 7)
    with pytest.raises(ValueError):
        clique_shortest_path(q, 7, 2)
    assert shortest_head_path(q, 7, 9, avoid=(8,)) not in (None, (7, 8, 9))


@pytest.mark.parametrize("nk", [(5, 3), (6, 3), (6, 4), (7, 3), (7, 4), (8, 3)])
def test_clique_path_length_bound(nk):
    params = GraphParams(*nk)
    limit = 3 if (params.n - params.k) % 2 else 2
    for q in all_cliques(params)[:60]:
        for x in q.heads:
            for y in q.heads:
                if x != y:
                    assert len(clique_shortest_path(q, x, y)) - 1 <= limit


@pytest.mark.parametrize("nk", [(6, 4), (5, 3), (8, 3)])
def test_audit_clique_passes(nk):
    params = GraphParams(*nk)
    cliques = all_cliques(params)
    if nk == (6, 4):
        assert len(cliques) == 120
    for q in cliques:
        report = audit_clique(q)
        assert report.ok, report.details


def test_audit_clique_four_cycle_arc_reference_node():
    q = oriented_clique(U, S10_5)
    report = audit_clique(q)
    assert report.ok, report.details
    assert q.has_arc(1, 10)


def test_audit_clique_detects_flipped_arc():
    q = oriented_clique(U, S10_5)
    bad = audit_clique(_flip(q, 7, 10))
    assert not bad.ok
    assert not bad.claims["cycle_cover"] or not bad.claims["out_degree"]


def test_audit_clique_detects_broken_alternation():
    q = oriented_clique(U, S10_5)
    broken = dataclasses.replace(q, parities=(E, E, O, O, E, O))
    report = audit_clique(broken)
    assert not report.claims["sign_alternation"]
