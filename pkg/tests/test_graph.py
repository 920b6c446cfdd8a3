from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from erric.graph import (
    INFINITE,
    Graph,
    GraphError,
    are_isomorphic,
    ball,
    bfs_distances,
    canonical_form,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    diameter,
    distance,
    find_triangles,
    find_twins,
    format_graph,
    girth,
    is_connected,
    parse_graph,
    path_graph,
    petersen_graph,
    random_regular,
)

from .conftest import graphs


def test_parse_roundtrip_with_comments():
    text = "# a triangle\n3 3\n0 1\n\n1 2\n# trailing\n2 0\n"
    g = parse_graph(text)
    assert g.n == 3 and g.m == 3
    assert parse_graph(format_graph(g)) == g


@pytest.mark.parametrize(
    "text, lineno, fragment",
    [
        ("3 2\n0 1\n1 1\n", 3, "self-loop"),
        ("3 2\n0 1\n1 0\n", 3, "duplicate"),
        ("3 1\n0 5\n", 2, "out of range"),
        ("3 1\n0 x\n", 2, "malformed edge"),
        ("3 2\n0 1\n", 1, "declares 2"),
        ("three 1\n0 1\n", 1, "malformed header"),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno, fragment):
    with pytest.raises(GraphError) as exc:
        parse_graph(text)
    assert f"line {lineno}" in str(exc.value)
    assert fragment in str(exc.value)


def test_empty_graph_and_isolated_vertices():
    g = parse_graph("4 0\n")
    assert g.n == 4 and g.m == 0
    assert not is_connected(g)
    assert distance(g, 0, 3) is INFINITE
    assert diameter(g) is INFINITE


@given(graphs(max_n=9))
def test_format_parse_roundtrip(g):
    assert parse_graph(format_graph(g)) == g


def test_distances_on_path_and_cycle():
    p = path_graph(5)
    assert bfs_distances(p, 0) == [0, 1, 2, 3, 4]
    assert ball(p, 2, 1) == {1, 2, 3}
    assert diameter(cycle_graph(7)) == 3
    assert girth(cycle_graph(7)) == 7
    assert girth(path_graph(4)) is INFINITE
    assert girth(petersen_graph()) == 5
    assert girth(complete_bipartite(3, 3)) == 4


def test_twins_and_triangles():
    k4 = complete_graph(4)
    assert {(u, v) for u, v, kind in find_twins(k4) if kind == "closed"} == {
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    c4 = cycle_graph(4)
    assert [(u, v, k) for u, v, k in find_twins(c4)] == [(0, 2, "open"), (1, 3, "open")]
    assert find_twins(petersen_graph()) == []
    assert len(find_triangles(k4)) == 4
    assert find_triangles(petersen_graph()) == []


def test_random_regular_is_regular_and_deterministic():
    g = random_regular(14, 3, seed=7)
    assert g.is_cubic()
    assert g == random_regular(14, 3, seed=7)
    with pytest.raises(GraphError):
        random_regular(7, 3, seed=0)


def test_canonical_form_invariant_under_relabeling():
    rng = random.Random(3)
    for g in (petersen_graph(), cycle_graph(9), complete_bipartite(3, 4), path_graph(6)):
        ref = canonical_form(g)
        for _ in range(100):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(g.relabel(perm)) == ref


@settings(max_examples=150)
@given(graphs(min_n=1, max_n=6), graphs(min_n=1, max_n=6))
def test_canonical_form_agrees_with_bruteforce_isomorphism(g, h):
    if g.n != h.n:
        h = Graph(g.n, [(u, v) for u, v in h.edges if u < g.n and v < g.n])
    assert (canonical_form(g) == canonical_form(h)) == are_isomorphic(g, h)


def test_canonical_form_cap():
    with pytest.raises(GraphError):
        canonical_form(cycle_graph(11))


def test_canonical_hex_roundtrip():
    f = canonical_form(petersen_graph())
    assert type(f).fromhex(f.hex()) == f
