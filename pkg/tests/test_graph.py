import itertools
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from heapchrome.graph import (
    DimensionError,
    Graph,
    check_weight,
    clan_graph,
    divide_weight,
    height,
    independent_sets,
    is_connected_support,
    parse_weight,
    seed_graphs,
    weight_divisors,
    weight_factorial,
)


def test_rejects_loops_duplicates_and_range():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_connected_support(k3, p3, point):
    assert is_connected_support(k3, (1, 1, 1))
    assert not is_connected_support(p3, (1, 0, 1))
    assert is_connected_support(point, (2,))
    assert not is_connected_support(k3, (0, 0, 0))
    with pytest.raises(DimensionError):
        is_connected_support(k3, (1, 1))


def test_independent_sets(k2, k3, two_points):
    assert independent_sets(k2) == [{0}, {1}]
    assert independent_sets(two_points) == [{0}, {1}, {0, 1}]
    assert independent_sets(k3) == [{0}, {1}, {2}]


def test_independent_sets_closed_under_subsets():
    for g in seed_graphs(5):
        sets = set(independent_sets(g))
        assert all(frozenset([v]) in sets for v in range(g.n))
        for s in sets:
            for r in range(1, len(s)):
                assert all(frozenset(c) in sets for c in itertools.combinations(s, r))


def test_clan_graph_examples(point, k2):
    big, labels = clan_graph(point, (2,))
    assert big == Graph.complete(2)
    assert labels == [(0, 0), (0, 1)]
    assert clan_graph(k2, (1, 1))[0] == k2
    big, _ = clan_graph(k2, (2, 1))
    assert big.sorted_edges() == [(0, 1), (0, 2), (1, 2)]


def test_clan_graph_sizes():
    for g in seed_graphs(3):
        for k in itertools.product(range(3), repeat=g.n):
            big, labels = clan_graph(g, k)
            assert big.n == height(k) == len(labels)
            expected = sum(math.comb(x, 2) for x in k) + sum(k[r] * k[s] for r, s in g.edges)
            assert len(big.edges) == expected


def test_clan_graph_identity_on_ones():
    for g in seed_graphs(4):
        big, labels = clan_graph(g, (1,) * g.n)
        assert big == g
        assert labels == [(i, 0) for i in range(g.n)]


def test_weight_divisors():
    assert weight_divisors((2, 2)) == [1, 2]
    assert weight_divisors((2, 1)) == [1]
    assert weight_divisors((4, 2)) == [1, 2]
    assert weight_divisors((6, 0, 3)) == [1, 3]
    assert divide_weight((4, 2), 2) == (2, 1)
    with pytest.raises(ValueError):
        weight_divisors((0, 0))


def test_weight_helpers(k2):
    assert height((2, 1, 1)) == 4
    assert weight_factorial((2, 3)) == 12
    assert check_weight(k2, [1, 2]) == (1, 2)
    with pytest.raises(DimensionError):
        check_weight(k2, (1,))
    with pytest.raises(ValueError):
        check_weight(k2, (1, -1))


def test_parse_weight():
    assert parse_weight("2,1,1") == (2, 1, 1)
    for bad in ("1,x", "", "1,,2", "-1,2"):
        with pytest.raises(ValueError):
            parse_weight(bad)


def test_seed_graph_counts():
    # numbers of unlabelled graphs on 1..5 vertices
    assert [len(seed_graphs(n, n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


def test_text_and_json_round_trip(tmp_path):
    g = Graph.from_edges(4, [(0, 1), (2, 1), (3, 0)])
    assert Graph.from_text(g.to_text()) == g
    assert Graph.from_json(json.loads(json.dumps(g.to_json()))) == g
    path = tmp_path / "g.txt"
    path.write_text("3\n0 1\n1 2\n")
    assert Graph.load(path) == Graph.path(3)
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}))
    assert Graph.load(path) == Graph.complete(3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.sets(st.sampled_from(list(itertools.combinations(range(n), 2)) or [(0, 0)]), max_size=10)
    .map(lambda es: Graph.from_edges(n, [e for e in es if e[0] != e[1]]))
))
def test_graph_is_hashable_value(g):
    clone = Graph.from_edges(g.n, [(j, i) for i, j in g.edges])
    assert clone == g and hash(clone) == hash(g)
