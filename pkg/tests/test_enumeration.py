import itertools

import pytest

from heapchrome.enumeration import (
    EnumerationTooLarge,
    admissible_multilinear_pyramids,
    enumerate_heaps,
    enumerate_lyndon_heaps,
    enumerate_pyramids,
    enumerate_pyramids_with_basis,
    enumerate_trivial_heaps,
    level_counts,
    pyramid_count_via_lyndon,
    verify_proportionality,
    verify_pyramid_lyndon,
)
from heapchrome.graph import Graph, seed_graphs
from heapchrome.heaps import heap_from_word, standard_word

from oracles import commutation_classes


def words(heaps):
    return ["".join(map(str, standard_word(h))) for h in heaps]


def test_enumerate_heaps_examples(k2, two_points):
    assert words(enumerate_heaps(k2, (1, 1))) == ["01", "10"]
    assert len(enumerate_heaps(two_points, (1, 1))) == 1
    assert words(enumerate_heaps(k2, (2, 1))) == ["001", "010", "100"]


def test_heap_counts_match_word_classes():
    for g in seed_graphs(3):
        for k in itertools.product(range(3), repeat=g.n):
            if sum(k) > 6:
                continue
            classes = commutation_classes(g.edges, k)
            heaps = enumerate_heaps(g, k)
            assert len(heaps) == len(classes), (g, k)
            assert set(heaps) == {heap_from_word(g, min(c)) for c in classes}


def test_trivial_heaps(k2, two_points, point):
    assert [h.weight for h in enumerate_trivial_heaps(k2, (1, 1))] == [(0, 0), (1, 0), (0, 1)]
    assert len(enumerate_trivial_heaps(two_points, (1, 1))) == 4
    assert [h.weight for h in enumerate_trivial_heaps(point, (2,))] == [(0,), (1,)]


def test_pyramid_and_lyndon_examples(k2):
    assert len(enumerate_pyramids(k2, (2, 1))) == 3
    assert len(enumerate_pyramids_with_basis(k2, (2, 1), 0)) == 2
    assert len(enumerate_pyramids_with_basis(k2, (2, 1), 1)) == 1
    assert words(enumerate_lyndon_heaps(k2, (2, 1))) == ["001"]
    assert words(enumerate_lyndon_heaps(k2, (1, 1))) == ["01"]


def test_pyramid_count_via_lyndon_examples(k2, point):
    assert pyramid_count_via_lyndon(k2, (2, 1), 0) == 2
    assert pyramid_count_via_lyndon(point, (3,)) == 1
    assert pyramid_count_via_lyndon(k2, (1, 1), 1) == 1
    with pytest.raises(ValueError):
        pyramid_count_via_lyndon(k2, (1, 0), 1)


def test_proportionality_examples(k2, k3):
    assert verify_proportionality(k2, (2, 1)).passed
    for g in seed_graphs(3):
        for i in range(g.n):
            e = tuple(int(v == i) for v in range(g.n))
            assert verify_proportionality(g, e).passed
    report = verify_proportionality(k3, (1, 1, 1))
    assert report.passed
    assert len(enumerate_pyramids(k3, (1, 1, 1))) == 3 * len(enumerate_pyramids_with_basis(k3, (1, 1, 1), 0))


def test_pyramid_lyndon_exhaustive():
    for g in seed_graphs(4):
        for k in itertools.product(range(3), repeat=g.n):
            if 0 < sum(k) <= 6:
                assert verify_pyramid_lyndon(g, k).passed, (g, k)


def test_lyndon_multilinear_equals_admissible():
    for g in seed_graphs(5):
        ones = (1,) * g.n
        assert len(enumerate_lyndon_heaps(g, ones)) == len(admissible_multilinear_pyramids(g))


def test_level_counts_match_enumeration():
    for g in seed_graphs(4):
        bound = (2,) * g.n
        counts = level_counts(g, bound)
        pyr = level_counts(g, bound, pyramids_only=True)
        for k in itertools.product(range(3), repeat=g.n):
            if sum(k) > 7:
                continue
            assert counts.get(k, 0) == len(enumerate_heaps(g, k))
            if any(k):
                assert pyr.get(k, 0) == len(enumerate_pyramids(g, k))


def test_height_cap(monkeypatch):
    g = Graph.complete(2)
    monkeypatch.setenv("HEAPCHROME_MAX_HT", "3")
    with pytest.raises(EnumerationTooLarge):
        enumerate_heaps(g, (2, 2))
