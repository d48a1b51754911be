from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from heapchrome.chromatic import k_chromatic_polynomial
from heapchrome.graph import Graph, seed_graphs
from heapchrome.polynomial import Polynomial
from heapchrome.series import (
    TruncatedSeries,
    heap_generating_series,
    pyramid_weighted_series,
    series_exp,
    series_inverse,
    series_log,
    series_symbolic_power,
    trivial_alternating_series,
    verify_fundamental_lemmas,
    verify_power_coefficients,
)


def S(bound, data):
    return TruncatedSeries.from_dict(bound, data)


def test_log_exp_inverse_examples():
    one = TruncatedSeries.one((2, 2))
    assert series_log(one) == TruncatedSeries((2, 2))
    a = S((1,), {(0,): 1, (1,): 1})
    assert series_exp(series_log(a)) == a
    geometric = series_inverse(S((3,), {(0,): 1, (1,): -1}))
    assert geometric.as_dict() == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}


def test_domain_errors():
    a = S((2,), {(1,): 1})
    with pytest.raises(ValueError):
        series_log(a)
    with pytest.raises(ValueError):
        series_inverse(a)
    with pytest.raises(ValueError):
        series_exp(TruncatedSeries.one((2,)))
    with pytest.raises(ValueError):
        a + TruncatedSeries.one((3,))


def test_log_matches_sympy_univariate():
    x = sympy.Symbol("x")
    f = 1 + 2 * x - 3 * x**2 + x**3
    expected = sympy.Poly(sympy.series(sympy.log(f), x, 0, 6).removeO(), x)
    got = series_log(S((5,), {(0,): 1, (1,): 2, (2,): -3, (3,): 1}))
    for d in range(6):
        assert got[(d,)] == Fraction(str(expected.coeff_monomial(x**d)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_log_exp_are_inverse(values):
    bound = (2, 2)
    data = {(i, j): values[3 * i + j - 1] for i in range(3) for j in range(3) if (i, j) != (0, 0) and 3 * i + j - 1 < 8}
    a = S(bound, data)
    assert series_log(series_exp(a)) == a
    b = a + TruncatedSeries.one(bound)
    assert series_exp(series_log(b)) == b
    assert b * series_inverse(b) == TruncatedSeries.one(bound)


def test_heap_series_examples(k2, point, two_points):
    assert heap_generating_series(k2, (1, 1)).as_dict() == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2}
    assert heap_generating_series(point, (3,)).as_dict() == {(d,): 1 for d in range(4)}
    assert heap_generating_series(two_points, (1, 1)).as_dict() == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    for g in seed_graphs(3):
        bound = (2,) * g.n
        assert heap_generating_series(g, bound) == heap_generating_series(g, bound, method="enumerate")
        assert pyramid_weighted_series(g, bound) == pyramid_weighted_series(g, bound, method="enumerate")


def test_trivial_series_examples(k2, k3, two_points):
    assert trivial_alternating_series(k2, (1, 1)).as_dict() == {(0, 0): 1, (1, 0): -1, (0, 1): -1}
    assert trivial_alternating_series(two_points, (1, 1)).as_dict() == {
        (0, 0): 1, (1, 0): -1, (0, 1): -1, (1, 1): 1,
    }
    assert trivial_alternating_series(k3, (1, 1, 1)).as_dict() == {
        (0, 0, 0): 1, (1, 0, 0): -1, (0, 1, 0): -1, (0, 0, 1): -1,
    }


def test_pyramid_series_examples(k2, point):
    assert pyramid_weighted_series(k2, (2, 1))[(2, 1)] == 1
    assert pyramid_weighted_series(point, (2,)).as_dict() == {(1,): 1, (2,): Fraction(1, 2)}
    assert pyramid_weighted_series(k2, (2, 1))[(0, 0)] == 0


def test_fundamental_lemma_examples(k2, k3):
    for g, bound in ((k2, (3, 3)), (Graph.empty(1), (4,)), (k3, (2, 2, 2))):
        inv, log = verify_fundamental_lemmas(g, bound)
        assert inv.passed and log.passed


def test_power_coefficients():
    for g in seed_graphs(3):
        assert verify_power_coefficients(g, (2,) * g.n).passed


def test_power_coefficients_by_hand(k2):
    power = series_symbolic_power(trivial_alternating_series(k2, (1, 1)))
    q = Polynomial.q()
    assert power[(1, 1)] == q * (q - 1)
    assert power[(1, 1)] == k_chromatic_polynomial(k2, (1, 1))


def test_dump_rows(point):
    rows = pyramid_weighted_series(point, (2,)).to_rows()
    assert rows == [{"weight": [1], "coeff": "1"}, {"weight": [2], "coeff": "1/2"}]


def test_out_of_bound_lookup():
    with pytest.raises(KeyError):
        TruncatedSeries.one((1,))[(2,)]
