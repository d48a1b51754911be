"""Truncated multivariate power series with exact coefficients.

Monomials ``X^m`` are indexed by weight vectors and truncated
componentwise: a series with bound ``b`` stores exactly the coefficients of
``X^m`` for ``m <= b``.  Coefficients are ints, Fractions, or (for the
``N^q`` computation) polynomials in ``q``; arithmetic never touches floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

import numpy as np

from .chromatic import k_chromatic_polynomial
from .enumeration import Report, enumerate_heaps, enumerate_trivial_heaps, level_counts
from .graph import Graph, WeightVector, check_weight, height
from .polynomial import Polynomial, fraction_str


class TruncatedSeries:
    __slots__ = ("bound", "coeffs")

    def __init__(self, bound: WeightVector, coeffs: np.ndarray | None = None):
        self.bound = tuple(bound)
        shape = tuple(b + 1 for b in self.bound)
        if coeffs is None:
            coeffs = np.zeros(shape, dtype=object)
        elif coeffs.shape != shape:
            raise ValueError(f"coefficient array has shape {coeffs.shape}, expected {shape}")
        self.coeffs = coeffs

    @classmethod
    def one(cls, bound: WeightVector) -> TruncatedSeries:
        s = cls(bound)
        s.coeffs[(0,) * len(s.bound)] = 1
        return s

    @classmethod
    def monomial(cls, bound: WeightVector, m: WeightVector, c=1) -> TruncatedSeries:
        s = cls(bound)
        if all(a <= b for a, b in zip(m, bound)):
            s.coeffs[tuple(m)] = c
        return s

    @classmethod
    def from_dict(cls, bound: WeightVector, data: dict) -> TruncatedSeries:
        s = cls(bound)
        for m, c in data.items():
            if all(a <= b for a, b in zip(m, s.bound)):
                s.coeffs[tuple(m)] = c
        return s

    def __getitem__(self, m: WeightVector):
        if len(m) != len(self.bound):
            raise ValueError("weight has the wrong length")
        if any(a > b for a, b in zip(m, self.bound)):
            raise KeyError(f"{m} lies beyond the truncation bound {self.bound}")
        return self.coeffs[tuple(m)]

    coefficient = __getitem__

    @property
    def constant(self):
        return self.coeffs[(0,) * len(self.bound)]

    def items(self) -> Iterator[tuple[WeightVector, object]]:
        """Non-zero coefficients in product order."""
        for idx in np.ndindex(self.coeffs.shape):
            c = self.coeffs[idx]
            if c != 0:
                yield tuple(idx), c

    def as_dict(self) -> dict[WeightVector, object]:
        return dict(self.items())

    def _check(self, other: TruncatedSeries) -> None:
        if self.bound != other.bound:
            raise ValueError(f"truncation bounds differ: {self.bound} vs {other.bound}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries(self.bound, self.coeffs + other.coeffs)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries(self.bound, self.coeffs - other.coeffs)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.bound, -self.coeffs)

    def scale(self, c) -> TruncatedSeries:
        return TruncatedSeries(self.bound, self.coeffs * c)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        shape = self.coeffs.shape
        out = np.zeros(shape, dtype=object)
        b = other.coeffs
        for idx in np.ndindex(shape):
            c = self.coeffs[idx]
            if c == 0:
                continue
            dst = tuple(slice(i, None) for i in idx)
            src = tuple(slice(0, n - i) for i, n in zip(idx, shape))
            out[dst] += b[src] * c
        return TruncatedSeries(self.bound, out)

    def __pow__(self, k: int) -> TruncatedSeries:
        result = TruncatedSeries.one(self.bound)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.bound == other.bound and self.first_difference(other) is None

    def first_difference(self, other: TruncatedSeries) -> WeightVector | None:
        """Smallest weight (by height, then product order) where the coefficients differ."""
        self._check(other)
        for idx in sorted(np.ndindex(self.coeffs.shape), key=lambda i: (sum(i), i)):
            if self.coeffs[idx] != other.coeffs[idx]:
                return tuple(idx)
        return None

    def to_rows(self) -> list[dict]:
        rows = []
        for m, c in self.items():
            text = str(c) if isinstance(c, Polynomial) else fraction_str(Fraction(c))
            rows.append({"weight": list(m), "coeff": text})
        return rows

    def __repr__(self) -> str:
        return f"TruncatedSeries(bound={self.bound}, {self.as_dict()})"


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_scale(a: TruncatedSeries, c) -> TruncatedSeries:
    return a.scale(c)


def _require_constant(a: TruncatedSeries, value: int, op: str) -> None:
    if a.constant != value:
        raise ValueError(f"{op} needs constant term {value}, got {a.constant}")


def _order(a: TruncatedSeries) -> int:
    # Powers of a series without constant term vanish past the bound's height.
    return height(a.bound)


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """``log(a) = -sum_{k>=1} (1-a)^k / k``."""
    _require_constant(a, 1, "log")
    x = TruncatedSeries.one(a.bound) - a
    result = TruncatedSeries(a.bound)
    power = TruncatedSeries.one(a.bound)
    for k in range(1, _order(a) + 1):
        power = power * x
        result = result - power.scale(Fraction(1, k))
    return result


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    _require_constant(a, 0, "exp")
    result = TruncatedSeries.one(a.bound)
    power = TruncatedSeries.one(a.bound)
    for k in range(1, _order(a) + 1):
        power = power * a
        result = result + power.scale(Fraction(1, math.factorial(k)))
    return result


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """``1/a = sum_{k>=0} (1-a)^k``."""
    _require_constant(a, 1, "inverse")
    x = TruncatedSeries.one(a.bound) - a
    result = TruncatedSeries.one(a.bound)
    power = TruncatedSeries.one(a.bound)
    for _ in range(_order(a)):
        power = power * x
        result = result + power
    return result


def series_symbolic_power(a: TruncatedSeries) -> TruncatedSeries:
    """``a^q = sum_k C(q, k) (a - 1)^k`` with coefficients polynomial in ``q``."""
    _require_constant(a, 1, "symbolic power")
    x = a - TruncatedSeries.one(a.bound)
    result = TruncatedSeries.one(a.bound)
    power = TruncatedSeries.one(a.bound)
    for k in range(1, _order(a) + 1):
        power = power * x
        result = result + power.scale(Polynomial.binomial(k))
    return result


# -- generating series of heaps ------------------------------------------------------


def heap_generating_series(g: Graph, bound: WeightVector, method: str = "levels") -> TruncatedSeries:
    """``sum_m |H_m| X^m`` for ``m <= bound``.

    ``method="levels"`` counts level sequences (fast); ``"enumerate"`` lists
    every heap and is limited by the enumeration height cap.
    """
    bound = check_weight(g, bound)
    if method == "levels":
        counts = level_counts(g, bound)
    elif method == "enumerate":
        from .enumeration import heaps_up_to

        counts = {m: len(hs) for m, hs in heaps_up_to(g, bound).items()}
    else:
        raise ValueError(f"unknown method {method!r}")
    return TruncatedSeries.from_dict(bound, counts)


def trivial_alternating_series(g: Graph, bound: WeightVector) -> TruncatedSeries:
    bound = check_weight(g, bound)
    s = TruncatedSeries(bound)
    for e in enumerate_trivial_heaps(g, bound):
        s.coeffs[e.weight] += (-1) ** len(e)
    return s


def pyramid_weighted_series(g: Graph, bound: WeightVector, method: str = "levels") -> TruncatedSeries:
    """``sum_m |P_m| / ht(m) X^m``."""
    bound = check_weight(g, bound)
    if method == "levels":
        counts = level_counts(g, bound, pyramids_only=True)
    elif method == "enumerate":
        from .enumeration import heaps_up_to
        from .heaps import is_pyramid

        counts = {m: sum(1 for h in hs if is_pyramid(h)) for m, hs in heaps_up_to(g, bound).items()}
    else:
        raise ValueError(f"unknown method {method!r}")
    return TruncatedSeries.from_dict(
        bound, {m: Fraction(c, height(m)) for m, c in counts.items() if any(m) and c}
    )


def verify_fundamental_lemmas(g: Graph, bound: WeightVector) -> tuple[Report, Report]:
    """Inversion: heaps * trivial = 1.  Logarithm: log(heaps) = pyramids / size."""
    bound = check_weight(g, bound)
    heaps = heap_generating_series(g, bound)
    trivial = trivial_alternating_series(g, bound)

    inversion = Report("inversion-lemma")
    product = heaps * trivial
    diff = product.first_difference(TruncatedSeries.one(bound))
    inversion.check(diff is None, f"coefficient of X^{diff} in heaps*trivial is {product[diff] if diff else ''} (bound={bound})")
    diff = heaps.first_difference(series_inverse(trivial))
    inversion.check(diff is None, f"heaps and 1/trivial differ at X^{diff} (bound={bound})")

    logarithm = Report("logarithmic-lemma")
    lhs = series_log(heaps)
    rhs = pyramid_weighted_series(g, bound)
    diff = lhs.first_difference(rhs)
    logarithm.check(diff is None, f"log(heaps) = {lhs[diff] if diff else ''} but pyramids give {rhs[diff] if diff else ''} at X^{diff} (bound={bound})")
    return inversion, logarithm


def verify_power_coefficients(g: Graph, bound: WeightVector) -> Report:
    """Coefficients of ``N^q`` (``N`` the alternating trivial-heap series) are
    ``(-1)^ht(m) pi_m(q)``, and ``N^q = exp(-q * pyramid series)``."""
    bound = check_weight(g, bound)
    report = Report("power-coefficients")
    trivial = trivial_alternating_series(g, bound)
    power = series_symbolic_power(trivial)
    for idx in np.ndindex(power.coeffs.shape):
        m = tuple(idx)
        expected = k_chromatic_polynomial(g, m) * ((-1) ** height(m))
        got = power[m]
        got = got if isinstance(got, Polynomial) else Polynomial([got])
        report.check(got == expected, f"[X^{m}] N^q = {got}, expected {expected}")
    via_exp = series_exp(pyramid_weighted_series(g, bound).scale(Polynomial([0, -1])))
    diff = power.first_difference(via_exp)
    report.check(diff is None, f"N^q and exp(-q*pyramids) differ at X^{diff} (bound={bound})")
    return report
