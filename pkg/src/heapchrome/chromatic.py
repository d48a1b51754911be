"""Generalized k-chromatic polynomials and their bond-lattice expansion.

The left side of record is the independent-tuple expansion
``pi_k(q) = sum_j |P_j(k)| C(q, j)``; the right side is the sum over the
bond lattice of ``chrmult(J) q^|J|``, built from the grade dimensions of the
free partially commutative Lie algebra (counted as Lyndon heaps).
"""

from __future__ import annotations

import contextlib
import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from sympy import mobius

from .enumeration import Report, count_lyndon_heaps, enumerate_heaps, enumerate_pyramids
from .graph import (
    Graph,
    WeightVector,
    check_weight,
    clan_graph,
    divide_weight,
    height,
    independent_sets,
    is_connected_support,
    support,
    weight_divisors,
    weight_factorial,
    weights_below,
)
from .heaps import lyndon_length
from .polynomial import Polynomial


class InvariantViolation(AssertionError):
    """Two computations that must agree did not."""


# -- brute-force oracle ------------------------------------------------------


def multicoloring_count(g: Graph, k: Sequence[int], q: int) -> int:
    """Count assignments of a ``k[i]``-subset of ``q`` colours to each vertex
    with disjoint sets on adjacent vertices, by direct enumeration."""
    k = check_weight(g, k)
    if q < 0:
        raise ValueError("number of colours must be non-negative")
    order = list(range(g.n))
    chosen: dict[int, frozenset[int]] = {}

    def rec(idx: int) -> int:
        if idx == len(order):
            return 1
        v = order[idx]
        used = set()
        for u in g.neighbors[v]:
            if u in chosen:
                used |= chosen[u]
        free = [c for c in range(q) if c not in used]
        total = 0
        for colours in itertools.combinations(free, k[v]):
            chosen[v] = frozenset(colours)
            total += rec(idx + 1)
        chosen.pop(v, None)
        return total

    return rec(0)


# -- k-chromatic polynomial ---------------------------------------------------


@functools.lru_cache(maxsize=None)
def independent_tuple_counts(g: Graph, k: WeightVector) -> tuple[int, ...]:
    """Entry ``j`` is the number of ordered ``j``-tuples of non-empty independent
    sets whose disjoint union is the multiset ``k``."""
    k = check_weight(g, k)
    ht = height(k)
    indep = [tuple(1 if v in s else 0 for v in range(g.n)) for s in independent_sets(g)]
    ways: dict[WeightVector, list[int]] = {}
    for m in weights_below(k):
        row = [0] * (ht + 1)
        if not any(m):
            row[0] = 1
        else:
            for s in indep:
                if all(s[v] <= m[v] for v in range(g.n)):
                    prev = ways[tuple(m[v] - s[v] for v in range(g.n))]
                    for j in range(ht):
                        row[j + 1] += prev[j]
        ways[m] = row
    return tuple(ways[k])


@functools.lru_cache(maxsize=None)
def k_chromatic_polynomial(g: Graph, k: WeightVector) -> Polynomial:
    k = check_weight(g, k)
    result = Polynomial()
    for j, count in enumerate(independent_tuple_counts(g, k)):
        if count:
            result = result + Polynomial.binomial(j) * count
    return result


def chromatic_polynomial(g: Graph) -> Polynomial:
    return k_chromatic_polynomial(g, (1,) * g.n)


def chromatic_polynomial_deletion_contraction(g: Graph) -> Polynomial:
    """Ordinary chromatic polynomial by deletion–contraction; a second route for ``k = 1``."""

    @functools.lru_cache(maxsize=None)
    def rec(n: int, edges: frozenset[tuple[int, int]]) -> Polynomial:
        if not edges:
            return Polynomial.monomial(n)
        u, v = min(edges)
        rest = edges - {(u, v)}
        merged = set()
        for a, b in rest:
            a, b = (u if a == v else a), (u if b == v else b)
            a, b = (a - 1 if a > v else a), (b - 1 if b > v else b)
            if a != b:
                merged.add((min(a, b), max(a, b)))
        return rec(n, rest) - rec(n - 1, frozenset(merged))

    return rec(g.n, g.edges)


def positive_variant(p: Polynomial, htk: int) -> Polynomial:
    """``(-1)^htk p(-q)``; raises if a negative coefficient appears."""
    result = p.compose_negative()
    if htk % 2:
        result = -result
    if not result.is_nonnegative():
        raise InvariantViolation(f"positive variant of {p} has a negative coefficient: {result}")
    return result


def derivative(p: Polynomial, m: int) -> Polynomial:
    return p.derivative(m)


def positive_k_chromatic(g: Graph, k: Sequence[int]) -> Polynomial:
    k = check_weight(g, k)
    return positive_variant(k_chromatic_polynomial(g, k), height(k))


def positive_derivative(g: Graph, m: int) -> Polynomial:
    """``(-1)^(n-m) chi^(m)(-q)`` for the ordinary chromatic polynomial."""
    return positive_variant(chromatic_polynomial(g).derivative(m), g.n - m)


def discriminant(g: Graph, k: Sequence[int]) -> Fraction:
    """Absolute value of the linear coefficient of the k-chromatic polynomial."""
    k = check_weight(g, k)
    return abs(k_chromatic_polynomial(g, k)[1])


# -- Lie algebra dimensions ----------------------------------------------------


def lie_dim_via_lyndon(g: Graph, k: Sequence[int]) -> int:
    return count_lyndon_heaps(g, k)


def lie_dim_via_mobius(g: Graph, k: Sequence[int]) -> int:
    k = check_weight(g, k)
    if not any(k):
        raise ValueError("grade dimensions are defined for non-zero weights")
    total = Fraction(0)
    for l in weight_divisors(k):
        mu = int(mobius(l))
        if mu:
            total += Fraction(mu, l) * discriminant(g, divide_weight(k, l))
    if total.denominator != 1:
        raise InvariantViolation(f"Möbius sum {total} is not an integer at k={k}")
    return int(total)


@functools.lru_cache(maxsize=None)
def lie_dim(g: Graph, k: WeightVector) -> int:
    """Dimension of the grade-``k`` space, by Lyndon heaps and by Möbius inversion."""
    k = check_weight(g, k)
    if not any(k):
        raise ValueError("grade dimensions are defined for non-zero weights")
    by_lyndon = lie_dim_via_lyndon(g, k)
    by_mobius = lie_dim_via_mobius(g, k)
    if by_lyndon != by_mobius:
        raise InvariantViolation(f"dim L_{k}: {by_lyndon} Lyndon heaps but Möbius formula gives {by_mobius}")
    return by_lyndon


# -- bond lattice ------------------------------------------------------------------


def _min_support(m: Sequence[int]) -> int:
    return next(i for i, x in enumerate(m) if x)


def _part_key(m: WeightVector) -> tuple[int, WeightVector]:
    return (_min_support(m), m)


@dataclass(frozen=True)
class BondPartition:
    """A multiset of connected weight vectors; parts sorted by non-increasing
    minimum support vertex, ties by descending weight vector."""

    parts: tuple[WeightVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted((tuple(p) for p in self.parts), key=_part_key, reverse=True)))

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> WeightVector:
        """Sum of the parts; the empty partition has no length and gives ``()``."""
        if not self.parts:
            return ()
        return tuple(map(sum, zip(*self.parts)))

    def multiplicities(self) -> list[tuple[WeightVector, int]]:
        """Distinct parts with how often each occurs, in canonical order."""
        counts = Counter(self.parts)
        seen = []
        for p in self.parts:
            if p not in seen:
                seen.append(p)
        return [(p, counts[p]) for p in seen]

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.parts]


@functools.lru_cache(maxsize=None)
def connected_weights(g: Graph, bound: WeightVector) -> tuple[WeightVector, ...]:
    return tuple(m for m in weights_below(bound) if any(m) and is_connected_support(g, m))


@functools.lru_cache(maxsize=None)
def _bond_lattice(g: Graph, k: WeightVector) -> tuple[BondPartition, ...]:
    candidates = connected_weights(g, k)
    out = []

    def rec(start: int, remaining: WeightVector, parts: list[WeightVector]) -> None:
        if not any(remaining):
            out.append(BondPartition(tuple(parts)))
            return
        for idx in range(start, len(candidates)):
            m = candidates[idx]
            if all(a <= b for a, b in zip(m, remaining)):
                parts.append(m)
                rec(idx, tuple(b - a for a, b in zip(m, remaining)), parts)
                parts.pop()

    rec(0, k, [])
    return tuple(sorted(out, key=lambda J: (len(J), [_part_key(p) for p in J.parts])))


def enumerate_bond_lattice(g: Graph, k: Sequence[int]) -> list[BondPartition]:
    return list(_bond_lattice(g, check_weight(g, k)))


def _require_connected(g: Graph, m: WeightVector) -> None:
    if not any(m) or not is_connected_support(g, m):
        raise ValueError(f"weight {m} does not have connected support")


@functools.lru_cache(maxsize=None)
def chr_mult_weight(g: Graph, m: WeightVector) -> Fraction:
    """``sum over l | m of dim L_{m/l} / l``; equals the discriminant at ``m``."""
    m = check_weight(g, m)
    _require_connected(g, m)
    total = sum((Fraction(lie_dim(g, divide_weight(m, l)), l) for l in weight_divisors(m)), Fraction(0))
    disc = discriminant(g, m)
    if total != disc:
        raise InvariantViolation(f"chrmult {m} = {total} but discriminant is {disc}")
    return total


_CHRMULT_PERTURBATION = Fraction(0)


@contextlib.contextmanager
def perturbed_chrmult(delta: Fraction | int = Fraction(1, 7)) -> Iterator[None]:
    """Test hook: add ``delta`` to every partition multiplicity inside the block."""
    global _CHRMULT_PERTURBATION
    saved = _CHRMULT_PERTURBATION
    _CHRMULT_PERTURBATION = Fraction(delta)
    try:
        yield
    finally:
        _CHRMULT_PERTURBATION = saved


def chr_mult_partition(g: Graph, J: BondPartition) -> Fraction:
    result = Fraction(1)
    for part, count in J.multiplicities():
        result *= chr_mult_weight(g, part) ** count / math.factorial(count)
    return result + _CHRMULT_PERTURBATION


def mult_partition(g: Graph, J: BondPartition) -> int:
    """Product of ``dim L_{m_i}`` over all parts (repeats included), no factorials."""
    result = 1
    for part in J.parts:
        _require_connected(g, part)
        result *= lie_dim(g, part)
    return result


def multiset_mult_partition(g: Graph, J: BondPartition) -> int:
    """Number of ways to pick a multiset of Lyndon heaps for ``J``: for a part of
    weight ``m`` repeated ``c`` times, ``C(dim L_m + c - 1, c)``."""
    result = 1
    for part, count in J.multiplicities():
        _require_connected(g, part)
        result *= math.comb(lie_dim(g, part) + count - 1, count)
    return result


def bond_lattice_polynomial(g: Graph, k: Sequence[int]) -> Polynomial:
    """``sum over J in L_G(k) of chrmult(J) q^|J|``."""
    coeffs: dict[int, Fraction] = {}
    for J in enumerate_bond_lattice(g, k):
        coeffs[len(J)] = coeffs.get(len(J), Fraction(0)) + chr_mult_partition(g, J)
    return _from_degree_map(coeffs)


def bond_hilbert_polynomial(g: Graph, k: Sequence[int], multiset: bool = False) -> Polynomial:
    """``sum over J of mult(J) q^|J|``; with ``multiset`` the repeated-part count
    of :func:`multiset_mult_partition` is used instead of the plain product."""
    weigh = multiset_mult_partition if multiset else mult_partition
    coeffs: dict[int, Fraction] = {}
    for J in enumerate_bond_lattice(g, k):
        coeffs[len(J)] = coeffs.get(len(J), Fraction(0)) + weigh(g, J)
    return _from_degree_map(coeffs)


def _from_degree_map(coeffs: dict[int, Fraction]) -> Polynomial:
    if not coeffs:
        return Polynomial()
    return Polynomial(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


def hilbert_series(g: Graph, k: Sequence[int]) -> Polynomial:
    """``sum over heaps E of weight k of q^ll(E)``."""
    counts = Counter(lyndon_length(e) for e in enumerate_heaps(g, k))
    return _from_degree_map({d: Fraction(c) for d, c in counts.items()})


def verify_connection(g: Graph, k: Sequence[int]) -> Report:
    """``k! pi_k^G = pi_1^{G(k)}`` via the clan graph."""
    k = check_weight(g, k)
    report = Report("connection")
    big, _ = clan_graph(g, k)
    lhs = k_chromatic_polynomial(g, k) * weight_factorial(k)
    rhs = chromatic_polynomial(big)
    report.check(lhs == rhs, f"k!*pi_k = {lhs} but chi(G(k)) = {rhs} (k={k})")
    return report


def verify_main_identity(g: Graph, k: Sequence[int]) -> Report:
    k = check_weight(g, k)
    report = Report("main-identity")
    lhs = positive_k_chromatic(g, k)
    rhs = bond_lattice_polynomial(g, k)
    report.check(lhs == rhs, f"positive pi_k = {lhs} but bond lattice gives {rhs} (k={k})")
    return report


def verify_chrmult_discriminant(g: Graph, m: Sequence[int]) -> Report:
    """chrmult(m), the discriminant and |P_m| / ht(m) all agree for connected ``m``."""
    m = check_weight(g, m)
    report = Report("chrmult-discriminant")
    pyr = Fraction(len(enumerate_pyramids(g, m)), height(m))
    disc = discriminant(g, m)
    try:
        cm = chr_mult_weight(g, m)
    except InvariantViolation as exc:
        report.check(False, str(exc))
        return report
    report.check(cm == disc == pyr, f"chrmult={cm}, discriminant={disc}, |P|/ht={pyr} (m={m})")
    return report


def supports_connected(g: Graph, k: Sequence[int]) -> bool:
    return bool(support(k)) and is_connected_support(g, k)
