"""Exhaustive generation of heaps by weight and the pyramid counting lemmas."""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import (
    Graph,
    WeightVector,
    check_weight,
    clan_graph,
    divide_weight,
    height,
    weight_divisors,
    weight_factorial,
    weights_below,
)
from .heaps import (
    Heap,
    _drop_all,
    _tops,
    basis,
    heap_from_word,
    is_admissible_pyramid,
    is_lyndon,
    is_pyramid,
    is_trivial,
    standard_word,
)

DEFAULT_MAX_HT = 8


class EnumerationTooLarge(ValueError):
    """Requested enumeration exceeds the configured height cap."""


def max_height() -> int:
    return int(os.environ.get("HEAPCHROME_MAX_HT", DEFAULT_MAX_HT))


def _check_size(k: Sequence[int]) -> None:
    cap = max_height()
    if height(k) > cap:
        raise EnumerationTooLarge(
            f"height {height(k)} exceeds the enumeration cap {cap}; "
            f"raise HEAPCHROME_MAX_HT to allow it"
        )


def heaps_up_to(g: Graph, bound: Sequence[int]) -> dict[WeightVector, tuple[Heap, ...]]:
    """All heaps of weight ``<= bound``, grouped by weight.

    Built one piece at a time; prefixes that fall to the same heap are merged
    before being extended, so the work is proportional to the number of
    heaps rather than the number of words.
    """
    bound = check_weight(g, bound)
    _check_size(bound)
    return _heaps_up_to(g, bound)


@functools.lru_cache(maxsize=None)
def _heaps_up_to(g: Graph, bound: WeightVector) -> dict[WeightVector, tuple[Heap, ...]]:
    empty = Heap.empty(g)
    by_weight: dict[WeightVector, set[Heap]] = {(0,) * g.n: {empty}}
    layer = {empty}
    for _ in range(height(bound)):
        nxt: set[Heap] = set()
        for h in layer:
            w = h.weight
            tops = _tops(h)
            for a in range(g.n):
                if w[a] >= bound[a]:
                    continue
                pieces = list(h.pieces)
                _drop_all(g, list(tops), pieces, (a,))
                nxt.add(Heap(g, pieces))
        for h in nxt:
            by_weight.setdefault(h.weight, set()).add(h)
        layer = nxt
    return {w: tuple(sorted(hs, key=standard_word)) for w, hs in by_weight.items()}


def enumerate_heaps(g: Graph, k: Sequence[int]) -> list[Heap]:
    """Every heap of weight exactly ``k``, sorted by standard word."""
    k = check_weight(g, k)
    return list(heaps_up_to(g, k).get(k, ()))


def enumerate_trivial_heaps(g: Graph, bound: Sequence[int]) -> list[Heap]:
    """Trivial heaps (all pieces on the ground) of weight ``<= bound``, empty heap included."""
    bound = check_weight(g, bound)
    out = []
    for mask in range(1 << g.n):
        vs = [v for v in range(g.n) if mask >> v & 1]
        if any(bound[v] < 1 for v in vs) or not g.is_independent(vs):
            continue
        out.append(heap_from_word(g, vs))
    assert all(is_trivial(h) for h in out)
    return sorted(out, key=standard_word)


def enumerate_pyramids(g: Graph, k: Sequence[int]) -> list[Heap]:
    return [h for h in enumerate_heaps(g, k) if is_pyramid(h)]


def enumerate_pyramids_with_basis(g: Graph, k: Sequence[int], i: int) -> list[Heap]:
    return [h for h in enumerate_heaps(g, k) if basis(h) == i]


def enumerate_lyndon_heaps(g: Graph, k: Sequence[int]) -> list[Heap]:
    return [h for h in enumerate_heaps(g, k) if is_lyndon(h)]


def count_lyndon_heaps(g: Graph, k: Sequence[int]) -> int:
    k = check_weight(g, k)
    if not any(k):
        return 0
    return len(enumerate_lyndon_heaps(g, k))


def pyramid_count_via_lyndon(g: Graph, k: Sequence[int], i: int | None = None) -> int:
    """Pyramid counts from Lyndon-heap counts at the divisor weights ``k / l``.

    With ``i`` given this counts pyramids with basis ``i``, otherwise all
    pyramids of weight ``k``.  No pyramid is enumerated.
    """
    k = check_weight(g, k)
    if i is not None and k[i] == 0:
        raise ValueError(f"vertex {i} is not in the support of {k}")
    scale = height(k) if i is None else k[i]
    total = Fraction(0)
    for l in weight_divisors(k):
        total += Fraction(scale, l) * count_lyndon_heaps(g, divide_weight(k, l))
    assert total.denominator == 1, total
    return int(total)


@dataclass
class Report:
    """Outcome of an identity check.  ``failures`` lists human-readable counterexamples."""

    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, detail: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(detail)

    def merge(self, other: Report) -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)


def verify_proportionality(g: Graph, k: Sequence[int]) -> Report:
    """Check the pyramid proportionality relations at weight ``k`` by enumeration,
    including the clan-graph correspondence."""
    k = check_weight(g, k)
    report = Report("pyramid-proportionality")
    if not any(k):
        return report
    ht = height(k)
    pyramids = enumerate_pyramids(g, k)
    by_basis = {i: sum(1 for p in pyramids if basis(p) == i) for i in range(g.n)}
    total = len(pyramids)
    sup = [i for i in range(g.n) if k[i] > 0]
    for i in sup:
        report.check(
            total * k[i] == ht * by_basis[i],
            f"|P_k|={total} but ht/k(i)*|P^i_k| = {ht}/{k[i]}*{by_basis[i]} (k={k}, i={i})",
        )
    for i in sup:
        for j in sup:
            if i < j:
                report.check(
                    by_basis[i] * k[j] == by_basis[j] * k[i],
                    f"|P^{i}|*k({j}) = {by_basis[i]}*{k[j]} != |P^{j}|*k({i}) = {by_basis[j]}*{k[i]} (k={k})",
                )
    for i in range(g.n):
        if k[i] == 0:
            report.check(by_basis[i] == 0, f"pyramid with basis {i} outside the support (k={k})")

    big, labels = clan_graph(g, k)
    ones = (1,) * big.n
    big_pyramids = enumerate_pyramids(big, ones)
    kf = weight_factorial(k)
    report.check(
        kf * total == len(big_pyramids),
        f"k!*|P_k(G)| = {kf}*{total} != |P_1(G(k))| = {len(big_pyramids)} (k={k})",
    )
    big_by_basis: dict[int, int] = {}
    for p in big_pyramids:
        b = basis(p)
        big_by_basis[b] = big_by_basis.get(b, 0) + 1
    for v, (i, _) in enumerate(labels):
        report.check(
            by_basis[i] * kf == k[i] * big_by_basis.get(v, 0),
            f"|P^{i}_k|*k!/k(i) != |P^{v}_1(G(k))| (k={k})",
        )
    return report


def verify_pyramid_lyndon(g: Graph, k: Sequence[int]) -> Report:
    """Compare enumerated pyramid counts with the Lyndon-heap formula."""
    k = check_weight(g, k)
    report = Report("pyramid-lyndon")
    if not any(k):
        return report
    pyramids = enumerate_pyramids(g, k)
    report.check(
        len(pyramids) == pyramid_count_via_lyndon(g, k),
        f"|P_k| = {len(pyramids)} but Lyndon formula gives {pyramid_count_via_lyndon(g, k)} (k={k})",
    )
    for i in range(g.n):
        if k[i] == 0:
            continue
        direct = sum(1 for p in pyramids if basis(p) == i)
        formula = pyramid_count_via_lyndon(g, k, i)
        report.check(direct == formula, f"|P^{i}_k| = {direct} but Lyndon formula gives {formula} (k={k})")
    return report


def admissible_multilinear_pyramids(g: Graph) -> list[Heap]:
    return [h for h in enumerate_heaps(g, (1,) * g.n) if is_admissible_pyramid(h)]


@functools.lru_cache(maxsize=None)
def level_counts(g: Graph, bound: WeightVector, pyramids_only: bool = False) -> dict[WeightVector, int]:
    """Count heaps (or pyramids) of every weight ``<= bound`` without listing them.

    A heap in normal form is the sequence of its levels: each level is a set
    of pairwise non-adjacent positions, and each position on a level must be
    concurrent with some position on the level below.  Counting such sequences
    gives ``|H_m|`` exactly; pyramids are the sequences whose ground level is
    a single piece.
    """
    bound = check_weight(g, bound)
    levels = []
    for mask in range(1, 1 << g.n):
        vs = [v for v in range(g.n) if mask >> v & 1]
        if g.is_independent(vs):
            reach = 0
            for v in vs:
                for c in g.concurrent[v]:
                    reach |= 1 << c
            levels.append((mask, tuple(1 if mask >> v & 1 else 0 for v in range(g.n)), reach))

    def fits(m, w):
        return all(a + b <= c for a, b, c in zip(m, w, bound))

    # states[m][top] = number of heaps of weight m whose highest level is `top`
    states: dict[WeightVector, dict[int, int]] = {}
    zero = (0,) * g.n
    for mask, w, _ in levels:
        if pyramids_only and bin(mask).count("1") != 1:
            continue
        if fits(zero, w):
            states.setdefault(w, {})[mask] = 1
    reach_of = {mask: reach for mask, _, reach in levels}
    counts = {zero: 0 if pyramids_only else 1}
    for m in sorted(weights_below(bound), key=sum):
        tops = states.get(m)
        if not tops:
            continue
        counts[m] = sum(tops.values())
        for top, c in tops.items():
            reach = reach_of[top]
            for mask, w, _ in levels:
                if mask & ~reach == 0 and fits(m, w):
                    nm = tuple(a + b for a, b in zip(m, w))
                    bucket = states.setdefault(nm, {})
                    bucket[mask] = bucket.get(mask, 0) + c
    return counts
