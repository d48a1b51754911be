"""Heaps of pieces over a graph.

A heap is stored in its fallen normal form: every piece at level ``h > 0``
rests on a piece at level ``h - 1`` in an equal or adjacent position.  Two
words that differ by swapping commuting neighbours drop to the same piece
set, so equality of heaps is equality of piece sets.

The monoid product ``a ∘ b`` lets ``b`` fall onto ``a``.  Heaps are totally
ordered by their standard words (the lexicographically largest linear
extension of the piece order).
"""

from __future__ import annotations

import functools
from typing import Iterable, Iterator, NamedTuple, Sequence

from .graph import Graph, WeightVector, weight_divisors


class Piece(NamedTuple):
    position: int
    level: int


def _sort_key(p: Piece) -> tuple[int, int]:
    return (p.level, p.position)


@functools.total_ordering
class Heap:
    """Immutable heap in normal form.

    Use :func:`heap_from_word`, :func:`superpose` or :meth:`from_pieces`
    rather than the constructor, which trusts its input.
    """

    __slots__ = ("graph", "pieces", "_hash", "_st", "_weight")

    def __init__(self, graph: Graph, pieces: Iterable[Piece]):
        self.graph = graph
        self.pieces: tuple[Piece, ...] = tuple(sorted(pieces, key=_sort_key))
        self._hash = None
        self._st = None
        self._weight = None

    @classmethod
    def empty(cls, graph: Graph) -> Heap:
        return cls(graph, ())

    @classmethod
    def from_pieces(cls, graph: Graph, pieces: Iterable[Sequence[int]]) -> Heap:
        """Build a heap from explicit ``(position, level)`` pairs, checking
        both the pre-heap and the normal-form conditions."""
        ps = [Piece(int(a), int(h)) for a, h in pieces]
        occupied = set()
        for p in ps:
            if p.level < 0 or not 0 <= p.position < graph.n:
                raise ValueError(f"invalid piece {tuple(p)}")
            occupied.add((p.position, p.level))
        if len(occupied) != len(ps):
            raise ValueError("duplicate piece")
        for p in ps:
            for c in graph.concurrent[p.position]:
                if c != p.position and (c, p.level) in occupied:
                    raise ValueError(f"concurrent pieces share level {p.level}")
            if p.level > 0 and not any((c, p.level - 1) in occupied for c in graph.concurrent[p.position]):
                raise ValueError(f"piece {tuple(p)} is not supported; not in normal form")
        return cls(graph, ps)

    def __len__(self) -> int:
        return len(self.pieces)

    def __bool__(self) -> bool:
        return bool(self.pieces)

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.graph, self.pieces))
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Heap):
            return NotImplemented
        return self.pieces == other.pieces and (self.graph is other.graph or self.graph == other.graph)

    def __lt__(self, other: Heap) -> bool:
        return standard_word(self) < standard_word(other)

    def __mul__(self, other: Heap) -> Heap:
        return superpose(self, other)

    def __pow__(self, k: int) -> Heap:
        return heap_power(self, k)

    def __repr__(self) -> str:
        return f"Heap({' '.join(map(str, standard_word(self)))!r})"

    @property
    def weight(self) -> WeightVector:
        if self._weight is None:
            w = [0] * self.graph.n
            for p in self.pieces:
                w[p.position] += 1
            self._weight = tuple(w)
        return self._weight

    @property
    def positions(self) -> frozenset[int]:
        return frozenset(p.position for p in self.pieces)

    def to_json(self) -> dict:
        return {"pieces": [[p.position, p.level] for p in self.pieces]}

    @classmethod
    def from_json(cls, graph: Graph, data: dict) -> Heap:
        return cls.from_pieces(graph, data["pieces"])


# -- construction -------------------------------------------------------


def _tops(e: Heap) -> list[int]:
    tops = [-1] * e.graph.n
    for p in e.pieces:
        if p.level > tops[p.position]:
            tops[p.position] = p.level
    return tops


def _drop_all(graph: Graph, tops: list[int], pieces: list[Piece], letters: Iterable[int]) -> None:
    conc = graph.concurrent
    for a in letters:
        lvl = 1 + max(tops[c] for c in conc[a])
        tops[a] = lvl
        pieces.append(Piece(a, lvl))


def heap_from_word(g: Graph, word: Iterable[int]) -> Heap:
    """Superpose the single pieces of ``word`` left to right."""
    word = list(word)
    for a in word:
        if not 0 <= a < g.n:
            raise ValueError(f"letter {a} out of range for n={g.n}")
    pieces: list[Piece] = []
    _drop_all(g, [-1] * g.n, pieces, word)
    return Heap(g, pieces)


def superpose(a: Heap, b: Heap) -> Heap:
    if a.graph != b.graph:
        raise ValueError("cannot superpose heaps over different graphs")
    if not b.pieces:
        return a
    pieces = list(a.pieces)
    _drop_all(a.graph, _tops(a), pieces, (p.position for p in b.pieces))
    return Heap(a.graph, pieces)


def normalize(g: Graph, pieces: Iterable[Piece]) -> Heap:
    """Normal form of a pre-heap: let every piece fall as far as it can."""
    ordered = sorted(pieces, key=_sort_key)
    out: list[Piece] = []
    _drop_all(g, [-1] * g.n, out, (p.position for p in ordered))
    return Heap(g, out)


def heap_power(e: Heap, k: int) -> Heap:
    if k < 0:
        raise ValueError("heap powers must be non-negative")
    result = Heap.empty(e.graph)
    for _ in range(k):
        result = superpose(result, e)
    return result


def superpose_all(g: Graph, heaps: Iterable[Heap]) -> Heap:
    result = Heap.empty(g)
    for h in heaps:
        result = superpose(result, h)
    return result


# -- the piece order ------------------------------------------------------


def _predecessor_masks(e: Heap) -> list[int]:
    """Bit ``j`` of entry ``i`` is set when piece ``j`` lies directly below piece ``i``."""
    g = e.graph
    ps = e.pieces
    masks = []
    for i, p in enumerate(ps):
        m = 0
        for j in range(i):
            q = ps[j]
            if q.level < p.level and g.is_concurrent(p.position, q.position):
                m |= 1 << j
        masks.append(m)
    return masks


def standard_word(e: Heap) -> tuple[int, ...]:
    """Lexicographically largest word in the commutation class of ``e``."""
    if e._st is None:
        preds = _predecessor_masks(e)
        ps = e.pieces
        done = 0
        remaining = set(range(len(ps)))
        word = []
        while remaining:
            best = max((i for i in remaining if preds[i] & ~done == 0), key=lambda i: ps[i].position)
            word.append(ps[best].position)
            remaining.remove(best)
            done |= 1 << best
        e._st = tuple(word)
    return e._st


def heap_compare(a: Heap, b: Heap) -> int:
    sa, sb = standard_word(a), standard_word(b)
    if sa == sb:
        assert a == b, "distinct heaps with equal standard words"
        return 0
    return -1 if sa < sb else 1


def min_pieces(e: Heap) -> frozenset[Piece]:
    # In normal form every piece above level 0 rests on something, so the
    # minimal pieces are exactly the ground-level ones.
    return frozenset(p for p in e.pieces if p.level == 0)


def max_pieces(e: Heap) -> frozenset[Piece]:
    g = e.graph
    return frozenset(
        p for p in e.pieces
        if not any(q.level > p.level and g.is_concurrent(p.position, q.position) for q in e.pieces)
    )


def is_pyramid(e: Heap) -> bool:
    return len(min_pieces(e)) == 1


def basis(e: Heap) -> int | None:
    mins = min_pieces(e)
    if len(mins) != 1:
        return None
    return next(iter(mins)).position


def is_admissible_pyramid(e: Heap) -> bool:
    b = basis(e)
    return b is not None and b == min(e.positions)


def is_elementary_pyramid(e: Heap, i: int | None = None) -> bool:
    b = basis(e)
    if b is None or (i is not None and b != i):
        return False
    return e.weight[b] == 1


def is_trivial(e: Heap) -> bool:
    return all(p.level == 0 for p in e.pieces)


def is_multilinear(e: Heap) -> bool:
    return all(x <= 1 for x in e.weight)


def is_connected_heap(e: Heap) -> bool:
    return not e.pieces or e.graph.is_connected_set(e.positions)


# -- splittings E = U ∘ V ----------------------------------------------------


def _ideal_masks(e: Heap) -> Iterator[int]:
    """Every order ideal of the piece poset, as a bitmask over ``e.pieces``."""
    preds = _predecessor_masks(e)
    m = len(preds)

    def rec(i: int, chosen: int) -> Iterator[int]:
        if i == m:
            yield chosen
            return
        yield from rec(i + 1, chosen)
        if preds[i] & ~chosen == 0:
            yield from rec(i + 1, chosen | (1 << i))

    return rec(0, 0)


def splittings(e: Heap) -> Iterator[tuple[Heap, Heap]]:
    """All pairs ``(U, V)`` with ``U ∘ V = e``.

    ``U`` ranges over the order ideals of ``e``; ``V`` is the fallen
    complement.
    """
    ps = e.pieces
    for mask in _ideal_masks(e):
        lower = [p for i, p in enumerate(ps) if mask >> i & 1]
        upper = [p for i, p in enumerate(ps) if not mask >> i & 1]
        yield Heap(e.graph, lower), normalize(e.graph, upper)


def transposes(e: Heap) -> set[Heap]:
    return {superpose(v, u) for u, v in splittings(e)}


_CLASS_CACHE: dict[Heap, frozenset[Heap]] = {}


def conjugacy_class(e: Heap) -> frozenset[Heap]:
    """Closure of ``{e}`` under transposition."""
    cached = _CLASS_CACHE.get(e)
    if cached is not None:
        return cached
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for h in frontier:
            for t in transposes(h):
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    cls = frozenset(seen)
    for h in cls:
        _CLASS_CACHE[h] = cls
    return cls


@functools.lru_cache(maxsize=None)
def _class_minimum(cls: frozenset[Heap]) -> Heap:
    return min(cls, key=standard_word)


@functools.lru_cache(maxsize=None)
def is_primitive(e: Heap) -> bool:
    """True unless ``e = U ∘ V = V ∘ U`` for some non-empty ``U`` and ``V``."""
    for u, v in splittings(e):
        if u and v and superpose(v, u) == e:
            return False
    return True


def periodic_root(e: Heap) -> tuple[Heap, int]:
    """The non-periodic ``F`` and largest ``l`` with ``e = F ** l``."""
    if not e:
        raise ValueError("the empty heap has no periodic root")
    st = standard_word(e)
    total = len(st)
    for l in reversed(weight_divisors(e.weight)):
        if l == 1:
            break
        size = total // l
        candidate = heap_from_word(e.graph, st[:size])
        if heap_power(candidate, l) == e:
            return candidate, l
        # Fallback: any root is an order ideal of the right weight.
        target = tuple(x // l for x in e.weight)
        for u, _ in splittings(e):
            if len(u) == size and u.weight == target and heap_power(u, l) == e:
                return u, l
    return e, 1


def is_periodic(e: Heap) -> bool:
    return bool(e) and periodic_root(e)[1] > 1


@functools.lru_cache(maxsize=None)
def is_lyndon(e: Heap) -> bool:
    """Primitive and the smallest heap in its conjugacy class."""
    if not e:
        return False
    if _class_minimum(conjugacy_class(e)) != e:
        return False
    return is_primitive(e)


# -- factorizations --------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _lyndon_factorizations(e: Heap, upper: Heap | None) -> tuple[tuple[Heap, ...], ...]:
    if not e:
        return ((),)
    found = []
    for u, v in splittings(e):
        if not u or not is_lyndon(u):
            continue
        if upper is not None and u > upper:
            continue
        for rest in _lyndon_factorizations(v, u):
            found.append((u,) + rest)
    return tuple(found)


def lyndon_factorizations(e: Heap) -> list[list[Heap]]:
    """Every non-increasing factorization of ``e`` into Lyndon heaps.

    There is exactly one; this exhaustive form exists so that uniqueness can
    be checked rather than assumed.
    """
    return [list(f) for f in _lyndon_factorizations(e, None)]


def lyndon_factorization(e: Heap) -> list[Heap]:
    """The factors ``L1 >= L2 >= ...`` with ``L1 ∘ L2 ∘ ... = e``."""
    found = _lyndon_factorizations(e, None)
    if not found:
        raise AssertionError(f"no Lyndon factorization found for {e!r}")
    return list(found[0])


def lyndon_length(e: Heap) -> int:
    return len(lyndon_factorization(e))


def elementary_factorization(e: Heap, i: int) -> list[Heap]:
    """Split a pyramid with basis ``i`` into elementary pyramids with basis ``i``."""
    if basis(e) != i:
        raise ValueError(f"{e!r} is not a pyramid with basis {i}")
    factors: list[Heap] = []
    rest = e
    while rest:
        for u, v in splittings(rest):
            if is_elementary_pyramid(u, i) and (not v or basis(v) == i):
                factors.append(u)
                rest = v
                break
        else:
            raise AssertionError(f"no elementary factor found in {rest!r}")
    return factors


def cyclic_rotations(factors: Sequence[Heap]) -> list[Heap]:
    """``p_j ∘ ... ∘ p_k ∘ p_1 ∘ ... ∘ p_{j-1}`` for every ``j``."""
    if not factors:
        return []
    g = factors[0].graph
    k = len(factors)
    return [superpose_all(g, list(factors[j:]) + list(factors[:j])) for j in range(k)]


def clear_caches() -> None:
    _CLASS_CACHE.clear()
    _class_minimum.cache_clear()
    is_primitive.cache_clear()
    is_lyndon.cache_clear()
    _lyndon_factorizations.cache_clear()
