"""Graphs on a totally ordered vertex set, weight vectors and the clan graph.

Vertices are the integers ``0..n-1`` and their natural order is the total
order used everywhere else in the package (standard words, admissibility,
bond-partition canonical forms).
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Sequence

WeightVector = tuple[int, ...]


class DimensionError(ValueError):
    """A weight vector does not match the order of its graph."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` holds pairs ``(i, j)`` with ``i < j``.  Instances are immutable
    and hashable, so they can key caches.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        edge_list = [tuple(e) for e in edges]
        seen = set()
        for i, j in edge_list:
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(edge_list))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def concurrent(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the sorted positions that do not commute with it
        (itself and its neighbours)."""
        return tuple(tuple(sorted(self.neighbors[v] | {v})) for v in range(self.n))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def is_concurrent(self, i: int, j: int) -> bool:
        return i == j or self.adjacent(i, j)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Same vertex labels, keeping only the edges inside ``vertices``."""
        vs = set(vertices)
        return Graph(self.n, frozenset(e for e in self.edges if e[0] in vs and e[1] in vs))

    def is_connected_set(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        if not vs:
            return False
        start = min(vs)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.neighbors[v]:
                if u in vs and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == vs

    def is_connected(self) -> bool:
        return self.n > 0 and self.is_connected_set(range(self.n))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = sorted(set(vertices))
        return not any(self.adjacent(a, b) for a, b in itertools.combinations(vs, 2))

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        return cls.from_edges(int(data["n"]), data.get("edges", []))

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Graph:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty graph description")
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"malformed edge line: {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return cls.from_edges(n, edges)

    @classmethod
    def load(cls, path: str | Path) -> Graph:
        """Read a graph file; JSON if the content parses as an object, text otherwise."""
        text = Path(path).read_text()
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_json(json.loads(text))
        return cls.from_text(text)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def check_weight(g: Graph, k: Sequence[int]) -> WeightVector:
    """Validate ``k`` against ``g`` and return it as a tuple."""
    k = tuple(int(x) for x in k)
    if len(k) != g.n:
        raise DimensionError(f"weight vector has length {len(k)}, graph has {g.n} vertices")
    if any(x < 0 for x in k):
        raise ValueError(f"weight entries must be non-negative: {k}")
    return k


def height(k: Sequence[int]) -> int:
    return sum(k)


def weight_factorial(k: Sequence[int]) -> int:
    return math.prod(math.factorial(x) for x in k)


def support(k: Sequence[int]) -> list[int]:
    return [i for i, x in enumerate(k) if x > 0]


def multiset_support(k: Sequence[int]) -> list[int]:
    """Each vertex ``i`` repeated ``k[i]`` times."""
    return [i for i, x in enumerate(k) for _ in range(x)]


def is_connected_support(g: Graph, k: Sequence[int]) -> bool:
    k = check_weight(g, k)
    return g.is_connected_set(support(k))


def independent_sets(g: Graph) -> list[frozenset[int]]:
    """Non-empty independent sets, ordered by size then lexicographically."""
    out = []
    for r in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), r):
            if g.is_independent(combo):
                out.append(frozenset(combo))
    return out


def clan_graph(g: Graph, k: Sequence[int]) -> tuple[Graph, list[tuple[int, int]]]:
    """Blow vertex ``i`` up into a ``k[i]``-clique, joining cliques along edges of ``g``.

    Returns the new graph and its label map: new vertex ``v`` is copy
    ``labels[v][1]`` (0-based) of original vertex ``labels[v][0]``.
    """
    k = check_weight(g, k)
    labels = [(i, c) for i in range(g.n) for c in range(k[i])]
    index = {lab: v for v, lab in enumerate(labels)}
    edges = set()
    for i in range(g.n):
        for a, b in itertools.combinations(range(k[i]), 2):
            edges.add((index[(i, a)], index[(i, b)]))
    for r, s in g.edges:
        for a in range(k[r]):
            for b in range(k[s]):
                u, v = index[(r, a)], index[(s, b)]
                edges.add((min(u, v), max(u, v)))
    return Graph(len(labels), frozenset(edges)), labels


def weight_gcd(k: Sequence[int]) -> int:
    return reduce(math.gcd, k, 0)


def weight_divisors(k: Sequence[int]) -> list[int]:
    """All ``l >= 1`` dividing every entry of ``k``, ascending."""
    d = weight_gcd(k)
    if d == 0:
        raise ValueError("weight_divisors is undefined for the zero vector")
    return [l for l in range(1, d + 1) if d % l == 0]


def divide_weight(k: Sequence[int], l: int) -> WeightVector:
    if any(x % l for x in k):
        raise ValueError(f"{l} does not divide {tuple(k)}")
    return tuple(x // l for x in k)


def weights_below(bound: Sequence[int]) -> list[WeightVector]:
    """All weight vectors ``m <= bound`` componentwise, in product order."""
    return [tuple(m) for m in itertools.product(*(range(b + 1) for b in bound))]


def parse_weight(text: str) -> WeightVector:
    """Parse ``"2,1,1"`` into ``(2, 1, 1)``."""
    try:
        values = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"malformed weight vector {text!r}: expected comma-separated integers") from None
    if any(v < 0 for v in values):
        raise ValueError(f"malformed weight vector {text!r}: entries must be non-negative")
    return values


def _canonical_form(n: int, edges: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    edges = list(edges)
    best = None
    for perm in itertools.permutations(range(n)):
        relabelled = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in edges))
        if best is None or relabelled < best:
            best = relabelled
    return best


def seed_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    """All graphs on ``min_n..max_n`` vertices up to isomorphism (``max_n <= 5``).

    Representatives are chosen as the lexicographically smallest relabelled
    edge list, so the output is deterministic.
    """
    if max_n > 5:
        raise ValueError("seed_graphs is limited to at most 5 vertices")
    return [g for n in range(min_n, max_n + 1) for g in _seed_graphs_on(n)]


@functools.lru_cache(maxsize=None)
def _seed_graphs_on(n: int) -> tuple[Graph, ...]:
    out = []
    if n:
        all_pairs = list(itertools.combinations(range(n), 2))
        seen = set()
        for r in range(len(all_pairs) + 1):
            for subset in itertools.combinations(all_pairs, r):
                canon = _canonical_form(n, subset)
                if canon not in seen:
                    seen.add(canon)
                    out.append(Graph(n, frozenset(canon)))
    return tuple(out)
