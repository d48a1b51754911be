"""Acyclic orientations, their bijection with multilinear heaps, and the
reciprocity counts built on top of it."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from .chromatic import InvariantViolation, discriminant, positive_derivative
from .graph import Graph
from .heaps import Heap, Piece, is_multilinear, lyndon_factorization


@dataclass(frozen=True)
class AcyclicOrientation:
    """Orientation of every edge of ``graph``; ``arcs`` holds ``(tail, head)`` pairs."""

    graph: Graph
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        undirected = {(min(a, b), max(a, b)) for a, b in self.arcs}
        if undirected != set(self.graph.edges) or len(self.arcs) != len(self.graph.edges):
            raise ValueError("arcs must orient every edge of the graph exactly once")
        if not _is_acyclic(self.graph.n, self.arcs):
            raise ValueError("orientation has a directed cycle")

    def successors(self, v: int) -> list[int]:
        return sorted(b for a, b in self.arcs if a == v)

    def predecessors(self, v: int) -> list[int]:
        return sorted(a for a, b in self.arcs if b == v)

    def sources(self, vertices: Iterable[int] | None = None) -> list[int]:
        """Vertices without incoming arcs (isolated vertices count as sources)."""
        vs = range(self.graph.n) if vertices is None else vertices
        heads = {b for _, b in self.arcs}
        return sorted(v for v in vs if v not in heads)

    def sinks(self) -> list[int]:
        tails = {a for a, _ in self.arcs}
        return sorted(v for v in range(self.graph.n) if v not in tails)

    def to_json(self) -> dict:
        return {"edges": [list(a) for a in sorted(self.arcs)]}


def _is_acyclic(n: int, arcs: Iterable[tuple[int, int]]) -> bool:
    indeg = [0] * n
    out: list[list[int]] = [[] for _ in range(n)]
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


def enumerate_acyclic(g: Graph) -> list[AcyclicOrientation]:
    """All acyclic orientations, in the order of their arc bit patterns."""
    edges = g.sorted_edges()
    out = []
    for bits in itertools.product((0, 1), repeat=len(edges)):
        arcs = frozenset((i, j) if b == 0 else (j, i) for (i, j), b in zip(edges, bits))
        if _is_acyclic(g.n, arcs):
            out.append(AcyclicOrientation(g, arcs))
    return out


def heap_to_orientation(e: Heap) -> AcyclicOrientation:
    """Orient each edge from the lower piece to the higher one."""
    if not is_multilinear(e) or len(e) != e.graph.n:
        raise ValueError("expected a multilinear heap using every vertex")
    level = {p.position: p.level for p in e.pieces}
    arcs = frozenset((i, j) if level[i] < level[j] else (j, i) for i, j in e.graph.edges)
    return AcyclicOrientation(e.graph, arcs)


def orientation_to_heap(o: AcyclicOrientation) -> Heap:
    """Place each vertex at the length of the longest directed path ending there."""
    g = o.graph
    preds = {v: o.predecessors(v) for v in range(g.n)}
    level: dict[int, int] = {}

    def depth(v: int) -> int:
        if v not in level:
            level[v] = 1 + max((depth(u) for u in preds[v]), default=-1)
        return level[v]

    return Heap(g, [Piece(v, depth(v)) for v in range(g.n)])


def _restrict(o: AcyclicOrientation, vertices: frozenset[int]) -> AcyclicOrientation:
    sub = o.graph.induced_subgraph(vertices)
    return AcyclicOrientation(sub, frozenset(a for a in o.arcs if a[0] in vertices and a[1] in vertices))


def is_lyndon_orientation(o: AcyclicOrientation, vertices: Iterable[int]) -> bool:
    """Unique source, at the smallest vertex, of the orientation restricted to ``vertices``."""
    vs = frozenset(vertices)
    restricted = _restrict(o, vs)
    return restricted.sources(vs) == [min(vs)]


def lyndon_factorization_orientation(o: AcyclicOrientation) -> list[tuple[frozenset[int], AcyclicOrientation]]:
    """Factor supports with the orientation of each induced subgraph, taken from
    the Lyndon factorization of the corresponding heap."""
    factors = lyndon_factorization(orientation_to_heap(o))
    out = []
    for f in factors:
        vs = f.positions
        out.append((vs, _restrict(o, vs)))
    return out


def compose_lyndon_orientations(g: Graph, factors: list[tuple[frozenset[int], AcyclicOrientation]]) -> AcyclicOrientation:
    """Rebuild an orientation of ``g`` from its factors: inner edges keep their
    direction, an edge between factors points from the factor with the larger
    minimum to the one with the smaller minimum."""
    owner = {v: idx for idx, (vs, _) in enumerate(factors) for v in vs}
    arcs = set()
    for _, sub in factors:
        arcs |= sub.arcs
    for i, j in g.edges:
        a, b = owner[i], owner[j]
        if a == b:
            continue
        mi, mj = min(factors[a][0]), min(factors[b][0])
        arcs.add((i, j) if mi > mj else (j, i))
    return AcyclicOrientation(g, frozenset(arcs))


def lyndon_length_orientation(o: AcyclicOrientation) -> int:
    return len(lyndon_factorization_orientation(o))


def count_unique_source(g: Graph, i: int) -> int:
    """Acyclic orientations whose only source is ``i``; equals the discriminant."""
    if not g.is_connected():
        raise ValueError("unique-source counts are only defined here for connected graphs")
    count = sum(1 for o in enumerate_acyclic(g) if o.sources() == [i])
    disc = discriminant(g, (1,) * g.n)
    if count != disc:
        raise InvariantViolation(f"{count} orientations with unique source {i}, discriminant {disc}")
    return count


def count_lambda_compatible(g: Graph, lam: int, check: bool = True) -> int:
    """Pairs (labelling into [lam], acyclic orientation) with labels weakly
    decreasing along every arc."""
    if lam < 1:
        raise ValueError("lambda must be a positive integer")
    total = 0
    orientations = enumerate_acyclic(g)
    for sigma in itertools.product(range(1, lam + 1), repeat=g.n):
        for o in orientations:
            if all(sigma[a] >= sigma[b] for a, b in o.arcs):
                total += 1
    if check:
        expected = positive_derivative(g, 0)(lam)
        if total != expected:
            raise InvariantViolation(f"{total} compatible pairs but positive chromatic polynomial gives {expected}")
    return total


def _falling(k: int, m: int) -> int:
    return math.perm(k, m) if k >= m else 0


def count_m_lambda_formula(g: Graph, m: int, lam: int) -> int:
    """Sum over acyclic orientations with Lyndon length ``k >= m`` of
    ``k (k-1) ... (k-m+1) lam^(k-m)``."""
    total = 0
    for o in enumerate_acyclic(g):
        k = lyndon_length_orientation(o)
        if k >= m:
            total += _falling(k, m) * lam ** (k - m)
    return total


def enumerate_m_lambda_labellings(o: AcyclicOrientation, m: int, lam: int) -> list[dict[int, int]]:
    """All labellings that are constant on each Lyndon factor: factor ``j``
    (1-based) takes a label in ``[k-j+1]`` for ``j <= m`` and in ``[lam]``
    otherwise, with ``k`` the number of factors."""
    factors = lyndon_factorization_orientation(o)
    k = len(factors)
    if k < m:
        return []
    ranges = [range(1, k - j + 2) if j <= m else range(1, lam + 1) for j in range(1, k + 1)]
    out = []
    for labels in itertools.product(*ranges):
        out.append({v: label for (vs, _), label in zip(factors, labels) for v in vs})
    return out


def count_m_lambda_labelled(g: Graph, m: int, lam: int) -> int:
    """(m, lam)-labelled acyclic orientations, by formula and by explicit
    enumeration; both must match the m-th derivative of the positive chromatic
    polynomial at ``lam``."""
    if not 0 <= m <= g.n:
        raise ValueError(f"m must lie in [0, {g.n}]")
    if lam < 1:
        raise ValueError("lambda must be a positive integer")
    by_formula = count_m_lambda_formula(g, m, lam)
    by_listing = sum(len(enumerate_m_lambda_labellings(o, m, lam)) for o in enumerate_acyclic(g))
    expected = positive_derivative(g, m)(lam)
    if not by_formula == by_listing == expected:
        raise InvariantViolation(
            f"(m={m}, lambda={lam}): formula {by_formula}, enumeration {by_listing}, derivative {expected}"
        )
    return by_formula


def lyndon_length_polynomial(g: Graph) -> list[int]:
    """Entry ``k`` counts acyclic orientations of Lyndon length ``k``."""
    counts = [0] * (g.n + 1)
    for o in enumerate_acyclic(g):
        counts[lyndon_length_orientation(o)] += 1
    return counts
