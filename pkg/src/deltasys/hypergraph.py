"""k-uniform hypergraphs on {1..n} with bitmask edges, shadows, and exact edge weights."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import sqrt
from typing import Iterable, Iterator

from .errors import ParameterError, UniformityError

Edge = tuple[int, ...]

#: Vertex labels live in 1..n; n may not exceed this unless a caller raises the cap.
DEFAULT_MAX_VERTICES = 128


def vertex_tuple(vertices: Iterable[int]) -> Edge:
    """Normalize a vertex collection to a sorted duplicate-free tuple."""
    out = tuple(sorted(set(vertices)))
    for v in out:
        if not isinstance(v, int) or v < 1:
            raise ParameterError(f"vertex labels must be positive integers, got {v!r}")
    return out


def mask_of(vertices: Iterable[int]) -> int:
    """Pack vertices into a bitmask (vertex v occupies bit v-1)."""
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> Edge:
    """Unpack a bitmask into an ascending vertex tuple."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


class Hypergraph:
    """An immutable k-uniform hypergraph on vertex set {1, ..., n}.

    Edges are kept as lexicographically sorted tuples; a parallel tuple of
    bitmasks backs the set operations. Duplicate edges are rejected.
    """

    __slots__ = ("n", "k", "edges", "edge_masks", "_edge_set")

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]],
                 max_vertices: int = DEFAULT_MAX_VERTICES):
        if not isinstance(n, int) or n < 1:
            raise ParameterError(f"n must be a positive integer, got {n!r}")
        if n > max_vertices:
            raise ParameterError(f"n={n} exceeds the vertex cap {max_vertices}")
        if not isinstance(k, int) or not 1 <= k <= n:
            raise ParameterError(f"k must satisfy 1 <= k <= n, got k={k!r}, n={n}")
        normalized = []
        for raw in edges:
            e = vertex_tuple(raw)
            if len(e) != k:
                raise ParameterError(f"edge {tuple(raw)!r} has {len(e)} distinct vertices, expected {k}")
            if e[-1] > n:
                raise ParameterError(f"edge {e} uses a vertex above n={n}")
            normalized.append(e)
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ParameterError(f"duplicate edge {a}")
        self.n = n
        self.k = k
        self.edges: tuple[Edge, ...] = tuple(normalized)
        self.edge_masks: tuple[int, ...] = tuple(mask_of(e) for e in self.edges)
        self._edge_set = frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge: Iterable[int]) -> bool:
        return vertex_tuple(edge) in self._edge_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, {len(self.edges)} edges)"

    def restrict(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Subgraph on the same vertex set; every edge must already be present."""
        sub = [vertex_tuple(e) for e in edges]
        for e in sub:
            if e not in self._edge_set:
                raise ParameterError(f"{e} is not an edge of this hypergraph")
        return Hypergraph(self.n, self.k, sub)

    def degree(self, v: int) -> int:
        """Number of edges containing vertex v."""
        bit = 1 << (v - 1)
        return sum(1 for m in self.edge_masks if m & bit)


def shadow(h: Hypergraph, i: int) -> set[Edge]:
    """The i-th shadow: all (k-i)-subsets contained in at least one edge.

    i ranges over 0..k-1; shadow(h, 0) is the edge set itself.
    """
    if not 0 <= i <= h.k - 1:
        raise ParameterError(f"shadow order must lie in 0..{h.k - 1}, got {i}")
    out: set[Edge] = set()
    for e in h.edges:
        out.update(combinations(e, h.k - i))
    return out


def codegree(h: Hypergraph, vertices: Iterable[int]) -> int:
    """Number of edges containing every vertex of the given set.

    The empty set has codegree |H|; sets too large to fit in an edge get 0.
    """
    m = mask_of(vertex_tuple(vertices))
    return sum(1 for em in h.edge_masks if em & m == m)


def max_codegree2(h: Hypergraph) -> int:
    """Maximum codegree over vertex pairs; defined for 3-graphs only."""
    if h.k != 3:
        raise UniformityError(f"pair-codegree maximum is defined for k=3 only, got k={h.k}")
    best = 0
    counts: dict[tuple[int, int], int] = {}
    for e in h.edges:
        for p in combinations(e, 2):
            c = counts.get(p, 0) + 1
            counts[p] = c
            if c > best:
                best = c
    return best


def codegree_histogram(h: Hypergraph) -> dict[int, int]:
    """Map codegree value -> number of vertex pairs attaining it (k=3 only).

    Pairs covered by no edge are counted under 0.
    """
    if h.k != 3:
        raise UniformityError(f"pair-codegree histogram is defined for k=3 only, got k={h.k}")
    counts: dict[tuple[int, int], int] = {}
    for e in h.edges:
        for p in combinations(e, 2):
            counts[p] = counts.get(p, 0) + 1
    hist: dict[int, int] = {}
    covered = 0
    for c in counts.values():
        hist[c] = hist.get(c, 0) + 1
        covered += 1
    total_pairs = h.n * (h.n - 1) // 2
    if total_pairs > covered:
        hist[0] = hist.get(0, 0) + (total_pairs - covered)
    return hist


def edge_weight(h: Hypergraph, edge: Iterable[int]) -> Fraction:
    """Sum of 1/deg over the (k-1)-subsets of an edge, as an exact rational.

    deg counts the edges of h containing the subset; the edge itself always
    contributes, so every denominator is at least 1.
    """
    e = vertex_tuple(edge)
    if e not in h._edge_set:
        raise ParameterError(f"{e} is not an edge of the hypergraph")
    total = Fraction(0)
    for sub in combinations(e, h.k - 1):
        total += Fraction(1, codegree(h, sub))
    return total


def weight_identity(h: Hypergraph) -> tuple[Fraction, int]:
    """Return (sum of all edge weights, size of the 1-shadow).

    The two components are equal for every hypergraph: grouping the sum by
    (k-1)-subset, each subset covered by the hypergraph contributes exactly 1.
    """
    total = sum((edge_weight(h, e) for e in h.edges), Fraction(0))
    if h.k == 1:
        return total, (1 if h.edges else 0)
    return total, len(shadow(h, 1))


def kruskal_katona_x(edge_count: int) -> float:
    """Real x with x(x-1)/2 = edge_count.

    For a 3-graph with edge_count edges the pair shadow has at least x
    elements; the quadratic is solved in closed form.
    """
    if edge_count < 0:
        raise ParameterError("edge count must be nonnegative")
    return (1.0 + sqrt(1.0 + 8.0 * edge_count)) / 2.0
