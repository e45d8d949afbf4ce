"""Homogeneous subgraphs of vertex-partitioned uniform hypergraphs.

A subgraph is homogeneous for a k-part vertex partition and a petal count s
when: every edge is rainbow (one vertex per part); projecting each edge's
intersections with the other edges onto part indices yields one pattern J
shared by all edges; J is closed under intersection; and every concrete
intersection S of an edge E with another edge extends to an s-petal
sunflower inside the subgraph with center S and E among its petals.

The pattern's rank caps the subgraph size through a shadow count, which is
what makes extracted homogeneous subgraphs useful.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ParameterError
from .hypergraph import Edge, Hypergraph, shadow
from .patterns import (IntersectionPattern, intersection_structure, project,
                       rank, validate_vertex_partition)
from .sunflowers import find_sunflower

# (edge, center, petals): the edge's sunflower witness for one intersection
SunflowerWitness = tuple[Edge, Edge, tuple[Edge, ...]]


@dataclass(frozen=True)
class HomogeneousCertificate:
    subgraph: Hypergraph
    partition: tuple[Edge, ...]
    pattern: IntersectionPattern
    s: int
    witnesses: tuple[SunflowerWitness, ...]

    def to_json(self) -> dict:
        return {
            "n": self.subgraph.n,
            "k": self.subgraph.k,
            "s": self.s,
            "partition": [list(p) for p in self.partition],
            "edges": [list(e) for e in self.subgraph.edges],
            "pattern": [list(x) for x in self.pattern.sorted_sets()],
            "rank": rank(self.pattern),
            "witnesses": [
                {"edge": list(e), "center": list(c), "petals": [list(p) for p in ps]}
                for e, c, ps in self.witnesses
            ],
        }


@dataclass(frozen=True)
class HomogeneousCheck:
    ok: bool
    certificate: HomogeneousCertificate | None = None
    failure: str | None = None
    detail: str | None = None


def _edge_pattern(sub: Hypergraph, edge: Edge,
                  parts: tuple[Edge, ...]) -> frozenset[frozenset[int]]:
    return frozenset(project(s, parts) for s in intersection_structure(sub, edge))


def is_homogeneous(h: Hypergraph, s: int, parts) -> HomogeneousCheck:
    """Check the four homogeneity conditions; first failure wins."""
    if s < 2:
        raise ParameterError(f"petal count s must be at least 2, got {s}")
    if len(h) == 0:
        raise ParameterError("subgraph must be nonempty")
    norm = validate_vertex_partition(h.n, parts)
    if len(norm) != h.k:
        raise ParameterError(f"need exactly {h.k} parts, got {len(norm)}")
    for e in h.edges:
        if len(project(e, norm)) != h.k:
            return HomogeneousCheck(False, failure="not-k-partite",
                                    detail=f"edge {e} does not meet every part exactly once")
    patterns = {e: _edge_pattern(h, e, norm) for e in h.edges}
    common = patterns[h.edges[0]]
    for e in h.edges[1:]:
        if patterns[e] != common:
            return HomogeneousCheck(False, failure="pattern-mismatch",
                                    detail=f"edge {e} projects to a different pattern "
                                           f"than edge {h.edges[0]}")
    pattern = IntersectionPattern.of(h.k, common)
    if not pattern.is_closed:
        for a in pattern.sorted_sets():
            for b in pattern.sorted_sets():
                if frozenset(set(a) & set(b)) not in pattern.sets:
                    return HomogeneousCheck(
                        False, failure="pattern-not-closed",
                        detail=f"{a} and {b} are in the pattern but their "
                               f"intersection {tuple(sorted(set(a) & set(b)))} is not")
    witnesses: list[SunflowerWitness] = []
    for e in h.edges:
        for center in sorted(intersection_structure(h, e)):
            flower = find_sunflower(h, center, s, require_edge=e)
            if flower is None:
                return HomogeneousCheck(
                    False, failure="missing-sunflower",
                    detail=f"no {s}-petal sunflower with center {center} "
                           f"through edge {e}")
            witnesses.append((e, center, flower.petals))
    cert = HomogeneousCertificate(h, norm, pattern, s, tuple(witnesses))
    return HomogeneousCheck(True, certificate=cert)


def homogeneous_size_bound(cert: HomogeneousCertificate) -> int:
    """Shadow-count cap on the subgraph size implied by the pattern's rank."""
    r = rank(cert.pattern)
    if r == 0:
        return 1
    return len(shadow(cert.subgraph, cert.subgraph.k - r))


def _pattern_key(pat: frozenset[frozenset[int]]) -> tuple:
    return tuple(sorted((tuple(sorted(x)) for x in pat), key=lambda t: (len(t), t)))


def _rainbow(edge: Edge, assign: dict[int, int], k: int) -> bool:
    return len({assign[v] for v in edge}) == k


def _climb_partition(h: Hypergraph, rng: random.Random) -> dict[int, int]:
    """Random part assignment improved by single-vertex moves, best gain first."""
    assign = {v: rng.randrange(h.k) for v in range(1, h.n + 1)}
    by_vertex: dict[int, list[Edge]] = {v: [] for v in range(1, h.n + 1)}
    for e in h.edges:
        for v in e:
            by_vertex[v].append(e)

    def local(v: int) -> int:
        return sum(1 for e in by_vertex[v] if _rainbow(e, assign, h.k))

    while True:
        best_gain = 0
        best_move: tuple[int, int] | None = None
        for v in range(1, h.n + 1):
            cur = assign[v]
            before = local(v)
            for p in range(h.k):
                if p == cur:
                    continue
                assign[v] = p
                gain = local(v) - before
                if gain > best_gain:
                    best_gain = gain
                    best_move = (v, p)
            assign[v] = cur
        if best_move is None:
            return assign
        assign[best_move[0]] = best_move[1]


def extract_homogeneous(h: Hypergraph, s: int, seed: int = 0,
                        restarts: int = 8) -> HomogeneousCertificate:
    """Find a large homogeneous subgraph; always returns a valid certificate.

    Each restart draws a random vertex partition, improves it by hill
    climbing on the rainbow edge count, then alternately unifies the
    projected pattern and deletes edges breaking closure or the sunflower
    condition until the remainder is homogeneous. The best certificate over
    all restarts wins (larger subgraph first, earlier restart on ties); a
    single edge with its tailor-made partition is the fallback, so the
    result is never empty. Deterministic for fixed seed and restarts.
    """
    if s < 2:
        raise ParameterError(f"petal count s must be at least 2, got {s}")
    if len(h) == 0:
        raise ParameterError("hypergraph must be nonempty")
    if restarts < 0:
        raise ParameterError(f"restarts must be nonnegative, got {restarts}")
    best: tuple[int, HomogeneousCertificate] | None = None
    for r in range(restarts):
        rng = random.Random(seed * 1_000_003 + r)
        assign = _climb_partition(h, rng)
        parts = tuple(tuple(v for v in range(1, h.n + 1) if assign[v] == i)
                      for i in range(h.k))
        edges = [e for e in h.edges if _rainbow(e, assign, h.k)]
        while edges:
            sub = h.restrict(edges)
            pats = {e: _edge_pattern(sub, e, parts) for e in edges}
            groups: dict[frozenset, list[Edge]] = {}
            for e in edges:
                groups.setdefault(pats[e], []).append(e)
            if len(groups) > 1:
                # keep the biggest pattern class; tie-break on the pattern itself
                size = max(len(g) for g in groups.values())
                tied = sorted((key for key, g in groups.items() if len(g) == size),
                              key=_pattern_key)
                edges = groups[tied[0]]
                continue
            pattern = IntersectionPattern.of(h.k, next(iter(groups)))
            if not pattern.is_closed:
                edges = edges[:-1]
                continue
            bad = None
            for e in edges:
                for center in sorted(intersection_structure(sub, e)):
                    if find_sunflower(sub, center, s, require_edge=e) is None:
                        bad = e
                        break
                if bad is not None:
                    break
            if bad is not None:
                edges = [e for e in edges if e != bad]
                continue
            break
        if not edges:
            continue
        check = is_homogeneous(h.restrict(edges), s, parts)
        if not check.ok:
            raise AssertionError(f"refinement produced an invalid subgraph: {check.failure}")
        if best is None or len(edges) > best[0]:
            best = (len(edges), check.certificate)
    if best is not None:
        return best[1]
    # fallback: one edge, each of its vertices alone in a part, spare
    # vertices stacked into the first part
    e = h.edges[0]
    spare = tuple(v for v in range(1, h.n + 1) if v not in e)
    parts = ((e[0],) + spare,) + tuple((v,) for v in e[1:])
    check = is_homogeneous(h.restrict([e]), s, parts)
    if not check.ok:
        raise AssertionError(f"fallback subgraph is invalid: {check.failure}")
    return check.certificate
