"""Triple systems, matchings, and the dense codegree-capped construction.

The centerpiece glues a pair-exact triple system (every vertex pair in
exactly m-1 blocks) to a perfect matching drawn from its complement. The
result has maximum pair codegree exactly m, with the codegree-m pairs
forming vertex-disjoint triangles, and it is large while provably avoiding
any nontrivial pairwise-intersecting subfamily of size 3m+1. The verifier
recomputes all of that from scratch, by counting or by exhaustive search.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import (AdmissibilityError, ConstructionError, ParameterError)
from .hypergraph import Edge, Hypergraph, codegree_histogram, max_codegree2
from .intersecting import km_codegree_bound
from .search import SearchOutcome, SearchStatus


@dataclass(frozen=True)
class DesignSpec:
    """Parameters of a pair-exact triple system: every pair in exactly lam blocks."""

    n: int
    lam: int

    def __post_init__(self):
        if self.n < 3:
            raise ParameterError(f"need at least 3 vertices, got {self.n}")
        if self.lam < 1:
            raise ParameterError(f"multiplicity must be positive, got {self.lam}")
        if (self.lam * self.n * (self.n - 1)) % 6 or (self.lam * (self.n - 1)) % 2:
            raise AdmissibilityError(
                f"no triple system on {self.n} vertices with multiplicity "
                f"{self.lam}: divisibility fails")

    @property
    def block_count(self) -> int:
        return self.lam * self.n * (self.n - 1) // 6


def build_star(n: int, k: int) -> Hypergraph:
    """All k-subsets of 1..n through vertex 1."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    edges = [(1,) + rest for rest in combinations(range(2, n + 1), k - 1)]
    return Hypergraph(n, k, edges)


def _difference_triples(n: int) -> list[tuple[int, int, int]] | None:
    """Partition the folded differences into realizable triples, if possible.

    A triple (d1, d2, d3) with d1 < d2 < d3 comes from a cyclic block orbit
    exactly when d1 + d2 == d3 or d1 + d2 + d3 == n.
    """
    diffs = set(range(1, n // 2 + 1))
    if n % 3 == 0:
        diffs.discard(n // 3)
    out: list[tuple[int, int, int]] = []

    def rec() -> bool:
        if not diffs:
            return True
        d1 = min(diffs)
        diffs.remove(d1)
        rest = sorted(diffs)
        for i, d2 in enumerate(rest):
            for d3 in rest[i + 1:]:
                if d1 + d2 == d3 or d1 + d2 + d3 == n:
                    diffs.discard(d2)
                    diffs.discard(d3)
                    out.append((d1, d2, d3))
                    if rec():
                        return True
                    out.pop()
                    diffs.add(d2)
                    diffs.add(d3)
        diffs.add(d1)
        return False

    return out if rec() else None


def _cyclic_sts(n: int) -> list[Edge] | None:
    """Steiner triple system from a cyclic difference family, 1-based blocks."""
    if n % 6 not in (1, 3):
        return None
    trips = _difference_triples(n)
    if trips is None:
        return None
    blocks: list[Edge] = []
    if n % 3 == 0:
        third = n // 3
        for x in range(third):
            blocks.append(tuple(sorted((x + 1, x + third + 1, x + 2 * third + 1))))
    for d1, d2, _ in trips:
        for x in range(n):
            blocks.append(tuple(sorted(((x % n) + 1,
                                        ((x + d1) % n) + 1,
                                        ((x + d1 + d2) % n) + 1))))
    return blocks


class _Abort(Exception):
    pass


def _backtrack_triples(n: int, lam: int, rng: random.Random,
                       forbidden: frozenset[Edge] = frozenset(),
                       node_cap: int = 200_000) -> list[Edge] | None:
    """Pair-exact cover by distinct triples, most-constrained pair first."""
    need = {p: lam for p in combinations(range(1, n + 1), 2)}
    chosen: list[Edge] = []
    chosen_set: set[Edge] = set()
    nodes = 0

    def candidates(u: int, v: int) -> list[int]:
        out = []
        for w in range(1, n + 1):
            if w == u or w == v:
                continue
            a, b = (u, w) if u < w else (w, u)
            c, d_ = (v, w) if v < w else (w, v)
            if need[(a, b)] and need[(c, d_)]:
                t = tuple(sorted((u, v, w)))
                if t not in chosen_set and t not in forbidden:
                    out.append(w)
        return out

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise _Abort
        best_pair = None
        best_ws: list[int] | None = None
        for p, cnt in need.items():
            if not cnt:
                continue
            ws = candidates(*p)
            if best_ws is None or len(ws) < len(best_ws):
                best_pair, best_ws = p, ws
                if not ws:
                    return False
        if best_pair is None:
            return True
        u, v = best_pair
        rng.shuffle(best_ws)
        for w in best_ws:
            t = tuple(sorted((u, v, w)))
            ps = list(combinations(t, 2))
            if any(need[q] == 0 for q in ps):
                continue
            for q in ps:
                need[q] -= 1
            chosen.append(t)
            chosen_set.add(t)
            if rec():
                return True
            chosen_set.remove(t)
            chosen.pop()
            for q in ps:
                need[q] += 1
        return False

    try:
        return chosen if rec() else None
    except _Abort:
        return None


def _check_pair_exact(h: Hypergraph, lam: int) -> bool:
    cnt: Counter[tuple[int, int]] = Counter()
    for e in h.edges:
        for p in combinations(e, 2):
            cnt[p] += 1
    return (len(cnt) == comb(h.n, 2) and all(c == lam for c in cnt.values()))


def build_triple_system(spec: DesignSpec, seed: int = 0) -> Hypergraph:
    """Pair-exact triple system for the given parameters; deterministic
    for a fixed seed.

    Multiplicity one tries a cyclic difference family first and falls back
    to seeded backtracking. Higher multiplicity stacks pairwise
    block-disjoint single-multiplicity layers when those exist, otherwise
    backtracks directly. The output is always revalidated by counting.
    """
    n, lam = spec.n, spec.lam

    def finish(blocks: list[Edge]) -> Hypergraph:
        h = Hypergraph(n, 3, blocks)
        if not _check_pair_exact(h, lam):
            raise ConstructionError("construction produced an invalid triple system")
        return h

    if lam == 1:
        blocks = _cyclic_sts(n)
        if blocks is not None:
            return finish(blocks)
        for attempt in range(64):
            blocks = _backtrack_triples(n, 1, random.Random(seed * 97 + attempt))
            if blocks is not None:
                return finish(blocks)
        raise ConstructionError(f"no triple system found on {n} vertices")

    if n % 6 in (1, 3):
        # stack lam mutually block-disjoint single layers
        for attempt in range(64):
            rng = random.Random(seed * 1_000_003 + attempt)
            used: set[Edge] = set()
            layers: list[Edge] = []
            complete = True
            for _ in range(lam):
                layer = (_cyclic_sts(n) if not used else None)
                if layer is not None and any(b in used for b in layer):
                    layer = None
                if layer is None:
                    layer = _backtrack_triples(n, 1, rng, frozenset(used))
                if layer is None:
                    complete = False
                    break
                used.update(layer)
                layers.extend(layer)
            if complete:
                return finish(layers)
    for attempt in range(64):
        rng = random.Random(seed * 7_919 + attempt)
        blocks = _backtrack_triples(n, lam, rng, node_cap=500_000)
        if blocks is not None:
            return finish(blocks)
    raise ConstructionError(
        f"no triple system with multiplicity {lam} found on {n} vertices")


def complement_triples(h: Hypergraph) -> Hypergraph:
    """All triples on the same vertex set that are not edges of h."""
    if h.k != 3:
        raise ParameterError(f"complement of triples needs k=3, got k={h.k}")
    edges = [e for e in combinations(range(1, h.n + 1), 3) if e not in h]
    return Hypergraph(h.n, 3, edges)


def find_perfect_matching(h: Hypergraph) -> tuple[Edge, ...] | None:
    """Disjoint edges covering every vertex, or None; exact backtracking."""
    if h.n % h.k:
        raise ParameterError(f"{h.k} must divide n={h.n} for a perfect matching")
    by_vertex: dict[int, list[int]] = {v: [] for v in range(1, h.n + 1)}
    for i, m in enumerate(h.edge_masks):
        mm = m
        while mm:
            v = (mm & -mm).bit_length()
            mm &= mm - 1
            by_vertex[v].append(i)
    chosen: list[int] = []

    def rec(covered: int) -> bool:
        if covered == (1 << h.n) - 1:
            return True
        v = 1
        while (covered >> (v - 1)) & 1:
            v += 1
        for i in by_vertex[v]:
            m = h.edge_masks[i]
            if m & covered:
                continue
            chosen.append(i)
            if rec(covered | m):
                return True
            chosen.pop()
        return False

    if not rec(0):
        return None
    return tuple(sorted(h.edges[i] for i in chosen))


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    claim: str
    detail: str | None = None


@dataclass(frozen=True)
class ConstructionReport:
    system: Hypergraph
    m: int
    design_size: int
    matching: tuple[Edge, ...]
    max_codegree: int
    histogram: dict[int, int]
    triangles_ok: bool

    @property
    def size(self) -> int:
        return len(self.system)

    def to_json(self) -> dict:
        return {
            "n": self.system.n,
            "m": self.m,
            "size": self.size,
            "design_size": self.design_size,
            "matching": [list(e) for e in self.matching],
            "max_codegree": self.max_codegree,
            "codegree_histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "codegree_m_pairs_are_disjoint_triangles": self.triangles_ok,
        }


def _codegree_m_triangles(h: Hypergraph, m: int) -> tuple[bool, str | None]:
    """Do the pairs of codegree exactly m form disjoint triangles covering 1..n?"""
    cnt: Counter[tuple[int, int]] = Counter()
    for e in h.edges:
        for p in combinations(e, 2):
            cnt[p] += 1
    adj: dict[int, set[int]] = {v: set() for v in range(1, h.n + 1)}
    for (u, v), c in cnt.items():
        if c == m:
            adj[u].add(v)
            adj[v].add(u)
    for v in range(1, h.n + 1):
        if len(adj[v]) != 2:
            return False, f"vertex {v} lies in {len(adj[v])} codegree-{m} pairs, expected 2"
    seen: set[int] = set()
    for v in range(1, h.n + 1):
        if v in seen:
            continue
        comp = {v} | adj[v]
        if len(comp) != 3 or any(adj[u] != comp - {u} for u in comp):
            return False, f"codegree-{m} pairs around vertex {v} do not close a triangle"
        seen |= comp
    return True, None


def build_counterexample(n: int, m: int, seed: int = 0) -> ConstructionReport:
    """Pair-exact system of multiplicity m-1 plus a perfect matching from its complement."""
    if m < 4:
        raise ParameterError(f"m must be at least 4, got {m}")
    if n % 3:
        raise ParameterError(f"n must be divisible by 3 for the matching, got {n}")
    spec = DesignSpec(n, m - 1)
    base = build_triple_system(spec, seed)
    matching = find_perfect_matching(complement_triples(base))
    if matching is None:
        raise ConstructionError(
            f"complement of the triple system on {n} vertices has no perfect matching")
    system = Hypergraph(n, 3, list(base.edges) + list(matching))
    tri_ok, _ = _codegree_m_triangles(system, m)
    return ConstructionReport(system, m, len(base), matching,
                              max_codegree2(system), codegree_histogram(system),
                              tri_ok)


@dataclass(frozen=True)
class VerificationReport:
    verdict: str  # "verified" | "conditional" | "refuted"
    mode: str
    m: int
    checks: tuple[Check, ...]
    witness: tuple[Edge, ...] | None = None
    nodes: int = 0
    budget_exhausted: bool = False

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "mode": self.mode,
            "m": self.m,
            "nodes": self.nodes,
            "budget_exhausted": self.budget_exhausted,
            "checks": [
                {"name": c.name, "verdict": "pass" if c.ok else "fail",
                 "claim": c.claim, **({"detail": c.detail} if c.detail else {})}
                for c in self.checks
            ],
        }
        if self.witness is not None:
            out["witness"] = [list(e) for e in self.witness]
        return out


def _degree_checks(h: Hypergraph, m: int) -> list[Check]:
    t = 3 * m + 1
    delta2 = max_codegree2(h)
    checks = [Check("max-codegree", delta2 == m,
                    f"maximum pair codegree equals {m}",
                    f"measured {delta2}")]
    tri_ok, why = _codegree_m_triangles(h, m)
    checks.append(Check("codegree-triangles", tri_ok,
                        f"pairs of codegree {m} form disjoint triangles covering "
                        f"all {h.n} vertices", why))
    bounds = {tag: km_codegree_bound(tag, t) for tag in ("H0", "H2", "H3")}
    threshold = min(bounds.values())
    checks.append(Check(
        "template-thresholds", threshold > m,
        f"every non-star template containing {t} members forces a pair of "
        f"codegree above {m}",
        f"least forced codegree {threshold}; the one-apex template is ruled "
        f"out by the triangle check"))
    return checks


def verify_counterexample(h: Hypergraph, m: int, mode: str = "both",
                          budget: int | None = None) -> VerificationReport:
    """Check that no nontrivial pairwise-intersecting subfamily of size 3m+1 exists.

    degree-argument: counting checks that rule the templates out. exhaustive:
    budgeted exact search for such a subfamily. A completed empty search
    verifies; passing counting checks alone are conditional; a found witness
    or failed check refutes. Budget exhaustion falls back to the counting
    verdict.
    """
    from .intersecting import find_nontrivial_subfamily

    if m < 4:
        raise ParameterError(f"m must be at least 4, got {m}")
    if mode not in ("degree-argument", "exhaustive", "both"):
        raise ParameterError(f"unknown mode {mode!r}")
    t = 3 * m + 1
    checks: list[Check] = []
    witness = None
    nodes = 0
    search: SearchOutcome | None = None
    degree: list[Check] | None = None
    if mode in ("degree-argument", "both"):
        degree = _degree_checks(h, m)
        checks.extend(degree)
    if mode in ("exhaustive", "both"):
        search = find_nontrivial_subfamily(h, t, 2, budget)
        nodes = search.nodes
        checks.append(Check(
            "exhaustive-search", search.status == SearchStatus.NONE,
            f"no {t} members are pairwise intersecting without a common vertex",
            f"status {search.status.value} after {search.nodes} nodes"))
        if search.status == SearchStatus.FOUND:
            witness = search.witness
        elif search.status == SearchStatus.BUDGET and degree is None:
            # fall back to counting to decide between conditional and refuted
            degree = _degree_checks(h, m)
            checks.extend(degree)
    if witness is not None:
        verdict = "refuted"
    elif degree is not None and not all(c.ok for c in degree):
        verdict = "refuted"
    elif search is not None and search.status == SearchStatus.NONE:
        verdict = "verified"
    else:
        verdict = "conditional"
    exhausted = search is not None and search.status == SearchStatus.BUDGET
    return VerificationReport(verdict, mode, m, tuple(checks), witness, nodes,
                              exhausted)
