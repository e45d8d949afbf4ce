"""Intersecting families: d-wise checks, simplices, and template classification.

A family is d-wise intersecting when every min(d, family size)-subset has a
common vertex, and nontrivially so when the whole family has empty
intersection. A d-simplex is d+1 sets, every d of which share a vertex,
with empty total intersection.

Large pairwise-intersecting families of triples fall into a short list of
shapes: a star, or one of six sporadic templates built from at most six
special vertices. `classify_intersecting` finds which template contains a
given family, and `check_km_codegree_bounds` verifies the maximum pair
codegree forced by each non-star template.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceeded, ClassificationError, ParameterError
from .hypergraph import Edge, Hypergraph, mask_of, vertex_tuple, vertices_of
from .search import NodeCounter, SearchOutcome, SearchStatus, default_budget


def _normalized_family(edges: Sequence[Iterable[int]]) -> list[Edge]:
    fam = [vertex_tuple(e) for e in edges]
    if not fam:
        raise ParameterError("family must be nonempty")
    if any(not e for e in fam):
        raise ParameterError("family members must be nonempty sets")
    if len(set(fam)) != len(fam):
        raise ParameterError("family members must be pairwise distinct")
    return fam


def is_dwise_intersecting(edges: Sequence[Iterable[int]], d: int) -> bool:
    """Every min(d, |family|)-subset shares a vertex."""
    if d < 2:
        raise ParameterError(f"intersection order d must be at least 2, got {d}")
    fam = _normalized_family(edges)
    masks = [mask_of(e) for e in fam]
    t = min(d, len(masks))
    for sub in combinations(masks, t):
        inter = sub[0]
        for m in sub[1:]:
            inter &= m
            if not inter:
                break
        if not inter:
            return False
    return True


@dataclass(frozen=True)
class FamilyWitness:
    """Outcome of a d-wise intersection check on a fixed family."""

    edges: tuple[Edge, ...]
    d: int
    intersecting: bool
    common: Edge
    nontrivial: bool
    violating: tuple[Edge, ...] | None = None


def check_nontrivial(edges: Sequence[Iterable[int]], d: int) -> FamilyWitness:
    """d-wise intersecting with empty common intersection, with a named violator if not."""
    if d < 2:
        raise ParameterError(f"intersection order d must be at least 2, got {d}")
    fam = _normalized_family(edges)
    masks = [mask_of(e) for e in fam]
    t = min(d, len(masks))
    violating = None
    for sub in combinations(range(len(masks)), t):
        inter = masks[sub[0]]
        for i in sub[1:]:
            inter &= masks[i]
        if not inter:
            violating = tuple(fam[i] for i in sub)
            break
    total = masks[0]
    for m in masks[1:]:
        total &= m
    common = vertices_of(total)
    intersecting = violating is None
    return FamilyWitness(tuple(sorted(fam)), d, intersecting, common,
                         intersecting and not common, violating)


def is_d_simplex(edges: Sequence[Iterable[int]], d: int | None = None) -> bool:
    """d+1 sets, every d sharing a vertex, empty total intersection."""
    fam = _normalized_family(edges)
    if d is None:
        d = len(fam) - 1
    if d < 1:
        raise ParameterError(f"simplex order d must be at least 1, got {d}")
    if len(fam) != d + 1:
        raise ParameterError(f"a {d}-simplex has {d + 1} sets, got {len(fam)}")
    masks = [mask_of(e) for e in fam]
    total = masks[0]
    for m in masks[1:]:
        total &= m
    if total:
        return False
    for sub in combinations(masks, d):
        inter = sub[0]
        for m in sub[1:]:
            inter &= m
        if not inter:
            return False
    return True


def nontrivial_search_masks(vmasks: Sequence[int], n: int, t: int, d: int,
                       counter: NodeCounter,
                       require: int | None = None) -> tuple[int, ...] | None:
    """Indices of a t-subfamily, d-wise intersecting, empty common intersection.

    Scans in index order, so with no `require` the witness is the first in
    lexicographic order over the caller's edge list.
    """
    m = len(vmasks)
    if m < t:
        return None
    all_vertices = (1 << n) - 1
    avoid = [0] * (n + 1)
    for j, vm in enumerate(vmasks):
        for v in range(1, n + 1):
            if not (vm >> (v - 1)) & 1:
                avoid[v] |= 1 << j

    def common_prune(common: int, cand: int) -> bool:
        # a vertex in every remaining candidate and in the running common
        # intersection survives to the end, so the family stays trivial
        cm = common
        while cm:
            v = (cm & -cm).bit_length()
            cm &= cm - 1
            if cand & avoid[v] == 0:
                return True
        return False

    chosen: list[int] = []

    if d == 2:
        inter = [0] * m
        for i in range(m):
            for j in range(i + 1, m):
                if vmasks[i] & vmasks[j]:
                    inter[i] |= 1 << j
                    inter[j] |= 1 << i

        def dfs2(common: int, cand: int) -> bool:
            counter.tick()
            if len(chosen) == t:
                return common == 0
            if cand.bit_count() < t - len(chosen):
                return False
            if common and common_prune(common, cand):
                return False
            rest = cand
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                rest &= rest - 1
                chosen.append(j)
                above = ~((1 << (j + 1)) - 1)
                if dfs2(common & vmasks[j], cand & inter[j] & above):
                    return True
                chosen.pop()
                cand &= ~low
                if cand.bit_count() < t - len(chosen):
                    return False
            return False

        if require is not None:
            chosen.append(require)
            start_cand = inter[require]
            ok = dfs2(vmasks[require], start_cand)
        else:
            ok = dfs2(all_vertices, (1 << m) - 1)
        return tuple(sorted(chosen)) if ok else None

    # general d: candidate compatibility depends on (d-1)-subsets of the
    # current selection, so no pairwise mask shortcut applies
    def compatible(j: int) -> bool:
        if len(chosen) < d - 1:
            return True
        vm = vmasks[j]
        for sub in combinations(chosen, d - 1):
            inter = vm
            for i in sub:
                inter &= vmasks[i]
                if not inter:
                    break
            if not inter:
                return False
        return True

    def dfsd(common: int, cand: int) -> bool:
        counter.tick()
        if len(chosen) == t:
            return common == 0
        if cand.bit_count() < t - len(chosen):
            return False
        if common and common_prune(common, cand):
            return False
        rest = cand
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest &= rest - 1
            cand &= ~low
            if not compatible(j):
                continue
            chosen.append(j)
            above = ~((1 << (j + 1)) - 1)
            if dfsd(common & vmasks[j], cand & above):
                return True
            chosen.pop()
            if cand.bit_count() < t - len(chosen):
                return False
        return False

    if require is not None:
        chosen.append(require)
        ok = dfsd(vmasks[require], ((1 << m) - 1) & ~(1 << require))
    else:
        ok = dfsd(all_vertices, (1 << m) - 1)
    return tuple(sorted(chosen)) if ok else None


def find_nontrivial_subfamily(h: Hypergraph, t: int, d: int,
                              budget: int | None = None) -> SearchOutcome:
    """Exact budgeted search for t edges, d-wise intersecting, no common vertex."""
    if d < 2:
        raise ParameterError(f"intersection order d must be at least 2, got {d}")
    if t < d + 1:
        raise ParameterError(
            f"target size {t} below {d + 1}: any {d}-wise intersecting family "
            f"of at most {d} sets has a common vertex")
    counter = NodeCounter(budget if budget is not None else default_budget())
    try:
        hit = nontrivial_search_masks(h.edge_masks, h.n, t, d, counter)
    except BudgetExceeded:
        return SearchOutcome(SearchStatus.BUDGET, None, counter.nodes)
    if hit is None:
        return SearchOutcome(SearchStatus.NONE, None, counter.nodes)
    witness = tuple(h.edges[i] for i in hit)
    verdict = check_nontrivial(witness, d)
    if not verdict.nontrivial:
        raise AssertionError("search produced an invalid subfamily")
    return SearchOutcome(SearchStatus.FOUND, witness, counter.nodes)


# --- template classification for pairwise-intersecting triple families ---

# Exceptional member triples of each sporadic template, over core vertices.
# The main part of each template is given by _main_member below.
_EXCEPTIONAL: dict[str, tuple[tuple[int, int, int], ...]] = {
    "EKR": (),
    "H0": (),
    "H1": ((2, 3, 4),),
    "H2": ((2, 3, 4), (2, 3, 5), (1, 4, 5)),
    "H3": ((1, 3, 4), (1, 3, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5)),
    "H4": ((1, 3, 4), (1, 5, 6), (2, 3, 5), (2, 3, 6), (2, 4, 5), (2, 4, 6)),
    "H5": ((1, 3, 4), (1, 5, 6), (1, 3, 6), (2, 3, 5), (2, 3, 6), (2, 4, 6)),
}

_CORE_SIZE = {"EKR": 1, "H0": 3, "H1": 4, "H2": 5, "H3": 5, "H4": 6, "H5": 6}

TEMPLATE_TAGS = ("EKR", "H0", "H1", "H2", "H3", "H4", "H5")


def _main_member(tag: str, core: frozenset[int]) -> bool:
    """Does a triple whose core-labelled vertices are `core` lie in the main part?"""
    if tag == "EKR":
        return 1 in core
    if tag == "H0":
        return len(core & {1, 2, 3}) >= 2
    if tag == "H1":
        return 1 in core and bool(core & {2, 3, 4})
    if tag == "H2":
        return 1 in core and bool(core & {2, 3})
    # H3, H4, H5 share the two-anchor main part
    return {1, 2} <= core


@dataclass(frozen=True)
class KMFamily:
    """A template tag with an injective map from core labels to actual vertices."""

    tag: str
    mapping: Mapping[int, int]

    def __post_init__(self):
        if self.tag not in TEMPLATE_TAGS:
            raise ParameterError(f"unknown template tag {self.tag!r}")
        m = dict(self.mapping)
        if sorted(m) != list(range(1, _CORE_SIZE[self.tag] + 1)):
            raise ParameterError(
                f"{self.tag} needs core labels 1..{_CORE_SIZE[self.tag]}, got {sorted(m)}")
        if len(set(m.values())) != len(m):
            raise ParameterError("core mapping must be injective")
        object.__setattr__(self, "mapping", m)

    def exceptional_edges(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(self.mapping[c] for c in trip)
                         for trip in _EXCEPTIONAL[self.tag])

    def contains_edge(self, edge: Iterable[int]) -> bool:
        e = set(vertex_tuple(edge))
        if len(e) != 3:
            raise ParameterError(f"templates classify triples, got {sorted(e)}")
        inverse = {v: c for c, v in self.mapping.items()}
        core = frozenset(inverse[v] for v in e if v in inverse)
        if _main_member(self.tag, core):
            return True
        return frozenset(e) in self.exceptional_edges()

    def contains_family(self, h: Hypergraph) -> bool:
        return all(self.contains_edge(e) for e in h.edges)


def _pad_mapping(mapping: dict[int, int], tag: str, n: int) -> dict[int, int] | None:
    """Fill unused core labels with fresh vertices so the map is total and injective."""
    used = set(mapping.values())
    out = dict(mapping)
    fresh = 1
    for c in range(1, _CORE_SIZE[tag] + 1):
        if c in out:
            continue
        while fresh in used:
            fresh += 1
        if fresh > n:
            return None
        out[c] = fresh
        used.add(fresh)
    return out


def _match_ekr(h: Hypergraph) -> KMFamily | None:
    total = h.edge_masks[0]
    for m in h.edge_masks[1:]:
        total &= m
    if not total:
        return None
    v = (total & -total).bit_length()
    return KMFamily("EKR", {1: v})


def _match_h0(h: Hypergraph) -> KMFamily | None:
    # the core shares two vertices with every member, in particular the first
    first = h.edges[0]
    for pair in combinations(first, 2):
        pm = mask_of(pair)
        for w in range(1, h.n + 1):
            if (pm >> (w - 1)) & 1:
                continue
            core = pm | (1 << (w - 1))
            if all((m & core).bit_count() >= 2 for m in h.edge_masks):
                c = vertices_of(core)
                return KMFamily("H0", {1: c[0], 2: c[1], 3: c[2]})
    return None


def _match_h1(h: Hypergraph) -> KMFamily | None:
    # apex in all members but one; that one member is the exceptional triple,
    # and pairwise intersection supplies the kernel condition for the rest
    for x in range(1, h.n + 1):
        missing = [e for e, m in zip(h.edges, h.edge_masks) if not (m >> (x - 1)) & 1]
        if len(missing) != 1:
            continue
        y, z, t = missing[0]
        return KMFamily("H1", {1: x, 2: y, 3: z, 4: t})
    return None


def _match_h2(h: Hypergraph) -> KMFamily | None:
    for x in range(1, h.n + 1):
        missing = [e for e, m in zip(h.edges, h.edge_masks) if not (m >> (x - 1)) & 1]
        if not missing or len(missing) > 2:
            continue
        if len(missing) == 2:
            shared = set(missing[0]) & set(missing[1])
            if len(shared) != 2 or x in shared:
                continue
            y, z = sorted(shared)
            ts = sorted((set(missing[0]) | set(missing[1])) - shared)
            fam = _finish_h2(h, x, y, z, ts[0], ts[1])
            if fam is not None:
                return fam
        else:
            # one missing member: two of its vertices act as the kernel pair
            for pair in combinations(missing[0], 2):
                y, z = pair
                (t,) = set(missing[0]) - set(pair)
                fam = _finish_h2(h, x, y, z, t, None)
                if fam is not None:
                    return fam
    return None


def _finish_h2(h: Hypergraph, x: int, y: int, z: int, t: int,
               u: int | None) -> KMFamily | None:
    kernel = {y, z}
    bad = [set(e) for e, m in zip(h.edges, h.edge_masks)
           if (m >> (x - 1)) & 1 and not (set(e) & kernel)]
    if len(bad) > 1:
        return None
    if bad:
        b = bad[0]
        if x not in b or t not in b:
            return None
        (u_found,) = b - {x, t}
        if u is not None and u_found != u:
            return None
        u = u_found
    if u is None:
        candidates = [v for v in range(1, h.n + 1) if v not in {x, y, z, t}]
        if not candidates:
            return None
        u = candidates[0]
    if len({x, y, z, t, u}) != 5:
        return None
    return KMFamily("H2", {1: x, 2: y, 3: z, 4: t, 5: u})


def _anchored_candidates(h: Hypergraph) -> list[tuple[int, int]]:
    """Vertex pairs contained in all but at most six members, lex order."""
    size = len(h)
    counts: Counter[tuple[int, int]] = Counter()
    for e in h.edges:
        for pair in combinations(e, 2):
            counts[pair] += 1
    return sorted(p for p, c in counts.items() if c >= size - 6)


def _match_anchored(h: Hypergraph, tag: str) -> KMFamily | None:
    slots = tuple(range(3, _CORE_SIZE[tag] + 1))
    table = _EXCEPTIONAL[tag]
    for base in _anchored_candidates(h):
        for x, y in (base, (base[1], base[0])):
            anchors = {x, y}
            leftovers = [set(e) for e in h.edges if not anchors <= set(e)]
            if len(leftovers) > 6:
                continue
            if any(len(b & anchors) != 1 for b in leftovers):
                continue
            outside = sorted(set().union(*leftovers) - anchors) if leftovers else []
            if len(outside) > len(slots):
                continue
            for perm in permutations(slots, len(outside)):
                mapping = {1: x, 2: y}
                for slot, v in zip(perm, outside):
                    mapping[slot] = v
                full = _pad_mapping(mapping, tag, max(h.n, 6))
                if full is None:
                    continue
                exceptional = {frozenset(full[c] for c in trip) for trip in table}
                if all(frozenset(b) in exceptional for b in leftovers):
                    return KMFamily(tag, full)
    return None


def classify_intersecting(h: Hypergraph) -> KMFamily:
    """Match a large pairwise-intersecting triple family against the templates.

    Tags are tried in the fixed order EKR, H0..H5 and the first containing
    template is returned, so the answer is deterministic. Families too small
    or not pairwise intersecting are rejected; a family matching no template
    raises ClassificationError carrying diagnostics.
    """
    if h.k != 3:
        raise ParameterError(f"classification needs triples, got k={h.k}")
    if len(h) < 11:
        raise ParameterError(f"classification needs at least 11 members, got {len(h)}")
    for (ea, ma), (eb, mb) in combinations(zip(h.edges, h.edge_masks), 2):
        if not ma & mb:
            raise ParameterError(f"family is not intersecting: {ea} and {eb} are disjoint")
    for matcher in (_match_ekr, _match_h0, _match_h1, _match_h2):
        fam = matcher(h)
        if fam is not None:
            return fam
    for tag in ("H3", "H4", "H5"):
        fam = _match_anchored(h, tag)
        if fam is not None:
            return fam
    from .hypergraph import max_codegree2

    raise ClassificationError(
        "family fits no template",
        diagnostics={"n": h.n, "size": len(h),
                     "max_degree": max(h.degree(v) for v in range(1, h.n + 1)),
                     "max_codegree2": max_codegree2(h),
                     "edges": [list(e) for e in h.edges]})


def km_codegree_bound(tag: str, size: int) -> int:
    """Least possible maximum pair codegree of a size-`size` family inside the template."""
    if tag == "H0":
        return -(-size // 3)
    if tag == "H2":
        return -(-(size - 3) // 2)
    if tag in ("H3", "H4", "H5"):
        return size - 6
    raise ParameterError(f"no codegree bound applies to template {tag}")


def check_km_codegree_bounds(h: Hypergraph, km: KMFamily) -> bool:
    """Verify the template's forced lower bound on the maximum pair codegree."""
    from .hypergraph import max_codegree2

    if not km.contains_family(h):
        raise ParameterError("family is not contained in the given template")
    bound = km_codegree_bound(km.tag, len(h))
    return max_codegree2(h) >= bound
