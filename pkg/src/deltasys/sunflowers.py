"""Sunflowers and host-partitioned sunflower clusters.

A sunflower is a family of at least two sets whose pairwise intersections all
equal one common center. A *cluster* here is a host edge together with an
ordered partition of the host into blocks and, for each block, a group of
edges: the host plus each group must form a sunflower whose center is the
host minus that block. The cluster is *semi* when only the per-group
condition holds, and *disjoint* (full) when additionally the residues
edge-minus-host of all group edges are pairwise disjoint across the whole
cluster. Group sizes sum to the cluster's petal count.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BudgetExceeded, ParameterError, PreconditionError
from .hypergraph import Edge, Hypergraph, mask_of, vertex_tuple, vertices_of
from .search import NodeCounter, SearchOutcome, SearchStatus, default_budget


@dataclass(frozen=True)
class Sunflower:
    center: Edge
    petals: tuple[Edge, ...]


@dataclass(frozen=True)
class SunflowerCheck:
    ok: bool
    sunflower: Sunflower | None = None
    violating: tuple[Edge, Edge] | None = None
    reason: str | None = None


def check_sunflower(edges: Sequence[Iterable[int]]) -> SunflowerCheck:
    """Decide whether the family is a sunflower; name the first bad pair if not."""
    fam = [vertex_tuple(e) for e in edges]
    if len(fam) < 2:
        raise ParameterError("a sunflower needs at least two petals")
    if len(set(fam)) != len(fam):
        raise ParameterError("petals must be pairwise distinct sets")
    center = set(fam[0]) & set(fam[1])
    for a, b in combinations(fam, 2):
        if set(a) & set(b) != center:
            return SunflowerCheck(False, violating=(a, b),
                                  reason=f"{a} and {b} meet in {tuple(sorted(set(a) & set(b)))}, "
                                         f"not in the common center {tuple(sorted(center))}")
    return SunflowerCheck(True, Sunflower(vertex_tuple(center), tuple(sorted(fam))))


def is_sunflower(edges: Sequence[Iterable[int]]) -> bool:
    return check_sunflower(edges).ok


def find_sunflower(h: Hypergraph, center: Iterable[int], s: int,
                   require_edge: Iterable[int] | None = None) -> Sunflower | None:
    """Exact search for s edges containing `center` with pairwise-disjoint residues.

    Disjoint residues force every pairwise intersection to equal the center
    exactly. The search is a complete depth-first scan over candidates in
    lexicographic edge order, so the returned witness is deterministic. With
    `require_edge`, that edge is forced into the sunflower.
    """
    if s < 2:
        raise ParameterError(f"sunflower size must be at least 2, got {s}")
    c = vertex_tuple(center)
    cm = mask_of(c)
    cands: list[tuple[Edge, int]] = []
    for e, m in zip(h.edges, h.edge_masks):
        if m & cm == cm:
            cands.append((e, m & ~cm))
    chosen: list[Edge] = []
    used = 0
    if require_edge is not None:
        req = vertex_tuple(require_edge)
        if req not in h:
            raise ParameterError(f"required edge {req} is not in the hypergraph")
        if mask_of(req) & cm != cm:
            raise ParameterError(f"required edge {req} does not contain the center {c}")
        cands = [(e, r) for e, r in cands if e != req]
        chosen.append(req)
        used = mask_of(req) & ~cm

    def rec(start: int, used: int) -> bool:
        remaining = s - len(chosen)
        if remaining == 0:
            return True
        for pos in range(start, len(cands)):
            if len(cands) - pos < remaining:
                return False
            e, res = cands[pos]
            if res & used:
                continue
            chosen.append(e)
            if rec(pos + 1, used | res):
                return True
            chosen.pop()
        return False

    if not rec(0, used):
        return None
    return Sunflower(c, tuple(sorted(chosen)))


@dataclass(frozen=True)
class SunflowerCluster:
    """Host edge, ordered partition blocks of the host, and per-block edge groups."""

    host: Edge
    blocks: tuple[Edge, ...]
    groups: tuple[tuple[Edge, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "host", vertex_tuple(self.host))
        object.__setattr__(self, "blocks", tuple(vertex_tuple(b) for b in self.blocks))
        object.__setattr__(self, "groups",
                           tuple(tuple(vertex_tuple(e) for e in g) for g in self.groups))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    @property
    def petal_count(self) -> int:
        return sum(self.group_sizes)

    @property
    def all_edges(self) -> tuple[Edge, ...]:
        out = [self.host]
        for g in self.groups:
            out.extend(g)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "host": list(self.host),
            "blocks": [list(b) for b in self.blocks],
            "groups": [[list(e) for e in g] for g in self.groups],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SunflowerCluster":
        try:
            return cls(tuple(data["host"]),
                       tuple(tuple(b) for b in data["blocks"]),
                       tuple(tuple(tuple(e) for e in g) for g in data["groups"]))
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed cluster witness: {exc}")


@dataclass(frozen=True)
class ClusterCheck:
    ok: bool
    reason: str | None = None


def _validate_cluster_shape(c: SunflowerCluster) -> int:
    """Structural validation shared by the semi and full checks; returns k."""
    k = len(c.host)
    if k < 2:
        raise ParameterError("host edge must have at least two vertices")
    if not c.blocks:
        raise ParameterError("cluster needs at least one partition block")
    seen: list[int] = []
    for b in c.blocks:
        if not b:
            raise ParameterError("partition blocks must be nonempty")
        seen.extend(b)
    if len(seen) != len(set(seen)) or set(seen) != set(c.host):
        raise ParameterError("blocks must partition the host edge exactly")
    if len(c.groups) != len(c.blocks):
        raise ParameterError(f"{len(c.blocks)} blocks but {len(c.groups)} groups")
    for i, g in enumerate(c.groups):
        if not g:
            raise ParameterError(f"group {i + 1} is empty; every group needs at least one edge")
        for e in g:
            if len(e) != k:
                raise ParameterError(f"group edge {e} has size {len(e)}, host has size {k}")
    return k


def check_semi_cluster(c: SunflowerCluster) -> ClusterCheck:
    """Each group together with the host must be a sunflower centered at host minus block."""
    _validate_cluster_shape(c)
    host_mask = mask_of(c.host)
    edges_seen = {c.host}
    for i, (block, group) in enumerate(zip(c.blocks, c.groups), start=1):
        center_mask = host_mask & ~mask_of(block)
        center = vertices_of(center_mask)
        for e in group:
            if e in edges_seen:
                return ClusterCheck(False, f"edge {e} appears twice in the cluster")
            edges_seen.add(e)
            if mask_of(e) & host_mask != center_mask:
                return ClusterCheck(False,
                                    f"group {i}: edge {e} meets the host in "
                                    f"{vertices_of(mask_of(e) & host_mask)}, expected {center}")
        for a, b in combinations(group, 2):
            if mask_of(a) & mask_of(b) != center_mask:
                return ClusterCheck(False,
                                    f"group {i}: edges {a} and {b} meet outside the center {center}")
    return ClusterCheck(True)


def check_cluster(c: SunflowerCluster, d: int | None = None) -> ClusterCheck:
    """Full cluster: semi conditions plus globally disjoint residues; petal count d."""
    semi = check_semi_cluster(c)
    if not semi.ok:
        return semi
    host_mask = mask_of(c.host)
    residues: list[tuple[Edge, int]] = []
    for g in c.groups:
        for e in g:
            residues.append((e, mask_of(e) & ~host_mask))
    for (ea, ra), (eb, rb) in combinations(residues, 2):
        if ra & rb:
            return ClusterCheck(False,
                                f"residues of {ea} and {eb} share "
                                f"{vertices_of(ra & rb)} outside the host")
    if d is not None and c.petal_count != d:
        return ClusterCheck(False, f"cluster has {c.petal_count} petal edges, expected {d}")
    return ClusterCheck(True)


def complete_cluster(c: SunflowerCluster, group_sizes: Sequence[int]) -> SunflowerCluster:
    """Shrink a semi cluster's groups to the requested sizes with disjoint residues.

    Requires, for each block i (1-based, with a = block sizes, b = requested
    sizes, c = available group sizes): c_i >= b_i + sum over j < i of a_j*b_j.
    Under that bound a single greedy sweep in lexicographic order always
    succeeds: every previously chosen residue of size a_j can block at most
    a_j candidates of a later group, because residues within one group are
    already pairwise disjoint.
    """
    semi = check_semi_cluster(c)
    if not semi.ok:
        raise ParameterError(f"input is not a semi cluster: {semi.reason}")
    p = len(c.blocks)
    b = tuple(int(x) for x in group_sizes)
    if len(b) != p or any(x < 1 for x in b):
        raise ParameterError(f"group sizes must be {p} positive integers, got {b}")
    a = c.block_sizes
    have = c.group_sizes
    blocked = 0
    for i in range(p):
        if have[i] < b[i] + blocked:
            raise PreconditionError(
                f"group {i + 1} has {have[i]} edges; completion needs at least "
                f"{b[i] + blocked} (requested {b[i]} plus {blocked} possibly blocked)")
        blocked += a[i] * b[i]
    host_mask = mask_of(c.host)
    used = 0
    new_groups: list[tuple[Edge, ...]] = []
    for i in range(p):
        chosen: list[Edge] = []
        for e in sorted(c.groups[i]):
            if len(chosen) == b[i]:
                break
            res = mask_of(e) & ~host_mask
            if res & used == 0:
                chosen.append(e)
                used |= res
        if len(chosen) < b[i]:
            raise AssertionError("greedy completion fell short despite the precondition")
        new_groups.append(tuple(chosen))
    out = SunflowerCluster(c.host, c.blocks, tuple(new_groups))
    verdict = check_cluster(out, sum(b))
    if not verdict.ok:
        raise AssertionError(f"completion produced an invalid cluster: {verdict.reason}")
    return out


def _host_partitions(host: Edge, sizes: Sequence[int]):
    """Ordered partitions of the host with the given block sizes.

    Among blocks of equal size, minima increase, so each set partition is
    visited once per distinct size arrangement.
    """
    acc: list[Edge] = []
    last_min: dict[int, int] = {}

    def rec(remaining: tuple[int, ...], i: int):
        if i == len(sizes):
            yield tuple(acc)
            return
        size = sizes[i]
        floor = last_min.get(size, 0)
        for combo in combinations(remaining, size):
            if combo[0] <= floor:
                continue
            rest = tuple(v for v in remaining if v not in combo)
            acc.append(combo)
            prev = last_min.get(size)
            last_min[size] = combo[0]
            yield from rec(rest, i + 1)
            acc.pop()
            if prev is None:
                del last_min[size]
            else:
                last_min[size] = prev

    yield from rec(host, 0)


def _compositions(total: int, parts: int):
    """Compositions of `total` into `parts` positive integers, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def cluster_search_masks(masks: Sequence[int], k: int, part_sizes: Sequence[int],
                         d: int, counter: NodeCounter,
                         require: int | None = None) -> tuple[int, tuple, tuple[tuple[int, ...], ...]] | None:
    """Core exact search over a mask list; returns (host index, blocks, groups of indices).

    Indices refer to positions in `masks`, which must be in the caller's
    deterministic order. With `require`, only clusters using that edge (as
    host or group member) are sought; the search is then existence-only.
    """
    p = len(part_sizes)
    n_edges = len(masks)

    def try_host(hi: int) -> tuple[int, tuple, tuple[tuple[int, ...], ...]] | None:
        host_mask = masks[hi]
        host = vertices_of(host_mask)
        for blocks in _host_partitions(host, part_sizes):
            counter.tick()
            centers = [host_mask & ~mask_of(b) for b in blocks]
            cands: list[list[int]] = []
            for cm in centers:
                lst = [j for j in range(n_edges)
                       if j != hi and masks[j] & host_mask == cm]
                cands.append(lst)
            if require is not None and require != hi:
                req_groups = [i for i in range(p) if require in cands[i]]
                if not req_groups:
                    continue
            else:
                req_groups = [None]
            for req_group in req_groups:
                used0 = 0
                if req_group is not None:
                    used0 = masks[require] & ~host_mask
                for b in _compositions(d, p):
                    if any(len(cands[i]) < b[i] - (1 if i == req_group else 0) for i in range(p)):
                        continue
                    picked: list[list[int]] = [[] for _ in range(p)]

                    def fill(gi: int, used: int) -> bool:
                        if gi == p:
                            return True
                        need = b[gi] - (1 if gi == req_group else 0)
                        lst = cands[gi]

                        def pick(start: int, need: int, used: int) -> bool:
                            counter.tick()
                            if need == 0:
                                return fill(gi + 1, used)
                            for pos in range(start, len(lst)):
                                if len(lst) - pos < need:
                                    return False
                                j = lst[pos]
                                if j == require and gi == req_group:
                                    continue
                                res = masks[j] & ~host_mask
                                if res & used:
                                    continue
                                picked[gi].append(j)
                                if pick(pos + 1, need - 1, used | res):
                                    return True
                                picked[gi].pop()
                            return False

                        return pick(0, need, used)

                    if fill(0, used0):
                        groups = []
                        for gi in range(p):
                            idxs = list(picked[gi])
                            if gi == req_group:
                                idxs.append(require)
                            groups.append(tuple(sorted(idxs)))
                        return hi, blocks, tuple(groups)
        return None

    if require is not None:
        order = [require] + [i for i in range(n_edges) if i != require]
    else:
        order = list(range(n_edges))
    for hi in order:
        counter.tick()
        hit = try_host(hi)
        if hit is not None:
            return hit
    return None


def find_cluster(h: Hypergraph, part_sizes: Sequence[int], d: int,
                 budget: int | None = None,
                 require_edge: Iterable[int] | None = None) -> SearchOutcome:
    """Exact budgeted search for a disjoint cluster with the given block sizes.

    part_sizes must be positive, have length p >= 2, and sum to k; d >= p.
    Hosts, partitions, group-size compositions, and group members are all
    scanned in deterministic lexicographic order, so the first witness found
    is the same on every run.
    """
    a = tuple(int(x) for x in part_sizes)
    p = len(a)
    if p < 2:
        raise ParameterError(f"need at least two blocks, got {p}")
    if any(x < 1 for x in a):
        raise ParameterError(f"block sizes must be positive, got {a}")
    if sum(a) != h.k:
        raise ParameterError(f"block sizes {a} must sum to the uniformity {h.k}")
    if d < p:
        raise ParameterError(f"petal count d={d} must be at least the number of blocks {p}")
    counter = NodeCounter(budget if budget is not None else default_budget())
    require = None
    if require_edge is not None:
        req = vertex_tuple(require_edge)
        if req not in h:
            raise ParameterError(f"required edge {req} is not in the hypergraph")
        require = h.edges.index(req)
    try:
        hit = cluster_search_masks(h.edge_masks, h.k, a, d, counter, require)
    except BudgetExceeded:
        return SearchOutcome(SearchStatus.BUDGET, None, counter.nodes)
    if hit is None:
        return SearchOutcome(SearchStatus.NONE, None, counter.nodes)
    hi, blocks, groups = hit
    witness = SunflowerCluster(h.edges[hi], blocks,
                               tuple(tuple(h.edges[j] for j in g) for g in groups))
    verdict = check_cluster(witness, d)
    if not verdict.ok:
        raise AssertionError(f"search produced an invalid cluster: {verdict.reason}")
    return SearchOutcome(SearchStatus.FOUND, witness, counter.nodes)
