"""Exact extremal search against brute-force oracles, plus stability checks."""

from itertools import combinations

import numpy as np
import pytest

from deltasys import (
    ForbiddenConfig,
    Hypergraph,
    ParameterError,
    build_star,
    check_nontrivial,
    max_avoiding,
    stability_scan,
)


def brute_force_max_n5():
    """Max family of triples on [5] with no 3 pairwise-meeting, hub-free sets.

    Pure-python sweep over all 2^10 families; returns (best size, number of
    families attaining it, all attaining families as edge tuples).
    """
    edges = list(combinations(range(1, 6), 3))
    forbidden = []
    for idx in combinations(range(len(edges)), 3):
        if check_nontrivial([edges[i] for i in idx], 2).nontrivial:
            forbidden.append(sum(1 << i for i in idx))
    best, hits = 0, []
    for mask in range(1 << len(edges)):
        if any(mask & f == f for f in forbidden):
            continue
        size = mask.bit_count()
        if size > best:
            best, hits = size, [mask]
        elif size == best:
            hits.append(mask)
    families = [
        tuple(edges[i] for i in range(len(edges)) if mask >> i & 1)
        for mask in hits
    ]
    return best, len(hits), families


def numpy_max_n6():
    """Same question on [6] via a vectorized superset filter over 2^20 masks."""
    edges = list(combinations(range(1, 7), 3))
    forbidden = []
    for idx in combinations(range(len(edges)), 3):
        if check_nontrivial([edges[i] for i in idx], 2).nontrivial:
            forbidden.append(sum(1 << i for i in idx))
    masks = np.arange(1 << len(edges), dtype=np.uint32)
    valid = np.ones(masks.shape, dtype=bool)
    for f in forbidden:
        valid &= (masks & f) != f
    popcount = np.zeros(masks.shape, dtype=np.uint8)
    for i in range(len(edges)):
        popcount += ((masks >> i) & 1).astype(np.uint8)
    best = int(popcount[valid].max())
    attained = int(np.count_nonzero(valid & (popcount == best)))
    return best, attained


class TestConfigValidation:
    def test_kinds(self):
        ForbiddenConfig("nontrivial-intersecting", t=3, d=2)
        ForbiddenConfig("d-simplex", d=2)
        ForbiddenConfig("avd-system", part_sizes=(2, 1), d=2)
        with pytest.raises(ParameterError):
            ForbiddenConfig("nope", d=2)

    def test_nontrivial_shape(self):
        with pytest.raises(ParameterError):
            ForbiddenConfig("nontrivial-intersecting", t=2, d=2)
        with pytest.raises(ParameterError):
            ForbiddenConfig("nontrivial-intersecting", t=3, d=1)

    def test_simplex_shape(self):
        with pytest.raises(ParameterError):
            ForbiddenConfig("d-simplex")
        with pytest.raises(ParameterError):
            ForbiddenConfig("d-simplex", d=0)

    def test_avd_shape(self):
        with pytest.raises(ParameterError):
            ForbiddenConfig("avd-system", part_sizes=(2,), d=2)
        with pytest.raises(ParameterError):
            ForbiddenConfig("avd-system", part_sizes=(2, 0), d=2)
        with pytest.raises(ParameterError):
            ForbiddenConfig("avd-system", part_sizes=(2, 1), d=1)

    def test_describe_mentions_the_parameters(self):
        text = ForbiddenConfig("nontrivial-intersecting", t=3, d=2).describe()
        assert "3" in text and "2-wise" in text


class TestAgainstBruteForce:
    def test_n5_matches_the_full_sweep(self):
        best, count, families = brute_force_max_n5()
        assert best == 6
        assert count == 5  # one star per vertex
        for fam in families:
            common = set.intersection(*(set(e) for e in fam))
            assert len(common) == 1
        res = max_avoiding(5, 3, ForbiddenConfig("nontrivial-intersecting", t=3, d=2))
        assert res.exact
        assert res.max_size == best
        # search normalizes by forcing the first edge, so it reports the
        # extremal families through (1,2,3): the stars at 1, 2 and 3
        assert len(res.families) == 3
        for fam in res.families:
            assert (1, 2, 3) in fam
            assert fam in [tuple(f) for f in families]

    def test_n6_matches_the_vectorized_sweep(self):
        best, attained = numpy_max_n6()
        assert best == 10
        assert attained == 6  # stars only, one per vertex
        res = max_avoiding(6, 3, ForbiddenConfig("nontrivial-intersecting", t=3, d=2))
        assert res.exact
        assert res.max_size == best
        assert len(res.families) == 3
        star = tuple(build_star(6, 3).edges)
        assert star in res.families

    def test_triangle_config_equals_2_simplex_config(self):
        a = max_avoiding(5, 3, ForbiddenConfig("nontrivial-intersecting", t=3, d=2))
        b = max_avoiding(5, 3, ForbiddenConfig("d-simplex", d=2))
        assert a.max_size == b.max_size
        assert a.families == b.families

    def test_single_simplex_order_is_plain_intersection(self):
        # forbidding two disjoint edges caps the family at the full star
        res = max_avoiding(6, 3, ForbiddenConfig("d-simplex", d=1))
        assert res.exact
        assert res.max_size == 10
        star = tuple(build_star(6, 3).edges)
        assert star in res.families

    def test_avd_instance(self):
        res = max_avoiding(6, 3, ForbiddenConfig("avd-system", part_sizes=(2, 1), d=2))
        assert res.exact
        assert res.max_size == 10
        star = tuple(build_star(6, 3).edges)
        assert star in res.families
        # every reported family is genuinely free of the configuration
        from deltasys import find_cluster

        for fam in res.families[:5]:
            h = Hypergraph(6, 3, fam)
            assert not find_cluster(h, (2, 1), 2).found

    def test_budget_interrupts_cleanly(self):
        res = max_avoiding(6, 3, ForbiddenConfig("nontrivial-intersecting", t=3, d=2), budget=40)
        assert not res.exact
        assert 0 < res.max_size <= 10

    def test_result_json(self):
        res = max_avoiding(5, 3, ForbiddenConfig("d-simplex", d=2))
        js = res.to_json()
        assert js["max_size"] == res.max_size
        assert js["exact"] is True
        assert js["n"] == 5 and js["k"] == 3
        assert len(js["families"]) == len(res.families)


class TestStability:
    def test_full_star(self):
        rep = stability_scan(build_star(6, 3), 0.0)
        assert rep.vertex == 1
        assert rep.degree == 10
        assert rep.missed == 0

    def test_missed_edges_are_counted(self):
        h = Hypergraph(6, 3, list(build_star(6, 3).edges) + [(2, 3, 4)])
        rep = stability_scan(h, 0.2)
        assert rep.vertex == 1
        assert rep.size == 11
        assert rep.missed == 1

    def test_delta_threshold_is_exact(self):
        h = Hypergraph(6, 3, list(build_star(6, 3).edges) + [(2, 3, 4)])
        # bound is delta * 6^2; one missed edge
        assert stability_scan(h, 0.2, delta=0.03).within_delta is True
        assert stability_scan(h, 0.2, delta=0.02).within_delta is False
        assert stability_scan(h, 0.2).within_delta is None

    def test_ties_go_to_the_smallest_vertex(self):
        h = Hypergraph(4, 3, list(combinations(range(1, 5), 3)))
        rep = stability_scan(h, 0.0)
        assert rep.vertex == 1
        assert rep.degree == 3
        assert rep.missed == 1

    def test_family_must_be_large_enough(self):
        with pytest.raises(ParameterError):
            stability_scan(Hypergraph(6, 3, [(1, 2, 3)]), 0.0)

    def test_json_shape(self):
        rep = stability_scan(build_star(6, 3), 0.1, delta=0.5)
        js = rep.to_json()
        assert js["within_delta"] is True
        assert js["vertex"] == 1
        no_delta = stability_scan(build_star(6, 3), 0.1).to_json()
        assert "within_delta" not in no_delta
