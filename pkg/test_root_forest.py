#!/usr/bin/env python3
"""
Tests for the root digraphs, their outtree components and 3-cut sets.
"""

import networkx as nx
import pytest

from mycielski import mirror, parse_name, root
from root_forest import (
    CutSet,
    Flavor,
    RootDigraph,
    build_F,
    build_F_circle,
    canonical_3cut,
    component,
    component_sizes,
    compositions,
    corollary1_scan,
    find_directed_triple,
    is_3cut,
    is_outtree,
    iso_g,
    lemma6_check,
    min_3cut_bruteforce,
    outtree_diagnostic,
    reaches_all_from_root,
    relabel_to_F,
    to_dot,
    union_with_mirror,
    verify_iso,
)
from toolkit_errors import GraphError, GuardExceededError, PreconditionError


def names(*texts):
    return {parse_name(text) for text in texts}


def test_compositions():
    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    for m in range(1, 9):
        assert len(list(compositions(m))) == 2 ** (m - 1)


def test_small_f_circle():
    assert len(build_F_circle(1)) == 0
    f3 = build_F_circle(3)
    assert set(f3.vertices) == names("u1^2", "u1^1.1", "u2^1")
    assert f3.arcs == [(root(1, 2), root(1, 1, 1))]
    with pytest.raises(PreconditionError):
        build_F_circle(0)


@pytest.mark.parametrize("t", range(1, 11))
def test_vertex_counts(t):
    f_circle = build_F_circle(t)
    forest = relabel_to_F(f_circle)
    assert len(f_circle) == len(forest) == 2 ** (t - 1) - 1
    assert len(forest.arcs) == len(f_circle.arcs)
    assert all(name.total == t and name.suffix for name in f_circle.vertices)
    assert all(name.total <= t - 1 for name in forest.vertices)
    sizes = component_sizes(t)
    assert sizes == {i: 2 ** (t - 1 - i) for i in range(1, t)}


def test_relabel_small_case():
    forest = build_F(3)
    assert set(forest.vertices) == names("u1", "u1^1", "u2")
    assert forest.arcs == [(root(1), root(1, 1))]
    assert forest.flavor is Flavor.RELABELED
    with pytest.raises(PreconditionError):
        relabel_to_F(forest)


@pytest.mark.parametrize("t", range(2, 8))
def test_relabel_is_an_isomorphism(t):
    f_circle = build_F_circle(t)
    forest = relabel_to_F(f_circle)
    assert nx.is_isomorphic(f_circle.digraph, forest.digraph)


def test_components():
    forest = build_F(4)
    assert set(component(forest, 1).vertices) == names("u1", "u1^1", "u1^2", "u1^1.1")
    assert component(forest, 3).vertices == [root(3)]
    covered = set()
    for i in range(1, 4):
        part = set(component(forest, i).vertices)
        assert not covered & part
        covered |= part
    assert covered == set(forest.vertices)
    with pytest.raises(PreconditionError):
        component(forest, 4)
    with pytest.raises(PreconditionError):
        component(build_F_circle(4), 1)


@pytest.mark.parametrize("t", range(2, 11))
def test_components_are_outtrees(t):
    forest = build_F(t)
    for i in range(1, t):
        part = component(forest, i)
        assert is_outtree(part)
        assert nx.is_arborescence(part.digraph)
        assert reaches_all_from_root(part)
        assert outtree_diagnostic(part)[1] == f"outtree rooted at u{i}"


def test_outtree_rejections():
    single = RootDigraph.build([root(1)], [], 2, Flavor.RELABELED)
    assert is_outtree(single)
    cycle = RootDigraph.build([root(1), root(2)], [(root(1), root(2)), (root(2), root(1))], 3, Flavor.RELABELED)
    assert not is_outtree(cycle)
    assert not reaches_all_from_root(cycle)
    ok, reason = outtree_diagnostic(build_F(4))
    assert not ok
    assert "not weakly connected" in reason
    ok, reason = outtree_diagnostic(RootDigraph.build([], [], 1, Flavor.RELABELED))
    assert not ok and reason == "empty digraph"
    merge = RootDigraph.build(
        [root(1), root(2), root(3)], [(root(1), root(3)), (root(2), root(3))], 4, Flavor.RELABELED
    )
    assert outtree_diagnostic(merge) == (False, "2 vertices with indegree 0")


def test_iso_g_small_case():
    mapping = iso_g(1, 4)
    assert mapping[root(1)] == root(2)
    assert mapping[root(1, 2)] == root(2, 1)
    assert mapping[root(1, 1)] == mirror(2)
    assert mapping[root(1, 1, 1)] == mirror(2, 1)
    forest = build_F(4)
    union = union_with_mirror(component(forest, 2))
    assert (root(2), mirror(2)) in union.arcs
    assert verify_iso(component(forest, 1), union, mapping)
    for bad in (0, 3):
        with pytest.raises(PreconditionError):
            iso_g(bad, 4)


@pytest.mark.parametrize("t", range(3, 11))
def test_recursive_isomorphism(t):
    forest = build_F(t)
    for i in range(1, t - 1):
        assert lemma6_check(t, i)
        assert len(component(forest, i)) == 2 * len(component(forest, i + 1))


def test_verify_iso_detects_a_missing_arc():
    forest = build_F(5)
    first = component(forest, 1)
    union = union_with_mirror(component(forest, 2))
    damaged = RootDigraph.build(union.vertices, union.arcs[1:], 5, Flavor.UNION)
    assert not verify_iso(first, damaged, iso_g(1, 5))
    partial = dict(list(iso_g(1, 5).items())[1:])
    assert not verify_iso(first, union, partial)


def test_directed_triples():
    assert find_directed_triple(build_F(3), build_F(3).vertices) is None
    part = component(build_F(4), 1)
    triple = find_directed_triple(part, names("u1", "u1^1", "u1^1.1"))
    assert triple == (root(1), root(1, 1), root(1, 1, 1))
    assert find_directed_triple(part, names("u1", "u1^1.1")) is None
    # only the endpoints and the middle vertex need to be chosen
    forest = build_F(5)
    assert find_directed_triple(forest, names("u1", "u1^1", "u1^1.1.1")) is not None
    with pytest.raises(GraphError):
        find_directed_triple(part, names("u2"))


def test_triple_agrees_with_networkx_paths():
    forest = build_F(5)
    for u in forest.vertices:
        for w in forest.vertices:
            if u == w or not nx.has_path(forest.digraph, u, w):
                continue
            path = nx.shortest_path(forest.digraph, u, w)
            for v in path[1:-1]:
                assert find_directed_triple(forest, [u, v, w]) == (u, v, w)


def test_3cut_sets():
    f4 = build_F(4)
    assert is_3cut(f4, CutSet(frozenset(f4.vertices)))
    assert is_3cut(build_F(3), CutSet(frozenset()))
    assert not is_3cut(f4, CutSet(frozenset()))
    assert is_3cut(f4, {root(1, 1)})
    with pytest.raises(GraphError):
        is_3cut(f4, {root(5)})


@pytest.mark.parametrize("t, size", [(3, 0), (4, 1), (5, 3)])
def test_minimum_cut_matches_the_canonical_cut(t, size):
    forest = build_F(t)
    brute = min_3cut_bruteforce(forest)
    canonical = canonical_3cut(t)
    assert len(brute) == len(canonical) == size == 2 ** (t - 3) - 1
    assert is_3cut(forest, brute)


def test_minimum_cut_tie_break():
    assert min_3cut_bruteforce(build_F(4)).names() == [root(1)]


def test_brute_force_guard():
    with pytest.raises(GuardExceededError):
        min_3cut_bruteforce(build_F(7))
    assert min_3cut_bruteforce(build_F(5), max_size=2) is None


def test_canonical_cuts():
    assert canonical_3cut(3).names() == []
    assert canonical_3cut(4).names() == [root(1)]
    assert set(canonical_3cut(5).names()) == names("u1", "u1^1", "u2")
    for t in range(3, 9):
        cut = canonical_3cut(t)
        assert len(cut) == 2 ** (t - 3) - 1
        assert is_3cut(build_F(t), cut)
    with pytest.raises(PreconditionError):
        canonical_3cut(2)


def test_cut_json():
    assert canonical_3cut(5).to_json() == ["u1", "u1^1", "u2"]


def test_corollary1_small_cases():
    report = corollary1_scan(4)
    assert (report.threshold, report.vertices, report.qualifying_total) == (6, 7, 1)
    assert report.exhaustive and report.holds and report.examined == 1

    report = corollary1_scan(5)
    assert report.qualifying_total == report.examined == 121
    assert report.exhaustive and report.holds
    with pytest.raises(PreconditionError):
        corollary1_scan(3)


def test_corollary1_sampling_is_reproducible():
    first = corollary1_scan(6, samples=300, seed=7)
    second = corollary1_scan(6, samples=300, seed=7)
    assert not first.exhaustive
    assert first.examined == 300
    assert first.holds
    assert first == second


def test_dot_export():
    dot = to_dot(build_F(4))
    assert dot.startswith("digraph relabeled_4 {")
    assert dot.count(" -> ") == 4
    assert 'label="u1^1.1"' in dot


@pytest.mark.slow
def test_no_small_cut_at_t6():
    forest = build_F(6)
    assert len(forest) == 31
    assert min_3cut_bruteforce(forest, max_size=6) is None
    cut = canonical_3cut(6)
    assert len(cut) == 7
    assert is_3cut(forest, cut)
